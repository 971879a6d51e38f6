#include "ifp/runtime.hpp"

namespace ifp {

namespace {

const Clause *find_clause(const ProgP &cs, Ctor c) {
    for (auto &cl : cs->clauses)
        if (cl.ctor == c) return &cl;
    return nullptr;
}

Ctor ctor_of(const ProgP &v) {
    switch (v->kind) {
    case PK::Nil: return Ctor::Nil;
    case PK::Left: return Ctor::Left;
    case PK::Right: return Ctor::Right;
    default: return Ctor::Pair;
    }
}

// N[M̄/ȳ] for a matching clause; values are closed
ProgP select(const Clause &cl, const ProgP &v) {
    switch (cl.vars.size()) {
    case 0:
        return cl.body;
    case 1:
        return subst_closed(cl.body, {{cl.vars[0], v->a}});
    default:
        if (cl.vars[0] == cl.vars[1]) return subst_closed(cl.body, {{cl.vars[1], v->b}});
        return subst_closed(cl.body, {{cl.vars[0], v->a}, {cl.vars[1], v->b}});
    }
}

ProgP beta(const ProgP &lam, const ProgP &arg) { return subst_closed(lam->a, {{lam->name, arg}}); }

// roll and unroll behave as the identity
ProgP strip(const ProgP &m) {
    if (m->kind == PK::Roll || m->kind == PK::Unroll) return p_id();
    return m;
}

}

EvalResult bigstep(const ProgP &m0, uint64_t fuel) {
    // frames: case (the case node) or application argument
    struct Frame {
        bool is_case;
        ProgP node;
    };
    std::vector<Frame> stack;
    ProgP cur = strip(m0);
    uint64_t used = 0;
    for (;;) {
        if (used >= fuel) return {Outcome::Diverged, nullptr, used};
        ++used;
        switch (cur->kind) {
        case PK::Case:
            stack.push_back({true, cur});
            cur = strip(cur->a);
            continue;
        case PK::App:
            stack.push_back({false, cur->b});
            cur = strip(cur->a);
            continue;
        case PK::Rec:
            stack.push_back({false, cur});
            cur = strip(cur->a);
            continue;
        case PK::Var:
        case PK::Bot:
            return {Outcome::Stuck, nullptr, used};
        default:
            break;
        }
        // cur is a value
        if (stack.empty()) return {Outcome::Value, cur, used};
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.is_case) {
            if (cur->kind == PK::Lam) return {Outcome::Stuck, nullptr, used};
            const Clause *cl = find_clause(f.node, ctor_of(cur));
            if (!cl) return {Outcome::Stuck, nullptr, used};
            cur = strip(select(*cl, cur));
        } else {
            if (cur->kind != PK::Lam) return {Outcome::Stuck, nullptr, used};
            cur = strip(beta(cur, f.node));
        }
    }
}

StepResult smallstep(const ProgP &m) {
    std::vector<ProgP> path;  // Case or App nodes whose head position we descend into
    ProgP cur = m;
    ProgP contractum;
    for (;;) {
        if (cur->kind == PK::Roll || cur->kind == PK::Unroll) {
            if (path.empty()) return {StepKind::Value, m};
            return {StepKind::Stuck, m};
        }
        if (cur->kind == PK::Rec) {
            contractum = p_app(cur->a, cur);
            break;
        }
        if (cur->kind == PK::Case) {
            ProgP s = strip(cur->a);
            if (is_ctor(s)) {
                const Clause *cl = find_clause(cur, ctor_of(s));
                if (!cl) return {StepKind::Stuck, m};
                contractum = select(*cl, s);
                break;
            }
            if (s->kind == PK::Lam) return {StepKind::Stuck, m};
            path.push_back(cur);
            cur = cur->a;
            continue;
        }
        if (cur->kind == PK::App) {
            ProgP f = strip(cur->a);
            if (f->kind == PK::Lam) {
                contractum = beta(f, cur->b);
                break;
            }
            if (is_ctor(f)) return {StepKind::Stuck, m};
            path.push_back(cur);
            cur = cur->a;
            continue;
        }
        if (is_value(cur) && path.empty()) return {StepKind::Value, m};
        return {StepKind::Stuck, m};
    }
    for (size_t i = path.size(); i-- > 0;) {
        auto n = std::make_shared<Prog>(*path[i]);
        n->a = contractum;
        contractum = n;
    }
    return {StepKind::Step, contractum};
}

ProgP parallel_step(const ProgP &m) {
    switch (m->kind) {
    case PK::Nil:
        return m;
    case PK::Left:
    case PK::Right: {
        ProgP a = parallel_step(m->a);
        return a == m->a ? m : (m->kind == PK::Left ? p_left(a) : p_right(a));
    }
    case PK::Pair: {
        // walk the right spine iteratively, streams get long
        std::vector<ProgP> spine;
        ProgP cur = m;
        while (cur->kind == PK::Pair) {
            spine.push_back(cur);
            cur = cur->b;
        }
        ProgP tail = parallel_step(cur);
        bool changed = tail != cur;
        for (size_t i = spine.size(); i-- > 0;) {
            ProgP a = parallel_step(spine[i]->a);
            if (!changed && a == spine[i]->a) {
                tail = spine[i];
                continue;
            }
            changed = true;
            tail = p_pair(a, tail);
        }
        return tail;
    }
    default: {
        StepResult r = smallstep(m);
        return r.kind == StepKind::Step ? r.next : m;
    }
    }
}

DataP data_part(const ProgP &m) {
    switch (m->kind) {
    case PK::Nil:
        return m;
    case PK::Left: {
        DataP a = data_part(m->a);
        return a == m->a ? m : p_left(a);
    }
    case PK::Right: {
        DataP a = data_part(m->a);
        return a == m->a ? m : p_right(a);
    }
    case PK::Pair: {
        std::vector<ProgP> spine;
        ProgP cur = m;
        while (cur->kind == PK::Pair) {
            spine.push_back(cur);
            cur = cur->b;
        }
        DataP tail = data_part(cur);
        for (size_t i = spine.size(); i-- > 0;) {
            DataP a = data_part(spine[i]->a);
            if (a == spine[i]->a && tail == spine[i]->b) tail = spine[i];
            else tail = p_pair(a, tail);
        }
        return tail;
    }
    default:
        return p_bot();
    }
}

DataP approx(const ProgP &m, uint64_t n) {
    ProgP cur = m;
    for (uint64_t i = 0; i < n; ++i) {
        ProgP next = parallel_step(cur);
        if (next == cur) break;
        cur = next;
    }
    return data_part(cur);
}

DataP approx_watch(const ProgP &m, uint64_t n, const std::function<void(uint64_t, const DataP &)> &f) {
    ProgP cur = m;
    DataP last = data_part(cur);
    f(0, last);
    for (uint64_t i = 1; i <= n; ++i) {
        ProgP next = parallel_step(cur);
        if (next == cur) break;
        cur = next;
        DataP d = data_part(cur);
        if (!data_eq(d, last)) {
            last = d;
            f(i, last);
        }
    }
    return last;
}

bool is_data(const ProgP &d) {
    switch (d->kind) {
    case PK::Nil:
    case PK::Bot:
        return true;
    case PK::Left:
    case PK::Right:
        return is_data(d->a);
    case PK::Pair: {
        ProgP cur = d;
        while (cur->kind == PK::Pair) {
            if (!is_data(cur->a)) return false;
            cur = cur->b;
        }
        return is_data(cur);
    }
    default:
        return false;
    }
}

bool data_leq(const DataP &a0, const DataP &b0) {
    DataP a = a0, b = b0;
    for (;;) {
        if (a == b || a->kind == PK::Bot) return true;
        if (a->kind != b->kind) return false;
        switch (a->kind) {
        case PK::Nil:
            return true;
        case PK::Left:
        case PK::Right:
            a = a->a;
            b = b->a;
            continue;
        case PK::Pair:
            if (!data_leq(a->a, b->a)) return false;
            a = a->b;
            b = b->b;
            continue;
        default:
            return false;
        }
    }
}

bool data_eq(const DataP &a, const DataP &b) { return data_leq(a, b) && data_leq(b, a); }

bool data_total(const DataP &d) {
    DataP cur = d;
    for (;;) {
        switch (cur->kind) {
        case PK::Nil:
            return true;
        case PK::Left:
        case PK::Right:
            cur = cur->a;
            continue;
        case PK::Pair:
            if (!data_total(cur->a)) return false;
            cur = cur->b;
            continue;
        default:
            return false;
        }
    }
}

namespace {

bool finite_rec(const ProgP &m, uint64_t &fuel, DataP &out) {
    EvalResult r = bigstep(m, fuel);
    fuel -= std::min(fuel, r.used);
    if (r.outcome != Outcome::Value || r.value->kind == PK::Lam) return false;
    const ProgP &v = r.value;
    switch (v->kind) {
    case PK::Nil:
        out = v;
        return true;
    case PK::Left:
    case PK::Right: {
        DataP a;
        if (!finite_rec(v->a, fuel, a)) return false;
        out = v->kind == PK::Left ? p_left(a) : p_right(a);
        return true;
    }
    default: {
        DataP a, b;
        if (!finite_rec(v->a, fuel, a) || !finite_rec(v->b, fuel, b)) return false;
        out = p_pair(a, b);
        return true;
    }
    }
}

}

FiniteResult compute_finite(const ProgP &m, uint64_t fuel) {
    DataP d;
    if (!finite_rec(m, fuel, d)) return {false, nullptr};
    return {true, d};
}

std::vector<DataP> stream_prefix(const DataP &d, size_t max) {
    std::vector<DataP> out;
    DataP cur = d;
    while (out.size() < max && cur->kind == PK::Pair) {
        out.push_back(cur->a);
        cur = cur->b;
    }
    return out;
}

namespace {

std::string term(const DataP &d) {
    switch (d->kind) {
    case PK::Nil: return "Nil";
    case PK::Bot: return "⊥";
    case PK::Left: return "Left(" + term(d->a) + ")";
    case PK::Right: return "Right(" + term(d->a) + ")";
    case PK::Pair: return "Pair(" + term(d->a) + ", " + term(d->b) + ")";
    default: return print_prog(d);
    }
}

bool is_signed(const DataP &d) {
    return d->kind == PK::Left && (d->a->kind == PK::Left || d->a->kind == PK::Right) && d->a->a->kind == PK::Nil;
}

}

std::string print_digit(const DataP &d, bool signed_digits) {
    if (d->kind == PK::Bot) return "⊥";
    if (signed_digits) {
        if (is_signed(d)) return d->a->kind == PK::Left ? "-1" : "1";
        if (d->kind == PK::Right && d->a->kind == PK::Nil) return "0";
    } else if ((d->kind == PK::Left || d->kind == PK::Right) && d->a->kind == PK::Nil) {
        return d->kind == PK::Left ? "L" : "R";
    }
    return term(d);
}

std::string print_data(const DataP &d, DataFormat f, size_t cap) {
    if (f == DataFormat::Term || d->kind != PK::Pair) return term(d);
    auto cells = stream_prefix(d, cap);
    bool sd = false;
    for (auto &c : cells) sd |= is_signed(c);
    std::string s;
    DataP cur = d;
    for (auto &c : cells) {
        s += print_digit(c, sd) + ":";
        cur = cur->b;
    }
    if (cur->kind == PK::Pair) return s + "…";
    return s + (cur->kind == PK::Bot ? "⊥" : term(cur));
}

ProgP numeral(unsigned n) {
    ProgP m = p_left(p_nil());
    for (unsigned i = 0; i < n; ++i) m = p_right(m);
    return m;
}

std::optional<unsigned> numeral_value(const DataP &d) {
    unsigned n = 0;
    DataP cur = d;
    while (cur->kind == PK::Right) {
        ++n;
        cur = cur->a;
    }
    if (cur->kind == PK::Left && cur->a->kind == PK::Nil) return n;
    return std::nullopt;
}

}
