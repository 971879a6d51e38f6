#include "ifp/types.hpp"

#include <map>

namespace ifp {

namespace {

struct TypeError : Error {
    using Error::Error;
};

bool is_meta(const TypeP &t) { return t->kind == TK::Var && !t->name.empty() && t->name[0] == '?'; }

class Checker {
public:
    explicit Checker(FixMode m) : mode(m) {}

    TypeP fresh() { return ty_var("?" + std::to_string(next++)); }

    TypeP resolve(TypeP t) {
        while (is_meta(t)) {
            auto it = sol.find(t->name);
            if (it == sol.end()) return t;
            t = it->second;
        }
        return t;
    }

    TypeP zonk(const TypeP &t0) {
        TypeP t = resolve(t0);
        switch (t->kind) {
        case TK::Var:
        case TK::One:
            return t;
        case TK::Fix: {
            TypeP b = zonk(t->a);
            return b == t->a ? t : ty_fix(t->name, b);
        }
        default: {
            TypeP a = zonk(t->a), b = zonk(t->b);
            if (a == t->a && b == t->b) return t;
            switch (t->kind) {
            case TK::Sum: return ty_sum(a, b);
            case TK::Prod: return ty_prod(a, b);
            default: return ty_arrow(a, b);
            }
        }
        }
    }

    std::string show(const TypeP &t) { return print_type(zonk(t)); }

    bool occurs(const std::string &m, const TypeP &t0) {
        TypeP t = resolve(t0);
        if (t->kind == TK::Var) return t->name == m;
        return (t->a && occurs(m, t->a)) || (t->b && occurs(m, t->b));
    }

    void unify(const TypeP &x0, const TypeP &y0, int depth = 0) {
        TypeP x = resolve(x0), y = resolve(y0);
        if (x == y) return;
        if (depth > 200) throw TypeError("type unrolling does not terminate");
        if (is_meta(x) || is_meta(y)) {
            if (!is_meta(x)) std::swap(x, y);
            if (is_meta(y) && x->name == y->name) return;
            if (occurs(x->name, y)) {
                if (mode == FixMode::Strict)
                    throw TypeError("cannot construct infinite type " + show(x) + " = " + show(y));
                // fix types equal their unfoldings here, so the equation has a solution
                std::string b = "r" + std::to_string(next++);
                sol[x->name] = ty_fix(b, type_subst(zonk(y), x->name, ty_var(b)));
                return;
            }
            sol[x->name] = y;
            return;
        }
        if (x->kind == TK::Fix && y->kind == TK::Fix) {
            std::string r = "!" + std::to_string(next++);
            unify(type_subst(x->a, x->name, ty_var(r)), type_subst(y->a, y->name, ty_var(r)), depth + 1);
            return;
        }
        if (x->kind == TK::Fix || y->kind == TK::Fix) {
            if (mode == FixMode::Strict)
                throw TypeError("type mismatch: " + show(x) + " vs " + show(y) + " (missing roll/unroll)");
            if (x->kind == TK::Fix) unify(unfold(zonk(x)), y, depth + 1);
            else unify(x, unfold(zonk(y)), depth + 1);
            return;
        }
        if (x->kind != y->kind) throw TypeError("type mismatch: " + show(x) + " vs " + show(y));
        switch (x->kind) {
        case TK::Var:
            if (x->name != y->name) throw TypeError("type mismatch: " + show(x) + " vs " + show(y));
            return;
        case TK::One:
            return;
        default:
            unify(x->a, y->a, depth + 1);
            unify(x->b, y->b, depth + 1);
        }
    }

    // a type with head kind k, unrolling fix types in greedy mode
    TypeP expect(const TypeP &t0, TK k) {
        TypeP t = resolve(t0);
        for (int i = 0; i < 100; ++i) {
            if (t->kind == k) return t;
            if (is_meta(t)) {
                TypeP n = k == TK::Sum ? ty_sum(fresh(), fresh())
                        : k == TK::Prod ? ty_prod(fresh(), fresh())
                        : k == TK::Arrow ? ty_arrow(fresh(), fresh())
                                         : ty_one();
                unify(t, n);
                return n;
            }
            if (t->kind == TK::Fix && mode == FixMode::Greedy) {
                t = resolve(unfold(zonk(t)));
                continue;
            }
            break;
        }
        const char *what = k == TK::Sum ? "a sum" : k == TK::Prod ? "a product" : k == TK::Arrow ? "a function" : "1";
        throw TypeError("expected " + std::string(what) + " type, found " + show(t));
    }

    using Env = std::vector<std::pair<std::string, TypeP>>;

    TypeP lookup(const Env &env, const std::string &x) {
        for (size_t i = env.size(); i-- > 0;)
            if (env[i].first == x) return env[i].second;
        throw TypeError("unbound program variable " + x);
    }

    TypeP infer(Env &env, const ProgP &m) {
        switch (m->kind) {
        case PK::Var:
            return lookup(env, m->name);
        case PK::Nil:
            return ty_one();
        case PK::Bot:
            return fresh();
        case PK::Left:
            return ty_sum(infer(env, m->a), fresh());
        case PK::Right:
            return ty_sum(fresh(), infer(env, m->a));
        case PK::Pair: {
            TypeP a = infer(env, m->a);
            return ty_prod(a, infer(env, m->b));
        }
        case PK::Roll:
            return ty_arrow(unfold(m->type), m->type);
        case PK::Unroll:
            return ty_arrow(m->type, unfold(m->type));
        default: {
            TypeP r = fresh();
            check(env, m, r);
            return r;
        }
        }
    }

    void check(Env &env, const ProgP &m, const TypeP &rho) {
        try {
            check_(env, m, rho);
        } catch (TypeError &e) {
            if (trace.size() < 3) trace.push_back(print_prog(m).substr(0, 160));
            throw;
        }
    }

    void check_(Env &env, const ProgP &m, const TypeP &rho) {
        switch (m->kind) {
        case PK::Bot:
            return;
        case PK::Left:
        case PK::Right: {
            TypeP s = expect(rho, TK::Sum);
            check(env, m->a, m->kind == PK::Left ? s->a : s->b);
            return;
        }
        case PK::Pair: {
            TypeP p = expect(rho, TK::Prod);
            check(env, m->a, p->a);
            check(env, m->b, p->b);
            return;
        }
        case PK::Lam: {
            TypeP f = expect(rho, TK::Arrow);
            env.emplace_back(m->name, f->a);
            check(env, m->a, f->b);
            env.pop_back();
            return;
        }
        case PK::Rec:
            check(env, m->a, ty_arrow(rho, rho));
            return;
        case PK::App: {
            if (m->a->kind == PK::Var || m->a->kind == PK::Roll || m->a->kind == PK::Unroll) {
                TypeP f = expect(infer(env, m->a), TK::Arrow);
                check(env, m->b, f->a);
                unify(f->b, rho);
            } else {
                TypeP a = infer(env, m->b);
                check(env, m->a, ty_arrow(a, rho));
            }
            return;
        }
        case PK::Case: {
            TypeP s = infer(env, m->a);
            bool sum = false, prod = false, one = false;
            for (auto &c : m->clauses) {
                sum |= c.ctor == Ctor::Left || c.ctor == Ctor::Right;
                prod |= c.ctor == Ctor::Pair;
                one |= c.ctor == Ctor::Nil;
            }
            if (sum + prod + one > 1) throw TypeError("case mixes constructors of different types");
            if (m->clauses.empty()) return;
            TypeP t = expect(s, sum ? TK::Sum : prod ? TK::Prod : TK::One);
            for (auto &c : m->clauses) {
                size_t n = env.size();
                if (c.ctor == Ctor::Left) env.emplace_back(c.vars[0], t->a);
                if (c.ctor == Ctor::Right) env.emplace_back(c.vars[0], t->b);
                if (c.ctor == Ctor::Pair) {
                    env.emplace_back(c.vars[0], t->a);
                    env.emplace_back(c.vars[1], t->b);
                }
                check(env, c.body, rho);
                env.resize(n);
            }
            return;
        }
        default:
            unify(infer(env, m), rho);
        }
    }

    FixMode mode;
    int next = 0;
    std::map<std::string, TypeP> sol;
    std::vector<std::string> trace;
};

}

TypeCheckResult type_check(const TypingContext &ctx, const ProgP &m, const TypeP &rho, FixMode mode) {
    Checker c(mode);
    Checker::Env env(ctx.begin(), ctx.end());
    try {
        c.check(env, m, rho);
        return {true, ""};
    } catch (Error &e) {
        std::string msg = e.what();
        if (!c.trace.empty()) msg += " in " + c.trace.front();
        return {false, msg};
    }
}

}
