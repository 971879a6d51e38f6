#include "ifp/extract.hpp"
#include "ifp/types.hpp"

#include <cctype>

namespace ifp {

namespace {

bool has_var(const TypeP &t, const std::string &a) { return type_fv(t).count(a) > 0; }

struct Namer {
    int n = 0;
    std::string operator()(const std::string &base) { return base + std::to_string(++n); }
};

struct MonBuilder {
    Namer &fresh;
    bool typed;
    // type variable ↦ (function program, from-type, to-type)
    struct Slot {
        ProgP f;
        TypeP from, to;
    };
    std::map<std::string, Slot> slots;

    TypeP inst(const TypeP &t, bool to) const {
        TypeP r = t;
        for (auto &[v, s] : slots) r = type_subst(r, v, to ? s.to : s.from);
        return r;
    }

    bool touches(const TypeP &t) const {
        for (auto &[v, s] : slots)
            if (has_var(t, v)) return true;
        return false;
    }

    ProgP map(const TypeP &t, const ProgP &v) {
        if (!touches(t)) return v;
        switch (t->kind) {
        case TK::Var:
            return p_app(slots.at(t->name).f, v);
        case TK::Sum: {
            std::string x = fresh("a"), y = fresh("b");
            return p_case(v, {{Ctor::Left, {x}, p_left(map(t->a, p_var(x)))},
                              {Ctor::Right, {y}, p_right(map(t->b, p_var(y)))}});
        }
        case TK::Prod:
            return p_pair(map(t->a, p_fst(v)), map(t->b, p_snd(v)));
        case TK::Arrow: {
            if (touches(t->a)) throw ExtractError("operator is not strictly positive");
            std::string z = fresh("z");
            return p_lam(z, map(t->b, p_app(v, p_var(z))));
        }
        case TK::Fix: {
            std::string g = fresh("g"), w = fresh("w");
            TypeP from = inst(t, false), to = inst(t, true);
            Slot saved;
            bool had = slots.count(t->name);
            if (had) saved = slots[t->name];
            slots[t->name] = {p_var(g), from, to};
            ProgP arg = typed ? p_app(p_unroll(from), p_var(w)) : p_var(w);
            ProgP body = map(t->a, arg);
            if (typed) body = p_app(p_roll(to), body);
            if (had) slots[t->name] = saved;
            else slots.erase(t->name);
            return p_app(p_rec(p_lam(g, p_lam(w, body))), v);
        }
        default:
            return v;
        }
    }
};

ProgP build_mon(const ExprP &op, bool typed, const TypeP &from, const TypeP &to, Namer &fresh) {
    if (op->kind != EK::Op) throw ExtractError("expected an operator");
    TypeP t = tau(op->a);
    std::string a = type_var_of(op->name);
    std::string f = fresh("f"), p = fresh("p");
    MonBuilder mb{fresh, typed, {}};
    mb.slots[a] = {p_var(f), from, to};
    return p_lam(f, p_lam(p, mb.map(t, p_var(p))));
}

bool op_harrop(const ExprP &op) { return is_harrop_with(op->a, {op->name}); }

class Extractor {
public:
    Extractor(const Script &s, bool typed, std::map<std::string, ProgP> &cache)
        : S(s), typed(typed), cache(cache) {
        env.sig = &s.sig;
        for (auto &t : s.theorems) env.lemmas[t.name] = t.formula;
    }

    std::vector<Provenance> prov;

    ProgP run(const DerivP &d) {
        ProgP m = run_(d);
        prov.push_back({m, d});
        return m;
    }

    ProgP lemma(const std::string &name) {
        auto it = cache.find(name);
        if (it != cache.end()) return it->second;
        const Theorem *t = S.find(name);
        if (!t) throw ExtractError("unknown theorem " + name);
        Extractor sub(S, typed, cache);
        sub.fresh.n = 0;
        ProgP m = sub.run(t->proof);
        cache[name] = m;
        return m;
    }

    Namer fresh;

private:
    const Script &S;
    bool typed;
    std::map<std::string, ProgP> &cache;
    KernelEnv env;
    Context ctx;
    std::vector<std::string> vars;

    ExprP formula(const DerivP &d) { return infer(env, ctx, d); }

    [[noreturn]] void unsupported(const Deriv &d, const std::string &msg) {
        throw ExtractError(d.pos.str() + ": unsupported extraction: " + msg);
    }

    static std::string base_of(const std::string &label) {
        std::string b;
        for (char c : label)
            if (std::isalpha(static_cast<unsigned char>(c))) b += c;
        return b.empty() || b == "L" || b == "R" ? "u" : b;
    }

    TypeP ty(const ExprP &pred) { return tau(pred); }

    ProgP mon(const ExprP &op, const TypeP &from, const TypeP &to) {
        return typed ? build_mon(op, true, from, to, fresh) : build_mon(op, false, nullptr, nullptr, fresh);
    }

    // realizer of body[Q2/X] from a realizer v of body[Q1/X]; f realizes Q1 ⊆ Q2
    ProgP fmap(const ExprP &B, const std::string &X, const ExprP &Q1, const ExprP &Q2, const ProgP &f,
               const ProgP &v) {
        auto h1 = [&](const ExprP &C) { return is_harrop(subst_pred(C, X, Q1)); };
        auto h2 = [&](const ExprP &C) { return is_harrop(subst_pred(C, X, Q2)); };
        if (h2(B)) return p_nil();
        if (!B->fpv.count(X)) return v;
        switch (B->kind) {
        case EK::Abst:
        case EK::All:
        case EK::Ex:
            return fmap(B->a, X, Q1, Q2, f, v);
        case EK::PredApp:
            if (B->a->kind == EK::PVar && B->a->name == X) return h1(B) ? f : p_app(f, v);
            throw ExtractError("unsupported extraction: nested fixed point over a Harrop operator");
        case EK::And: {
            bool l1 = h1(B->a), r1 = h1(B->b);
            ProgP vl = l1 ? p_nil() : r1 ? v : p_fst(v);
            ProgP vr = r1 ? p_nil() : l1 ? v : p_snd(v);
            ProgP ml = fmap(B->a, X, Q1, Q2, f, vl), mr = fmap(B->b, X, Q1, Q2, f, vr);
            if (h2(B->a)) return mr;
            if (h2(B->b)) return ml;
            return p_pair(ml, mr);
        }
        case EK::Or: {
            std::string x = fresh("a"), y = fresh("b");
            return p_case(v, {{Ctor::Left, {x}, p_left(fmap(B->a, X, Q1, Q2, f, p_var(x)))},
                              {Ctor::Right, {y}, p_right(fmap(B->b, X, Q1, Q2, f, p_var(y)))}});
        }
        case EK::Imp: {
            if (is_harrop(B->a)) return fmap(B->b, X, Q1, Q2, f, v);
            std::string z = fresh("z");
            return p_lam(z, fmap(B->b, X, Q1, Q2, f, p_app(v, p_var(z))));
        }
        default:
            return v;
        }
    }

    ProgP rec1(const std::string &a, const ProgP &body) { return p_rec(p_lam(a, body)); }

    ProgP run_(const DerivP &dp) {
        const Deriv &d = *dp;
        ExprP A = formula(dp);
        if (is_harrop(A)) return p_nil();
        switch (d.kind) {
        case DK::Assume:
            for (size_t i = ctx.size(); i-- > 0;)
                if (ctx[i].first == d.label) {
                    if (vars[i].empty()) break;
                    return p_var(vars[i]);
                }
            throw ExtractError(d.pos.str() + ": assumption " + d.label + " has no realizer variable");
        case DK::Axiom:
            throw ExtractError(d.pos.str() + ": axiom " + d.label + " is not non-computational");
        case DK::Use:
            return lemma(d.label);
        case DK::Refl:
            return p_nil();
        case DK::Cong:
        case DK::AllI:
        case DK::AllE:
        case DK::ExI:
            return run(d.sub[0]);
        case DK::AndI:
            if (is_harrop(A->a)) return run(d.sub[1]);
            if (is_harrop(A->b)) return run(d.sub[0]);
            {
                ProgP l = run(d.sub[0]);
                return p_pair(l, run(d.sub[1]));
            }
        case DK::AndL: {
            ExprP F = formula(d.sub[0]);
            ProgP m = run(d.sub[0]);
            return is_harrop(F->b) ? m : p_fst(m);
        }
        case DK::AndR: {
            ExprP F = formula(d.sub[0]);
            ProgP m = run(d.sub[0]);
            return is_harrop(F->a) ? m : p_snd(m);
        }
        case DK::OrL:
            return p_left(run(d.sub[0]));
        case DK::OrR:
            return p_right(run(d.sub[0]));
        case DK::OrE: {
            ExprP F = formula(d.sub[0]);
            ProgP s = run(d.sub[0]), e = run(d.sub[1]), f = run(d.sub[2]);
            std::string a = fresh("a"), b = fresh("b");
            ProgP l = is_harrop(F->a) ? e : p_app(e, p_var(a));
            ProgP r = is_harrop(F->b) ? f : p_app(f, p_var(b));
            return p_case(s, {{Ctor::Left, {a}, l}, {Ctor::Right, {b}, r}});
        }
        case DK::ImpI: {
            bool h = is_harrop(d.f);
            std::string u = h ? "" : fresh(base_of(d.label));
            ctx.emplace_back(d.label, d.f);
            vars.push_back(u);
            ProgP m = run(d.sub[0]);
            ctx.pop_back();
            vars.pop_back();
            return h ? m : p_lam(u, m);
        }
        case DK::ImpE: {
            ExprP F = formula(d.sub[0]);
            ProgP m = run(d.sub[0]);
            if (is_harrop(F->a)) return m;
            return p_app(m, run(d.sub[1]));
        }
        case DK::ExE: {
            ExprP F = formula(d.sub[0]);
            if (is_harrop(F->a)) return run(d.sub[1]);
            ProgP e = run(d.sub[1]);
            return p_app(e, run(d.sub[0]));
        }
        case DK::Cl: {
            if (!typed) return p_id();
            return p_roll(ty(fixpoint_of(EK::Mu, d.op, *env.sig)));
        }
        case DK::CoCl: {
            if (!typed) return p_id();
            return p_unroll(ty(fixpoint_of(EK::Nu, d.op, *env.sig)));
        }
        case DK::Ind:
        case DK::HSI:
            return induction(d);
        case DK::SI:
            unsupported(d, "strong induction is only realized through its half-strong form");
        case DK::Coind:
            return coinduction(d);
        case DK::SCI:
        case DK::HSCI:
            return strong_coinduction(d);
        case DK::WfI:
            return wfi(d);
        case DK::AIq:
            return p_rec(run(d.sub[0]));
        case DK::AIBq:
            return aib(d);
        }
        throw ExtractError("unknown rule");
    }

    ProgP induction(const Deriv &d) {
        const ExprP &op = d.op, &P = d.p;
        ExprP mu = fixpoint_of(EK::Mu, op, *env.sig);
        bool harrop = op_harrop(op);
        if (d.kind == DK::HSI && !harrop)
            unsupported(d, "half-strong induction needs a Harrop operator");
        ProgP s = run(d.sub[0]);
        std::string a = fresh("a");
        if (!harrop) {
            ProgP m = p_app(mon(op, ty(mu), ty(P)), p_var(a));
            if (typed) m = p_comp(m, p_unroll(ty(mu)));
            return rec1(a, p_comp(s, m));
        }
        if (is_harrop(apply_op(op, P))) return s;
        return rec1(a, p_app(s, fmap(op->a, op->name, mu, P, p_var(a), p_nil())));
    }

    ProgP coinduction(const Deriv &d) {
        const ExprP &op = d.op, &P = d.p;
        ExprP nu = fixpoint_of(EK::Nu, op, *env.sig);
        ProgP s = run(d.sub[0]);
        std::string a = fresh("a");
        if (is_harrop(P)) {
            ProgP body = fmap(op->a, op->name, P, nu, p_var(a), s);
            if (typed) body = p_app(p_roll(ty(nu)), body);
            return rec1(a, body);
        }
        ProgP m = p_app(mon(op, ty(P), ty(nu)), p_var(a));
        if (typed) m = p_comp(p_roll(ty(nu)), m);
        return rec1(a, p_comp(m, s));
    }

    ProgP strong_coinduction(const Deriv &d) {
        const ExprP &op = d.op, &P = d.p;
        ExprP nu = fixpoint_of(EK::Nu, op, *env.sig);
        if (is_harrop(P))
            unsupported(d, std::string(dk_name(d.kind)) + " with a Harrop predicate");
        ProgP s = run(d.sub[0]);
        std::string a = fresh("a");
        if (d.kind == DK::HSCI) {
            ProgP m = p_app(mon(op, ty(P), ty(nu)), p_var(a));
            if (typed) m = p_comp(p_roll(ty(nu)), m);
            return rec1(a, p_comp(p_sumf(m, p_id()), s));
        }
        ProgP m = p_app(mon(op, ty_sum(ty(P), ty(nu)), ty(nu)), p_sumf(p_var(a), p_id()));
        if (typed) m = p_comp(p_roll(ty(nu)), m);
        return rec1(a, p_comp(m, s));
    }

    ProgP wfi(const Deriv &d) {
        bool hp = is_harrop(d.op), ha = is_harrop(d.q);
        ProgP s = run(d.sub[0]);
        if (hp && ha) return p_rec(s);
        if (!hp && ha) {
            std::string c = fresh("c"), b = fresh("b");
            return rec1(c, p_app(s, p_lam(b, p_var(c))));
        }
        std::string f = fresh("f"), a = fresh("a");
        ProgP step = p_var(f);
        if (!hp) {
            std::string a2 = fresh("a"), b = fresh("b");
            step = p_lam(a2, p_lam(b, p_app(p_var(f), p_var(a2))));
        }
        return rec1(f, p_lam(a, p_apps(s, {p_var(a), step})));
    }

    ProgP aib(const Deriv &d) {
        if (is_harrop(d.q)) unsupported(d, "AIB with a Harrop domain predicate");
        ProgP s = run(d.sub[0]);
        std::string a = fresh("a"), b = fresh("b"), c = fresh("c"), z = fresh("z"), b2 = fresh("b"),
                    g = fresh("d");
        ProgP right = p_case(p_var(z), {{Ctor::Pair, {b2, g}, p_app(p_var(g), p_app(p_var(a), p_var(b2)))}});
        ProgP body = p_case(p_app(s, p_var(b)), {{Ctor::Left, {c}, p_var(c)}, {Ctor::Right, {z}, right}});
        return rec1(a, p_lam(b, body));
    }
};

}

ProgP gen_mon(const ExprP &op) {
    Namer n;
    return build_mon(op, false, nullptr, nullptr, n);
}

ProgP gen_mon_typed(const ExprP &op, const TypeP &from, const TypeP &to) {
    Namer n;
    return build_mon(op, true, from, to, n);
}

ProgP extract(const Script &s, const DerivP &d) {
    std::map<std::string, ProgP> cache;
    Extractor x(s, false, cache);
    return x.run(d);
}

ProgP extract_theorem(const Script &s, const std::string &name) {
    const Theorem *t = s.find(name);
    if (!t) throw ExtractError("unknown theorem " + name);
    return extract(s, t->proof);
}

ExtractionResult extract_typed(const Script &s, const std::string &name) {
    const Theorem *t = s.find(name);
    if (!t) throw ExtractError("unknown theorem " + name);
    ExtractionResult r;
    r.program = extract(s, t->proof);
    r.type = tau(t->formula);
    std::map<std::string, ProgP> cache;
    Extractor x(s, true, cache);
    r.typed = x.run(t->proof);
    r.provenance = std::move(x.prov);
    return r;
}

}
