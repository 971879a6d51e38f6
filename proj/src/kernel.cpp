#include "ifp/kernel.hpp"

namespace ifp {

const char *dk_name(DK k) {
    switch (k) {
    case DK::Assume: return "assume";
    case DK::Axiom: return "ax";
    case DK::Use: return "use";
    case DK::Refl: return "refl";
    case DK::Cong: return "cong";
    case DK::AndI: return "andi";
    case DK::AndL: return "andl";
    case DK::AndR: return "andr";
    case DK::OrL: return "orl";
    case DK::OrR: return "orr";
    case DK::OrE: return "ore";
    case DK::ImpI: return "impi";
    case DK::ImpE: return "impe";
    case DK::AllI: return "alli";
    case DK::AllE: return "alle";
    case DK::ExI: return "exi";
    case DK::ExE: return "exe";
    case DK::Cl: return "clos";
    case DK::Ind: return "ind";
    case DK::CoCl: return "cocl";
    case DK::Coind: return "coind";
    case DK::SI: return "si";
    case DK::HSI: return "hsi";
    case DK::SCI: return "sci";
    case DK::HSCI: return "hsci";
    case DK::WfI: return "wfi";
    case DK::AIq: return "aiq";
    case DK::AIBq: return "aibq";
    }
    return "?";
}

ExprP fixpoint_of(EK k, const ExprP &op, const Signature &sig) {
    for (auto &[name, d] : sig.defs)
        if (d->kind == k && d->a == op) return d;
    for (auto &[name, d] : sig.defs)
        if (d->kind == k && alpha_eq(d->a, op)) return d;
    return k == EK::Mu ? mk_mu(op) : mk_nu(op);
}

Schema fixpoint_schema(const Deriv &d, const Signature &sig) {
    const ExprP &op = d.op, &P = d.p;
    if (op->kind != EK::Op) throw Error("expected an operator");
    if (P && pred_arity(P) != op->arity) throw Error("arity mismatch between operator and predicate");
    ExprP mu = fixpoint_of(EK::Mu, op, sig), nu = fixpoint_of(EK::Nu, op, sig);
    switch (d.kind) {
    case DK::Cl:
        return {nullptr, mk_subset(apply_op(op, mu), mu)};
    case DK::CoCl:
        return {nullptr, mk_subset(nu, apply_op(op, nu))};
    case DK::Ind:
        return {mk_subset(apply_op(op, P), P), mk_subset(mu, P)};
    case DK::SI:
        return {mk_subset(apply_op(op, mk_cap(P, mu)), P), mk_subset(mu, P)};
    case DK::HSI:
        return {mk_subset(mk_cap(apply_op(op, P), mu), P), mk_subset(mu, P)};
    case DK::Coind:
        return {mk_subset(P, apply_op(op, P)), mk_subset(P, nu)};
    case DK::SCI:
        return {mk_subset(P, apply_op(op, mk_cup(P, nu))), mk_subset(P, nu)};
    case DK::HSCI:
        return {mk_subset(P, mk_cup(apply_op(op, P), nu)), mk_subset(P, nu)};
    default:
        throw Error("not a fixed-point rule");
    }
}

namespace {

const std::string &need_fun(const Signature &sig, const std::string &f, size_t arity) {
    auto it = sig.funcs.find(f);
    if (it == sig.funcs.end() || it->second.first.size() != arity)
        throw Error("schema instantiation failure: signature lacks function symbol " + f + "/" +
                    std::to_string(arity));
    return it->second.second;
}

void need_unary(const ExprP &P, const char *what) {
    if (pred_arity(P).size() != 1)
        throw Error(std::string("schema instantiation failure: ") + what + " must be unary");
}

}

Schema expand_derived(const Deriv &d, const Signature &sig) {
    std::set<std::string> avoid;
    for (auto *e : {&d.op, &d.p, &d.q})
        if (*e) avoid.insert((*e)->fv.begin(), (*e)->fv.end());
    if (d.t) term_fv(d.t, avoid);

    if (d.kind == DK::WfI) {
        const ExprP &prec = d.op, &A = d.q, &P = d.p;
        need_unary(A, "A");
        need_unary(P, "P");
        const std::string &s = P->arity[0];
        if (A->arity[0] != s || prec->arity != Arity{s, s})
            throw Error("schema instantiation failure: relation and predicates disagree on sorts");
        auto xs = fresh_vars({s, s}, avoid, {"x", "y"});
        TermP x = tvar(xs[0].name, s), y = tvar(xs[1].name, s);
        ExprP inner = mk_all(xs[1], mk_imp(mk_app(A, {y}), mk_imp(mk_app(prec, {y, x}), mk_app(P, {y}))));
        ExprP prog = mk_all(xs[0], mk_imp(mk_app(A, {x}), mk_imp(inner, mk_app(P, {x}))));
        // Acc = µ(λX λx ∀y (y ≺ x → X(y)))
        std::string X = fresh_name("X", prec->fpv);
        ExprP acc_body = mk_abst({xs[0]}, mk_all(xs[1], mk_imp(mk_app(prec, {y, x}), mk_app(mk_pvar(X, {s}), {y}))));
        ExprP acc = fixpoint_of(EK::Mu, mk_op(X, acc_body), sig);
        return {prog, mk_subset(mk_cap(acc, A), P)};
    }
    if (d.kind != DK::AIq && d.kind != DK::AIBq) throw Error("not a derived rule");
    const ExprP &P = d.p;
    need_unary(P, "P");
    const std::string &s = P->arity[0];
    if (d.t->sort != s) throw Error("schema instantiation failure: bound has the wrong sort");
    if (need_fun(sig, "abs", 1) != s || need_fun(sig, "*", 2) != s || need_fun(sig, "2", 0) != s ||
        need_fun(sig, "0", 0) != s)
        throw Error("schema instantiation failure: arithmetic symbols have the wrong sort");
    auto le = sig.preds.find("<=");
    if (le == sig.preds.end() || le->second != Arity{s, s})
        throw Error("schema instantiation failure: signature lacks predicate <=");
    auto xs = fresh_vars({s}, avoid, {"x"});
    TermP x = tvar(xs[0].name, s);
    TermP two_x = tapp("*", {tapp("2", {}, s), x}, s);
    ExprP small = mk_app(mk_pconst("<=", {s, s}), {tapp("abs", {x}, s), d.t});
    ExprP nonzero = mk_not(mk_eq(x, tapp("0", {}, s)));
    if (d.kind == DK::AIq) {
        ExprP prem = mk_imp(mk_imp(small, mk_app(P, {two_x})), mk_app(P, {x}));
        return {mk_all(xs[0], mk_imp(nonzero, prem)), mk_all(xs[0], mk_imp(nonzero, mk_app(P, {x})))};
    }
    const ExprP &B = d.q;
    need_unary(B, "B");
    if (B->arity[0] != s) throw Error("schema instantiation failure: B and P disagree on sorts");
    ExprP step = mk_and(small, mk_and(mk_app(B, {two_x}), mk_imp(mk_app(P, {two_x}), mk_app(P, {x}))));
    ExprP prem = mk_or(mk_app(P, {x}), step);
    auto guard = [&](ExprP body) { return mk_all(xs[0], mk_imp(mk_app(B, {x}), mk_imp(nonzero, body))); };
    return {guard(prem), guard(mk_app(P, {x}))};
}

namespace {

struct Checker {
    const KernelEnv &env;
    std::vector<std::string> path;

    std::string where() const {
        std::string s;
        for (auto &p : path) s += (s.empty() ? "" : "/") + p;
        return s;
    }

    [[noreturn]] void fail(const Deriv &d, const std::string &kind, const std::string &msg) {
        throw RuleError(d.pos.str() + ": " + kind + ": " + msg + " [at " + where() + "]", where());
    }

    std::string show(const ExprP &e) const { return print_expr(e, env.sig); }

    void expect(const Deriv &d, const ExprP &got, const ExprP &want, const char *what) {
        if (!alpha_eq(got, want))
            fail(d, "rule-mismatch", std::string(what) + ": expected " + show(want) + ", found " + show(got));
    }

    ExprP sub(const Deriv &d, size_t i, Context &ctx) {
        path.push_back(std::string(dk_name(d.sub[i]->kind)) + "#" + std::to_string(i));
        ExprP r = run(*d.sub[i], ctx);
        path.pop_back();
        return r;
    }

    ExprP run(const Deriv &d, Context &ctx) {
        try {
            return run_(d, ctx);
        } catch (const RuleError &) {
            throw;
        } catch (const Error &e) {
            fail(d, "rule-mismatch", e.what());
        }
    }

    ExprP run_(const Deriv &d, Context &ctx) {
        switch (d.kind) {
        case DK::Assume:
            for (size_t i = ctx.size(); i-- > 0;)
                if (ctx[i].first == d.label) return ctx[i].second;
            fail(d, "unbound-assumption", "no assumption labelled " + d.label);
        case DK::Axiom: {
            auto it = env.sig->axioms.find(d.label);
            if (it == env.sig->axioms.end()) fail(d, "unknown-axiom", d.label);
            return it->second;
        }
        case DK::Use: {
            auto it = env.lemmas.find(d.label);
            if (it == env.lemmas.end()) fail(d, "unknown-theorem", d.label);
            return it->second;
        }
        case DK::Refl:
            return mk_eq(d.t, d.t);
        case DK::Cong: {
            ExprP a = sub(d, 0, ctx), e = sub(d, 1, ctx);
            if (e->kind != EK::Eq) fail(d, "rule-mismatch", "second premise must be an equation, found " + show(e));
            if (d.f->kind != EK::Abst || d.f->vars.size() != 1)
                fail(d, "rule-mismatch", "congruence needs a unary abstraction");
            expect(d, a, mk_app(d.f, {e->terms[0]}), "congruence premise");
            return mk_app(d.f, {e->terms[1]});
        }
        case DK::AndI: {
            ExprP a = sub(d, 0, ctx);
            return mk_and(a, sub(d, 1, ctx));
        }
        case DK::AndL:
        case DK::AndR: {
            ExprP a = sub(d, 0, ctx);
            if (a->kind != EK::And) fail(d, "rule-mismatch", "expected a conjunction, found " + show(a));
            return d.kind == DK::AndL ? a->a : a->b;
        }
        case DK::OrL:
            return mk_or(sub(d, 0, ctx), d.f);
        case DK::OrR:
            return mk_or(d.f, sub(d, 0, ctx));
        case DK::OrE: {
            ExprP a = sub(d, 0, ctx), e = sub(d, 1, ctx), f = sub(d, 2, ctx);
            if (a->kind != EK::Or) fail(d, "rule-mismatch", "expected a disjunction, found " + show(a));
            if (e->kind != EK::Imp || f->kind != EK::Imp)
                fail(d, "rule-mismatch", "case branches must prove implications");
            expect(d, e->a, a->a, "left branch premise");
            expect(d, f->a, a->b, "right branch premise");
            expect(d, f->b, e->b, "branch conclusions differ");
            return e->b;
        }
        case DK::ImpI: {
            ctx.emplace_back(d.label, d.f);
            ExprP b = sub(d, 0, ctx);
            ctx.pop_back();
            return mk_imp(d.f, b);
        }
        case DK::ImpE: {
            ExprP f = sub(d, 0, ctx), a = sub(d, 1, ctx);
            if (f->kind != EK::Imp) fail(d, "rule-mismatch", "expected an implication, found " + show(f));
            expect(d, a, f->a, "argument");
            return f->b;
        }
        case DK::AllI: {
            for (auto &[l, A] : ctx)
                if (A->fv.count(d.x.name))
                    fail(d, "eigenvariable-violation", d.x.name + " is free in assumption " + l);
            return mk_all(d.x, sub(d, 0, ctx));
        }
        case DK::AllE: {
            ExprP a = sub(d, 0, ctx);
            if (a->kind != EK::All) fail(d, "rule-mismatch", "expected a universal formula, found " + show(a));
            if (a->vars[0].sort != d.t->sort) fail(d, "rule-mismatch", "instance has sort " + d.t->sort);
            return subst_obj(a->a, a->vars[0].name, d.t);
        }
        case DK::ExI: {
            if (d.f->kind != EK::Abst || d.f->vars.size() != 1)
                fail(d, "rule-mismatch", "witness display must be a unary abstraction");
            ExprP a = sub(d, 0, ctx);
            expect(d, a, mk_app(d.f, {d.t}), "witness premise");
            return mk_ex(d.f->vars[0], d.f->a);
        }
        case DK::ExE: {
            ExprP a = sub(d, 0, ctx), e = sub(d, 1, ctx);
            if (a->kind != EK::Ex) fail(d, "rule-mismatch", "expected an existential, found " + show(a));
            if (e->kind != EK::All || e->a->kind != EK::Imp)
                fail(d, "rule-mismatch", "second premise must have the form ∀x(A → B), found " + show(e));
            expect(d, mk_ex(e->vars[0], e->a->a), a, "existential premise");
            if (e->a->b->fv.count(e->vars[0].name))
                fail(d, "eigenvariable-violation", e->vars[0].name + " is free in the conclusion");
            return e->a->b;
        }
        case DK::Cl:
        case DK::CoCl:
            return fixpoint_schema(d, *env.sig).conclusion;
        case DK::Ind:
        case DK::Coind:
        case DK::SI:
        case DK::HSI:
        case DK::SCI:
        case DK::HSCI: {
            Schema s = fixpoint_schema(d, *env.sig);
            expect(d, sub(d, 0, ctx), s.premise, "premise");
            return s.conclusion;
        }
        case DK::WfI:
        case DK::AIq:
        case DK::AIBq: {
            Schema s = expand_derived(d, *env.sig);
            expect(d, sub(d, 0, ctx), s.premise, "premise");
            return s.conclusion;
        }
        }
        fail(d, "rule-mismatch", "unknown rule");
    }
};

}

ExprP infer(const KernelEnv &env, const Context &ctx0, const DerivP &d) {
    Checker c{env, {dk_name(d->kind)}};
    Context ctx = ctx0;
    return c.run(*d, ctx);
}

void check(const KernelEnv &env, const Context &ctx, const DerivP &d, const ExprP &A) {
    ExprP got = infer(env, ctx, d);
    if (!alpha_eq(got, A))
        throw RuleError(d->pos.str() + ": mismatch: derivation proves " + print_expr(got, env.sig) +
                            " but the statement is " + print_expr(A, env.sig),
                        "");
}

}
