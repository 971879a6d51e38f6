#include "ifp/audit.hpp"
#include "ifp/types.hpp"

#include <functional>

namespace ifp {

std::string real_pvar(const std::string &X) { return X + "̃"; }

namespace {

const char *delta = "δ";

RNodeP r_ifp(const ExprP &e) {
    auto n = std::make_shared<RNode>();
    n->kind = RK::Ifp;
    n->ifp = e;
    return n;
}

RNodeP r_eq(const ProgP &l, const ProgP &r) {
    auto n = std::make_shared<RNode>();
    n->kind = RK::Eq;
    n->lhs = l;
    n->rhs = r;
    return n;
}

RNodeP r_mem(const ProgP &c, const ExprP &src) {
    auto n = std::make_shared<RNode>();
    n->kind = RK::Mem;
    n->realizer = c;
    n->ifp = src;
    n->type = tau(src);
    return n;
}

RNodeP r_bin(RK k, RNodeP a, RNodeP b) {
    auto n = std::make_shared<RNode>();
    n->kind = k;
    n->kids = {std::move(a), std::move(b)};
    return n;
}

RNodeP r_quant(RK k, std::vector<ObjVar> vs, RNodeP body) {
    auto n = std::make_shared<RNode>();
    n->kind = k;
    n->vars = std::move(vs);
    n->kids = {std::move(body)};
    return n;
}

void expr_names(const ExprP &e, std::set<std::string> &out) {
    if (!e) return;
    out.insert(e->fv.begin(), e->fv.end());
    for (auto &v : e->vars) out.insert(v.name);
    expr_names(e->a, out);
    expr_names(e->b, out);
}

struct Gen {
    std::set<std::string> used;
    RealFormula out;
    std::set<std::string> seen;

    std::string fresh(const std::string &base) {
        std::string n = used.count(base) ? fresh_name(base, used) : base;
        used.insert(n);
        return n;
    }

    ObjVar rvar(const std::string &base) { return {fresh(base), delta}; }

    // a r A
    RNodeP real(const ProgP &a, const ExprP &A) {
        if (is_harrop(A)) return r_bin(RK::And, r_eq(a, p_nil()), harrop(A));
        switch (A->kind) {
        case EK::PredApp: {
            auto n = std::make_shared<RNode>();
            n->kind = RK::App;
            n->kids = {real_pred(A->a)};
            n->terms = A->terms;
            n->realizer = a;
            return n;
        }
        case EK::Or: {
            auto side = [&](const ExprP &B, bool left) {
                auto wrap = [&](ProgP x) { return left ? p_left(std::move(x)) : p_right(std::move(x)); };
                // one-point rule on the Nil payload of a Harrop disjunct
                if (is_harrop(B)) return r_bin(RK::And, r_eq(a, wrap(p_nil())), harrop(B));
                ObjVar b = rvar(left ? "a" : "b");
                return r_quant(RK::Ex, {b}, r_bin(RK::And, r_eq(a, wrap(p_var(b.name))), real(p_var(b.name), B)));
            };
            RNodeP l = side(A->a, true);
            return r_bin(RK::Or, l, side(A->b, false));
        }
        case EK::And: {
            if (is_harrop(A->b)) return r_bin(RK::And, real(a, A->a), harrop(A->b));
            if (is_harrop(A->a)) return r_bin(RK::And, harrop(A->a), real(a, A->b));
            ObjVar x = rvar("a"), y = rvar("b");
            RNodeP ra = real(p_var(x.name), A->a);
            RNodeP rb = real(p_var(y.name), A->b);
            return r_quant(RK::Ex, {x, y},
                           r_bin(RK::And, r_eq(a, p_pair(p_var(x.name), p_var(y.name))), r_bin(RK::And, ra, rb)));
        }
        case EK::Imp: {
            if (is_harrop(A->a)) return r_bin(RK::And, r_mem(a, A->b), r_bin(RK::Imp, harrop(A->a), real(a, A->b)));
            ObjVar x = rvar("a");
            RNodeP prem = real(p_var(x.name), A->a);
            RNodeP concl = real(p_app(a, p_var(x.name)), A->b);
            return r_bin(RK::And, r_mem(a, A), r_quant(RK::All, {x}, r_bin(RK::Imp, prem, concl)));
        }
        case EK::All:
        case EK::Ex:
            return r_quant(A->kind == EK::All ? RK::All : RK::Ex, A->vars, real(a, A->a));
        default:
            throw AuditError("realizability of a non-formula");
        }
    }

    RNodeP real_pred(const ExprP &P) {
        switch (P->kind) {
        case EK::PVar: {
            auto n = std::make_shared<RNode>();
            n->kind = RK::PVar;
            n->name = real_pvar(P->name);
            return n;
        }
        case EK::Abst: {
            auto n = std::make_shared<RNode>();
            n->kind = RK::Abst;
            n->vars = P->vars;
            ObjVar a = rvar("a");
            n->vars.push_back(a);
            n->kids = {real(p_var(a.name), P->a)};
            return n;
        }
        case EK::Mu:
        case EK::Nu: {
            if (!P->name.empty()) return named("R(" + P->name + ")", [&] { return real_fix(P); });
            return real_fix(P);
        }
        case EK::Op: {
            auto n = std::make_shared<RNode>();
            n->kind = RK::Op;
            n->name = real_pvar(P->name);
            n->kids = {real_pred(P->a)};
            return n;
        }
        default:
            throw AuditError("R of a Harrop predicate");
        }
    }

    RNodeP real_fix(const ExprP &P) {
        auto n = std::make_shared<RNode>();
        n->kind = P->kind == EK::Mu ? RK::Mu : RK::Nu;
        n->kids = {real_pred(P->a)};
        return n;
    }

    template <class F>
    RNodeP named(const std::string &name, F build) {
        if (!seen.count(name)) {
            seen.insert(name);
            size_t slot = out.defs.size();
            out.defs.push_back({name, nullptr});
            RNodeP def = build();
            out.defs[slot].second = def;
        }
        auto n = std::make_shared<RNode>();
        n->kind = RK::Named;
        n->name = name;
        return n;
    }

    // H(A), A Harrop
    RNodeP harrop(const ExprP &A) {
        if (is_nc(A)) return r_ifp(A);
        switch (A->kind) {
        case EK::PredApp: {
            auto n = std::make_shared<RNode>();
            n->kind = RK::App;
            n->kids = {harrop_pred(A->a)};
            n->terms = A->terms;
            return n;
        }
        case EK::And:
            return r_bin(RK::And, harrop(A->a), harrop(A->b));
        case EK::Imp: {
            ObjVar x = rvar("a");
            RNodeP ra = r_quant(RK::Ex, {x}, real(p_var(x.name), A->a));
            return r_bin(RK::Imp, ra, harrop(A->b));
        }
        case EK::All:
        case EK::Ex:
            return r_quant(A->kind == EK::All ? RK::All : RK::Ex, A->vars, harrop(A->a));
        default:
            throw AuditError("H of a non-Harrop formula");
        }
    }

    RNodeP harrop_pred(const ExprP &P) {
        if (is_nc(P)) return r_ifp(P);
        switch (P->kind) {
        case EK::PConst:
            return r_ifp(P);
        case EK::Abst: {
            auto n = std::make_shared<RNode>();
            n->kind = RK::Abst;
            n->vars = P->vars;
            n->kids = {harrop(P->a)};
            return n;
        }
        case EK::Mu:
        case EK::Nu: {
            auto build = [&] {
                auto n = std::make_shared<RNode>();
                n->kind = P->kind == EK::Mu ? RK::Mu : RK::Nu;
                n->kids = {harrop_pred(P->a)};
                return RNodeP(n);
            };
            if (!P->name.empty()) return named("H(" + P->name + ")", build);
            return build();
        }
        case EK::Op: {
            // H_X(P): X as a constant
            auto n = std::make_shared<RNode>();
            n->kind = RK::Op;
            n->name = P->name;
            n->kids = {harrop_pred(subst_pred(P->a, P->name, mk_pconst(P->name, P->arity)))};
            return n;
        }
        default:
            throw AuditError("H of a non-Harrop predicate");
        }
    }
};

struct RPrinter {
    const Signature *sig;

    static std::string prog(const ProgP &m) {
        std::string s = print_prog(m);
        return m->kind == PK::App ? "{" + s + "}" : s;
    }

    std::string binders(const std::vector<ObjVar> &vs) const {
        std::string s = "(";
        for (size_t i = 0; i < vs.size(); ++i) {
            s += i ? " " : "";
            bool plain = vs[i].sort != delta && (!sig || sig->sorts.empty() || vs[i].sort == sig->default_sort());
            s += plain ? vs[i].name : "(" + vs[i].name + " " + vs[i].sort + ")";
        }
        return s + ")";
    }

    std::string chain(const char *kw, RK k, const RNodeP &f) const {
        std::vector<RNodeP> items;
        // flatten left and right nested runs of the same connective
        std::function<void(const RNodeP &)> go = [&](const RNodeP &n) {
            if (n->kind == k && k != RK::Imp) {
                go(n->kids[0]);
                go(n->kids[1]);
            } else {
                items.push_back(n);
            }
        };
        if (k == RK::Imp) {
            RNodeP cur = f;
            while (cur->kind == RK::Imp) {
                items.push_back(cur->kids[0]);
                cur = cur->kids[1];
            }
            items.push_back(cur);
        } else {
            go(f);
        }
        std::string s = std::string("(") + kw;
        for (auto &i : items) s += " " + print(i);
        return s + ")";
    }

    std::string pred(const RNodeP &p) const {
        switch (p->kind) {
        case RK::PVar:
        case RK::Named:
            return p->name;
        case RK::Ifp:
            return print_expr(p->ifp, sig);
        case RK::Abst:
            return "(lam " + binders(p->vars) + " " + print(p->kids[0]) + ")";
        case RK::Mu:
        case RK::Nu:
            return std::string("(") + (p->kind == RK::Mu ? "mu " : "nu ") + op_inner(p->kids[0]) + ")";
        case RK::Op:
            return "(op " + op_inner(p) + ")";
        default:
            return print(p);
        }
    }

    std::string op_inner(const RNodeP &op) const {
        const RNodeP &body = op->kids[0];
        if (body->kind == RK::Abst) return op->name + " " + binders(body->vars) + " " + print(body->kids[0]);
        return op->name + " " + pred(body);
    }

    std::string print(const RNodeP &f) const {
        switch (f->kind) {
        case RK::Ifp:
            return print_expr(f->ifp, sig);
        case RK::Eq:
            return "(= " + prog(f->lhs) + " " + prog(f->rhs) + ")";
        case RK::Mem:
            return "(: " + prog(f->realizer) + " " + print_type(f->type) + ")";
        case RK::And:
            return chain("and", RK::And, f);
        case RK::Or:
            return chain("or", RK::Or, f);
        case RK::Imp:
            return chain("imp", RK::Imp, f);
        case RK::All:
        case RK::Ex: {
            std::vector<ObjVar> vs;
            RNodeP cur = f;
            while (cur->kind == f->kind) {
                vs.insert(vs.end(), cur->vars.begin(), cur->vars.end());
                cur = cur->kids[0];
            }
            return std::string("(") + (f->kind == RK::All ? "all " : "ex ") + binders(vs) + " " + print(cur) + ")";
        }
        case RK::App: {
            const RNodeP &p = f->kids[0];
            std::string s = "(";
            bool simple = p->kind == RK::PVar || p->kind == RK::Named ||
                          (p->kind == RK::Ifp && (p->ifp->kind == EK::PConst || !p->ifp->name.empty()));
            s += simple ? (p->kind == RK::Ifp ? p->ifp->name : p->name) : "pred " + pred(p);
            for (auto &t : f->terms) s += " " + print_term(t);
            if (f->realizer) s += " " + prog(f->realizer);
            return s + ")";
        }
        default:
            return pred(f);
        }
    }
};

}

RealFormula realizability_formula(const std::string &a, const ExprP &A) {
    Gen g;
    expr_names(A, g.used);
    std::string v = g.fresh(a);
    g.out.body = g.real(p_var(v), A);
    return g.out;
}

RealFormula harrop_interpretation(const ExprP &A) {
    if (!is_harrop(A)) throw AuditError("H is defined for Harrop formulas only");
    Gen g;
    expr_names(A, g.used);
    g.out.body = g.harrop(A);
    return g.out;
}

std::string print_rformula(const RNodeP &f, const Signature *sig) { return RPrinter{sig}.print(f); }

std::string print_real(const RealFormula &f, const Signature *sig) {
    RPrinter p{sig};
    std::string s = p.print(f.body) + "\n";
    for (auto &[n, d] : f.defs) s += "  " + n + " = " + p.pred(d) + "\n";
    return s;
}

void collect_memberships(const RNodeP &f, std::vector<const RNode *> &out) {
    if (!f) return;
    if (f->kind == RK::Mem) out.push_back(f.get());
    for (auto &k : f->kids) collect_memberships(k, out);
}

}
