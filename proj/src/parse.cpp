#include "ifp/logic.hpp"

namespace ifp {

namespace {

[[noreturn]] void bad(const SExpr &s, const std::string &msg) { fail_at(s.pos, msg + " in " + s.str()); }

template <class F>
auto located(const SExpr &s, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const PosError &) {
        throw;
    } catch (const Error &e) {
        fail_at(s.pos, e.what());
    }
}

const std::set<std::string> keywords = {"=",   "and",    "or",     "imp",  "not", "neq", "iff",
                                        "all", "ex",     "all-in", "ex-in", "subset", "pred",
                                        "lam", "mu",     "nu",     "op",   "cap", "cup", "pimp",
                                        "false", "true"};

}

std::vector<ObjVar> parse_binders(const SExpr &s, const Scope &sc) {
    if (!s.is_list()) bad(s, "expected a binder list");
    std::vector<ObjVar> out;
    for (auto &b : s.items) {
        if (b.atom) {
            out.push_back({b.text, sc.sig->default_sort()});
        } else {
            if (b.size() != 2 || !b[0].atom || !b[1].atom) bad(b, "malformed binder");
            if (!sc.sig->has_sort(b[1].text)) bad(b, "unknown sort " + b[1].text);
            out.push_back({b[0].text, b[1].text});
        }
        if (keywords.count(out.back().name)) bad(b, "reserved word used as variable");
    }
    return out;
}

TermP parse_term(const SExpr &s, const Scope &sc) {
    if (s.atom) {
        if (auto v = sc.find_obj(s.text)) return tvar(v->name, v->sort);
        auto it = sc.sig->funcs.find(s.text);
        if (it != sc.sig->funcs.end()) {
            if (!it->second.first.empty()) bad(s, "function symbol needs arguments");
            return tapp(s.text, {}, it->second.second);
        }
        bad(s, "unresolved symbol");
    }
    if (s.items.empty() || !s[0].atom) bad(s, "malformed term");
    auto it = sc.sig->funcs.find(s[0].text);
    if (it == sc.sig->funcs.end()) bad(s, "unresolved function symbol " + s[0].text);
    const Arity &ar = it->second.first;
    if (ar.size() + 1 != s.size()) bad(s, "wrong number of arguments for " + s[0].text);
    std::vector<TermP> args;
    for (size_t i = 1; i < s.size(); ++i) {
        args.push_back(parse_term(s[i], sc));
        if (args.back()->sort != ar[i - 1]) bad(s[i], "sort mismatch: expected " + ar[i - 1]);
    }
    return tapp(s[0].text, std::move(args), it->second.second);
}

static std::vector<TermP> parse_args(const SExpr &s, size_t from, const Scope &sc) {
    std::vector<TermP> ts;
    for (size_t i = from; i < s.size(); ++i) ts.push_back(parse_term(s[i], sc));
    return ts;
}

static ExprP fold_right(EK k, std::vector<ExprP> xs) {
    ExprP r = xs.back();
    for (size_t i = xs.size() - 1; i-- > 0;) {
        if (k == EK::And) r = mk_and(xs[i], r);
        else if (k == EK::Or) r = mk_or(xs[i], r);
        else r = mk_imp(xs[i], r);
    }
    return r;
}

static ExprP named_predicate(const SExpr &s, const Scope &sc) {
    if (auto ar = sc.find_pvar(s.text)) return mk_pvar(s.text, *ar);
    auto d = sc.sig->defs.find(s.text);
    if (d != sc.sig->defs.end()) return d->second;
    auto p = sc.sig->preds.find(s.text);
    if (p != sc.sig->preds.end()) return mk_pconst(s.text, p->second);
    bad(s, "unresolved predicate");
}

ExprP parse_formula(const SExpr &s, Scope &sc) {
    return located(s, [&]() -> ExprP {
        if (s.atom) {
            if (s.is("false")) return mk_false();
            if (s.is("true")) return mk_imp(mk_false(), mk_false());
            return mk_app(named_predicate(s, sc), {});
        }
        if (s.items.empty()) bad(s, "empty formula");
        const SExpr &h = s[0];
        if (h.is("=")) {
            if (s.size() != 3) bad(s, "= takes two terms");
            return mk_eq(parse_term(s[1], sc), parse_term(s[2], sc));
        }
        if (h.is("neq")) {
            if (s.size() != 3) bad(s, "neq takes two terms");
            return mk_not(mk_eq(parse_term(s[1], sc), parse_term(s[2], sc)));
        }
        if (h.is("and") || h.is("or") || h.is("imp")) {
            if (s.size() < 3) bad(s, "connective needs at least two operands");
            std::vector<ExprP> xs;
            for (size_t i = 1; i < s.size(); ++i) xs.push_back(parse_formula(s[i], sc));
            return fold_right(h.is("and") ? EK::And : h.is("or") ? EK::Or : EK::Imp, xs);
        }
        if (h.is("not")) {
            if (s.size() != 2) bad(s, "not takes one operand");
            return mk_not(parse_formula(s[1], sc));
        }
        if (h.is("iff")) {
            if (s.size() != 3) bad(s, "iff takes two operands");
            auto a = parse_formula(s[1], sc), b = parse_formula(s[2], sc);
            return mk_and(mk_imp(a, b), mk_imp(b, a));
        }
        if (h.is("false") && s.size() == 1) return mk_false();
        if (h.is("all") || h.is("ex")) {
            if (s.size() != 3) bad(s, "quantifier takes binders and a body");
            auto vs = parse_binders(s[1], sc);
            size_t n = sc.objs.size();
            for (auto &v : vs) sc.objs.push_back(v);
            ExprP body = parse_formula(s[2], sc);
            sc.objs.resize(n);
            for (size_t i = vs.size(); i-- > 0;) body = h.is("all") ? mk_all(vs[i], body) : mk_ex(vs[i], body);
            return body;
        }
        if (h.is("all-in") || h.is("ex-in")) {
            if (s.size() != 4) bad(s, "bounded quantifier takes a predicate, binders and a body");
            ExprP P = parse_predicate(s[1], sc);
            auto vs = parse_binders(s[2], sc);
            size_t n = sc.objs.size();
            for (auto &v : vs) sc.objs.push_back(v);
            ExprP body = parse_formula(s[3], sc);
            sc.objs.resize(n);
            std::vector<TermP> ts;
            for (auto &v : vs) ts.push_back(tvar(v.name, v.sort));
            ExprP guard = mk_app(P, ts);
            body = h.is("all-in") ? mk_imp(guard, body) : mk_and(guard, body);
            for (size_t i = vs.size(); i-- > 0;) body = h.is("all-in") ? mk_all(vs[i], body) : mk_ex(vs[i], body);
            return body;
        }
        if (h.is("subset")) {
            if (s.size() != 3) bad(s, "subset takes two predicates");
            return mk_subset(parse_predicate(s[1], sc), parse_predicate(s[2], sc));
        }
        if (h.is("pred")) {
            if (s.size() < 2) bad(s, "pred needs a predicate");
            ExprP P = parse_predicate(s[1], sc);
            return mk_app(P, parse_args(s, 2, sc));
        }
        if (h.atom && !keywords.count(h.text)) return mk_app(named_predicate(h, sc), parse_args(s, 1, sc));
        if (h.is_list()) return mk_app(parse_predicate(h, sc), parse_args(s, 1, sc));
        bad(s, "malformed formula");
    });
}

static ExprP parse_fix_body(const SExpr &s, Scope &sc, std::string &X) {
    // (mu X (x..) A) | (mu (X sorts..) P)
    if (s.size() == 4) {
        if (!s[1].atom) bad(s, "expected a predicate variable");
        X = s[1].text;
        auto vs = parse_binders(s[2], sc);
        Arity ar;
        for (auto &v : vs) ar.push_back(v.sort);
        sc.pvars.push_back({X, ar});
        size_t n = sc.objs.size();
        for (auto &v : vs) sc.objs.push_back(v);
        ExprP body = parse_formula(s[3], sc);
        sc.objs.resize(n);
        sc.pvars.pop_back();
        return mk_op(X, mk_abst(vs, body));
    }
    if (s.size() == 3 && s[1].is_list() && !s[1].items.empty() && s[1][0].atom) {
        X = s[1][0].text;
        Arity ar;
        for (size_t i = 1; i < s[1].size(); ++i) {
            if (!s[1][i].atom || !sc.sig->has_sort(s[1][i].text)) bad(s[1], "expected sorts");
            ar.push_back(s[1][i].text);
        }
        sc.pvars.push_back({X, ar});
        ExprP body = parse_predicate(s[2], sc);
        sc.pvars.pop_back();
        if (body->arity != ar) bad(s, "operator body arity mismatch");
        return mk_op(X, body);
    }
    bad(s, "malformed operator");
}

ExprP parse_operator(const SExpr &s, Scope &sc) {
    return located(s, [&]() -> ExprP {
        if (s.atom) {
            auto o = sc.sig->ops.find(s.text);
            if (o != sc.sig->ops.end()) return o->second;
            auto d = sc.sig->defs.find(s.text);
            if (d != sc.sig->defs.end() && (d->second->kind == EK::Mu || d->second->kind == EK::Nu))
                return d->second->a;
            bad(s, "unresolved operator");
        }
        if (s.head_is("op")) {
            std::string X;
            return parse_fix_body(s, sc, X);
        }
        bad(s, "malformed operator");
    });
}

ExprP parse_predicate(const SExpr &s, Scope &sc) {
    return located(s, [&]() -> ExprP {
        if (s.atom) return named_predicate(s, sc);
        if (s.items.empty()) bad(s, "empty predicate");
        const SExpr &h = s[0];
        if (h.is("lam")) {
            if (s.size() != 3) bad(s, "lam takes binders and a body");
            auto vs = parse_binders(s[1], sc);
            size_t n = sc.objs.size();
            for (auto &v : vs) sc.objs.push_back(v);
            ExprP body = parse_formula(s[2], sc);
            sc.objs.resize(n);
            return mk_abst(vs, body);
        }
        if (h.is("mu") || h.is("nu")) {
            ExprP op;
            if (s.size() == 2) {
                op = parse_operator(s[1], sc);
            } else {
                std::string X;
                op = parse_fix_body(s, sc, X);
            }
            return h.is("mu") ? mk_mu(op) : mk_nu(op);
        }
        if (h.is("cap") || h.is("cup") || h.is("pimp")) {
            if (s.size() != 3) bad(s, "predicate combination takes two predicates");
            ExprP P = parse_predicate(s[1], sc), Q = parse_predicate(s[2], sc);
            if (h.is("cap")) return mk_cap(P, Q);
            if (h.is("cup")) return mk_cup(P, Q);
            std::set<std::string> avoid = P->fv;
            avoid.insert(Q->fv.begin(), Q->fv.end());
            auto vs = fresh_vars(P->arity, avoid);
            std::vector<TermP> ts;
            for (auto &v : vs) ts.push_back(tvar(v.name, v.sort));
            return mk_abst(vs, mk_imp(mk_app(P, ts), mk_app(Q, ts)));
        }
        bad(s, "malformed predicate");
    });
}

ExprP parse(const std::string &text, const Signature &sig) {
    Scope sc{&sig};
    return parse_formula(read_sexpr(text), sc);
}

ExprP parse_pred_text(const std::string &text, const Signature &sig) {
    Scope sc{&sig};
    return parse_predicate(read_sexpr(text), sc);
}

// ---- printing

namespace {

struct Printer {
    const Signature *sig;

    std::string binder(const ObjVar &v) const {
        if (sig && !sig->sorts.empty() && v.sort != sig->default_sort()) return "(" + v.name + " " + v.sort + ")";
        return v.name;
    }

    std::string binders(const std::vector<ObjVar> &vs) const {
        std::string s = "(";
        for (size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + binder(vs[i]);
        return s + ")";
    }

    static bool is_false(const ExprP &e) { return alpha_eq(e, mk_false()); }

    std::string args(const std::vector<TermP> &ts) const {
        std::string s;
        for (auto &t : ts) s += " " + print_term(t);
        return s;
    }

    std::string pred(const ExprP &p) const {
        switch (p->kind) {
        case EK::PVar:
        case EK::PConst:
            return p->name;
        case EK::Abst:
            return "(lam " + binders(p->vars) + " " + formula(p->a) + ")";
        case EK::Mu:
        case EK::Nu: {
            if (!p->name.empty()) return p->name;
            const char *kw = p->kind == EK::Mu ? "mu" : "nu";
            return std::string("(") + kw + " " + op_inner(p->a) + ")";
        }
        case EK::Op:
            return "(op " + op_inner(p) + ")";
        default:
            return formula(p);
        }
    }

    std::string op_inner(const ExprP &op) const {
        const ExprP &body = op->a;
        if (body->kind == EK::Abst) return op->name + " " + binders(body->vars) + " " + formula(body->a);
        std::string s = "(" + op->name;
        for (auto &srt : op->arity) s += " " + srt;
        return s + ") " + pred(body);
    }

    std::string chain(const char *kw, EK k, const ExprP &e) const {
        std::string s = std::string("(") + kw;
        ExprP cur = e;
        while (cur->kind == k && !(k == EK::Imp && is_false(cur->b))) {
            s += " " + formula(cur->a);
            cur = cur->b;
        }
        return s + " " + formula(cur) + ")";
    }

    std::string formula(const ExprP &e) const {
        switch (e->kind) {
        case EK::Eq:
            return "(= " + print_term(e->terms[0]) + " " + print_term(e->terms[1]) + ")";
        case EK::PredApp: {
            if (is_false(e)) return "false";
            const ExprP &p = e->a;
            bool named = p->kind == EK::PVar || p->kind == EK::PConst ||
                         ((p->kind == EK::Mu || p->kind == EK::Nu) && !p->name.empty());
            if (named) return "(" + p->name + args(e->terms) + ")";
            return "(pred " + pred(p) + args(e->terms) + ")";
        }
        case EK::And:
            return chain("and", EK::And, e);
        case EK::Or:
            return chain("or", EK::Or, e);
        case EK::Imp:
            if (is_false(e->b)) {
                if (e->a->kind == EK::Eq)
                    return "(neq " + print_term(e->a->terms[0]) + " " + print_term(e->a->terms[1]) + ")";
                return "(not " + formula(e->a) + ")";
            }
            return chain("imp", EK::Imp, e);
        case EK::All:
        case EK::Ex: {
            std::vector<ObjVar> vs;
            ExprP cur = e;
            while (cur->kind == e->kind) {
                vs.push_back(cur->vars[0]);
                cur = cur->a;
            }
            return std::string("(") + (e->kind == EK::All ? "all " : "ex ") + binders(vs) + " " + formula(cur) + ")";
        }
        default:
            return pred(e);
        }
    }
};

}

std::string print_expr(const ExprP &e, const Signature *sig) {
    Printer p{sig};
    return p.formula(e);
}

}
