#include "ifp/logic.hpp"

#include <algorithm>
#include <cctype>

namespace ifp {

TermP tvar(const std::string &name, const std::string &sort) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Var;
    t->name = name;
    t->sort = sort;
    return t;
}

TermP tapp(const std::string &f, std::vector<TermP> args, const std::string &sort) {
    auto t = std::make_shared<Term>();
    t->kind = Term::App;
    t->name = f;
    t->sort = sort;
    t->args = std::move(args);
    return t;
}

bool term_eq(const TermP &a, const TermP &b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!term_eq(a->args[i], b->args[i])) return false;
    return true;
}

void term_fv(const TermP &t, std::set<std::string> &out) {
    if (t->kind == Term::Var) {
        out.insert(t->name);
        return;
    }
    for (auto &a : t->args) term_fv(a, out);
}

std::string print_term(const TermP &t) {
    if (t->kind == Term::Var || t->args.empty()) return t->name;
    std::string s = "(" + t->name;
    for (auto &a : t->args) s += " " + print_term(a);
    return s + ")";
}

TermP subst_term(const TermP &t, const std::map<std::string, TermP> &m) {
    if (m.empty()) return t;
    if (t->kind == Term::Var) {
        auto it = m.find(t->name);
        return it == m.end() ? t : it->second;
    }
    bool changed = false;
    std::vector<TermP> args;
    args.reserve(t->args.size());
    for (auto &a : t->args) {
        args.push_back(subst_term(a, m));
        changed |= args.back() != a;
    }
    return changed ? tapp(t->name, std::move(args), t->sort) : t;
}

// ---- construction

namespace {

std::shared_ptr<Expr> node(EK k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

void absorb(Expr &e, const ExprP &c) {
    if (!c) return;
    e.fv.insert(c->fv.begin(), c->fv.end());
    e.fpv.insert(c->fpv.begin(), c->fpv.end());
}

ExprP binary(EK k, ExprP a, ExprP b) {
    if (!a->is_formula() || !b->is_formula()) throw Error("connective applied to a non-formula");
    auto e = node(k);
    absorb(*e, a);
    absorb(*e, b);
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprP quant(EK k, ObjVar x, ExprP body) {
    if (!body->is_formula()) throw Error("quantifier over a non-formula");
    auto e = node(k);
    absorb(*e, body);
    e->fv.erase(x.name);
    e->vars = {std::move(x)};
    e->a = std::move(body);
    return e;
}

}

ExprP mk_eq(TermP s, TermP t) {
    if (s->sort != t->sort) throw Error("sort mismatch in equation " + print_term(s) + " = " + print_term(t));
    auto e = node(EK::Eq);
    term_fv(s, e->fv);
    term_fv(t, e->fv);
    e->terms = {std::move(s), std::move(t)};
    return e;
}

const Arity &pred_arity(const ExprP &p) {
    if (!p->is_predicate() && p->kind != EK::Op) throw Error("expected a predicate");
    return p->arity;
}

ExprP mk_app(ExprP pred, std::vector<TermP> args) {
    const Arity &ar = pred_arity(pred);
    if (ar.size() != args.size())
        throw Error("arity mismatch: predicate expects " + std::to_string(ar.size()) + " arguments, got " +
                    std::to_string(args.size()));
    for (size_t i = 0; i < ar.size(); ++i)
        if (ar[i] != args[i]->sort)
            throw Error("sort mismatch: argument " + print_term(args[i]) + " has sort " + args[i]->sort +
                        ", expected " + ar[i]);
    if (pred->kind == EK::Abst) {
        Subst s;
        for (size_t i = 0; i < args.size(); ++i) s.obj[pred->vars[i].name] = args[i];
        return substitute(pred->a, s);
    }
    auto e = node(EK::PredApp);
    absorb(*e, pred);
    for (auto &t : args) term_fv(t, e->fv);
    e->a = std::move(pred);
    e->terms = std::move(args);
    return e;
}

ExprP mk_and(ExprP a, ExprP b) { return binary(EK::And, std::move(a), std::move(b)); }
ExprP mk_or(ExprP a, ExprP b) { return binary(EK::Or, std::move(a), std::move(b)); }
ExprP mk_imp(ExprP a, ExprP b) { return binary(EK::Imp, std::move(a), std::move(b)); }
ExprP mk_all(ObjVar x, ExprP body) { return quant(EK::All, std::move(x), std::move(body)); }
ExprP mk_ex(ObjVar x, ExprP body) { return quant(EK::Ex, std::move(x), std::move(body)); }

ExprP mk_pvar(const std::string &name, Arity ar) {
    auto e = node(EK::PVar);
    e->name = name;
    e->arity = std::move(ar);
    e->fpv.insert(name);
    return e;
}

ExprP mk_pconst(const std::string &name, Arity ar) {
    auto e = node(EK::PConst);
    e->name = name;
    e->arity = std::move(ar);
    return e;
}

ExprP mk_abst(std::vector<ObjVar> vars, ExprP body) {
    if (!body->is_formula()) throw Error("abstraction body must be a formula");
    auto e = node(EK::Abst);
    absorb(*e, body);
    for (auto &v : vars) {
        e->fv.erase(v.name);
        e->arity.push_back(v.sort);
    }
    e->vars = std::move(vars);
    e->a = std::move(body);
    return e;
}

ExprP mk_op(const std::string &X, ExprP body) {
    if (!body->is_predicate()) throw Error("operator body must be a predicate");
    if (!strictly_positive(body, X))
        throw Error("operator body is not strictly positive in " + X);
    auto e = node(EK::Op);
    absorb(*e, body);
    e->fpv.erase(X);
    e->name = X;
    e->arity = body->arity;
    e->a = std::move(body);
    return e;
}

static ExprP fixpoint(EK k, ExprP op, const std::string &display) {
    if (op->kind != EK::Op) throw Error("mu/nu expects an operator");
    auto e = node(k);
    absorb(*e, op);
    e->arity = op->arity;
    e->name = display;
    e->a = std::move(op);
    return e;
}

ExprP mk_mu(ExprP op, const std::string &display) { return fixpoint(EK::Mu, std::move(op), display); }
ExprP mk_nu(ExprP op, const std::string &display) { return fixpoint(EK::Nu, std::move(op), display); }

ExprP mk_false() {
    static const ExprP f = mk_app(mk_mu(mk_op("X", mk_pvar("X", {}))), {});
    return f;
}

ExprP mk_not(ExprP a) { return mk_imp(std::move(a), mk_false()); }

ExprP apply_op(const ExprP &op, const ExprP &Q) {
    if (op->kind != EK::Op) throw Error("expected an operator");
    if (pred_arity(Q) != op->arity) throw Error("arity mismatch applying operator");
    return subst_pred(op->a, op->name, Q);
}

std::string fresh_name(const std::string &base0, const std::set<std::string> &avoid) {
    std::string base = base0;
    while (!base.empty() && (std::isdigit(static_cast<unsigned char>(base.back())) || base.back() == '\''))
        base.pop_back();
    if (base.empty()) base = "v";
    for (int i = 1;; ++i) {
        std::string n = base + std::to_string(i);
        if (!avoid.count(n)) return n;
    }
}

std::vector<ObjVar> fresh_vars(const Arity &ar, const std::set<std::string> &avoid,
                               const std::vector<std::string> &hints) {
    static const char *defaults[] = {"x", "y", "z", "w"};
    std::set<std::string> used = avoid;
    std::vector<ObjVar> out;
    for (size_t i = 0; i < ar.size(); ++i) {
        std::string n = i < hints.size() ? hints[i] : (i < 4 ? defaults[i] : "x");
        if (used.count(n)) n = fresh_name(n, used);
        used.insert(n);
        out.push_back({n, ar[i]});
    }
    return out;
}

static std::vector<std::string> hints_of(const ExprP &P) {
    std::vector<std::string> h;
    if (P->kind == EK::Abst)
        for (auto &v : P->vars) h.push_back(v.name);
    return h;
}

static std::vector<TermP> as_terms(const std::vector<ObjVar> &vs) {
    std::vector<TermP> ts;
    for (auto &v : vs) ts.push_back(tvar(v.name, v.sort));
    return ts;
}

ExprP mk_subset(const ExprP &P, const ExprP &Q) {
    if (pred_arity(P) != pred_arity(Q)) throw Error("arity mismatch in inclusion");
    std::set<std::string> avoid = P->fv;
    avoid.insert(Q->fv.begin(), Q->fv.end());
    auto h = hints_of(P);
    if (h.empty()) h = hints_of(Q);
    auto vs = fresh_vars(P->arity, avoid, h);
    auto ts = as_terms(vs);
    ExprP body = mk_imp(mk_app(P, ts), mk_app(Q, ts));
    for (size_t i = vs.size(); i-- > 0;) body = mk_all(vs[i], body);
    return body;
}

static ExprP pointwise(EK k, const ExprP &P, const ExprP &Q) {
    if (pred_arity(P) != pred_arity(Q)) throw Error("arity mismatch in predicate combination");
    std::set<std::string> avoid = P->fv;
    avoid.insert(Q->fv.begin(), Q->fv.end());
    auto h = hints_of(P);
    if (h.empty()) h = hints_of(Q);
    auto vs = fresh_vars(P->arity, avoid, h);
    auto ts = as_terms(vs);
    return mk_abst(vs, binary(k, mk_app(P, ts), mk_app(Q, ts)));
}

ExprP mk_cap(const ExprP &P, const ExprP &Q) { return pointwise(EK::And, P, Q); }
ExprP mk_cup(const ExprP &P, const ExprP &Q) { return pointwise(EK::Or, P, Q); }

// ---- substitution

namespace {

struct Ranges {
    std::set<std::string> obj;   // object variables free in the range
    std::set<std::string> pred;  // predicate variables free in the range
};

Ranges ranges_of(const Subst &s) {
    Ranges r;
    for (auto &[k, t] : s.obj) term_fv(t, r.obj);
    for (auto &[k, p] : s.pred) {
        r.obj.insert(p->fv.begin(), p->fv.end());
        r.pred.insert(p->fpv.begin(), p->fpv.end());
    }
    return r;
}

Subst restrict(const Subst &s, const Expr &e) {
    Subst r;
    for (auto &[k, t] : s.obj)
        if (e.fv.count(k)) r.obj.emplace(k, t);
    for (auto &[k, p] : s.pred)
        if (e.fpv.count(k)) r.pred.emplace(k, p);
    return r;
}

// rebind object binders, renaming those captured by the substitution range
std::vector<ObjVar> rebind(const std::vector<ObjVar> &vars, Subst &s, const Expr &body) {
    for (auto &v : vars) s.obj.erase(v.name);
    Ranges r = ranges_of(s);
    std::vector<ObjVar> out;
    std::set<std::string> avoid = r.obj;
    avoid.insert(body.fv.begin(), body.fv.end());
    for (auto &v : vars) avoid.insert(v.name);
    for (auto &v : vars) {
        if (r.obj.count(v.name) && !s.empty()) {
            std::string n = fresh_name(v.name, avoid);
            avoid.insert(n);
            s.obj[v.name] = tvar(n, v.sort);
            out.push_back({n, v.sort});
        } else {
            out.push_back(v);
        }
    }
    return out;
}

}

ExprP substitute(const ExprP &e, const Subst &s0) {
    if (s0.empty()) return e;
    Subst s = restrict(s0, *e);
    if (s.empty()) return e;
    switch (e->kind) {
    case EK::Eq:
        return mk_eq(subst_term(e->terms[0], s.obj), subst_term(e->terms[1], s.obj));
    case EK::PredApp: {
        std::vector<TermP> ts;
        for (auto &t : e->terms) ts.push_back(subst_term(t, s.obj));
        return mk_app(substitute(e->a, s), std::move(ts));
    }
    case EK::And:
    case EK::Or:
    case EK::Imp:
        return binary(e->kind, substitute(e->a, s), substitute(e->b, s));
    case EK::All:
    case EK::Ex: {
        auto vs = rebind(e->vars, s, *e->a);
        return quant(e->kind, vs[0], substitute(e->a, s));
    }
    case EK::PVar: {
        auto it = s.pred.find(e->name);
        if (it == s.pred.end()) return e;
        if (pred_arity(it->second) != e->arity) throw Error("arity mismatch substituting for " + e->name);
        return it->second;
    }
    case EK::PConst:
        return e;
    case EK::Abst: {
        auto vs = rebind(e->vars, s, *e->a);
        return mk_abst(vs, substitute(e->a, s));
    }
    case EK::Mu:
    case EK::Nu:
        return fixpoint(e->kind, substitute(e->a, s), "");
    case EK::Op: {
        s.pred.erase(e->name);
        Ranges r = ranges_of(s);
        std::string X = e->name;
        if (r.pred.count(X)) {
            std::set<std::string> avoid = r.pred;
            avoid.insert(e->a->fpv.begin(), e->a->fpv.end());
            X = fresh_name(X, avoid);
            s.pred[e->name] = mk_pvar(X, e->arity);
        }
        return mk_op(X, substitute(e->a, s));
    }
    }
    return e;
}

ExprP subst_obj(const ExprP &e, const std::string &x, const TermP &t) {
    Subst s;
    s.obj[x] = t;
    return substitute(e, s);
}

ExprP subst_pred(const ExprP &e, const std::string &X, const ExprP &P) {
    Subst s;
    s.pred[X] = P;
    return substitute(e, s);
}

// ---- alpha equality

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool var_match(const std::string &a, const std::string &b, const Env &env) {
    for (size_t i = env.size(); i-- > 0;) {
        bool la = env[i].first == a, lb = env[i].second == b;
        if (la || lb) return la && lb;
    }
    return a == b;
}

bool term_alpha(const TermP &a, const TermP &b, const Env &env) {
    if (a->kind != b->kind) return false;
    if (a->kind == Term::Var) return var_match(a->name, b->name, env);
    if (a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!term_alpha(a->args[i], b->args[i], env)) return false;
    return true;
}

bool alpha(const ExprP &a, const ExprP &b, Env &oe, Env &pe) {
    if (a == b && oe.empty() && pe.empty()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case EK::Eq:
        return term_alpha(a->terms[0], b->terms[0], oe) && term_alpha(a->terms[1], b->terms[1], oe);
    case EK::PredApp:
        if (a->terms.size() != b->terms.size()) return false;
        for (size_t i = 0; i < a->terms.size(); ++i)
            if (!term_alpha(a->terms[i], b->terms[i], oe)) return false;
        return alpha(a->a, b->a, oe, pe);
    case EK::And:
    case EK::Or:
    case EK::Imp:
        return alpha(a->a, b->a, oe, pe) && alpha(a->b, b->b, oe, pe);
    case EK::All:
    case EK::Ex:
    case EK::Abst: {
        if (a->vars.size() != b->vars.size()) return false;
        for (size_t i = 0; i < a->vars.size(); ++i)
            if (a->vars[i].sort != b->vars[i].sort) return false;
        for (size_t i = 0; i < a->vars.size(); ++i) oe.emplace_back(a->vars[i].name, b->vars[i].name);
        bool r = alpha(a->a, b->a, oe, pe);
        oe.resize(oe.size() - a->vars.size());
        return r;
    }
    case EK::PVar:
        return a->arity == b->arity && var_match(a->name, b->name, pe);
    case EK::PConst:
        return a->name == b->name;
    case EK::Mu:
    case EK::Nu:
        return alpha(a->a, b->a, oe, pe);
    case EK::Op: {
        if (a->arity != b->arity) return false;
        pe.emplace_back(a->name, b->name);
        bool r = alpha(a->a, b->a, oe, pe);
        pe.pop_back();
        return r;
    }
    }
    return false;
}

bool has_or(const ExprP &e) {
    if (e->kind == EK::Or) return true;
    return (e->a && has_or(e->a)) || (e->b && has_or(e->b));
}

}

bool alpha_eq(const ExprP &a, const ExprP &b) {
    Env oe, pe;
    return alpha(a, b, oe, pe);
}

bool strictly_positive(const ExprP &p, const std::string &X) {
    if (!p->fpv.count(X)) return true;
    switch (p->kind) {
    case EK::Imp:
        return !p->a->fpv.count(X) && strictly_positive(p->b, X);
    case EK::Op:
        return p->name == X || strictly_positive(p->a, X);
    default:
        return (!p->a || strictly_positive(p->a, X)) && (!p->b || strictly_positive(p->b, X));
    }
}

bool is_harrop_with(const ExprP &e, const std::set<std::string> &consts) {
    switch (e->kind) {
    case EK::Eq:
    case EK::PConst:
        return true;
    case EK::Or:
        return false;
    case EK::And:
        return is_harrop_with(e->a, consts) && is_harrop_with(e->b, consts);
    case EK::Imp:
        return is_harrop_with(e->b, consts);
    case EK::PVar:
        return consts.count(e->name) > 0;
    case EK::Mu:
    case EK::Nu:
        return is_harrop_with(e->a, consts);
    case EK::Op: {
        auto c = consts;
        c.insert(e->name);
        return is_harrop_with(e->a, c);
    }
    default:
        return is_harrop_with(e->a, consts);
    }
}

bool is_harrop(const ExprP &e) { return is_harrop_with(e, {}); }
bool is_nc(const ExprP &e) { return e->fpv.empty() && !has_or(e); }

Classification classify(const ExprP &e) {
    if (is_nc(e)) return Classification::NC;
    return is_harrop(e) ? Classification::HarropOnly : Classification::NonHarrop;
}

const char *classification_name(Classification c) {
    switch (c) {
    case Classification::NC: return "nc";
    case Classification::HarropOnly: return "harrop";
    case Classification::NonHarrop: return "non-harrop";
    }
    return "?";
}

// ---- signature and scope

const std::string &Signature::default_sort() const {
    if (sorts.empty()) throw Error("no sort declared");
    return sorts[0];
}

bool Signature::has_sort(const std::string &s) const {
    return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

void Signature::check_fresh(const std::string &name, const Pos &p) const {
    if (funcs.count(name) || preds.count(name) || defs.count(name) || ops.count(name))
        fail_at(p, "symbol already declared: " + name);
}

const ObjVar *Scope::find_obj(const std::string &n) const {
    for (size_t i = objs.size(); i-- > 0;)
        if (objs[i].name == n) return &objs[i];
    return nullptr;
}

const Arity *Scope::find_pvar(const std::string &n) const {
    for (size_t i = pvars.size(); i-- > 0;)
        if (pvars[i].first == n) return &pvars[i].second;
    return nullptr;
}

}
