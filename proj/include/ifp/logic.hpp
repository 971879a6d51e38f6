#pragma once

#include "ifp/sexpr.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ifp {

using Arity = std::vector<std::string>;

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
    enum Kind { Var, App } kind = Var;
    std::string name;
    std::string sort;
    std::vector<TermP> args;
};

TermP tvar(const std::string &name, const std::string &sort);
TermP tapp(const std::string &f, std::vector<TermP> args, const std::string &sort);
bool term_eq(const TermP &a, const TermP &b);
void term_fv(const TermP &t, std::set<std::string> &out);
std::string print_term(const TermP &t);

struct ObjVar {
    std::string name;
    std::string sort;
};

// formulas, predicates and operators share one node type
enum class EK { Eq, PredApp, And, Or, Imp, All, Ex, PVar, PConst, Abst, Mu, Nu, Op };

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
    EK kind;
    ExprP a, b;
    std::vector<TermP> terms;
    std::vector<ObjVar> vars;
    std::string name;  // PVar/PConst name, Op binder, display name of a defined Mu/Nu
    Arity arity;       // predicate arity (also of the Op binder)
    std::set<std::string> fv;   // free object variables
    std::set<std::string> fpv;  // free predicate variables

    bool is_formula() const { return kind <= EK::Ex; }
    bool is_predicate() const { return kind >= EK::PVar && kind <= EK::Nu; }
};

ExprP mk_eq(TermP s, TermP t);
ExprP mk_app(ExprP pred, std::vector<TermP> args);  // beta-reduces abstractions
ExprP mk_and(ExprP a, ExprP b);
ExprP mk_or(ExprP a, ExprP b);
ExprP mk_imp(ExprP a, ExprP b);
ExprP mk_all(ObjVar x, ExprP body);
ExprP mk_ex(ObjVar x, ExprP body);
ExprP mk_pvar(const std::string &name, Arity ar);
ExprP mk_pconst(const std::string &name, Arity ar);
ExprP mk_abst(std::vector<ObjVar> vars, ExprP body);
ExprP mk_op(const std::string &X, ExprP body);  // throws unless body is s.p. in X
ExprP mk_mu(ExprP op, const std::string &display = "");
ExprP mk_nu(ExprP op, const std::string &display = "");

ExprP mk_false();
ExprP mk_not(ExprP a);

const Arity &pred_arity(const ExprP &p);
ExprP apply_op(const ExprP &op, const ExprP &Q);  // Φ(Q)
// P ⊆ Q with variables named after hint (if an abstraction)
ExprP mk_subset(const ExprP &P, const ExprP &Q);
ExprP mk_cap(const ExprP &P, const ExprP &Q);
ExprP mk_cup(const ExprP &P, const ExprP &Q);
std::vector<ObjVar> fresh_vars(const Arity &ar, const std::set<std::string> &avoid,
                               const std::vector<std::string> &hints = {});
std::string fresh_name(const std::string &base, const std::set<std::string> &avoid);

struct Subst {
    std::map<std::string, TermP> obj;
    std::map<std::string, ExprP> pred;
    bool empty() const { return obj.empty() && pred.empty(); }
};

ExprP substitute(const ExprP &e, const Subst &s);
ExprP subst_obj(const ExprP &e, const std::string &x, const TermP &t);
ExprP subst_pred(const ExprP &e, const std::string &X, const ExprP &P);
TermP subst_term(const TermP &t, const std::map<std::string, TermP> &m);

bool alpha_eq(const ExprP &a, const ExprP &b);
bool strictly_positive(const ExprP &p, const std::string &X);

enum class Classification { NC, HarropOnly, NonHarrop };
Classification classify(const ExprP &e);
bool is_harrop(const ExprP &e);
bool is_nc(const ExprP &e);
// Harrop with the given predicate variables treated as constants
bool is_harrop_with(const ExprP &e, const std::set<std::string> &consts);
const char *classification_name(Classification c);

struct Signature {
    std::vector<std::string> sorts;
    std::map<std::string, std::pair<Arity, std::string>> funcs;
    std::map<std::string, Arity> preds;
    std::map<std::string, ExprP> axioms;
    std::map<std::string, ExprP> defs;  // defined predicates
    std::map<std::string, ExprP> ops;   // defined operators

    const std::string &default_sort() const;
    bool has_sort(const std::string &s) const;
    void check_fresh(const std::string &name, const Pos &p) const;
};

struct Scope {
    const Signature *sig = nullptr;
    std::vector<ObjVar> objs;
    std::vector<std::pair<std::string, Arity>> pvars;

    const ObjVar *find_obj(const std::string &n) const;
    const Arity *find_pvar(const std::string &n) const;
};

TermP parse_term(const SExpr &s, const Scope &sc);
ExprP parse_formula(const SExpr &s, Scope &sc);
ExprP parse_predicate(const SExpr &s, Scope &sc);
ExprP parse_operator(const SExpr &s, Scope &sc);
std::vector<ObjVar> parse_binders(const SExpr &s, const Scope &sc);
// parse a formula from text with no free variables beyond those in scope
ExprP parse(const std::string &text, const Signature &sig);
ExprP parse_pred_text(const std::string &text, const Signature &sig);

std::string print_expr(const ExprP &e, const Signature *sig = nullptr);

}
