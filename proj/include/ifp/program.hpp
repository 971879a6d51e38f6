#pragma once

#include "ifp/sexpr.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ifp {

// ---- realizer types

enum class TK { Var, One, Sum, Prod, Arrow, Fix };

struct PType;
using TypeP = std::shared_ptr<const PType>;

struct PType {
    TK kind;
    std::string name;  // Var name, Fix binder
    TypeP a, b;        // Fix body in a
};

TypeP ty_var(const std::string &n);
TypeP ty_one();
TypeP ty_sum(TypeP a, TypeP b);
TypeP ty_prod(TypeP a, TypeP b);
TypeP ty_arrow(TypeP a, TypeP b);
TypeP ty_fix(const std::string &a, TypeP body);

std::set<std::string> type_fv(const TypeP &t);
TypeP type_subst(const TypeP &t, const std::string &a, const TypeP &s);
TypeP unfold(const TypeP &fix);  // ρ[fix α ρ/α]
bool type_alpha_eq(const TypeP &a, const TypeP &b);
std::string print_type(const TypeP &t);
// binder names replaced by a canonical scheme, for hashing alpha classes
std::string print_type_canonical(const TypeP &t);
TypeP parse_type(const SExpr &s);
TypeP parse_type_text(const std::string &s);

// ---- programs

enum class PK { Var, Nil, Left, Right, Pair, Case, Lam, App, Rec, Bot, Roll, Unroll };
enum class Ctor { Nil, Left, Right, Pair };

int ctor_arity(Ctor c);
const char *ctor_name(Ctor c);

struct Prog;
using ProgP = std::shared_ptr<const Prog>;

struct Clause {
    Ctor ctor;
    std::vector<std::string> vars;
    ProgP body;
};

struct Prog {
    PK kind;
    std::string name;  // Var name, Lam binder
    ProgP a, b;        // Left/Right/Rec/Lam body: a; Pair/App: a,b; Case scrutinee: a
    std::vector<Clause> clauses;
    TypeP type;        // fix type annotation of Roll/Unroll
};

ProgP p_var(const std::string &x);
ProgP p_nil();
ProgP p_left(ProgP a);
ProgP p_right(ProgP a);
ProgP p_pair(ProgP a, ProgP b);
ProgP p_ctor(Ctor c, std::vector<ProgP> args);
ProgP p_case(ProgP scrut, std::vector<Clause> cls);
ProgP p_lam(const std::string &x, ProgP body);
ProgP p_app(ProgP f, ProgP x);
ProgP p_apps(ProgP f, std::vector<ProgP> xs);
ProgP p_rec(ProgP m);
ProgP p_bot();
ProgP p_roll(TypeP fix);
ProgP p_unroll(TypeP fix);

// combinator sugar, expanded on construction
ProgP p_fst(ProgP m);
ProgP p_snd(ProgP m);
ProgP p_id();
ProgP p_comp(ProgP m, ProgP n);      // m ∘ n
ProgP p_sumf(ProgP m, ProgP n);      // [m + n]
ProgP p_pairf(ProgP m, ProgP n);     // ⟨m, n⟩

// signed digits and Gray digits
ProgP d_minus1();
ProgP d_one();
ProgP d_zero();
ProgP g_L();
ProgP g_R();

bool is_value(const ProgP &m);
bool is_ctor(const ProgP &m);
std::set<std::string> prog_fv(const ProgP &m);
void prog_names(const ProgP &m, std::set<std::string> &out);  // every name, free or bound
size_t prog_size(const ProgP &m);
bool prog_alpha_eq(const ProgP &a, const ProgP &b);

// capture-avoiding substitution
ProgP prog_subst(const ProgP &m, const std::map<std::string, ProgP> &s);
ProgP prog_subst1(const ProgP &m, const std::string &x, const ProgP &n);
// substitution of closed programs; no renaming needed
ProgP subst_closed(const ProgP &m, const std::vector<std::pair<std::string, ProgP>> &s);

// roll/unroll become identities
ProgP erase_annotations(const ProgP &m);
bool has_annotations(const ProgP &m);

std::string print_prog(const ProgP &m);

using ProgEnv = std::map<std::string, ProgP>;
// free identifiers are looked up in env; unresolved ones are errors unless allow_free
ProgP parse_prog(const std::string &text, const ProgEnv &env = {}, bool allow_free = false);

}
