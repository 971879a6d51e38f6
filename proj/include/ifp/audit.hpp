#pragma once

#include "ifp/logic.hpp"
#include "ifp/program.hpp"

namespace ifp {

// RIFP-style formulas: IFP connectives plus realizer equations and type membership
enum class RK { Ifp, Eq, Mem, And, Or, Imp, All, Ex, App, PVar, Named, Abst, Mu, Nu, Op };

struct RNode;
using RNodeP = std::shared_ptr<const RNode>;

struct RNode {
    RK kind;
    ExprP ifp;                  // Ifp: the formula itself; Mem: the subformula whose type is taken
    ProgP lhs, rhs;             // Eq
    ProgP realizer;             // Mem, App: the realizer argument
    TypeP type;                 // Mem
    std::vector<RNodeP> kids;   // connectives; App: kids[0] is the predicate
    std::vector<ObjVar> vars;   // quantifier / abstraction binders (realizer binders have sort δ)
    std::vector<TermP> terms;   // App arguments
    std::string name;           // PVar, Named, Op binder
};

struct RealFormula {
    RNodeP body;
    // R(P)/H(P) of every named fixed point reached, in first-use order
    std::vector<std::pair<std::string, RNodeP>> defs;
};

struct AuditError : Error {
    using Error::Error;
};

// X̃; inside H_X(P) the variable X becomes a predicate constant of the same name
std::string real_pvar(const std::string &X);

RealFormula realizability_formula(const std::string &a, const ExprP &A);
// throws AuditError on non-Harrop input
RealFormula harrop_interpretation(const ExprP &A);

std::string print_rformula(const RNodeP &f, const Signature *sig = nullptr);
std::string print_real(const RealFormula &f, const Signature *sig = nullptr);

// every membership atom with the subformula it was generated for
void collect_memberships(const RNodeP &f, std::vector<const RNode *> &out);

}
