#pragma once

#include "ifp/logic.hpp"

#include <functional>

namespace ifp {

enum class DK {
    Assume, Axiom, Use, Refl, Cong,
    AndI, AndL, AndR, OrL, OrR, OrE, ImpI, ImpE, AllI, AllE, ExI, ExE,
    Cl, Ind, CoCl, Coind, SI, HSI, SCI, HSCI,
    WfI, AIq, AIBq
};

const char *dk_name(DK k);

struct Deriv;
using DerivP = std::shared_ptr<const Deriv>;

struct Deriv {
    DK kind;
    Pos pos;
    std::string label;   // Assume/ImpI label, Axiom/Use name
    ExprP f;             // ImpI A, OrL B, OrR A, Cong/ExI display predicate λx.A
    ExprP op;            // Φ; ≺ for WfI
    ExprP p;             // P
    ExprP q;             // B for AIBq, A for WfI
    TermP t;             // Refl/AllE/ExI term; q for AIq/AIBq
    ObjVar x;            // AllI eigenvariable
    std::vector<DerivP> sub;
};

using Context = std::vector<std::pair<std::string, ExprP>>;

struct KernelEnv {
    const Signature *sig = nullptr;
    std::map<std::string, ExprP> lemmas;  // checked theorems available through (use name)
};

// a rule failure, carrying the offending subderivation path
struct RuleError : PosError {
    std::string path;
    RuleError(const std::string &msg, std::string p) : PosError(msg), path(std::move(p)) {}
};

ExprP infer(const KernelEnv &env, const Context &ctx, const DerivP &d);
void check(const KernelEnv &env, const Context &ctx, const DerivP &d, const ExprP &A);

struct Schema {
    ExprP premise;
    ExprP conclusion;
};

// premise obligation and conclusion of a WfI/AIq/AIBq node
Schema expand_derived(const Deriv &d, const Signature &sig);
// fixed-point rules: premise and conclusion for Ind/Coind/SI/HSI/SCI/HSCI
Schema fixpoint_schema(const Deriv &d, const Signature &sig);

// Φ applied to its least or greatest fixed point, reusing a named definition when there is one
ExprP fixpoint_of(EK k, const ExprP &op, const Signature &sig);

DerivP parse_deriv(const SExpr &s, Scope &sc);

// ---- scripts

struct Theorem {
    std::string name;
    ExprP formula;
    DerivP proof;
    Pos pos;
};

struct ProgramDef {
    std::string name;
    std::string text;
    Pos pos;
};

struct Script {
    std::string path;
    Signature sig;
    std::vector<Theorem> theorems;
    std::vector<ProgramDef> programs;
    std::vector<std::string> included;

    const Theorem *find(const std::string &name) const;
};

// reads, resolves includes, and checks every theorem
Script load_script(const std::string &path);
Script load_script_text(const std::string &text, const std::string &name = "<input>",
                        const std::string &dir = ".");

std::string print_deriv(const DerivP &d, const Signature *sig = nullptr);

}
