#pragma once

#include "ifp/kernel.hpp"
#include "ifp/program.hpp"

namespace ifp {

struct ExtractError : Error {
    using Error::Error;
};

// functorial map of Φ along its realizer type: λf.λp. ...
// from/to instantiate α_X for the roll/unroll annotations of nested fix types (typed mode only)
ProgP gen_mon(const ExprP &op);
ProgP gen_mon_typed(const ExprP &op, const TypeP &from, const TypeP &to);

struct Provenance {
    ProgP node;
    DerivP rule;
};

struct ExtractionResult {
    ProgP program;  // ε′
    TypeP type;     // τ(A)
    ProgP typed;    // ε_H, with roll/unroll
    std::vector<Provenance> provenance;  // typed program nodes back to their derivation nodes
};

// lemmas referenced through (use name) are looked up in the script and inlined
ProgP extract(const Script &s, const DerivP &d);
ProgP extract_theorem(const Script &s, const std::string &name);
ExtractionResult extract_typed(const Script &s, const std::string &name);

// beta, known-constructor case, case-of-case and case-in-head pushing, Harrop tag eta
ProgP simplify(const ProgP &m, size_t budget = 200000);

}
