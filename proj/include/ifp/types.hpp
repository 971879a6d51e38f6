#pragma once

#include "ifp/logic.hpp"
#include "ifp/program.hpp"

namespace ifp {

// α_X
std::string type_var_of(const std::string &X);

TypeP tau(const ExprP &e);
bool is_regular(const TypeP &t);
bool is_data_formula(const ExprP &a);
bool has_arrow(const TypeP &t);

using TypingContext = std::vector<std::pair<std::string, TypeP>>;

enum class FixMode {
    Greedy,  // fix types unroll on demand
    Strict   // only explicit roll/unroll constants cross fix boundaries
};

struct TypeCheckResult {
    bool ok;
    std::string error;
};

TypeCheckResult type_check(const TypingContext &ctx, const ProgP &m, const TypeP &rho,
                           FixMode mode = FixMode::Greedy);

}
