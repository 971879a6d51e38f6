#pragma once

#include "ifp/program.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace ifp {

// Data is a ProgP built from Nil/Left/Right/Pair/Bot only
using DataP = ProgP;

enum class Outcome { Value, Diverged, Stuck };

struct EvalResult {
    Outcome outcome;
    ProgP value;          // set when outcome == Value
    uint64_t used = 0;    // rule applications consumed
};

inline constexpr uint64_t default_fuel = 100000;
inline constexpr uint64_t default_steps = 10000;

EvalResult bigstep(const ProgP &m, uint64_t fuel = default_fuel);

enum class StepKind { Step, Value, Stuck };
struct StepResult {
    StepKind kind;
    ProgP next;  // contractum for Step, the program itself otherwise
};

StepResult smallstep(const ProgP &m);
ProgP parallel_step(const ProgP &m);

DataP data_part(const ProgP &m);
DataP approx(const ProgP &m, uint64_t n);
// calls f(n, approximation) whenever the approximation grows; returns the last one
DataP approx_watch(const ProgP &m, uint64_t n, const std::function<void(uint64_t, const DataP &)> &f);

bool is_data(const ProgP &d);
bool data_leq(const DataP &a, const DataP &b);
bool data_eq(const DataP &a, const DataP &b);
bool data_total(const DataP &d);

struct FiniteResult {
    bool ok;
    DataP data;  // total data when ok
};
FiniteResult compute_finite(const ProgP &m, uint64_t fuel = default_fuel);

// ⊥ for unresolved cells; stops at the end of the Pair spine or after max cells
std::vector<DataP> stream_prefix(const DataP &d, size_t max);

enum class DataFormat { Term, Stream };
std::string print_data(const DataP &d, DataFormat f = DataFormat::Stream, size_t cap = 32);
// L, R, -1, 0, 1 or the constructor term
std::string print_digit(const DataP &d, bool signed_digits);

// unary numerals Right^n(Left(Nil))
ProgP numeral(unsigned n);
std::optional<unsigned> numeral_value(const DataP &d);

}
