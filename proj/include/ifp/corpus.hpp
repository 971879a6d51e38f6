#pragma once

#include "ifp/kernel.hpp"
#include "ifp/runtime.hpp"

#include <memory>

namespace ifp {

struct CorpusError : Error {
    using Error::Error;
};

// theorem name ↦ simplified extraction, also as ext_<name>; script programs come after
// and may shadow a theorem name
ProgEnv program_env(const Script &s);
ProgP parse_in(const Script &s, const std::string &text);

struct Behavior {
    enum Kind { Approx, Finite, Diverge } kind;
    std::string program;
    uint64_t budget;     // parallel steps, or fuel
    std::string expect;  // Approx: a lower bound; Finite: the exact data
};

struct CorpusEntry {
    std::string name;
    std::string script;  // absolute path
    std::string theorem;
    ExprP formula;
    std::string golden_raw, golden_simplified, golden_haskell;  // absolute paths
    std::string reference_form;  // empty when there is none
    std::vector<Behavior> behaviors;
    std::shared_ptr<Script> loaded;
};

struct Manifest {
    std::string dir;
    std::string programs;  // script with the hand-written programs
    uint64_t fuel = default_fuel;
    uint64_t steps = default_steps;
    std::vector<std::string> names;
};

Manifest load_manifest(const std::string &path);
std::string default_manifest();
CorpusEntry load(const Manifest &m, const std::string &name);

struct GoldenForms {
    std::string raw, simplified, haskell;
};
GoldenForms render_goldens(const CorpusEntry &e);

struct CheckLine {
    std::string what;
    bool ok;
    std::string detail;
};

struct EntryReport {
    std::string name;
    std::vector<CheckLine> lines;
    bool ok() const;
};

// goldens, τ, reference form and behaviors; update rewrites the golden files first
EntryReport run_entry(const Manifest &m, const CorpusEntry &e, bool update = false);

}
