#include "ifp/audit.hpp"
#include "ifp/corpus.hpp"
#include "ifp/extract.hpp"
#include "ifp/haskell.hpp"
#include "ifp/types.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace ifp;

namespace {

struct Opts {
    std::string script, theorem, program, output, format = "stream", manifest;
    uint64_t fuel = default_fuel, steps = default_steps;
    size_t cap = 32;
    bool simplify = false, typed = false, watch = false, update = false;
    std::vector<std::string> entries;
};

DataFormat fmt(const Opts &o) { return o.format == "term" ? DataFormat::Term : DataFormat::Stream; }

std::string default_programs() {
    Manifest m = load_manifest(default_manifest());
    return m.programs;
}

ProgP program_arg(const Opts &o) {
    Script s = load_script(o.script.empty() ? default_programs() : o.script);
    return parse_prog(o.program, program_env(s));
}

int cmd_check(const Opts &o) {
    Script s = load_script(o.script);
    for (auto &t : s.theorems) std::cout << t.name << " : " << print_expr(t.formula, &s.sig) << "\n";
    std::cout << "ok: " << s.theorems.size() << " theorems\n";
    return 0;
}

int cmd_extract(const Opts &o) {
    Script s = load_script(o.script);
    if (o.typed) {
        ExtractionResult r = extract_typed(s, o.theorem);
        std::cout << print_prog(r.typed) << "\n";
        return 0;
    }
    ProgP m = extract_theorem(s, o.theorem);
    std::cout << print_prog(o.simplify ? simplify(m) : m) << "\n";
    return 0;
}

int cmd_run(const Opts &o) {
    ProgP m = program_arg(o);
    FiniteResult f = compute_finite(m, o.fuel);
    if (f.ok) {
        std::cout << print_data(f.data, fmt(o), o.cap) << "\n";
        return 0;
    }
    EvalResult r = bigstep(m, o.fuel);
    switch (r.outcome) {
    case Outcome::Value:
        std::cout << print_prog(r.value) << "\n";
        return 0;
    case Outcome::Diverged:
        std::cout << "⊥ (no value within " << o.fuel << " steps)\n";
        return 0;
    case Outcome::Stuck:
        std::cerr << "error: evaluation is stuck\n";
        return 1;
    }
    return 1;
}

int cmd_approx(const Opts &o) {
    ProgP m = program_arg(o);
    DataP d;
    if (o.watch) {
        d = approx_watch(m, o.steps, [&](uint64_t n, const DataP &x) {
            std::cout << n << ": " << print_data(x, fmt(o), o.cap) << std::endl;
        });
    } else {
        d = approx(m, o.steps);
    }
    std::cout << print_data(d, fmt(o), o.cap) << "\n";
    return 0;
}

int cmd_emit(const Opts &o) {
    Script s = load_script(o.script);
    ExtractionResult r = extract_typed(s, o.theorem);
    std::string text = emit_program(o.theorem, r.typed, r.type).text();
    if (o.output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw Error(o.output + ": cannot write");
    out << text;
    return 0;
}

int cmd_audit(const Opts &o) {
    Script s = load_script(o.script);
    const Theorem *t = s.find(o.theorem);
    if (!t) throw Error(s.path + ": no theorem " + o.theorem);
    std::cout << "formula: " << print_expr(t->formula, &s.sig) << "\n";
    std::cout << "class: " << classification_name(classify(t->formula)) << "\n";
    std::cout << "type: " << print_type(tau(t->formula)) << "\n";
    std::cout << "R: " << print_real(realizability_formula("a", t->formula), &s.sig);
    if (is_harrop(t->formula)) std::cout << "H: " << print_real(harrop_interpretation(t->formula), &s.sig);
    return 0;
}

int cmd_corpus(const Opts &o) {
    Manifest m = load_manifest(o.manifest.empty() ? default_manifest() : o.manifest);
    std::vector<std::string> names = o.entries.empty() ? m.names : o.entries;
    bool all = true;
    for (auto &n : names) {
        EntryReport r;
        try {
            r = run_entry(m, load(m, n), o.update);
        } catch (const Error &e) {
            r = {n, {{"load", false, e.what()}}};
        }
        for (auto &l : r.lines) {
            std::cout << (l.ok ? "PASS " : "FAIL ") << n << ": " << l.what;
            if (!l.ok && !l.detail.empty()) std::cout << " (" << l.detail << ")";
            std::cout << "\n";
        }
        all &= r.ok();
    }
    std::cout << (all ? "corpus ok\n" : "corpus FAILED\n");
    return all ? 0 : 1;
}

}

int main(int argc, char **argv) {
    CLI::App app{"IFP proof checker and program extractor"};
    app.require_subcommand(1);
    Opts o;

    auto *check = app.add_subcommand("check", "check every theorem of a script");
    check->add_option("script", o.script)->required();

    auto *extract = app.add_subcommand("extract", "extract the program of a theorem");
    extract->add_option("script", o.script)->required();
    extract->add_option("theorem", o.theorem)->required();
    auto *simp = extract->add_flag("--simplify", o.simplify, "simplify the extracted program");
    extract->add_flag("--typed", o.typed, "print the roll/unroll annotated program")->excludes(simp);

    auto *run = app.add_subcommand("run", "evaluate a closed program");
    run->add_option("program", o.program)->required();
    run->add_option("--script", o.script, "program environment (default: corpus programs)");
    run->add_option("--fuel", o.fuel)->check(CLI::PositiveNumber);
    run->add_option("--format", o.format)->check(CLI::IsMember({"term", "stream"}));
    run->add_option("--cap", o.cap, "printed stream cells")->check(CLI::PositiveNumber);

    auto *ap = app.add_subcommand("approx", "finite approximation by parallel steps");
    ap->add_option("program", o.program)->required();
    ap->add_option("--script", o.script, "program environment (default: corpus programs)");
    ap->add_option("--steps", o.steps)->check(CLI::PositiveNumber);
    ap->add_flag("--watch", o.watch, "print each larger approximation");
    ap->add_option("--format", o.format)->check(CLI::IsMember({"term", "stream"}));
    ap->add_option("--cap", o.cap, "printed stream cells")->check(CLI::PositiveNumber);

    auto *emit = app.add_subcommand("emit-haskell", "Haskell module for a theorem's program");
    emit->add_option("script", o.script)->required();
    emit->add_option("theorem", o.theorem)->required();
    emit->add_option("-o", o.output, "output file");

    auto *audit = app.add_subcommand("audit", "realizability formula, type and class of a theorem");
    audit->add_option("script", o.script)->required();
    audit->add_option("theorem", o.theorem)->required();

    auto *corpus = app.add_subcommand("corpus-test", "run the corpus manifest");
    corpus->add_option("entries", o.entries);
    corpus->add_option("--manifest", o.manifest);
    corpus->add_flag("--update", o.update, "rewrite the golden files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) return cmd_check(o);
        if (*extract) return cmd_extract(o);
        if (*run) return cmd_run(o);
        if (*ap) return cmd_approx(o);
        if (*emit) return cmd_emit(o);
        if (*audit) return cmd_audit(o);
        if (*corpus) return cmd_corpus(o);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
