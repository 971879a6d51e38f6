#include "common.hpp"
#include "ifp/corpus.hpp"

using namespace ifp;

TEST_CASE("manifest") {
    Manifest m = load_manifest(default_manifest());
    for (const char *n : {"plus", "minus", "sgh", "sgt", "stog"})
        CHECK(std::find(m.names.begin(), m.names.end(), n) != m.names.end());
    CHECK(m.steps == 10000);
    CHECK_THROWS_AS(load(m, "nope"), CorpusError);
}

TEST_CASE("entries load with their theorem") {
    Manifest m = load_manifest(default_manifest());
    CorpusEntry e = load(m, "minus");
    CHECK(alpha_eq(e.formula, F("(all (x) (imp (S (neg x)) (S x)))")));
    CHECK_FALSE(e.reference_form.empty());
    CHECK_FALSE(e.behaviors.empty());
}

TEST_CASE("program environment") {
    Script s = load_script(corpus_path("programs.ifp"));
    ProgEnv env = program_env(s);
    for (const char *n : {"ones", "zeros", "half", "half'", "s1", "inv", "nh", "stog", "stog_nh", "stog_let",
                          "ext_stog", "sgh", "sgt", "minus", "plus"})
        CHECK_MESSAGE(env.count(n), n);
    // the hand-written stog shadows the extracted one
    CHECK_FALSE(prog_alpha_eq(env["stog"], env["ext_stog"]));
    CHECK(data_eq(approx(parse_prog("nh (L : R : ⊥)", env), 50), parse_prog("R : R : ⊥")));
}

TEST_CASE("corpus entries pass") {
    Manifest m = load_manifest(default_manifest());
    for (auto &n : m.names) {
        EntryReport r = run_entry(m, load(m, n));
        for (auto &l : r.lines) CHECK_MESSAGE(l.ok, n << ": " << l.what << " " << l.detail);
    }
}
