#include "common.hpp"

using namespace ifp;

namespace {

Script run(const std::string &body) {
    return load_script_text("(include \"reals.ifp\")\n" + body, "<test>", IFP_CORPUS_DIR);
}

std::string error_of(const std::string &body) {
    try {
        run(body);
    } catch (const Error &e) {
        return e.what();
    }
    return "";
}

}

TEST_CASE("propositional rules") {
    CHECK_NOTHROW(run("(theorem t (imp (= 0 0) (= 0 0)) (impi u (= 0 0) u))"));
    CHECK_NOTHROW(run("(theorem t (imp (and (<= 0 1) (= 1 1)) (and (= 1 1) (<= 0 1)))"
                      "  (impi u (and (<= 0 1) (= 1 1)) (andi (andr u) (andl u))))"));
    CHECK_NOTHROW(run("(theorem t (imp (or (<= 0 1) (<= 1 0)) (or (<= 1 0) (<= 0 1)))"
                      "  (impi u (or (<= 0 1) (<= 1 0))"
                      "    (ore u (impi a (<= 0 1) (orr a (<= 1 0))) (impi b (<= 1 0) (orl b (<= 0 1))))))"));
}

TEST_CASE("quantifier rules and equality") {
    CHECK_NOTHROW(run("(theorem t (all (x) (= x x)) (alli x (refl x)))"));
    CHECK_NOTHROW(run("(theorem t (ex (y) (= y 0)) (exi (lam (y) (= y 0)) 0 (refl 0)))"));
    CHECK_NOTHROW(run("(theorem t (all (x y) (imp (= x y) (<= x 1) (<= y 1)))"
                      "  (alli x (alli y (impi e (= x y) (impi u (<= x 1) (cong u e (lam (z) (<= z 1))))))))"));
}

TEST_CASE("rule failures are reported with their kind") {
    CHECK(error_of("(theorem t (imp (= 0 0) (= 1 1)) (impi u (= 0 0) u))").find("mismatch") != std::string::npos);
    CHECK(error_of("(theorem t (= 0 0) v)").find("unbound-assumption") != std::string::npos);
    CHECK(error_of("(theorem t (= 0 0) (ax nope))").find("unknown-axiom") != std::string::npos);
    CHECK(error_of("(theorem t (= 0 0) (use nope))").find("unknown-theorem") != std::string::npos);
    CHECK(error_of("(theorem t (all (y) (imp (<= y 0) (all (x) (<= x 0))))"
                   "  (alli y (impi u (<= y 0) (alli y u))))")
              .find("eigenvariable-violation") != std::string::npos);
}

TEST_CASE("errors name the script position") {
    std::string e = error_of("(theorem t (= 0 0)\n  (ax nope))");
    CHECK(e.find("<test>:3:3:") != std::string::npos);
}

TEST_CASE("closure and coclosure") {
    CHECK_NOTHROW(run("(theorem t (N 0) (impe (alle (clos PhiN) 0) (orl (refl 0) (N (- 0 1)))))"));
    CHECK_NOTHROW(run("(theorem t (all (x) (imp (S x) (ex-in SD (d) (and (II d x) (S (- (* 2 x) d))))))"
                      "  (cocl PhiS))"));
}

TEST_CASE("induction schema") {
    Scope sc{&reals().sig};
    Deriv d;
    d.kind = DK::Ind;
    d.op = reals().sig.ops.at("PhiN");
    d.p = P("(lam (z) (<= 0 z))");
    Schema s = fixpoint_schema(d, reals().sig);
    CHECK(alpha_eq(s.conclusion, F("(all (z) (imp (N z) (<= 0 z)))")));
    CHECK(alpha_eq(s.premise, F("(all (z) (imp (or (= z 0) (<= 0 (- z 1))) (<= 0 z)))")));
}

TEST_CASE("half-strong coinduction schema") {
    Deriv d;
    d.kind = DK::HSCI;
    d.op = reals().sig.ops.at("PhiS");
    d.p = P("(lam (x) (= x 0))");
    Schema s = fixpoint_schema(d, reals().sig);
    CHECK(alpha_eq(s.conclusion, F("(all (x) (imp (= x 0) (S x)))")));
}

TEST_CASE("corpus scripts check") {
    for (const char *f : {"reals.ifp", "plus.ifp", "minus.ifp", "stog.ifp", "programs.ifp"})
        CHECK_NOTHROW(load_script(corpus_path(f)));
    const Script &s = stog_script();
    for (const char *t : {"minus", "sgh", "sgt", "tent", "stog"}) CHECK(s.find(t));
}
