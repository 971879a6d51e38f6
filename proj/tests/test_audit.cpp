#include "common.hpp"
#include "ifp/audit.hpp"
#include "ifp/types.hpp"

using namespace ifp;

namespace {

std::string R(const std::string &f) { return print_rformula(realizability_formula("a", F(f)).body, &reals().sig); }
std::string H(const std::string &f) { return print_rformula(harrop_interpretation(F(f)).body, &reals().sig); }

}

TEST_CASE("realizers of D") {
    CHECK(R("(all (x) (D x))") == "(all (x) (and (: a (+ 1 1)) (imp (neq x 0) (or (and (= a Left(Nil)) (<= x 0)) "
                                  "(and (= a Right(Nil)) (<= 0 x))))))");
}

TEST_CASE("Harrop formulas are realized by Nil") {
    CHECK(R("(<= 0 1)") == "(and (= a Nil) (<= 0 1))");
    CHECK(R("(imp (S 0) (<= 0 1))") == "(and (= a Nil) (imp (ex ((a1 δ)) (R(S) 0 a1)) (<= 0 1)))");
}

TEST_CASE("natural numbers are unary numerals") {
    RealFormula r = realizability_formula("a", F("(all (x) (N x))"));
    CHECK(print_rformula(r.body) == "(all (x) (R(N) x a))");
    REQUIRE(r.defs.size() == 1);
    CHECK(r.defs[0].first == "R(N)");
    CHECK(r.defs[0].second->kind == RK::Mu);
    std::string def = print_real(r);
    CHECK(def.find("(or (and (= a1 Left(Nil)) (= x 0)) (ex ((b δ)) (and (= a1 Right(b)) (X̃ (- x 1) b))))") !=
          std::string::npos);
}

TEST_CASE("realizer variable is kept fresh") {
    CHECK(R("(all (a) (D a))").find("(: a1 ") != std::string::npos);
}

TEST_CASE("Harrop interpretation") {
    ExprP stab = F("(all (x y) (imp (not (not (= x y))) (= x y)))");
    RNodeP h = harrop_interpretation(stab).body;
    REQUIRE(h->kind == RK::Ifp);
    CHECK(h->ifp == stab);
    CHECK(print_rformula(harrop_interpretation(mk_false()).body) == "false");
    CHECK(H("(and (imp (S 0) (<= 0 1)) (= 0 0))") ==
          "(and (imp (ex ((a δ)) (R(S) 0 a)) (<= 0 1)) (= 0 0))");
    CHECK_THROWS_AS(harrop_interpretation(F("(S 0)")), AuditError);
}

TEST_CASE("membership atoms carry the type of their subformula") {
    for (auto &t : stog_script().theorems) {
        RealFormula r = realizability_formula("a", t.formula);
        std::vector<const RNode *> mems;
        collect_memberships(r.body, mems);
        for (auto &d : r.defs) collect_memberships(d.second, mems);
        for (auto *m : mems) CHECK(type_alpha_eq(m->type, tau(m->ifp)));
        if (!is_harrop(t.formula)) CHECK_FALSE(mems.empty());
    }
}
