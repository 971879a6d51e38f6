#include "common.hpp"

using namespace ifp;

TEST_CASE("formulas print back to what they parse from") {
    for (const char *t : {"(all (x) (imp (S x) (G x)))", "(ex (y) (and (<= 0 y) (= y 1)))",
                          "(or (= 0 1) (neq 0 1))", "(all (x y) (imp (N x) (N y) (N (+ x y))))"}) {
        ExprP e = F(t);
        CHECK(print_expr(e, &reals().sig) == t);
        CHECK(alpha_eq(F(print_expr(e, &reals().sig)), e));
    }
}

TEST_CASE("alpha equivalence ignores bound names only") {
    CHECK(alpha_eq(F("(all (x) (<= x 1))"), F("(all (y) (<= y 1))")));
    CHECK_FALSE(alpha_eq(F("(all (x) (<= x 1))"), F("(all (y) (<= 1 y))")));
    CHECK(alpha_eq(P("(mu X (x) (or (= x 0) (X (- x 1))))"), P("(mu Y (z) (or (= z 0) (Y (- z 1))))")));
}

TEST_CASE("substitution avoids capture") {
    ExprP e = F("(all (x) (all (y) (<= x y)))")->a;
    ExprP r = subst_obj(e, "x", tvar("y", "r"));
    REQUIRE(r->kind == EK::All);
    CHECK(r->vars[0].name != "y");
    CHECK(r->fv == std::set<std::string>{"y"});
}

TEST_CASE("operators must be strictly positive") {
    Scope sc{&reals().sig};
    CHECK_NOTHROW(parse_operator(read_sexpr("(op X (x) (or (= x 0) (X x)))"), sc));
    CHECK_THROWS(parse_operator(read_sexpr("(op X (x) (imp (X x) (= x 0)))"), sc));
    CHECK_THROWS(parse_operator(read_sexpr("(op X (x) (imp (imp (X x) (= x 0)) (= x 0)))"), sc));
}

TEST_CASE("classification") {
    CHECK(classify(F("(all (x) (imp (not (not (= x 0))) (= x 0)))")) == Classification::NC);
    CHECK(classify(F("(or (= 0 1) (= 1 1))")) == Classification::NonHarrop);
    CHECK(classify(F("(imp (or (= 0 1) (= 1 1)) (= 0 0))")) == Classification::HarropOnly);
    CHECK(classify(F("(S 0)")) == Classification::NonHarrop);
    CHECK(classify(F("(II 0 0)")) == Classification::NC);
    CHECK(is_harrop(F("(imp (S 0) (<= 0 1))")));
    CHECK_FALSE(is_nc(F("(imp (S 0) (<= 0 1))")));
    CHECK(is_nc(mk_false()));
}

TEST_CASE("defined predicates beta reduce on application") {
    ExprP d = F("(D 1)");
    CHECK(d->kind == EK::Imp);
    CHECK(alpha_eq(d, F("(imp (neq 1 0) (or (<= 1 0) (<= 0 1)))")));
}

TEST_CASE("parse errors carry positions") {
    try {
        F("(all (x) (<= x))");
        FAIL("no error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()).find(":1:") != std::string::npos);
    }
}
