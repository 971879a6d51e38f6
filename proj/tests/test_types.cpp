#include "common.hpp"
#include "ifp/types.hpp"

using namespace ifp;

namespace {

bool same(const TypeP &a, const char *b) { return type_alpha_eq(a, parse_type_text(b)); }

}

TEST_CASE("realizer types of the case-study predicates") {
    CHECK(same(tau(F("(N 0)")), "(fix a (+ 1 a))"));
    CHECK(same(tau(F("(S 0)")), "(fix a (* (+ (+ 1 1) 1) a))"));
    CHECK(same(tau(F("(G 0)")), "(fix a (* (+ 1 1) a))"));
    CHECK(same(tau(F("(D 0)")), "(+ 1 1)"));
    CHECK(same(tau(F("(SD 0)")), "(+ (+ 1 1) 1)"));
    CHECK(same(tau(F("(II 0 0)")), "1"));
    CHECK(same(tau(F("(all (x) (imp (S x) (G x)))")), "(-> (fix a (* (+ (+ 1 1) 1) a)) (fix a (* (+ 1 1) a)))"));
    CHECK(same(tau(F("(and (<= 0 1) (S 0))")), "(fix a (* (+ (+ 1 1) 1) a))"));
    CHECK(same(tau(F("(imp (<= 0 1) (S 0))")), "(fix a (* (+ (+ 1 1) 1) a))"));
}

TEST_CASE("fix types unfold") {
    TypeP n = parse_type_text("(fix a (+ 1 a))");
    CHECK(same(unfold(n), "(+ 1 (fix b (+ 1 b)))"));
}

TEST_CASE("regularity") {
    CHECK(is_regular(parse_type_text("(fix a (* (+ 1 1) a))")));
    CHECK(is_regular(parse_type_text("(-> (fix a (+ 1 a)) 1)")));
}

TEST_CASE("data formulas") {
    CHECK(is_data_formula(F("(S 0)")));
    CHECK(is_data_formula(F("(G 0)")));
    CHECK_FALSE(is_data_formula(F("(all (x) (imp (S x) (G x)))")));
}

TEST_CASE("type checking") {
    TypeP nat = parse_type_text("(fix a (+ 1 a))");
    CHECK(type_check({}, parse_prog("Left(Nil)"), nat).ok);
    CHECK(type_check({}, parse_prog("Right(Right(Left(Nil)))"), nat).ok);
    CHECK_FALSE(type_check({}, parse_prog("Pair(Nil, Nil)"), nat).ok);
    CHECK(type_check({}, parse_prog("λx. x"), parse_type_text("(-> 1 1)")).ok);
    CHECK_FALSE(type_check({}, parse_prog("λx. x"), parse_type_text("(-> 1 (+ 1 1))")).ok);
    CHECK(type_check({{"y", ty_one()}}, parse_prog("Left(y)", {}, true), parse_type_text("(+ 1 1)")).ok);

    // strict mode needs explicit roll/unroll
    TypeP g = parse_type_text("(fix a (* (+ 1 1) a))");
    ProgP stream = parse_prog("rec (λs. Pair(L, s))");
    CHECK(type_check({}, stream, g, FixMode::Greedy).ok);
    CHECK_FALSE(type_check({}, stream, g, FixMode::Strict).ok);
}
