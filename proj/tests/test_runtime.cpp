#include "common.hpp"
#include "ifp/runtime.hpp"

using namespace ifp;

namespace {

ProgP M(const std::string &s) { return parse_prog(s); }
const char *ones = "rec (λa. Pair(1, a))";

}

TEST_CASE("program syntax") {
    CHECK(prog_alpha_eq(M("1 : 0 : ⊥"), p_pair(d_one(), p_pair(d_zero(), p_bot()))));
    CHECK(prog_alpha_eq(M("λx. x"), M("λy. y")));
    CHECK(prog_alpha_eq(M("let q = Nil in Pair(q, q)"), M("(λq. Pair(q, q)) Nil")));
    CHECK(prog_alpha_eq(M("head (1 : ⊥)"), M("πLeft (1 : ⊥)")));
    CHECK(prog_alpha_eq(M("λx′. x′"), M("λx'. x'")));
    CHECK_THROWS(M("λx. y"));
    CHECK_NOTHROW(parse_prog("λx. y", {}, true));
}

TEST_CASE("bigstep") {
    auto r = bigstep(M("(λx. Pair(x, x)) Nil"));
    REQUIRE(r.outcome == Outcome::Value);
    CHECK(prog_alpha_eq(r.value, M("Pair(Nil, Nil)")));
    CHECK(bigstep(M("rec (λx. x)"), 1000).outcome == Outcome::Diverged);
    CHECK(bigstep(M("case λx. x of {Nil → Nil}")).outcome == Outcome::Stuck);
    CHECK(bigstep(M("case Left(Nil) of {Right(b) → b}")).outcome == Outcome::Stuck);
}

TEST_CASE("smallstep and parallel step") {
    auto s = smallstep(M("(λx. x) Nil"));
    REQUIRE(s.kind == StepKind::Step);
    CHECK(prog_alpha_eq(s.next, M("Nil")));
    CHECK(smallstep(M("Left((λx. x) Nil)")).kind == StepKind::Value);
    CHECK(prog_alpha_eq(parallel_step(M("Pair((λx. x) Nil, (λy. y) L)")), M("Pair(Nil, L)")));
}

TEST_CASE("approximations grow") {
    DataP a5 = approx(M(ones), 5), a50 = approx(M(ones), 50);
    CHECK(data_leq(a5, a50));
    CHECK(data_leq(M("1 : 1 : 1 : ⊥"), a50));
    CHECK(data_eq(approx(M("rec (λx. x)"), 100), p_bot()));
}

TEST_CASE("data order") {
    DataP bot = p_bot(), a = M("Pair(Nil, ⊥)"), b = M("Pair(Nil, L)");
    CHECK(data_leq(bot, a));
    CHECK(data_leq(a, b));
    CHECK_FALSE(data_leq(b, a));
    CHECK_FALSE(data_leq(M("L"), M("R")));
    CHECK(data_total(b));
    CHECK_FALSE(data_total(a));
}

TEST_CASE("finite computation") {
    auto r = compute_finite(M("Pair((λx. x) L, Left((λy. y) Nil))"));
    REQUIRE(r.ok);
    CHECK(data_eq(r.data, M("Pair(L, Left(Nil))")));
    CHECK_FALSE(compute_finite(M(ones), 1000).ok);
    CHECK(numeral_value(numeral(7)) == 7u);
}

TEST_CASE("stream printing") {
    CHECK(print_data(M("R : L : ⊥")) == "R:L:⊥");
    CHECK(print_data(M("1 : 0 : -1 : ⊥")) == "1:0:-1:⊥");
    CHECK(print_data(approx(M(ones), 400), DataFormat::Stream, 3) == "1:1:1:…");
    CHECK(print_data(M("Pair(Nil, L)"), DataFormat::Term) == "Pair(Nil, Left(Nil))");
}
