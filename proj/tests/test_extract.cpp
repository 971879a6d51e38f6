#include "common.hpp"
#include "ifp/extract.hpp"
#include "ifp/runtime.hpp"
#include "ifp/types.hpp"

using namespace ifp;

namespace {

Script run(const std::string &body) {
    return load_script_text("(include \"reals.ifp\")\n" + body, "<test>", IFP_CORPUS_DIR);
}

ProgP M(const std::string &s) { return parse_prog(s, {}, true); }

}

TEST_CASE("monotonicity witnesses have the functorial type") {
    struct Case {
        const char *op, *type;
    } cases[] = {
        {"PhiN", "(-> (-> a b) (-> (+ 1 a) (+ 1 b)))"},
        {"PhiS", "(-> (-> a b) (-> (* (+ (+ 1 1) 1) a) (* (+ (+ 1 1) 1) b)))"},
        {"PhiG", "(-> (-> a b) (-> (* (+ 1 1) a) (* (+ 1 1) b)))"},
    };
    for (auto &c : cases) {
        ProgP mon = gen_mon(reals().sig.ops.at(c.op));
        auto r = type_check({}, mon, parse_type_text(c.type));
        CHECK_MESSAGE(r.ok, c.op << ": " << r.error);
    }
}

TEST_CASE("monotonicity witness maps along the X positions") {
    ProgP mon = gen_mon(reals().sig.ops.at("PhiS"));
    ProgP f = M("λz. Pair(z, z)");
    auto r = compute_finite(p_apps(mon, {f, M("Pair(Left(Right(Nil)), Nil)")}));
    REQUIRE(r.ok);
    CHECK(data_eq(r.data, M("Pair(Left(Right(Nil)), Pair(Nil, Nil))")));
    auto id = compute_finite(p_apps(mon, {p_id(), M("Pair(Right(Nil), L)")}));
    REQUIRE(id.ok);
    CHECK(data_eq(id.data, M("Pair(Right(Nil), L)")));
}

TEST_CASE("simplifier rules") {
    CHECK(prog_alpha_eq(simplify(M("(λx. Pair(x, x)) y")), M("Pair(y, y)")));
    CHECK(prog_alpha_eq(simplify(M("case Left(y) of {Left(a) → a; Right(b) → Nil}")), M("y")));
    CHECK(prog_alpha_eq(simplify(M("case Left(y) of {Right(b) → Nil}")), M("⊥")));
    CHECK(prog_alpha_eq(simplify(M("case ⊥ of {Nil → Nil}")), M("⊥")));
    CHECK(prog_alpha_eq(simplify(M("case (case z of {Left(a) → Left(a); Right(b) → Right(b)}) of"
                                   " {Left(c) → c; Right(d) → Nil}")),
                        M("case z of {Left(a) → a; Right(b) → Nil}")));
    CHECK(prog_alpha_eq(simplify(M("(case z of {Left(a) → λx. x; Right(b) → λx. Nil}) y")),
                        M("case z of {Left(a) → y; Right(b) → Nil}")));
    CHECK(prog_alpha_eq(simplify(M("λk. case k of {Left(a) → Left(Nil); Right(b) → Right(Nil)}")), M("λk. k")));
    // projections are kept as they are
    CHECK(prog_alpha_eq(simplify(M("case (πLeft p) of {Nil → Nil}")), M("case (πLeft p) of {Nil → Nil}")));
}

TEST_CASE("simplification keeps closed data programs equal") {
    ProgP m = M("(λf. λx. f (f x)) (λy. Left(y)) Nil");
    auto a = compute_finite(m), b = compute_finite(simplify(m));
    REQUIRE(a.ok);
    REQUIRE(b.ok);
    CHECK(data_eq(a.data, b.data));
}

TEST_CASE("Harrop theorems extract to Nil") {
    Script s = run("(theorem t (imp (= 0 0) (= 0 0)) (impi u (= 0 0) u))");
    CHECK(prog_alpha_eq(extract_theorem(s, "t"), p_nil()));
}

TEST_CASE("disjunction introduction") {
    Script s = run("(theorem t (or (= 0 0) (<= 0 1)) (orl (refl 0) (<= 0 1)))");
    CHECK(prog_alpha_eq(simplify(extract_theorem(s, "t")), M("Left(Nil)")));
}

TEST_CASE("natural number realizers") {
    Script s = run("(theorem z (N 0) (impe (alle (clos PhiN) 0) (orl (refl 0) (N (- 0 1)))))");
    auto r = compute_finite(extract_theorem(s, "z"));
    REQUIRE(r.ok);
    CHECK(numeral_value(r.data) == 0u);
}

TEST_CASE("strong induction is rejected") {
    Script s = run("(theorem t (all (x) (imp (N x) (N x)))"
                   "  (si PhiN (lam (x) (N x)) (alli x (impi u (or (= x 0) (and (N (- x 1)) (N (- x 1))))"
                   "    (impe (alle (clos PhiN) x) (ore u (impi h (= x 0) (orl h (N (- x 1))))"
                   "      (impi k (and (N (- x 1)) (N (- x 1))) (orr (andl k) (= x 0)))))))))");
    CHECK_THROWS_AS(extract_theorem(s, "t"), ExtractError);
}

TEST_CASE("typed extraction carries roll and unroll") {
    ExtractionResult r = extract_typed(stog_script(), "minus");
    CHECK(has_annotations(r.typed));
    CHECK(type_check({}, r.typed, r.type, FixMode::Strict).ok);
    CHECK(prog_alpha_eq(erase_annotations(r.typed), erase_annotations(r.typed)));
    CHECK_FALSE(r.provenance.empty());
}

TEST_CASE("extracted sgh reads a signed digit stream") {
    ProgP sgh = simplify(extract_theorem(stog_script(), "sgh"));
    CHECK(data_eq(approx(p_app(sgh, parse_prog("-1 : ⊥")), 100), g_L()));
    CHECK(data_eq(approx(p_app(sgh, parse_prog("0 : 1 : ⊥")), 100), g_R()));
    CHECK(data_eq(approx(p_app(sgh, parse_prog("0 : 0 : ⊥")), 100), p_bot()));
}
