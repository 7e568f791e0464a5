#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyq/linalg.hpp"
#include "cyq/multiform.hpp"

using namespace cyq;

namespace {

// S1^2 S2 T2 + S1 T1 (2 S2^2 + 2 S2 T2 + 3 T2^2) + T1^2 T2 (S2 + T2)
MultiForm sample_22(const SpacePtr& sp) {
    auto S1 = MultiForm::var(sp, "S1"), T1 = MultiForm::var(sp, "T1");
    auto S2 = MultiForm::var(sp, "S2"), T2 = MultiForm::var(sp, "T2");
    return S1 * S1 * S2 * T2
           + S1 * T1 * (S2 * S2.scale(Rational(2)) + S2 * T2.scale(Rational(2)) + T2 * T2.scale(Rational(3)))
           + T1 * T1 * T2 * (S2 + T2);
}

}  // namespace

TEST_CASE("space shapes") {
    auto pp = GradedSpace::product_p1(3);
    CHECK(pp->nvars() == 6);
    CHECK(pp->rank() == 3);
    CHECK(pp->var_index("T3") == 5);
    CHECK(pp->block_of(4) == 2);
    CHECK(pp->block_range(1) == std::pair<int, int>(2, 4));
    auto bundle = GradedSpace::p2_bundle();
    CHECK(bundle->nvars() == 7);
    CHECK(bundle->weights[6] == std::vector<int>{-1, 1});
    CHECK(bundle->var_name(6) == "Z");
    CHECK_THROWS_AS(GradedSpace::by_kind("nope", 0), Error);
    CHECK(GradedSpace::by_kind("product_p1", 2)->same_as(*GradedSpace::product_p1(2)));
}

TEST_CASE("biquadratic form basics") {
    auto sp = GradedSpace::product_p1(2);
    MultiForm f = sample_22(sp);
    CHECK(f.is_homogeneous());
    CHECK(f.multidegree() == std::vector<int>{2, 2});
    CHECK(f.terms().size() == 6);
    // both orbit endpoints of the worked chord-and-tangent hop lie on it
    CHECK(f.eval({Rational(1), Rational(0), Rational(0), Rational(1)}) == 0);
    CHECK(f.eval({Rational(1), Rational(-3), Rational(2), Rational(3)}) == 0);
    CHECK(f.eval({Rational(1), Rational(1), Rational(1), Rational(1)}) == 10);
    CHECK(f.str() == "S1^2*S2*T2 + 2*S1*T1*S2^2 + 2*S1*T1*S2*T2 + 3*S1*T1*T2^2 + T1^2*S2*T2 + T1^2*T2^2");
}

TEST_CASE("block coefficient split and the quartic discriminant") {
    auto sp = GradedSpace::product_p1(2);
    MultiForm f = sample_22(sp);
    auto abc = f.coeffs_in_block(1);
    REQUIRE(abc.size() == 3);
    auto S1 = MultiForm::var(sp, "S1"), T1 = MultiForm::var(sp, "T1");
    CHECK(abc[0] == (S1 * T1).scale(Rational(2)));
    CHECK(abc[1] == (S1 + T1) * (S1 + T1));
    CHECK(abc[2] == (S1 * T1).scale(Rational(3)) + T1 * T1);
    MultiForm delta = disc_quadratic(abc[0], abc[1], abc[2]);
    BinaryForm expected = BinaryForm::from_ints(4, {1, 4, -18, -4, 1});
    CHECK(delta.restrict_to_binary(0) == expected);
}

TEST_CASE("homogeneity is enforced but chart work is allowed") {
    auto sp = GradedSpace::product_p1(2);
    std::vector<Term> bad{{{1, 0, 0, 0}, Rational(1)}, {{0, 0, 1, 0}, Rational(1)}};
    CHECK_THROWS_AS(MultiForm::from_terms(sp, bad, true), Error);
    MultiForm ok = MultiForm::from_terms(sp, bad, false);
    CHECK_FALSE(ok.is_homogeneous());
    CHECK_THROWS_AS(ok.multidegree(), Error);
    MultiForm chart = sample_22(sp).substitute_scalar(sp->var_index("T1"), Rational(1));
    CHECK_FALSE(chart.is_homogeneous());
    // (1:-3) reads as S1 = -1/3 on the chart T1 = 1
    CHECK(chart.eval({Rational(-1, 3), Rational(99), Rational(2), Rational(3)}) == 0);
}

TEST_CASE("bundle grading accepts the mixed sections") {
    auto sp = GradedSpace::p2_bundle();
    auto X1 = MultiForm::var(sp, "X1"), X2 = MultiForm::var(sp, "X2");
    auto Y0 = MultiForm::var(sp, "Y0"), Y1 = MultiForm::var(sp, "Y1"), Y2 = MultiForm::var(sp, "Y2");
    auto Z = MultiForm::var(sp, "Z");
    MultiForm p2 = (X1 * X1 + X2 * X2) * Z * Z + (X1 * Y1 + X2 * Y2) * Z + Y0 * Y0.scale(Rational(2))
                   + Y1 * Y1.scale(Rational(6)) + Y1 * Y2.scale(Rational(4)) - Y2 * Y2.scale(Rational(16));
    CHECK(p2.is_homogeneous());
    CHECK(p2.multidegree() == std::vector<int>{0, 2});
    // X0 X1 Z has degree (1,1), so adding Y0^2 must break homogeneity
    auto X0 = MultiForm::var(sp, "X0");
    CHECK_FALSE((X0 * X1 * Z + Y0 * Y0).is_homogeneous());
}

TEST_CASE("substitution and linear changes agree with evaluation") {
    auto sp = GradedSpace::p2();
    auto X = MultiForm::var(sp, "X"), Y = MultiForm::var(sp, "Y"), Z = MultiForm::var(sp, "Z");
    MultiForm f = X * X * Y - Z * Z * Z + X * Y * Z.scale(Rational(3));
    std::vector<std::vector<Rational>> M{{Rational(1), Rational(2), Rational(0)},
                                         {Rational(0), Rational(1), Rational(-1)},
                                         {Rational(5), Rational(0), Rational(1)}};
    MultiForm g = f.apply_linear(0, M);
    std::vector<Rational> p{Rational(2), Rational(-1), Rational(3)};
    std::vector<Rational> Mp{p[0] + 2 * p[1], p[1] - p[2], 5 * p[0] + p[2]};
    CHECK(g.eval(p) == f.eval(Mp));
    // scalar block substitution keeps the remaining grading
    auto sp2 = GradedSpace::p1_p2();
    auto s = MultiForm::var(sp2, "s"), x0 = MultiForm::var(sp2, "x0"), x1 = MultiForm::var(sp2, "x1");
    MultiForm h = s * x0 * x0 * x1 + MultiForm::var(sp2, "t") * x1 * x1 * x1;
    MultiForm at = h.substitute_block_scalars(0, {Rational(2), Rational(3)});
    CHECK(at.is_homogeneous());
    CHECK(at.multidegree() == std::vector<int>{0, 3});
}

TEST_CASE("exact division") {
    auto sp = GradedSpace::product_p1(2);
    MultiForm f = sample_22(sp);
    auto S1 = MultiForm::var(sp, "S1"), T2 = MultiForm::var(sp, "T2");
    MultiForm g = S1 + MultiForm::var(sp, "T1");
    auto q = exact_divide(f * g, g);
    REQUIRE(q.has_value());
    CHECK(*q == f);
    CHECK_FALSE(exact_divide(f, g).has_value());
    CHECK_FALSE(exact_divide(f, T2 * T2 * T2).has_value());
    CHECK(exact_divide(MultiForm::zero(sp), g)->is_zero());
}

TEST_CASE("resultants in one variable") {
    auto sp = GradedSpace::p2();
    auto X = MultiForm::var(sp, "X"), Y = MultiForm::var(sp, "Y"), Z = MultiForm::var(sp, "Z");
    int xv = sp->var_index("X");
    // common factor forces a zero resultant
    CHECK(resultant_in_var(X * X - Y * Y, X - Y, xv).is_zero());
    CHECK(resultant_in_var(X * X + Y * Y, X - Y, xv) == Y * Y.scale(Rational(2)));
    // against the scalar Sylvester oracle
    MultiForm f = X * X * X.scale(Rational(2)) - X * Y * Z.scale(Rational(7)) + Z * Z * Z;
    MultiForm g = X * X - Y * Z.scale(Rational(4)) + Z * Z + X * Z;
    MultiForm r = resultant_in_var(f, g, xv);
    // specialize (Y,Z) = (y0,1) and compare with the univariate resultant
    for (long y0 : {-2L, 1L, 3L, 5L}) {
        MultiForm fy = f.substitute_scalar(sp->var_index("Y"), Rational(y0)).substitute_scalar(sp->var_index("Z"), Rational(1));
        MultiForm gy = g.substitute_scalar(sp->var_index("Y"), Rational(y0)).substitute_scalar(sp->var_index("Z"), Rational(1));
        BinaryForm fb = BinaryForm::homogenize(fy.restrict_to_uni(xv), 3);
        BinaryForm gb = BinaryForm::homogenize(gy.restrict_to_uni(xv), 2);
        Rational expect = binary_resultant(fb, gb);
        Rational got = r.substitute_scalar(sp->var_index("Y"), Rational(y0))
                           .substitute_scalar(sp->var_index("Z"), Rational(1))
                           .eval(std::vector<Rational>(3, Rational(0)));
        CHECK(got == expect);
    }
}

TEST_CASE("content stripping") {
    auto sp = GradedSpace::product_p1(2);
    auto S1 = MultiForm::var(sp, "S1"), T1 = MultiForm::var(sp, "T1"), S2 = MultiForm::var(sp, "S2");
    MultiForm f = (S1 * S2).scale(Rational(4, 3)) + (T1 * S2).scale(Rational(2, 9));
    CHECK(numeric_content(f) == Rational(2, 9));
    std::vector<int> removed;
    MultiForm g = strip_monomial_content(f, &removed);
    CHECK(removed == std::vector<int>{0, 0, 1, 0});
    CHECK(g == S1.scale(Rational(4, 3)) + T1.scale(Rational(2, 9)));
}

TEST_CASE("bundle points canonicalize through the twisted coordinate") {
    auto sp = GradedSpace::p2_bundle();
    BlockPoint raw{{{Rational(2), Rational(4), Rational(6)}, {Rational(1), Rational(2), Rational(3), Rational(5)}}};
    BlockPoint canon = canonical_point(sp, raw);
    CHECK(canon.coords[0] == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
    // base scaled by 1/2, so Z picks up a factor 2
    CHECK(canon.coords[1] == std::vector<Rational>{Rational(1), Rational(2), Rational(3), Rational(10)});
    BlockPoint same{{{Rational(1), Rational(2), Rational(3)}, {Rational(1), Rational(2), Rational(3), Rational(10)}}};
    BlockPoint diff{{{Rational(1), Rational(2), Rational(3)}, {Rational(1), Rational(2), Rational(3), Rational(5)}}};
    CHECK(same_point(sp, raw, same));
    CHECK_FALSE(same_point(sp, raw, diff));
    CHECK_THROWS_AS(canonical_point(sp, BlockPoint{{{Rational(0), Rational(0), Rational(0)},
                                                    {Rational(1), Rational(0), Rational(0), Rational(0)}}}),
                    Error);
    CHECK(point_str(GradedSpace::product_p1(2),
                    BlockPoint{{{Rational(1), Rational(-3)}, {Rational(2), Rational(3)}}})
          == "((1:-3),(2:3))");
}

TEST_CASE("exact linear algebra") {
    QMatrix m{{Rational(1), Rational(2), Rational(3)}, {Rational(2), Rational(4), Rational(6)}};
    CHECK(matrix_rank(m) == 1);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
    QMatrix a{{Rational(2), Rational(1)}, {Rational(1), Rational(-1)}};
    auto x = solve_square(a, {Rational(5), Rational(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 1);
    CHECK_FALSE(solve_square(m = {{Rational(1), Rational(1)}, {Rational(2), Rational(2)}}, {Rational(1), Rational(1)}).has_value());
    CHECK(determinant({{Rational(0), Rational(2)}, {Rational(3), Rational(4)}}) == -6);
    CHECK(normalize_primitive({Rational(-2, 3), Rational(4)}) == QVector{Rational(1), Rational(-6)});
}
