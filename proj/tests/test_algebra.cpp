#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyq/fp.hpp"
#include "cyq/prng.hpp"
#include "cyq/rational.hpp"
#include "cyq/unipoly.hpp"

using namespace cyq;

TEST_CASE("rational round trip") {
    CHECK(to_string(parse_rational("-22/4")) == "-11/2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(to_string(parse_rational("+0/5")) == "0");
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(height(Rational(-11, 2)) == 11);
    CHECK(height(Rational(3, 7)) == 7);
    CHECK(is_integer(Rational(8, 4)));
    CHECK_FALSE(is_integer(Rational(1, 3)));
    CHECK_THROWS_WITH_AS(parse_rational("1/0"), doctest::Contains("InvalidInput"), Error);
    CHECK_THROWS_AS(parse_rational("2.5"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK_THROWS_AS(parse_rational("1/ 2"), Error);
}

TEST_CASE("seed streams are deterministic and label separated") {
    SeedStream a(42, "pencil"), b(42, "pencil"), c(42, "bundle"), d(43, "pencil");
    uint64_t a1 = a.next_u64();
    CHECK(a1 == b.next_u64());
    CHECK(a1 != c.next_u64());
    CHECK(a1 != d.next_u64());
    SeedStream e(42, "range");
    for (int i = 0; i < 200; ++i) {
        int64_t v = e.next_in(-5, 5);
        CHECK(v >= -5);
        CHECK(v <= 5);
        CHECK(e.next_nonzero(3) != 0);
    }
}

TEST_CASE("prime field arithmetic") {
    Fp a(9, 7), b(5, 7);
    CHECK((a + b).v == 0);
    CHECK((a - b).v == 4);
    CHECK((a * b).v == 3);
    CHECK((a.inv() * a).v == 1);
    CHECK(a.pow(6).v == 1);  // Fermat
    CHECK((-Fp(0, 7)).v == 0);
    CHECK_THROWS_AS(Fp(1, 7) + Fp(1, 11), Error);
    CHECK_THROWS_AS(Fp(0, 7).inv(), Error);
    CHECK(reduce_mod(Rational(1, 2), 7).v == 4);
    CHECK_THROWS_WITH_AS(reduce_mod(Rational(1, 7), 7), doctest::Contains("BadPrime"), Error);
    CHECK_THROWS_WITH_AS(reduce_mod(Rational(1, 2), 6), doctest::Contains("BadPrime"), Error);
    CHECK(is_small_prime(13));
    CHECK_FALSE(is_small_prime(1));
    CHECK_FALSE(is_small_prime(91));
}

TEST_CASE("univariate arithmetic and division") {
    UniPoly f = UniPoly::from_ints({-6, 11, -6, 1});  // (t-1)(t-2)(t-3)
    CHECK(f.degree() == 3);
    CHECK(f.eval(Rational(2)) == 0);
    CHECK(f.eval(Rational(4)) == 6);
    UniPoly g = UniPoly::from_ints({-1, 1});
    auto [q, r] = uni_divmod(f, g);
    CHECK(r.is_zero());
    CHECK(q == UniPoly::from_ints({6, -5, 1}));
    CHECK(f.derivative() == UniPoly::from_ints({11, -12, 3}));
    CHECK((f * g - g * f).is_zero());
    CHECK(UniPoly::from_ints({2, 4}).primitive() == UniPoly::from_ints({1, 2}));
    CHECK(UniPoly::from_ints({-3, -6}).primitive() == UniPoly::from_ints({1, 2}));
}

TEST_CASE("gcd, separability, radical") {
    UniPoly a = UniPoly::from_ints({-1, 0, 1});  // (t-1)(t+1)
    UniPoly b = UniPoly::from_ints({-1, 1});
    CHECK(univariate_gcd(a, b) == b);
    CHECK(univariate_gcd(a, UniPoly::from_ints({1, 1})) == UniPoly::from_ints({1, 1}));
    UniPoly sq = b * b * UniPoly::from_ints({3, 1});
    CHECK_FALSE(is_separable(sq));
    CHECK(is_separable(a));
    CHECK(uni_radical(sq) == UniPoly::from_ints({-3, 2, 1}).monic());
    CHECK(uni_radical(sq) == (b * UniPoly::from_ints({3, 1})).monic());
    CHECK_THROWS_AS(is_separable(UniPoly()), Error);
}

TEST_CASE("rational roots") {
    // (2t-3)(t+5)(t-1)
    UniPoly f = UniPoly::from_ints({15, -22, 5, 2});
    auto roots = rational_roots(f);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == Rational(-5));
    CHECK(roots[1] == Rational(1));
    CHECK(roots[2] == Rational(3, 2));
    // t^2 + 1 has none
    CHECK(rational_roots(UniPoly::from_ints({1, 0, 1})).empty());
    // t^3 picks up 0 once
    auto z = rational_roots(UniPoly::from_ints({0, 0, 0, 1}));
    REQUIRE(z.size() == 1);
    CHECK(z[0] == 0);
}

TEST_CASE("binary form basics") {
    // (S - 2T)(S + 3T) = S^2 + ST - 6T^2
    BinaryForm f = BinaryForm::from_ints(2, {1, 1, -6});
    CHECK(f.eval(Rational(2), Rational(1)) == 0);
    CHECK(f.eval(Rational(-3), Rational(1)) == 0);
    CHECK(f.eval(Rational(1), Rational(1)) == -4);
    CHECK(f.derivative_s() == BinaryForm::from_ints(1, {2, 1}));
    CHECK(f.derivative_t() == BinaryForm::from_ints(1, {1, -12}));
    BinaryForm st = BinaryForm::from_ints(1, {1, 0}) * BinaryForm::from_ints(1, {0, 1});
    CHECK(st == BinaryForm::from_ints(2, {0, 1, 0}));
    CHECK(BinaryForm::from_ints(2, {0, 1, 0}).s_multiplicity() == 1);
    CHECK(BinaryForm::from_ints(3, {0, 0, 5, 0}).s_multiplicity() == 1);
    CHECK(BinaryForm::from_ints(3, {0, 0, 0, 5}).s_multiplicity() == 0);
}

TEST_CASE("binary resultant and squarefree detection") {
    BinaryForm f = BinaryForm::from_ints(2, {1, 0, -4});  // (S-2T)(S+2T)
    BinaryForm g = BinaryForm::from_ints(1, {1, -2});     // S = 2T root (2:1)
    CHECK(binary_resultant(f, g) == 0);
    CHECK(binary_resultant(f, BinaryForm::from_ints(1, {1, -3})) != 0);
    CHECK(binary_squarefree(f));
    CHECK_FALSE(binary_squarefree(f * f));
    // squarefree even with the root at (0:1): S * (S - T)
    CHECK(binary_squarefree(BinaryForm::from_ints(2, {1, -1, 0})));
    CHECK_FALSE(binary_squarefree(BinaryForm::from_ints(2, {0, 0, 1})));  // T^2 doubles (1:0)
}

TEST_CASE("binary gcd and radical keep the root at infinity") {
    BinaryForm s = BinaryForm::from_ints(1, {1, 0});
    BinaryForm t = BinaryForm::from_ints(1, {0, 1});
    BinaryForm f = s * s * t;                  // S^2 T
    BinaryForm g = s * t * t;                  // S T^2
    BinaryForm h = binary_gcd(f, g);           // S T up to scale
    CHECK(h.degree() == 2);
    CHECK(binary_resultant(h, s * t) == 0);
    CHECK(h.s_multiplicity() == 1);
    BinaryForm r = binary_radical(f);
    CHECK(r.degree() == 2);
    CHECK(r.s_multiplicity() == 1);
    auto roots = binary_rational_roots(f);
    REQUIRE(roots.size() == 2);  // (0:1) and (1:0)
}

TEST_CASE("discriminants against factored oracles") {
    // quadratic: b^2 - 4ac
    CHECK(disc_binary_form(BinaryForm::from_ints(2, {1, -7, 10})) == 9);
    // cubic x^3 - 1 -> -27
    CHECK(disc_binary_form(BinaryForm::from_ints(3, {1, 0, 0, -1})) == -27);
    // quartic x^4 - 1 -> -256
    CHECK(disc_binary_form(BinaryForm::from_ints(4, {1, 0, 0, 0, -1})) == -256);
    // quartic with roots 1,2,3,4 and lead 1: prod (ri-rj)^2 = 1*4*9*1*4*1 wait
    // pairs: (1,2)(1,3)(1,4)(2,3)(2,4)(3,4) -> 1*4*9*1*4*1 = 144
    UniPoly p = UniPoly::from_ints({-1, 1});
    UniPoly q = UniPoly::from_ints({24, -50, 35, -10, 1});  // (t-1)(t-2)(t-3)(t-4)
    CHECK(disc_binary_form(BinaryForm::homogenize(q, 4)) == 144);
    (void)p;
    // scaling: disc(c f) = c^(2d-2) disc(f) for deg d
    BinaryForm f = BinaryForm::from_ints(4, {2, -1, 3, 5, -7});
    CHECK(disc_binary_form(f.scale(Rational(3))) == disc_binary_form(f) * 729);
    // a Moebius substitution of determinant 1 preserves the discriminant
    BinaryForm g = f.mobius(Rational(2), Rational(1), Rational(1), Rational(1));
    CHECK(disc_binary_form(g) == disc_binary_form(f));
}

TEST_CASE("vieta other root") {
    // (u - 2v)(u - 5v)
    P1Point other = vieta_other_root(Rational(1), Rational(-7), Rational(10), P1Point(Rational(2), Rational(1)));
    CHECK(other == P1Point(Rational(5), Rational(1)));
    // double root stays put
    CHECK(vieta_other_root(Rational(1), Rational(-4), Rational(4), P1Point(Rational(2), Rational(1)))
          == P1Point(Rational(2), Rational(1)));
    // a == 0: v (3u + 4v)
    CHECK(vieta_other_root(Rational(0), Rational(3), Rational(4), P1Point(Rational(1), Rational(0)))
          == P1Point(Rational(-4), Rational(3)));
    CHECK(vieta_other_root(Rational(0), Rational(3), Rational(4), P1Point(Rational(-4), Rational(3)))
          == P1Point(Rational(1), Rational(0)));
    // c v^2 with a = b = 0: (1:0) is a double root
    CHECK(vieta_other_root(Rational(0), Rational(0), Rational(5), P1Point(Rational(1), Rational(0)))
          == P1Point(Rational(1), Rational(0)));
    CHECK_THROWS_WITH_AS(vieta_other_root(Rational(0), Rational(0), Rational(0), P1Point(Rational(1), Rational(0))),
                         doctest::Contains("DegenerateForm"), Error);
    CHECK_THROWS_WITH_AS(vieta_other_root(Rational(1), Rational(0), Rational(1), P1Point(Rational(1), Rational(1))),
                         doctest::Contains("NotARoot"), Error);
    // scaling of the input point does not change the answer
    CHECK(vieta_other_root(Rational(1), Rational(-7), Rational(10), P1Point(Rational(4), Rational(2)))
          == P1Point(Rational(5), Rational(1)));
    CHECK(P1Point(Rational(-1, 2), Rational(3)) == P1Point(Rational(-1), Rational(6)));
    CHECK(P1Point(Rational(-2), Rational(0)) == P1Point(Rational(1), Rational(0)));
}

TEST_CASE("polynomial printing") {
    CHECK(UniPoly::from_ints({16, -15, 1}).str("t") == "t^2 - 15*t + 16");
    CHECK(UniPoly::from_ints({0, 11, -7}).scale(Rational(1, 2)).str("t") == "-7/2*t^2 + 11/2*t");
    CHECK(BinaryForm::from_ints(2, {1, 1, -6}).str("S", "T") == "S^2 + S*T - 6*T^2");
    CHECK(UniPoly().str() == "0");
}
