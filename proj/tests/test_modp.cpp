#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "cyq/fibration.hpp"
#include "cyq/modp.hpp"
#include "cyq/prng.hpp"

using namespace cyq;

namespace {

MultiForm mv(const SpacePtr& sp, const std::string& name) { return MultiForm::var(sp, name); }

MultiForm base_biquadratic(const SpacePtr& sp) {
    auto S1 = mv(sp, "S1"), T1 = mv(sp, "T1"), S2 = mv(sp, "S2"), T2 = mv(sp, "T2");
    return S1 * S1 * S2 * T2
           + S1 * T1 * ((S2 * S2).scale(Rational(2)) + (S2 * T2).scale(Rational(2)) + (T2 * T2).scale(Rational(3)))
           + T1 * T1 * T2 * (S2 + T2);
}

std::array<MultiForm, 3> surface_conics(const SpacePtr& sp) {
    auto Y0 = mv(sp, "Y0"), Y1 = mv(sp, "Y1"), Y2 = mv(sp, "Y2");
    MultiForm q0 = (Y0 * Y0).scale(Rational(2)) + (Y1 * Y1).scale(Rational(6))
                   + (Y1 * Y2).scale(Rational(4)) - (Y2 * Y2).scale(Rational(16));
    MultiForm q1 = (Y0 * Y0).scale(Rational(2)) - Y1 * Y1 + (Y1 * Y2).scale(Rational(15))
                   - (Y2 * Y2).scale(Rational(16));
    MultiForm q2 = Y1 * Y1 + Y2 * Y2;
    return {q0, q1, q2};
}

FiberedSpace surface_locus() {
    auto sp = GradedSpace::p2_p2();
    auto X0 = mv(sp, "X0"), X1 = mv(sp, "X1"), X2 = mv(sp, "X2");
    auto q = surface_conics(sp);
    DegeneracyMatrix m;
    m.entry[0] = {X0 * X0, X1 * X1, X2 * X2};
    m.entry[1] = {q[0], q[1], q[2]};
    return degeneracy_space(sp, m, {0});
}

FiberedSpace threefold_locus() {
    auto sp = GradedSpace::p2_bundle();
    auto X0 = mv(sp, "X0"), X1 = mv(sp, "X1"), X2 = mv(sp, "X2"), Z = mv(sp, "Z");
    auto Y0 = mv(sp, "Y0"), Y1 = mv(sp, "Y1"), Y2 = mv(sp, "Y2");
    auto q = surface_conics(sp);
    DegeneracyMatrix m;
    m.entry[0] = {X0 * X0, X1 * X1, X2 * X2};
    m.entry[1] = {(X1 * X1 + X2 * X2) * Z * Z + (X1 * Y1 + X2 * Y2) * Z + q[0],
                  (X0 * X0 + X2 * X2) * Z * Z + (X0 * Y0 + X2 * Y2) * Z + q[1],
                  (X0 * X0 + X1 * X1) * Z * Z + (X0 * Y0 + X1 * Y1) * Z + q[2]};
    return degeneracy_space(sp, m, {0});
}

FiberedSpace x1_surface() { return hypersurface_space(base_biquadratic(GradedSpace::product_p1(2)), {0}); }

// bare hypersurface-style data on a space the factories cannot fiber,
// e.g. a conic on P^2 with no base projection
FiberedSpace bare_locus(SpacePtr sp, MultiForm f) {
    FiberedSpace fs;
    fs.ambient = std::move(sp);
    fs.defining = {std::move(f)};
    return fs;
}

FiberedSpace sample_family() {
    return quadric_pair_family(UniPoly({Rational(8), Rational(-2), Rational(-3)}),
                               UniPoly({Rational(8), Rational(-15, 2), Rational(1, 2)}),
                               UniPoly({Rational(1, 2), Rational(0), Rational(1, 2)}));
}

template <class F>
std::string thrown_kind(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

Integer projective_orbits(int64_t p, int k) {
    Integer n = 0, pw = 1;
    for (int i = 0; i < k; ++i) {
        n += pw;
        pw *= p;
    }
    return n;
}

Integer walk_count(const SpacePtr& sp, int64_t p) {
    PointEnumerator en(sp, p);
    Integer n = 0;
    std::vector<int64_t> pt;
    while (en.next(pt)) n += 1;
    return n;
}

bool certified(const SmoothnessCertificate& c) {
    return c.status == SmoothnessCertificate::Status::Certified;
}

}  // namespace

TEST_CASE("coefficient reduction and bad primes") {
    auto f = base_biquadratic(GradedSpace::product_p1(2));
    FpForm rf = reduce_form(f, 5);
    CHECK(rf.coeffs.size() == f.terms().size());
    bool saw2 = false, saw3 = false;
    for (size_t i = 0; i < rf.coeffs.size(); ++i) {
        if (rf.exps[i] == std::vector<int>{1, 1, 2, 0}) saw2 = rf.coeffs[i] == 2;
        if (rf.exps[i] == std::vector<int>{1, 1, 0, 2}) saw3 = rf.coeffs[i] == 3;
    }
    CHECK(saw2);
    CHECK(saw3);

    CHECK(reduce_form(MultiForm::zero(GradedSpace::p2()), 5).is_zero());

    FiberedSpace fam = sample_family();
    CHECK(thrown_kind([&] { reduce_space(fam, 2); }) == "BadPrime");
    ReducedSpace r7 = reduce_space(fam, 7);
    CHECK(r7.family_coeffs == std::vector<std::vector<int64_t>>{{1, 5, 4}, {1, 3, 4}, {4, 0, 4}});

    CHECK(thrown_kind([&] { reduce_space(x1_surface(), 6); }) == "BadPrime");
    CHECK(thrown_kind([&] { reduce_space(x1_surface(), 1); }) == "BadPrime");
    CHECK(thrown_kind([&] { reduce_space(hypersurface_space(f.scale(Rational(5)), {0}), 5); }) == "BadPrime");
    CHECK(reduce_space(x1_surface(), 5).defining.size() == 1);
}

TEST_CASE("orbit enumeration hits every class once") {
    for (int64_t p : {2, 3, 5, 7, 11, 13}) {
        CAPTURE(p);
        CHECK(walk_count(GradedSpace::product_p1(1), p) == projective_orbits(p, 2));
        CHECK(walk_count(GradedSpace::product_p1(2), p) == projective_orbits(p, 2) * projective_orbits(p, 2));
        CHECK(walk_count(GradedSpace::p2(), p) == projective_orbits(p, 3));
        CHECK(walk_count(GradedSpace::p3(), p) == projective_orbits(p, 4));
        CHECK(walk_count(GradedSpace::p2_p2(), p) == projective_orbits(p, 3) * projective_orbits(p, 3));
        CHECK(walk_count(GradedSpace::p2_bundle(), p) == projective_orbits(p, 3) * projective_orbits(p, 4));
        CHECK(PointEnumerator(GradedSpace::p2_bundle(), p).total()
              == projective_orbits(p, 3) * projective_orbits(p, 4));
    }
    CHECK(walk_count(GradedSpace::p2(), 5) == 31);
    CHECK(walk_count(GradedSpace::p3(), 5) == 156);

    PointEnumerator en(GradedSpace::product_p1(2), 3);
    std::set<std::vector<int64_t>> seen;
    std::vector<int64_t> pt;
    while (en.next(pt)) {
        for (int lo : {0, 2}) {
            int lead = pt[lo] != 0 ? lo : lo + 1;
            CHECK(pt[lead] == 1);
            for (int i = lo; i < lead; ++i) CHECK(pt[i] == 0);
        }
        seen.insert(pt);
    }
    CHECK(seen.size() == 16);
}

TEST_CASE("smoothness certificates") {
    auto p2 = GradedSpace::p2();
    auto X = mv(p2, "X"), Y = mv(p2, "Y"), Z = mv(p2, "Z");
    auto conic = bare_locus(p2, X * X + Y * Y + Z * Z);
    auto cc = smoothness_certificate(reduce_space(conic, 5));
    CHECK(certified(cc));
    CHECK(cc.ambient_examined == 31);
    CHECK(cc.locus_points == 6);

    int64_t good = 0;
    for (int64_t p : kPrimeLadder) {
        auto c = smoothness_certificate(reduce_space(x1_surface(), p));
        if (certified(c)) {
            good = p;
            CHECK(c.locus_points == 12);
            break;
        }
    }
    CHECK(good == 5);

    // the tower with both general layers zeroed is a product with a
    // double layer: every point over S3 = 0 kills the whole gradient
    auto sp3 = GradedSpace::product_p1(3);
    auto S3 = mv(sp3, "S3");
    auto degenerate = hypersurface_space(S3 * S3 * base_biquadratic(sp3), {0});
    auto dc = smoothness_certificate(reduce_space(degenerate, 5));
    CHECK(!certified(dc));
    REQUIRE(dc.witness.has_value());
    CHECK(*dc.witness == std::vector<int64_t>{1, 0, 1, 0, 0, 1});

    // the rank-one surface has honest rational singular points, so no
    // prime can certify it; the witness at 11 is one of them
    FiberedSpace surf = surface_locus();
    auto s5 = smoothness_certificate(reduce_space(surf, 5));
    CHECK(!certified(s5));
    REQUIRE(s5.witness.has_value());
    CHECK(*s5.witness == std::vector<int64_t>{1, 0, 0, 0, 1, 2});
    auto s11 = smoothness_certificate(reduce_space(surf, 11));
    REQUIRE(s11.witness.has_value());
    CHECK(*s11.witness == std::vector<int64_t>{1, 1, 0, 1, 0, 0});
    CHECK(degeneracy_membership(surf, BlockPoint{{{Rational(1), Rational(1), Rational(0)},
                                                  {Rational(1), Rational(0), Rational(0)}}}));

    FiberedSpace three = threefold_locus();
    auto t11 = smoothness_certificate(reduce_space(three, 11));
    CHECK(certified(t11));
    CHECK(t11.ambient_examined == 194712);
    CHECK(t11.locus_points == 1560);

    CHECK(thrown_kind([&] { smoothness_certificate(reduce_space(sample_family(), 5)); }) == "InvalidInput");
    FiberedSpace two_forms = bare_locus(p2, X * X + Y * Y + Z * Z);
    two_forms.defining.push_back(X * Y);
    CHECK(thrown_kind([&] { smoothness_certificate(reduce_space(two_forms, 5)); }) == "InvalidInput");
}

TEST_CASE("rank-zero matrix points are flagged") {
    auto sp = GradedSpace::p2_p2();
    auto X0 = mv(sp, "X0"), X1 = mv(sp, "X1"), X2 = mv(sp, "X2");
    auto q = surface_conics(sp);
    DegeneracyMatrix m;
    m.entry[0] = {X0 * X1, X1 * X2, X0 * X2};
    m.entry[1] = {q[0], q[1], q[2]};
    FiberedSpace crafted = degeneracy_space(sp, m, {0});
    ReducedSpace r = reduce_space(crafted, 5);
    // all six matrix entries vanish here mod 5
    CHECK(locus_contains(r, {1, 0, 0, 0, 1, 2}));
    CHECK(!certified(smoothness_certificate(r)));
}

TEST_CASE("locus counts and budgets") {
    auto p1 = GradedSpace::product_p1(1);
    auto none = count_points(reduce_space(bare_locus(p1, MultiForm::constant(p1, Rational(1))), 5));
    CHECK(none.entries[0].locus == "ambient");
    CHECK(none.entries[0].count == 6);
    CHECK(none.entries[1].locus == "locus");
    CHECK(none.entries[1].count == 0);
    CHECK(none.entries[1].p == 5);

    auto all = count_points(reduce_space(bare_locus(p1, MultiForm::zero(p1)), 5));
    CHECK(all.entries[1].count == 6);

    CHECK(count_points(reduce_space(x1_surface(), 5)).entries[1].count == 12);
    CHECK(count_points(reduce_space(surface_locus(), 5)).entries[1].count == 66);
    CHECK(count_points(reduce_space(threefold_locus(), 5)).entries[1].count == 225);

    auto conic6 = bare_locus(GradedSpace::p2_p2(), mv(GradedSpace::p2_p2(), "X0"));
    CHECK(thrown_kind([&] { count_points(reduce_space(conic6, 5), Integer(10)); }) == "TooLarge");
    CHECK(thrown_kind([&] { count_points(reduce_space(sample_family(), 5)); }) == "InvalidInput");

    auto windowed = count_points(reduce_space(x1_surface(), 5), Integer(2000000),
                                 std::make_pair(Integer(1), Integer(100)));
    REQUIRE(windowed.window.has_value());
    CHECK(windowed.window->first == 1);
    CHECK(windowed.window->second == 100);
}

TEST_CASE("proper intersection audits") {
    PointPredicate line0 = [](int64_t, const std::vector<int64_t>& pt) { return pt[0] == 0; };
    PointPredicate line1 = [](int64_t, const std::vector<int64_t>& pt) { return pt[1] == 0; };

    auto crossing = proper_intersection_audit(line0, line1, {5, 7, 11, 13}, Integer(1));
    CHECK(crossing.verdict == "ProperLikely");
    for (const auto& e : crossing.entries) {
        if (e.locus == "intersection") CHECK(e.count == 1);
        if (e.locus == "discriminant") CHECK(e.count == e.p + 1);
    }

    auto doubled = proper_intersection_audit(line0, line0, {5, 7}, Integer(1));
    CHECK(doubled.verdict == "NotProper");
    CHECK(doubled.entries[2].locus == "intersection");
    CHECK(doubled.entries[2].count == 6);

    CHECK(thrown_kind([&] { proper_intersection_audit(line0, line1, {6}, Integer(1)); }) == "BadPrime");

    // the threefold's pencil discriminant against the product of the
    // three surface conics, exactly the shipped audit
    FiberedSpace three = threefold_locus();
    PointPredicate delta = [&](int64_t p, const std::vector<int64_t>& pt) {
        BlockPoint b{{{Rational(pt[0]), Rational(pt[1]), Rational(pt[2])}}};
        return reduce_mod(disc_binary_form(fiber_quadric_pencil(three, b).det_form), p).is_zero();
    };
    auto sp = GradedSpace::p2_p2();
    auto q = surface_conics(sp);
    PointPredicate branch = [&](int64_t p, const std::vector<int64_t>& pt) {
        std::vector<int64_t> full = {1, 0, 0, pt[0], pt[1], pt[2]};
        for (const auto& qi : q)
            if (reduce_form(qi, p).eval(full, p) == 0) return true;
        return false;
    };
    auto rep = proper_intersection_audit(delta, branch, {11, 13}, Integer(144));
    CHECK(rep.verdict == "ProperLikely");
    REQUIRE(rep.entries.size() == 6);
    CHECK(rep.entries[0].count == 19);   // discriminant, p = 11
    CHECK(rep.entries[1].count == 25);   // branch, p = 11
    CHECK(rep.entries[2].count == 4);    // intersection, p = 11
    CHECK(rep.entries[3].count == 38);   // discriminant, p = 13
    CHECK(rep.entries[4].count == 51);   // branch, p = 13
    CHECK(rep.entries[5].count == 9);    // intersection, p = 13
}

TEST_CASE("certificates replay deterministically") {
    ReducedSpace conic = reduce_space(
        bare_locus(GradedSpace::p2(), mv(GradedSpace::p2(), "X") * mv(GradedSpace::p2(), "X")
                                          + mv(GradedSpace::p2(), "Y") * mv(GradedSpace::p2(), "Y")
                                          + mv(GradedSpace::p2(), "Z") * mv(GradedSpace::p2(), "Z")),
        7);
    auto a = smoothness_certificate(conic);
    auto b = smoothness_certificate(conic);
    CHECK(certified(a));
    CHECK(a.status == b.status);
    CHECK(a.ambient_examined == b.ambient_examined);
    CHECK(a.locus_points == b.locus_points);

    // scanning the points in a shuffled order reaches the same verdict
    auto scan = [](const ReducedSpace& r, int expected_rank) {
        std::vector<std::vector<int64_t>> pts;
        PointEnumerator en(r.original.ambient, r.p);
        std::vector<int64_t> pt;
        while (en.next(pt)) pts.push_back(pt);
        SeedStream rng(11, "modp-permuted-audit");
        for (size_t i = pts.size(); i > 1; --i)
            std::swap(pts[i - 1], pts[static_cast<size_t>(rng.next_in(0, static_cast<int64_t>(i) - 1))]);
        for (const auto& q : pts)
            if (locus_contains(r, q) && jacobian_rank_at(r, q) != expected_rank) return false;
        return true;
    };
    CHECK(scan(conic, 1));
    CHECK(scan(reduce_space(x1_surface(), 5), 1));
    CHECK(!scan(reduce_space(surface_locus(), 5), 2));

    // a known good point of the rank-one surface looks smooth mod 11
    ReducedSpace surf11 = reduce_space(surface_locus(), 11);
    std::vector<int64_t> good = {2, 6, 5, 4, 7, 1};
    CHECK(locus_contains(surf11, good));
    CHECK(jacobian_rank_at(surf11, good) == 2);
}
