#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "cyq/constructions.hpp"
#include "cyq/fibration.hpp"
#include "cyq/genus1.hpp"
#include "cyq/unipoly.hpp"

using namespace cyq;

namespace {

MultiForm mv(const SpacePtr& sp, const std::string& n) { return MultiForm::var(sp, n); }

template <class F>
std::string thrown_kind(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

// Built once; the draw takes a few seconds and several cases inspect it.
const Construction1Bundle& bundle1() {
    static Construction1Bundle b = build_construction1(default_construction1());
    return b;
}

MultiForm quadric_layer(const SpacePtr& sp) {
    MultiForm s1 = mv(sp, "S1"), t1 = mv(sp, "T1"), s2 = mv(sp, "S2"), t2 = mv(sp, "T2");
    return s1 * s1 * s2 * t2
           + s1 * t1 * ((s2 * s2).scale(Rational(2)) + (s2 * t2).scale(Rational(2)) + (t2 * t2).scale(Rational(3)))
           + t1 * t1 * t2 * (s2 + t2);
}

MultiForm prefix_lift(const SpacePtr& target, const MultiForm& f) {
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        std::vector<int> e(static_cast<size_t>(target->nvars()), 0);
        for (size_t i = 0; i < t.exp.size(); ++i) e[i] = t.exp[i];
        out.push_back(Term{std::move(e), t.coeff});
    }
    return MultiForm::from_terms(target, std::move(out), false);
}

AffinePoint ap(std::vector<Rational> coords) { return AffinePoint{std::move(coords)}; }

}  // namespace

TEST_CASE("the default cubic pencil bundle assembles and audits") {
    const Construction1Bundle& b = bundle1();
    CHECK(b.audit.all_passed());
    REQUIRE(b.audit.steps.size() == 4);
    CHECK(b.audit.steps[0].id == "base-points");
    CHECK(b.audit.steps[1].id == "transversality");
    CHECK(b.audit.steps[2].id == "pencil-covering");
    CHECK(b.audit.steps[3].id == "structure");
    CHECK(b.audit.find("transversality")->witness
          == "projection resultant of degree 9 is squarefree (frame 1)");
    CHECK(b.audit.find("missing") == nullptr);

    // the drawn partner passes through both marked points
    REQUIRE(b.spec.second_cubic.has_value());
    CHECK(b.spec.second_cubic->str()
          == "-9*X^3 + 6*X^2*Y - X^2*Z - 7*X*Y^2 + 3*X*Y*Z - X*Z^2 + 3*Y*Z^2 - 36*Z^3");
    CHECK(b.spec.second_cubic->eval_point(b.O) == 0);
    CHECK(b.spec.second_cubic->eval_point(b.P) == 0);

    // surface, companion surface, and total space shapes
    REQUIRE(b.S.defining.size() == 1);
    CHECK(b.S.defining[0].multidegree() == std::vector<int>{1, 3});
    CHECK(b.S.base_blocks == std::vector<int>{0});
    REQUIRE(b.Y.defining.size() == 1);
    CHECK(b.Y.defining[0].multidegree() == std::vector<int>{1, 3});
    REQUIRE(b.X.defining.size() == 2);
    CHECK(b.X.defining[0].multidegree() == std::vector<int>{1, 3, 0});
    CHECK(b.X.defining[1].multidegree() == std::vector<int>{1, 0, 3});
    CHECK(b.X.ambient->same_as(*GradedSpace::p1_p2_p2()));

    // both marked points are base points of the whole pencil
    BlockPoint over_p{{{Rational(2), Rational(7)}, {Rational(0), Rational(12), Rational(1)}}};
    BlockPoint over_o{{{Rational(5), Rational(-3)}, {Rational(0), Rational(1), Rational(0)}}};
    CHECK(b.S.defining[0].eval_point(over_p) == 0);
    CHECK(b.S.defining[0].eval_point(over_o) == 0);

    // replays are byte-identical and a supplied partner takes the same route
    Construction1Bundle again = build_construction1(default_construction1());
    CHECK(again.spec.second_cubic->str() == b.spec.second_cubic->str());
    CHECK(again.Y.defining[0] == b.Y.defining[0]);
    Construction1Spec supplied = default_construction1();
    supplied.second_cubic = *b.spec.second_cubic;
    Construction1Bundle sb = build_construction1(supplied);
    CHECK(sb.audit.all_passed());
    CHECK(*sb.spec.second_cubic == *b.spec.second_cubic);
}

TEST_CASE("pencil specs reject bad markings") {
    auto sp = GradedSpace::p2();
    MultiForm x = mv(sp, "X"), y = mv(sp, "Y"), z = mv(sp, "Z");
    Construction1Spec spec = default_construction1();

    Construction1Spec misses = spec;
    misses.second_cubic = z * z * z;
    CHECK(thrown_kind([&] { build_construction1(misses); }) == "BadPencil");

    Construction1Spec doubled = spec;
    doubled.second_cubic = spec.cubic;
    CHECK(thrown_kind([&] { build_construction1(doubled); }) == "BadPencil");

    Construction1Spec quadric = spec;
    quadric.cubic = x * x;
    CHECK(thrown_kind([&] { build_construction1(quadric); }) == "InvalidInput");

    Construction1Spec dim4 = spec;
    dim4.dimension = 4;
    CHECK(thrown_kind([&] { build_construction1(dim4); }) == "InvalidInput");

    Construction1Spec off = spec;
    off.P = BlockPoint{{{Rational(1), Rational(1), Rational(1)}}};
    CHECK(thrown_kind([&] { build_construction1(off); }) == "InvalidInput");

    Construction1Spec same = spec;
    same.P = spec.O;
    CHECK(thrown_kind([&] { build_construction1(same); }) == "InvalidInput");

    Construction1Spec wrong_space = spec;
    wrong_space.cubic = quadric_layer(GradedSpace::product_p1(2));
    CHECK(thrown_kind([&] { build_construction1(wrong_space); }) == "InvalidInput");

    CHECK(y.is_zero() == false);
}

TEST_CASE("marked sections certify rank or torsion") {
    RankCertificate rc = verify_positive_mw_rank(bundle1());
    CHECK(rc.positive);
    CHECK(rc.method == "lutz-nagell");
    CHECK(!rc.torsion_order.has_value());

    // on the curve with j = 0 the section (0 : 1 : 1) is three-torsion
    auto sp = GradedSpace::p2();
    MultiForm x = mv(sp, "X"), y = mv(sp, "Y"), z = mv(sp, "Z");
    Construction1Spec tor;
    tor.cubic = y * y * z - x * x * x - z * z * z;
    tor.O = BlockPoint{{{Rational(0), Rational(1), Rational(0)}}};
    tor.P = BlockPoint{{{Rational(0), Rational(1), Rational(1)}}};
    RankCertificate rc3 = verify_positive_mw_rank(build_construction1(tor));
    CHECK(!rc3.positive);
    CHECK(rc3.method == "mazur");
    REQUIRE(rc3.torsion_order.has_value());
    CHECK(*rc3.torsion_order == 3);

    // a section on the branch axis is two-torsion
    tor.P = BlockPoint{{{Rational(-1), Rational(0), Rational(1)}}};
    RankCertificate rc2 = verify_positive_mw_rank(build_construction1(tor));
    CHECK(!rc2.positive);
    CHECK(rc2.method == "mazur");
    REQUIRE(rc2.torsion_order.has_value());
    CHECK(*rc2.torsion_order == 2);

    Construction1Bundle collapsed;
    collapsed.spec = default_construction1();
    collapsed.O = collapsed.spec.O;
    collapsed.P = collapsed.spec.O;
    CHECK(thrown_kind([&] { verify_positive_mw_rank(collapsed); }) == "InvalidInput");
}

TEST_CASE("towers extend the base layer with audited levels") {
    Construction2Tower one = build_construction2(1, 42);
    REQUIRE(one.levels.size() == 1);
    CHECK(one.levels[0] == quadric_layer(one.levels[0].space()));
    REQUIRE(one.audit.steps.size() == 1);
    CHECK(one.audit.steps[0].id == "level-1");
    CHECK(one.audit.all_passed());

    Construction2Tower two = build_construction2(2, 42);
    REQUIRE(two.levels.size() == 2);
    CHECK(two.levels[1].multidegree() == std::vector<int>{2, 2, 2});
    CHECK(two.audit.all_passed());
    REQUIRE(two.audit.steps.size() == 4);
    CHECK(two.audit.find("smooth-2")->witness == "certified at p = 7 over 75 locus points");
    CHECK(two.audit.find("salient-2")->witness == "exact branch factor off the discriminant");

    // freezing the last coordinate pair recovers the previous level
    auto sp3 = two.levels[1].space();
    CHECK(two.levels[1].substitute_block_scalars(2, {Rational(1), Rational(0)})
          == prefix_lift(sp3, two.levels[0]));

    Construction2Tower replay = build_construction2(2, 42);
    CHECK(replay.levels[1] == two.levels[1]);

    Construction2Tower three = build_construction2(3, 42);
    REQUIRE(three.levels.size() == 3);
    CHECK(three.audit.all_passed());
    REQUIRE(three.audit.steps.size() == 7);
    CHECK(three.audit.find("smooth-3")->witness == "certified at p = 5 over 252 locus points");
    CHECK(three.audit.find("salient-3")->witness == "branch point with a smooth fiber found mod 5");
    CHECK(three.levels[1] == two.levels[1]);

    CHECK(thrown_kind([&] { build_construction2(0, 1); }) == "InvalidInput");
}

TEST_CASE("degenerate and malformed towers fail their audits") {
    AuditReport empty = audit_tower({});
    REQUIRE(empty.steps.size() == 1);
    CHECK(empty.steps[0].status == "fail");
    CHECK(!empty.all_passed());

    auto sp2 = GradedSpace::product_p1(2);
    MultiForm x1 = quadric_layer(sp2);
    AuditReport base_off = audit_tower({x1 + mv(sp2, "S1") * mv(sp2, "S1") * mv(sp2, "S2") * mv(sp2, "T2")});
    CHECK(base_off.steps[0].status == "fail");

    // a level proportional to a square of the new coordinate is never smooth
    // and its branch locus swallows the discriminant
    auto sp3 = GradedSpace::product_p1(3);
    MultiForm s3 = mv(sp3, "S3");
    MultiForm pinched = prefix_lift(sp3, x1) * s3 * s3;
    AuditReport bad = audit_tower({x1, pinched});
    REQUIRE(bad.steps.size() == 4);
    CHECK(bad.find("level-1")->status == "pass");
    CHECK(bad.find("identity-2")->status == "pass");
    CHECK(bad.find("smooth-2")->status == "fail");
    CHECK(bad.find("smooth-2")->witness == "no prime on the ladder certifies smoothness");
    CHECK(bad.find("salient-2")->status == "fail");
    CHECK(bad.find("salient-2")->witness == "no branch point with a smooth fiber was found");
    CHECK(!bad.all_passed());

    // a level that ignores the new coordinates is rejected on shape alone
    AuditReport flat = audit_tower({x1, prefix_lift(sp3, x1)});
    REQUIRE(flat.steps.size() == 2);
    CHECK(flat.find("identity-2")->status == "fail");
    CHECK(flat.find("identity-2")->witness == "the level has the wrong ambient or multidegree");
}

TEST_CASE("the rank-one family data audits end to end") {
    Construction3Data d3 = build_construction3();
    CHECK(d3.audit.all_passed());
    REQUIRE(d3.audit.steps.size() == 10);
    std::vector<std::string> ids = {"separability",  "cut-curve-identities", "marked-points",
                                    "weierstrass-map", "lutz-nagell",        "salient-branch",
                                    "discriminant-radical", "membership",    "bundle-restriction",
                                    "modp-handoff"};
    for (size_t i = 0; i < ids.size(); ++i) {
        CHECK(d3.audit.steps[i].id == ids[i]);
        CHECK(d3.audit.steps[i].status == "pass");
    }
    CHECK(d3.audit.find("lutz-nagell")->witness
          == "quantity -2560, the image point escapes every torsion bound");
    CHECK(d3.audit.find("salient-branch")->witness == "branch value -1: c d (c-d) = -1008 while f = 1");
    CHECK(d3.audit.find("modp-handoff")->witness
          == "the bundle is certified at p = 11 over 1560 locus points; the degenerate and branch "
             "loci meet properly");

    CHECK(d3.c.coeffs() == std::vector<Rational>{Rational(8), Rational(-2), Rational(-3)});
    CHECK(d3.d.coeffs() == std::vector<Rational>{Rational(8), Rational(-15, 2), Rational(1, 2)});
    CHECK(d3.f.coeffs() == std::vector<Rational>{Rational(1, 2), Rational(0), Rational(1, 2)});
    CHECK(d3.family.is_family());
    CHECK(d3.section.degree == 2);
    CHECK(d3.surface.is_degeneracy());
    CHECK(d3.threefold.is_degeneracy());
    CHECK(d3.surface.ambient->same_as(*GradedSpace::p2_p2()));
    CHECK(d3.threefold.ambient->same_as(*GradedSpace::p2_bundle()));
    CHECK(d3.O == ap({Rational(-1), Rational(0), Rational(-1)}));
    CHECK(d3.P == ap({Rational(7), Rational(-6), Rational(5)}));
    CHECK(d3.shortform.A == Rational(-52));
    CHECK(d3.shortform.B == Rational(144));

    Construction3Data again = build_construction3();
    REQUIRE(again.audit.steps.size() == d3.audit.steps.size());
    for (size_t i = 0; i < ids.size(); ++i) {
        CHECK(again.audit.steps[i].status == d3.audit.steps[i].status);
        CHECK(again.audit.steps[i].witness == d3.audit.steps[i].witness);
    }
}

TEST_CASE("the cut curve maps onto the short form") {
    WeierstrassCurve e{Rational(-52), Rational(144)};
    CHECK(cut_curve_to_weierstrass(ap({Rational(-1), Rational(0), Rational(-1)})).inf);
    ECPoint p = cut_curve_to_weierstrass(ap({Rational(7), Rational(-6), Rational(5)}));
    CHECK(p == ECPoint::affine(Rational(0), Rational(12)));
    ECPoint m = cut_curve_to_weierstrass(ap({Rational(7), Rational(6), Rational(5)}));
    CHECK(m == ECPoint::affine(Rational(0), Rational(-12)));
    ECPoint far = cut_curve_to_weierstrass(ap({Rational(7), Rational(-6), Rational(-5)}));
    CHECK(far == ECPoint::affine(Rational(5), Rational(-3)));
    ECPoint half = cut_curve_to_weierstrass(ap({Rational(-1), Rational(0), Rational(1)}));
    CHECK(half == ECPoint::affine(Rational(4), Rational(0)));
    for (const ECPoint& q : {p, m, far, half}) CHECK(on_curve(e, q));

    CHECK(thrown_kind([&] { cut_curve_to_weierstrass(ap({Rational(7), Rational(6), Rational(4)})); })
          == "NotOnCurve");
    CHECK(thrown_kind([&] { cut_curve_to_weierstrass(ap({Rational(0), Rational(0)})); }) == "InvalidInput");
}
