#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "cyq/json_io.hpp"

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

MultiForm quadric_layer(const SpacePtr& sp) {
    MultiForm s1 = mv(sp, "S1"), t1 = mv(sp, "T1"), s2 = mv(sp, "S2"), t2 = mv(sp, "T2");
    return s1 * s1 * s2 * t2
           + s1 * t1 * ((s2 * s2).scale(Rational(2)) + (s2 * t2).scale(Rational(2)) + (t2 * t2).scale(Rational(3)))
           + t1 * t1 * t2 * (s2 + t2);
}

}  // namespace

TEST_CASE("rationals and points survive the string format") {
    CHECK(rational_json(Rational(-15, 2)) == Json("-15/2"));
    CHECK(rational_json(Rational(7)) == Json("7"));
    CHECK(rational_from_json(Json("-15/2")) == Rational(-15, 2));
    CHECK(thrown_kind([] { rational_from_json(Json(3.5)); }) == "InvalidInput");
    CHECK(thrown_kind([] { rational_from_json(Json("3.5")); }) == "InvalidInput");

    ECPoint inf = ECPoint::infinity();
    ECPoint aff = ECPoint::affine(Rational(-326), Rational(17290));
    CHECK(ecpoint_to_json(inf) == Json("infinity"));
    CHECK(ecpoint_from_json(ecpoint_to_json(inf)) == inf);
    CHECK(ecpoint_from_json(ecpoint_to_json(aff)) == aff);
    CHECK(ecpoint_to_json(aff)["x"] == Json("-326"));
    CHECK(thrown_kind([] { ecpoint_from_json(Json("elsewhere")); }) == "InvalidInput");

    BlockPoint p{{{Rational(1), Rational(0)}, {Rational(4), Rational(13), Rational(-6), Rational(1)}}};
    Json pj = block_point_to_json(p);
    CHECK(pj.is_array());
    CHECK(pj[1][2] == Json("-6"));
    BlockPoint back = block_point_from_json(pj);
    CHECK(back.coords == p.coords);

    UniPoly d({Rational(8), Rational(-15, 2), Rational(1, 2)});
    Json dj = unipoly_to_json(d);
    CHECK(dj == Json::parse(R"(["8","-15/2","1/2"])"));
    CHECK(unipoly_from_json(dj) == d);
}

TEST_CASE("forms round-trip with exact coefficients") {
    auto sp = GradedSpace::product_p1(2);
    MultiForm x1 = quadric_layer(sp);
    Json j = form_to_json(x1);
    CHECK(j["vars"] == Json::parse(R"(["S1","T1","S2","T2"])"));
    CHECK(j["grading"].size() == 4);
    CHECK(j["terms"].size() == x1.terms().size());
    CHECK(j["terms"][0].contains("exp"));
    CHECK(j["terms"][0].contains("coeff"));
    CHECK(form_from_json(j, sp) == x1);

    auto p2p2 = GradedSpace::p2_p2();
    MultiForm y0 = mv(p2p2, "Y0"), y1 = mv(p2p2, "Y1"), y2 = mv(p2p2, "Y2");
    MultiForm q0 = (y0 * y0).scale(Rational(2)) + (y1 * y1).scale(Rational(6)) + (y1 * y2).scale(Rational(4))
                   - (y2 * y2).scale(Rational(16));
    CHECK(form_from_json(form_to_json(q0), p2p2) == q0);
    MultiForm half = q0.scale(Rational(1, 2));
    Json hj = form_to_json(half);
    bool has_fraction = false;
    for (const auto& t : hj["terms"])
        if (t["coeff"] == Json("-8")) has_fraction = true;
    CHECK(has_fraction);
    CHECK(form_from_json(hj, p2p2) == half);

    CHECK(form_from_json(form_to_json(MultiForm::zero(sp)), sp).is_zero());
    CHECK(thrown_kind([&] { form_from_json(j, GradedSpace::p2()); }) == "InvalidInput");
    Json bad = j;
    bad["terms"][0]["exp"] = Json::parse("[1,1]");
    CHECK(thrown_kind([&] { form_from_json(bad, sp); }) == "InvalidInput");
}

TEST_CASE("space files rebuild through their factories") {
    auto sp = GradedSpace::product_p1(2);
    FiberedSpace hyper = hypersurface_space(quadric_layer(sp), {0});
    Json hj = space_to_json(hyper);
    CHECK(hj["ambient"]["kind"] == Json("product_p1"));
    CHECK(hj["ambient"]["param"] == Json(2));
    CHECK(hj["defining"].is_object());
    CHECK(hj["base_blocks"] == Json::parse("[0]"));
    FiberedSpace hback = space_from_json(hj);
    CHECK(hback.ambient->same_as(*sp));
    CHECK(hback.defining[0] == hyper.defining[0]);
    CHECK(hback.base_blocks == hyper.base_blocks);

    auto tsp = GradedSpace::p1_p2_p2();
    MultiForm f1 = mv(tsp, "s") * mv(tsp, "x0") * mv(tsp, "x1") * mv(tsp, "x2")
                   + mv(tsp, "t") * mv(tsp, "x0") * mv(tsp, "x0") * mv(tsp, "x0");
    MultiForm f2 = mv(tsp, "s") * mv(tsp, "y0") * mv(tsp, "y1") * mv(tsp, "y2")
                   + mv(tsp, "t") * mv(tsp, "y1") * mv(tsp, "y1") * mv(tsp, "y1");
    FiberedSpace inter = intersection_space(tsp, {f1, f2}, {0});
    Json ij = space_to_json(inter);
    CHECK(ij["defining"].is_array());
    CHECK(ij["defining"].size() == 2);
    FiberedSpace iback = space_from_json(ij);
    CHECK(iback.defining.size() == 2);
    CHECK(iback.defining[1] == f2);

    Construction3Data d3 = build_construction3();
    Json sj = space_to_json(d3.surface);
    CHECK(sj["defining"].is_array());
    CHECK(sj["defining"][0].size() == 3);
    FiberedSpace sback = space_from_json(sj);
    CHECK(sback.is_degeneracy());
    for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 3; ++c)
            CHECK(sback.matrix->entry[r][c] == d3.surface.matrix->entry[r][c]);

    Json fj = space_to_json(d3.family);
    CHECK(!fj.contains("ambient"));
    FiberedSpace fback = space_from_json(fj);
    CHECK(fback.is_family());
    CHECK(fback.family->c == d3.c);
    CHECK(fback.family->f == d3.f);

    Json tampered = sj;
    tampered["defining"][0][0]["terms"] = Json::array();
    CHECK(thrown_kind([&] { space_from_json(tampered); }) == "InvalidInput");
    Json unknown = hj;
    unknown["ambient"]["kind"] = "p5";
    CHECK(thrown_kind([&] { space_from_json(unknown); }) == "InvalidInput");
}

TEST_CASE("audit and certificate reports serialize stably") {
    AuditReport rep;
    rep.steps.push_back(AuditStep{"separability", "pass", "no repeated root"});
    rep.steps.push_back(AuditStep{"salient-branch", "fail", "the factor is constant"});
    Json rj = audit_to_json(rep);
    AuditReport back = audit_from_json(rj);
    REQUIRE(back.steps.size() == 2);
    CHECK(back.steps[0].id == "separability");
    CHECK(back.steps[1].status == "fail");
    CHECK(!back.all_passed());
    Json badstatus = rj;
    badstatus["steps"][0]["status"] = "maybe";
    CHECK(thrown_kind([&] { audit_from_json(badstatus); }) == "InvalidInput");

    auto sp = GradedSpace::product_p1(2);
    auto cert = smoothness_certificate(reduce_space(hypersurface_space(quadric_layer(sp), {0}), 5));
    Json cj = certificate_to_json(cert, "base-layer");
    CHECK(cj["p"] == Json(5));
    CHECK(cj["space_id"] == Json("base-layer"));
    CHECK(cj["status"] == Json("Certified"));
    CHECK(!cj.contains("witness"));
    CHECK(cj["counts"]["ambient_examined"] == Json("36"));
    CHECK(cj["counts"]["locus_points"] == Json("12"));
    CHECK(dump_json(cj) == dump_json(certificate_to_json(cert, "base-layer")));

    CHECK(thrown_kind([] { parse_json("{"); }) == "InvalidInput");
    CHECK(parse_json("{\"a\": 1}")["a"] == Json(1));
}

TEST_CASE("point streams keep every record and skip") {
    PointStream s;
    PointRecord r1;
    r1.base = BlockPoint{{{Rational(1), Rational(0)}}};
    r1.point = BlockPoint{{{Rational(1014), Rational(-395), Rational(216)}}};
    r1.n = 1;
    r1.backend = "weierstrass";
    PointRecord r2;
    r2.point = BlockPoint{{{Rational(1), Rational(-3)}, {Rational(2), Rational(3)}}};
    r2.n = 2;
    r2.backend = "qrt";
    s.records = {r1, r2};
    s.skips = {SkipReport{0, "SingularFiber: the fiber over the point is singular"},
               SkipReport{1, "translation is torsion of order 1"}};
    s.warnings = {"salient check unavailable: InvalidInput: multisection equations cut two variable blocks"};

    std::string lines = stream_to_lines(s);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 5);
    PointStream back = stream_from_lines(lines);
    REQUIRE(back.records.size() == 2);
    REQUIRE(back.skips.size() == 2);
    REQUIRE(back.warnings.size() == 1);
    CHECK(back.records[0].base.coords == r1.base.coords);
    CHECK(back.records[0].point.coords == r1.point.coords);
    CHECK(back.records[1].backend == "qrt");
    CHECK(back.records[1].base.coords.empty());
    CHECK(back.skips[0].seed_index == 0);
    CHECK(back.skips[1].reason == "translation is torsion of order 1");
    CHECK(back.warnings[0] == s.warnings[0]);
    CHECK(stream_to_lines(back) == lines);

    PointStream empty = stream_from_lines("");
    CHECK(empty.records.empty());
    CHECK(empty.skips.empty());
}

TEST_CASE("density witnesses serialize with their kernels") {
    auto sp = GradedSpace::product_p1(2);
    std::vector<BlockPoint> pts = {BlockPoint{{{Rational(1), Rational(2)}, {Rational(0), Rational(1)}}}};
    DensityWitness w = density_witness(sp, pts, {1, 0});
    REQUIRE(w.kernel_dim == 1);
    Json wj = density_to_json(w);
    CHECK(wj["multidegree"] == Json::parse("[1,0]"));
    CHECK(wj["points_used"] == Json(1));
    CHECK(wj["kernel_dim"] == Json(1));
    DensityWitness back = density_from_json(wj, sp);
    CHECK(back.kernel.size() == 1);
    CHECK(back.kernel[0] == w.kernel[0]);
    Json lying = wj;
    lying["kernel_dim"] = 2;
    CHECK(thrown_kind([&] { density_from_json(lying, sp); }) == "InvalidInput");
}

TEST_CASE("bundles replay their audits from disk") {
    Construction2Tower tower = build_construction2(2, 42);
    Json tj = construction2_to_json(tower);
    Construction2Tower tback = construction2_from_json(tj);
    REQUIRE(tback.levels.size() == 2);
    CHECK(tback.levels[0] == tower.levels[0]);
    CHECK(tback.levels[1] == tower.levels[1]);
    CHECK(tback.seed == 42);
    AuditReport rerun = audit_tower(tback.levels);
    REQUIRE(rerun.steps.size() == tback.audit.steps.size());
    for (size_t i = 0; i < rerun.steps.size(); ++i) {
        CHECK(rerun.steps[i].id == tback.audit.steps[i].id);
        CHECK(rerun.steps[i].status == tback.audit.steps[i].status);
        CHECK(rerun.steps[i].witness == tback.audit.steps[i].witness);
    }

    Construction3Data d3 = build_construction3();
    Json dj = construction3_to_json(d3);
    Construction3Data dback = construction3_from_json(dj);
    CHECK(dback.c == d3.c);
    CHECK(dback.section.degree == 2);
    CHECK(dback.shortform.A == Rational(-52));
    CHECK(dback.audit.all_passed());
    REQUIRE(dback.audit.steps.size() == 10);
    Construction3Data fresh = build_construction3();
    for (size_t i = 0; i < fresh.audit.steps.size(); ++i) {
        CHECK(fresh.audit.steps[i].status == dback.audit.steps[i].status);
        CHECK(fresh.audit.steps[i].witness == dback.audit.steps[i].witness);
    }
    CHECK(dump_json(construction3_to_json(fresh)) == dump_json(dj));

    Construction1Bundle b1 = build_construction1(default_construction1());
    Json bj = construction1_to_json(b1);
    Construction1Bundle bback = construction1_from_json(bj);
    CHECK(bback.spec.cubic == b1.spec.cubic);
    REQUIRE(bback.spec.second_cubic.has_value());
    CHECK(*bback.spec.second_cubic == *b1.spec.second_cubic);
    CHECK(bback.spec.seed == b1.spec.seed);
    CHECK(bback.X.defining.size() == 2);
    CHECK(bback.X.defining[0] == b1.X.defining[0]);
    Construction1Bundle rebuilt = build_construction1(bback.spec);
    REQUIRE(rebuilt.audit.steps.size() == bback.audit.steps.size());
    for (size_t i = 0; i < rebuilt.audit.steps.size(); ++i) {
        CHECK(rebuilt.audit.steps[i].id == bback.audit.steps[i].id);
        CHECK(rebuilt.audit.steps[i].status == bback.audit.steps[i].status);
    }
    CHECK(rebuilt.Y.defining[0] == bback.Y.defining[0]);
}
