#include "cyq/constructions.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cyq/linalg.hpp"
#include "cyq/modp.hpp"
#include "cyq/prng.hpp"

namespace cyq {

namespace {

MultiForm mv(const SpacePtr& sp, const std::string& name) { return MultiForm::var(sp, name); }

void record(AuditReport& rep, const std::string& id, bool ok, const std::string& witness) {
    rep.steps.push_back(AuditStep{id, ok ? "pass" : "fail", witness});
}

void require_step(AuditReport& rep, const std::string& id, bool ok, const std::string& witness) {
    record(rep, id, ok, witness);
    if (!ok) throw Error("AuditFailure", "step " + id + ": " + witness);
}

// Re-expresses f on a target space, sending source variable i to the target
// variable at position offset + i. Exponents move positionally; both spaces
// must agree on the block sizes involved.
MultiForm lift_with_offset(const SpacePtr& target, int offset, const MultiForm& f) {
    if (f.is_zero()) return MultiForm::zero(target);
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        std::vector<int> e(static_cast<size_t>(target->nvars()), 0);
        for (size_t i = 0; i < t.exp.size(); ++i) e[static_cast<size_t>(offset) + i] = t.exp[i];
        terms.push_back(Term{std::move(e), t.coeff});
    }
    return MultiForm::from_terms(target, std::move(terms), false);
}

// Lift into a single block of the target.
MultiForm lift_to_block(const SpacePtr& target, int block, const MultiForm& f) {
    return lift_with_offset(target, target->block_range(block).first, f);
}

// Lift a form whose variables coincide with an initial run of the target's.
MultiForm lift_prefix(const SpacePtr& target, const MultiForm& f) {
    return lift_with_offset(target, 0, f);
}

void degree_splits(int nvars, int deg, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<size_t>(pos)] = deg;
        out.push_back(cur);
        return;
    }
    for (int d = deg; d >= 0; --d) {
        cur[static_cast<size_t>(pos)] = d;
        degree_splits(nvars, deg - d, cur, pos + 1, out);
    }
}

// Dense homogeneous form of the given degree in one block, with small integer
// coefficients. The leading draw is forced nonzero so the form never collapses.
MultiForm random_block_form(const SpacePtr& sp, int block, int deg, SeedStream& rng) {
    auto [lo, hi] = sp->block_range(block);
    std::vector<std::vector<int>> splits;
    std::vector<int> cur(static_cast<size_t>(hi - lo), 0);
    degree_splits(hi - lo, deg, cur, 0, splits);
    std::vector<Term> terms;
    bool first = true;
    for (const auto& s : splits) {
        Rational c = first ? Rational(rng.next_nonzero(9)) : Rational(rng.next_in(-9, 9));
        first = false;
        std::vector<int> e(static_cast<size_t>(sp->nvars()), 0);
        for (size_t i = 0; i < s.size(); ++i) e[static_cast<size_t>(lo) + i] = s[i];
        terms.push_back(Term{std::move(e), c});
    }
    return MultiForm::from_terms(sp, std::move(terms));
}

// A coordinate line avoiding the given point.
MultiForm line_missing(const SpacePtr& sp, const BlockPoint& a) {
    for (int i = 0; i < 3; ++i)
        if (a.coords[0][static_cast<size_t>(i)] != 0) return mv(sp, sp->var_name(i));
    throw Error("InvalidInput", "a marked point has all coordinates zero");
}

// A line through `at` that misses `off`. Exists iff the points differ.
MultiForm line_separating(const SpacePtr& sp, const BlockPoint& at, const BlockPoint& off) {
    QMatrix row{{at.coords[0][0], at.coords[0][1], at.coords[0][2]}};
    auto ker = kernel_basis(row);
    std::vector<QVector> cands = {ker[0], ker[1]};
    cands.push_back({ker[0][0] + ker[1][0], ker[0][1] + ker[1][1], ker[0][2] + ker[1][2]});
    for (const auto& v : cands) {
        MultiForm line = mv(sp, sp->var_name(0)).scale(v[0]) + mv(sp, sp->var_name(1)).scale(v[1])
                         + mv(sp, sp->var_name(2)).scale(v[2]);
        if (line.eval_point(off) != 0) return line;
    }
    throw Error("InvalidInput", "the marked points coincide");
}

// Random cubic through both marked points: correct a dense draw by cubes of
// lines, fixing the value at O first with a line that misses O, then the value
// at P with a line through O missing P so the first correction survives.
MultiForm partner_cubic(const SpacePtr& sp, const BlockPoint& o, const BlockPoint& p, SeedStream& rng) {
    MultiForm r = random_block_form(sp, 0, 3, rng);
    MultiForm cube_o = line_missing(sp, o).pow(3);
    r = r - cube_o.scale(r.eval_point(o) / cube_o.eval_point(o));
    MultiForm cube_p = line_separating(sp, o, p).pow(3);
    r = r - cube_p.scale(r.eval_point(p) / cube_p.eval_point(p));
    return r;
}

QMatrix seeded_gl3(SeedStream& rng) {
    for (;;) {
        QMatrix m(3, QVector(3, Rational(0)));
        for (auto& row : m)
            for (auto& e : row) e = Rational(rng.next_in(-4, 4));
        if (determinant(m) != 0) return m;
    }
}

// Two plane cubics meet transversally iff some linear projection of their
// intersection has nine distinct values. Eliminating the last coordinate can
// degenerate (common points at the center, collapsed projections), so failed
// frames are retried under seeded changes of coordinates before giving up.
bool cubics_meet_transversally(const MultiForm& c, const MultiForm& d, SeedStream& rng, std::string* note) {
    for (int attempt = 0; attempt < 5; ++attempt) {
        MultiForm ca = c;
        MultiForm da = d;
        if (attempt > 0) {
            QMatrix m = seeded_gl3(rng);
            ca = c.apply_linear(0, m);
            da = d.apply_linear(0, m);
        }
        if (ca.degree_in_var(2) != 3 || da.degree_in_var(2) != 3) continue;
        MultiForm res = resultant_in_var(ca, da, 2);
        if (res.is_zero()) return false;
        BinaryForm bf;
        try {
            bf = binary_in_vars(res, 0, 1);
        } catch (const Error&) {
            continue;
        }
        if (bf.degree() != 9) continue;
        if (!binary_squarefree(bf)) continue;
        if (note) *note = "projection resultant of degree 9 is squarefree (frame " + std::to_string(attempt) + ")";
        return true;
    }
    return false;
}

void check_on_cubic(const MultiForm& cubic, const BlockPoint& pt, const std::string& which) {
    if (cubic.eval_point(pt) != 0) throw Error("InvalidInput", "the point " + which + " is not on the cubic");
}

// The quadric layer over the base two-torus, written in split coordinates.
MultiForm base_layer(const SpacePtr& sp) {
    MultiForm s1 = mv(sp, "S1");
    MultiForm t1 = mv(sp, "T1");
    MultiForm s2 = mv(sp, "S2");
    MultiForm t2 = mv(sp, "T2");
    return s1 * s1 * s2 * t2
           + s1 * t1 * ((s2 * s2).scale(Rational(2)) + (s2 * t2).scale(Rational(2)) + (t2 * t2).scale(Rational(3)))
           + t1 * t1 * t2 * (s2 + t2);
}

// Random form of multidegree (2, ..., 2) in the first `blocks` factors with one
// monomial per exponent pattern, so every pattern is hit exactly once.
MultiForm random_layer_coeff(const SpacePtr& sp, int blocks, SeedStream& rng) {
    std::vector<Term> terms;
    std::vector<int> a(static_cast<size_t>(blocks), 0);
    bool first = true;
    for (;;) {
        std::vector<int> e(static_cast<size_t>(sp->nvars()), 0);
        for (int j = 0; j < blocks; ++j) {
            e[static_cast<size_t>(2 * j)] = a[static_cast<size_t>(j)];
            e[static_cast<size_t>(2 * j + 1)] = 2 - a[static_cast<size_t>(j)];
        }
        Rational c = first ? Rational(rng.next_nonzero(9)) : Rational(rng.next_in(-9, 9));
        first = false;
        terms.push_back(Term{std::move(e), c});
        int j = blocks - 1;
        while (j >= 0 && a[static_cast<size_t>(j)] == 2) {
            a[static_cast<size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
        ++a[static_cast<size_t>(j)];
    }
    return MultiForm::from_terms(sp, std::move(terms));
}

// First prime on the ladder where the reduced level is certifiably smooth.
bool level_smoothness(const MultiForm& f, int64_t* prime, Integer* locus) {
    FiberedSpace level = hypersurface_space(f, {0});
    for (int64_t p : kPrimeLadder) {
        try {
            auto reduced = reduce_space(level, p);
            auto cert = smoothness_certificate(reduced);
            if (cert.status == SmoothnessCertificate::Status::Certified) {
                if (prime) *prime = p;
                if (locus) *locus = cert.locus_points;
                return true;
            }
        } catch (const Error&) {
        }
    }
    return false;
}

// Level two admits an exact branch check through the last coordinate pair.
bool layer_salient_exact(const MultiForm& f, std::string* note) {
    try {
        FiberedSpace level = hypersurface_space(f, {0});
        Multisection sub = coordinate_multisection(level, "T3", 2);
        SalientResult sr = salient_check(level, sub);
        if (sr.salient && note) {
            *note = "exact branch factor off the discriminant";
            if (sr.witness && sr.witness->value) *note += ", rational value " + to_string(*sr.witness->value);
        }
        return sr.salient;
    } catch (const Error&) {
        return false;
    }
}

// Higher levels: hunt mod p for a branch point of the last fibration whose
// fiber is a smooth two-torus curve. Branch means the previous level
// degenerates in its last coordinate pair; smooth means the binary
// discriminant of the level's fiber is nonzero. One such point is evidence
// the branch divisor is not inside the discriminant.
bool layer_salient_modp(const MultiForm& fk, const MultiForm& fprev, int level, std::string* note) {
    auto base_sp = GradedSpace::product_p1(level - 1);
    for (int64_t p : kPrimeLadder) {
        try {
            PointEnumerator en(base_sp, p);
            std::vector<int64_t> pt;
            while (en.next(pt)) {
                BlockPoint b;
                for (size_t j = 0; j + 1 < pt.size(); j += 2)
                    b.coords.push_back({Rational(pt[j]), Rational(pt[j + 1])});
                auto prev_at = [&](long s, long t) {
                    BlockPoint full = b;
                    full.coords.push_back({Rational(s), Rational(t)});
                    return fprev.eval_point(full);
                };
                Rational am = prev_at(1, 0);
                Rational cm = prev_at(0, 1);
                Rational bm = prev_at(1, 1) - am - cm;
                if (!reduce_mod(bm * bm - am * cm * 4, p).is_zero()) continue;
                auto layer_at = [&](long s, long t, long u, long v) {
                    BlockPoint full = b;
                    full.coords.push_back({Rational(s), Rational(t)});
                    full.coords.push_back({Rational(u), Rational(v)});
                    return fk.eval_point(full);
                };
                auto last_coeff = [&](long u, long v) {
                    Rational a2 = layer_at(1, 0, u, v);
                    Rational c2 = layer_at(0, 1, u, v);
                    Rational b2 = layer_at(1, 1, u, v) - a2 - c2;
                    return BinaryForm(2, {a2, b2, c2});
                };
                BinaryForm af = last_coeff(1, 0);
                BinaryForm cf = last_coeff(0, 1);
                BinaryForm bf = last_coeff(1, 1) - af - cf;
                BinaryForm g = bf * bf - (af * cf).scale(Rational(4));
                if (g.is_zero()) continue;
                if (!reduce_mod(disc_binary_form(g), p).is_zero()) {
                    if (note) *note = "branch point with a smooth fiber found mod " + std::to_string(p);
                    return true;
                }
            }
        } catch (const Error&) {
        }
    }
    return false;
}

// Elements of the coordinate ring of the double-double cover: a + b v3 + c w
// + d v3 w with v3^2 and w^2 reduced by the given quadratics.
struct CoverElt {
    UniPoly one, v3, w, vw;
};

CoverElt celt_add(const CoverElt& x, const CoverElt& y) {
    return {x.one + y.one, x.v3 + y.v3, x.w + y.w, x.vw + y.vw};
}

CoverElt celt_sub(const CoverElt& x, const CoverElt& y) {
    return {x.one - y.one, x.v3 - y.v3, x.w - y.w, x.vw - y.vw};
}

CoverElt celt_scale(const CoverElt& x, const Rational& c) {
    return {x.one.scale(c), x.v3.scale(c), x.w.scale(c), x.vw.scale(c)};
}

CoverElt celt_mul(const CoverElt& x, const CoverElt& y, const UniPoly& qa, const UniPoly& qb) {
    CoverElt r;
    r.one = x.one * y.one + qa * (x.v3 * y.v3) + qb * (x.w * y.w) + qa * qb * (x.vw * y.vw);
    r.v3 = x.one * y.v3 + x.v3 * y.one + qb * (x.w * y.vw + x.vw * y.w);
    r.w = x.one * y.w + x.w * y.one + qa * (x.v3 * y.vw + x.vw * y.v3);
    r.vw = x.one * y.vw + x.vw * y.one + x.v3 * y.w + x.w * y.v3;
    return r;
}

bool celt_zero(const CoverElt& x) {
    return x.one.is_zero() && x.v3.is_zero() && x.w.is_zero() && x.vw.is_zero();
}

// The cleared defining identity of the cover-to-short-form map: with
// N = 3t - 4w - 1 and D = t - 2w - 1, the relation
// 64 v3^2 D - 8 N^3 + 104 N D^2 - 144 D^3 must vanish in the cover ring.
bool cleared_map_identity(const UniPoly& qa, const UniPoly& qb) {
    UniPoly zero;
    UniPoly tpoly({Rational(0), Rational(1)});
    CoverElt dd{tpoly - UniPoly::constant(Rational(1)), zero, UniPoly::constant(Rational(-2)), zero};
    CoverElt nn{tpoly.scale(Rational(3)) - UniPoly::constant(Rational(1)), zero, UniPoly::constant(Rational(-4)), zero};
    CoverElt vv{zero, UniPoly::constant(Rational(1)), zero, zero};
    auto mul = [&](const CoverElt& x, const CoverElt& y) { return celt_mul(x, y, qa, qb); };
    CoverElt d2 = mul(dd, dd);
    CoverElt total = celt_scale(mul(mul(vv, vv), dd), Rational(64));
    total = celt_sub(total, celt_scale(mul(mul(nn, nn), nn), Rational(8)));
    total = celt_add(total, celt_scale(mul(nn, d2), Rational(104)));
    total = celt_sub(total, celt_scale(mul(d2, dd), Rational(144)));
    return celt_zero(total);
}

bool proportional_forms(const BinaryForm& f, const BinaryForm& g) {
    if (f.degree() != g.degree()) return false;
    for (int i = 0; i <= f.degree(); ++i)
        for (int j = 0; j <= f.degree(); ++j)
            if (f.coeff(i) * g.coeff(j) != f.coeff(j) * g.coeff(i)) return false;
    return true;
}

std::array<MultiForm, 3> base_conics(const SpacePtr& sp) {
    MultiForm y0 = mv(sp, "Y0");
    MultiForm y1 = mv(sp, "Y1");
    MultiForm y2 = mv(sp, "Y2");
    MultiForm q0 = (y0 * y0).scale(Rational(2)) + (y1 * y1).scale(Rational(6)) + (y1 * y2).scale(Rational(4))
                   - (y2 * y2).scale(Rational(16));
    MultiForm q1 = (y0 * y0).scale(Rational(2)) - y1 * y1 + (y1 * y2).scale(Rational(15)) - (y2 * y2).scale(Rational(16));
    MultiForm q2 = y1 * y1 + y2 * y2;
    return {q0, q1, q2};
}

FiberedSpace rank_one_surface() {
    auto sp = GradedSpace::p2_p2();
    auto q = base_conics(sp);
    MultiForm x0 = mv(sp, "X0");
    MultiForm x1 = mv(sp, "X1");
    MultiForm x2 = mv(sp, "X2");
    DegeneracyMatrix m;
    m.entry[0][0] = x0 * x0;
    m.entry[0][1] = x1 * x1;
    m.entry[0][2] = x2 * x2;
    m.entry[1][0] = q[0];
    m.entry[1][1] = q[1];
    m.entry[1][2] = q[2];
    return degeneracy_space(sp, m, {0});
}

FiberedSpace rank_one_threefold() {
    auto sp = GradedSpace::p2_bundle();
    auto q = base_conics(sp);
    MultiForm x0 = mv(sp, "X0");
    MultiForm x1 = mv(sp, "X1");
    MultiForm x2 = mv(sp, "X2");
    MultiForm y0 = mv(sp, "Y0");
    MultiForm y1 = mv(sp, "Y1");
    MultiForm y2 = mv(sp, "Y2");
    MultiForm z = mv(sp, "Z");
    DegeneracyMatrix m;
    m.entry[0][0] = x0 * x0;
    m.entry[0][1] = x1 * x1;
    m.entry[0][2] = x2 * x2;
    m.entry[1][0] = (x1 * x1 + x2 * x2) * z * z + (x1 * y1 + x2 * y2) * z + q[0];
    m.entry[1][1] = (x0 * x0 + x2 * x2) * z * z + (x0 * y0 + x2 * y2) * z + q[1];
    m.entry[1][2] = (x0 * x0 + x1 * x1) * z * z + (x0 * y0 + x1 * y1) * z + q[2];
    return degeneracy_space(sp, m, {0});
}

}  // namespace

bool AuditReport::all_passed() const {
    return std::all_of(steps.begin(), steps.end(),
                       [](const AuditStep& s) { return s.status == "pass"; });
}

const AuditStep* AuditReport::find(const std::string& id) const {
    for (const auto& s : steps)
        if (s.id == id) return &s;
    return nullptr;
}

Construction1Spec default_construction1() {
    auto sp = GradedSpace::p2();
    MultiForm x = mv(sp, "X");
    MultiForm y = mv(sp, "Y");
    MultiForm z = mv(sp, "Z");
    Construction1Spec spec;
    spec.cubic = y * y * z - x * x * x + (x * z * z).scale(Rational(52)) - (z * z * z).scale(Rational(144));
    spec.O = BlockPoint{{{Rational(0), Rational(1), Rational(0)}}};
    spec.P = BlockPoint{{{Rational(0), Rational(12), Rational(1)}}};
    return spec;
}

Construction1Bundle build_construction1(const Construction1Spec& spec) {
    const SpacePtr& psp = spec.cubic.space();
    if (!psp || psp->kind != "p2") throw Error("InvalidInput", "the cubic must live on a projective plane");
    if (spec.cubic.is_zero() || spec.cubic.multidegree() != std::vector<int>{3})
        throw Error("InvalidInput", "the pencil wants a plane cubic");
    if (spec.dimension != 3)
        throw Error("InvalidInput", "only three-dimensional output is supported");
    if (spec.O.coords.size() != 1 || spec.P.coords.size() != 1 || spec.O.coords[0].size() != 3
        || spec.P.coords[0].size() != 3)
        throw Error("InvalidInput", "marked points must be single plane points");
    if (same_point(psp, spec.O, spec.P)) throw Error("InvalidInput", "the marked points must differ");
    check_on_cubic(spec.cubic, spec.O, "O");
    check_on_cubic(spec.cubic, spec.P, "P");

    Construction1Bundle out;
    out.spec = spec;
    out.O = spec.O;
    out.P = spec.P;
    AuditReport& rep = out.audit;

    // Partner cubic for the base pencil: supplied, or drawn through O and P
    // until the pencil's two generators meet transversally.
    MultiForm partner = MultiForm::zero(psp);
    std::string trans_note;
    bool have_partner = false;
    if (spec.second_cubic) {
        if (spec.second_cubic->is_zero() || spec.second_cubic->multidegree() != std::vector<int>{3})
            throw Error("InvalidInput", "the second cubic must be a plane cubic");
        if (spec.second_cubic->eval_point(spec.O) != 0 || spec.second_cubic->eval_point(spec.P) != 0)
            throw Error("BadPencil", "the second cubic misses a base point");
        partner = *spec.second_cubic;
        SeedStream frames(spec.seed, "pencil-projection");
        have_partner = cubics_meet_transversally(spec.cubic, partner, frames, &trans_note);
        if (!have_partner) throw Error("BadPencil", "the supplied cubics do not meet transversally");
    } else {
        for (uint64_t a = 0; a < 5 && !have_partner; ++a) {
            SeedStream draw(spec.seed + a, "partner-cubic");
            MultiForm cand = partner_cubic(psp, spec.O, spec.P, draw);
            if (cand.is_zero() || cand.multidegree() != std::vector<int>{3}) continue;
            SeedStream frames(spec.seed + a, "pencil-projection");
            if (cubics_meet_transversally(spec.cubic, cand, frames, &trans_note)) {
                partner = cand;
                have_partner = true;
            }
        }
        if (!have_partner) throw Error("BadPencil", "no drawn partner cubic meets the base cubic transversally");
    }
    out.spec.second_cubic = partner;

    record(rep, "base-points", true, "both marked points lie on every member of the pencil");
    record(rep, "transversality", true, trans_note);

    // The base pencil as a divisor on the line-times-plane product.
    auto ssp = GradedSpace::p1_p2();
    MultiForm fs = mv(ssp, "s") * lift_to_block(ssp, 1, spec.cubic) + mv(ssp, "t") * lift_to_block(ssp, 1, partner);
    out.S = hypersurface_space(fs, {0});
    BinaryForm disc_s = projection_discriminant(out.S, 0);

    // Companion pencil with a disjoint degenerate set, so every base value has
    // a smooth member in one of the two pencils.
    auto tsp = GradedSpace::p1_p2_p2();
    bool have_companion = false;
    MultiForm fy = MultiForm::zero(ssp);
    MultiForm fx2 = MultiForm::zero(tsp);
    for (uint64_t a = 0; a < 5 && !have_companion; ++a) {
        SeedStream draw(spec.seed + a, "partner-pencil");
        MultiForm ca = random_block_form(psp, 0, 3, draw);
        MultiForm cb = random_block_form(psp, 0, 3, draw);
        MultiForm cand = mv(ssp, "s") * lift_to_block(ssp, 1, ca) + mv(ssp, "t") * lift_to_block(ssp, 1, cb);
        BinaryForm disc_y;
        try {
            disc_y = projection_discriminant(hypersurface_space(cand, {0}), 0);
        } catch (const Error&) {
            continue;
        }
        if (disc_y.is_zero() || disc_s.is_zero()) continue;
        if (binary_gcd(disc_s, disc_y).degree() != 0) continue;
        fy = cand;
        fx2 = mv(tsp, "s") * lift_to_block(tsp, 2, ca) + mv(tsp, "t") * lift_to_block(tsp, 2, cb);
        have_companion = true;
    }
    if (!have_companion)
        throw Error("GenericityFailure", "no companion pencil avoids the degenerate base values");
    out.Y = hypersurface_space(fy, {0});
    record(rep, "pencil-covering", true, "the two degenerate loci on the line are disjoint");

    // Total space: both pencils imposed at once over the shared line.
    MultiForm fx1 = lift_prefix(tsp, fs);
    out.X = intersection_space(tsp, {fx1, fx2}, {0});
    bool shape = fx1.multidegree() == std::vector<int>{1, 3, 0} && fx2.multidegree() == std::vector<int>{1, 0, 3};
    require_step(rep, "structure", shape, "defining equations have degrees (1,3,0) and (1,0,3)");
    return out;
}

RankCertificate verify_positive_mw_rank(const Construction1Bundle& bundle) {
    const SpacePtr& psp = bundle.spec.cubic.space();
    if (same_point(psp, bundle.O, bundle.P))
        throw Error("InvalidInput", "the marked points must differ");
    PlaneCubicModel model{bundle.spec.cubic, bundle.O, bundle.P};
    auto [curve, rec] = model_to_weierstrass(model);
    ECPoint pw = std::get<ECPoint>(apply_map(rec, bundle.P));
    if (lutz_nagell_test(curve, pw) == OneSided::NonTorsion)
        return RankCertificate{true, std::nullopt, "lutz-nagell"};
    MazurResult mz = mazur_test(curve, pw);
    if (mz.is_torsion) return RankCertificate{false, mz.order, "mazur"};
    return RankCertificate{true, std::nullopt, "mazur"};
}

AuditReport audit_tower(const std::vector<MultiForm>& levels) {
    AuditReport rep;
    if (levels.empty()) {
        record(rep, "level-1", false, "the tower is empty");
        return rep;
    }
    auto base_sp = GradedSpace::product_p1(2);
    bool base_ok = levels[0].space() && levels[0].space()->same_as(*base_sp)
                   && levels[0] == base_layer(levels[0].space());
    record(rep, "level-1", base_ok, "the first level is the fixed quadric layer over the two-torus base");
    for (size_t k = 2; k <= levels.size(); ++k) {
        const MultiForm& f = levels[k - 1];
        std::string kid = std::to_string(k);
        const SpacePtr& sp = f.space();
        bool shape = sp && sp->kind == "product_p1" && sp->param == static_cast<int>(k) + 1 && !f.is_zero()
                     && f.multidegree() == std::vector<int>(k + 1, 2);
        if (!shape) {
            record(rep, "identity-" + kid, false, "the level has the wrong ambient or multidegree");
            continue;
        }
        MultiForm restricted = f.substitute_block_scalars(static_cast<int>(k), {Rational(1), Rational(0)});
        bool identity = restricted == lift_prefix(sp, levels[k - 2]);
        record(rep, "identity-" + kid, identity,
               "setting the last pair to (1, 0) recovers the previous level");
        int64_t p = 0;
        Integer locus = 0;
        bool smooth = level_smoothness(f, &p, &locus);
        record(rep, "smooth-" + kid, smooth,
               smooth ? "certified at p = " + std::to_string(p) + " over " + to_string(locus) + " locus points"
                      : "no prime on the ladder certifies smoothness");
        std::string note;
        bool salient = k == 2 ? layer_salient_exact(f, &note)
                              : layer_salient_modp(f, levels[k - 2], static_cast<int>(k), &note);
        record(rep, "salient-" + kid, salient,
               salient ? note : "no branch point with a smooth fiber was found");
    }
    return rep;
}

Construction2Tower build_construction2(int n, uint64_t seed) {
    if (n < 1) throw Error("InvalidInput", "the tower needs at least one level");
    Construction2Tower out;
    out.seed = seed;
    out.levels.push_back(base_layer(GradedSpace::product_p1(2)));
    for (int k = 2; k <= n; ++k) {
        auto sp = GradedSpace::product_p1(k + 1);
        MultiForm prev = lift_prefix(sp, out.levels.back());
        MultiForm sk = mv(sp, "S" + std::to_string(k + 1));
        MultiForm tk = mv(sp, "T" + std::to_string(k + 1));
        bool placed = false;
        for (uint64_t a = 0; a < 10 && !placed; ++a) {
            SeedStream draw(seed + a, "tower-level-" + std::to_string(k));
            MultiForm g = random_layer_coeff(sp, k, draw);
            MultiForm h = random_layer_coeff(sp, k, draw);
            MultiForm cand = sk * sk * prev + sk * tk * g + tk * tk * h;
            if (!level_smoothness(cand, nullptr, nullptr)) continue;
            bool salient = k == 2 ? layer_salient_exact(cand, nullptr)
                                  : layer_salient_modp(cand, out.levels.back(), k, nullptr);
            if (!salient) continue;
            out.levels.push_back(cand);
            placed = true;
        }
        if (!placed)
            throw Error("GenericityFailure",
                        "no seeded extension of level " + std::to_string(k - 1) + " passed the audits");
    }
    out.audit = audit_tower(out.levels);
    return out;
}

ECPoint cut_curve_to_weierstrass(const AffinePoint& pt) {
    if (pt.coords.size() != 3) throw Error("InvalidInput", "expected coordinates (t, v3, w)");
    const Rational& t = pt.coords[0];
    const Rational& v3 = pt.coords[1];
    const Rational& w = pt.coords[2];
    if (v3 * v3 * 2 != (t + 1) * (t + 2) || w * w * 2 != t * t + 1)
        throw Error("NotOnCurve", "the point fails a cut-curve equation");
    Rational den = t - w * 2 - 1;
    if (den == 0) return ECPoint::infinity();
    return ECPoint::affine((t * 3 - w * 4 - 1) * 2 / den, v3 * 8 / den);
}

Construction3Data build_construction3() {
    Construction3Data out;
    out.c = UniPoly({Rational(8), Rational(-2), Rational(-3)});
    out.d = UniPoly({Rational(8), Rational(-15, 2), Rational(1, 2)});
    out.f = UniPoly({Rational(1, 2), Rational(0), Rational(1, 2)});
    out.family = quadric_pair_family(out.c, out.d, out.f);
    out.surface = rank_one_surface();
    out.threefold = rank_one_threefold();
    out.O = AffinePoint{{Rational(-1), Rational(0), Rational(-1)}};
    out.P = AffinePoint{{Rational(7), Rational(-6), Rational(5)}};
    out.shortform = WeierstrassCurve{Rational(-52), Rational(144)};
    AuditReport& rep = out.audit;

    UniPoly crit = out.c * out.d * (out.c - out.d) * out.f;
    bool sep = univariate_gcd(crit, crit.derivative()).degree() == 0;
    require_step(rep, "separability", sep,
                 "the degree-" + std::to_string(crit.degree()) + " critical product has no repeated root");

    UniPoly a({Rational(-3), Rational(1)});
    UniPoly b({Rational(-1), Rational(2)});
    UniPoly qa({Rational(1), Rational(3, 2), Rational(1, 2)});
    bool ids = (a * a - out.c == b * b) && (a * a - out.d == qa);
    out.section = family_multisection(out.family, a, b);
    require_step(rep, "cut-curve-identities", ids,
                 "the section closes both cover equations, with residual (t+1)(t+2)/2");

    auto on_cut = [&](const AffinePoint& q) {
        const Rational& t = q.coords[0];
        return q.coords[1] * q.coords[1] == qa.eval(t) && q.coords[2] * q.coords[2] == out.f.eval(t);
    };
    require_step(rep, "marked-points", on_cut(out.O) && on_cut(out.P),
                 "(-1, 0, -1) and (7, -6, 5) lie on the cut curve");

    bool images = cut_curve_to_weierstrass(out.O).inf
                  && cut_curve_to_weierstrass(out.P) == ECPoint::affine(Rational(0), Rational(12));
    bool identity = cleared_map_identity(qa, out.f);
    require_step(rep, "weierstrass-map", images && identity,
                 "the marked points map to Infinity and (0, 12); the cleared image relation vanishes");

    bool ln = lutz_nagell_test(out.shortform, ECPoint::affine(Rational(0), Rational(12))) == OneSided::NonTorsion;
    require_step(rep, "lutz-nagell", ln,
                 "quantity " + to_string(out.shortform.lutz_quantity()) + ", the image point escapes every torsion bound");

    SalientResult sr = salient_check(out.family, out.section);
    bool sal = sr.salient && sr.witness.has_value() && sr.witness->value.has_value()
               && *sr.witness->value == Rational(-1) && sr.witness->discriminant_value == Rational(-1008)
               && out.f.eval(Rational(-1)) == Rational(1);
    require_step(rep, "salient-branch", sal, "branch value -1: c d (c-d) = -1008 while f = 1");

    BinaryForm disc = projection_discriminant(out.family, 0);
    BinaryForm rad = BinaryForm::homogenize(uni_radical(out.c * out.d * (out.c - out.d)), 6);
    require_step(rep, "discriminant-radical", proportional_forms(disc, rad),
                 "the base discriminant is the degree-6 radical of c d (c-d)");

    BlockPoint yes{{{Rational(13), Rational(6), Rational(5)}, {Rational(4), Rational(7), Rational(1)}}};
    BlockPoint no{{{Rational(1), Rational(0), Rational(0)}, {Rational(1), Rational(0), Rational(0)}}};
    bool mem = degeneracy_membership(out.surface, yes) && !degeneracy_membership(out.surface, no);
    require_step(rep, "membership", mem,
                 "(13:6:5) x (4:7:1) gives proportional rows (169, 36, 25) and (338, 72, 50); (1:0:0) x (1:0:0) is rejected");

    int zi = out.threefold.ambient->var_index("Z");
    bool restricts = true;
    for (int j = 0; j < 3; ++j) {
        const MultiForm& u0 = out.threefold.matrix->entry[0][static_cast<size_t>(j)];
        const MultiForm& u1 = out.threefold.matrix->entry[1][static_cast<size_t>(j)];
        const MultiForm& v0 = out.surface.matrix->entry[0][static_cast<size_t>(j)];
        const MultiForm& v1 = out.surface.matrix->entry[1][static_cast<size_t>(j)];
        restricts = restricts && u0 == lift_prefix(out.threefold.ambient, v0)
                    && u1.substitute_scalar(zi, Rational(0)) == lift_prefix(out.threefold.ambient, v1);
    }
    require_step(rep, "bundle-restriction", restricts,
                 "the bundle matrix collapses to the fixed conics on the zero section");

    int64_t cert_p = 0;
    bool smooth = false;
    Integer locus = 0;
    for (int64_t p : kPrimeLadder) {
        try {
            auto reduced = reduce_space(out.threefold, p);
            auto cert = smoothness_certificate(reduced);
            if (cert.status == SmoothnessCertificate::Status::Certified) {
                smooth = true;
                cert_p = p;
                locus = cert.locus_points;
                break;
            }
        } catch (const Error&) {
        }
    }
    PointPredicate delta = [&](int64_t p, const std::vector<int64_t>& pt) {
        BlockPoint bb{{{Rational(pt[0]), Rational(pt[1]), Rational(pt[2])}}};
        QuadricPencil pen = fiber_quadric_pencil(out.threefold, bb);
        return reduce_mod(disc_binary_form(pen.det_form), p).is_zero();
    };
    PointPredicate branch = [&](int64_t p, const std::vector<int64_t>& pt) {
        std::vector<int64_t> full = {1, 0, 0, pt[0], pt[1], pt[2]};
        for (int j = 0; j < 3; ++j) {
            auto fp = reduce_form(out.surface.matrix->entry[1][static_cast<size_t>(j)], p);
            if (fp.eval(full, p) == 0) return true;
        }
        return false;
    };
    auto audit10 = proper_intersection_audit(delta, branch, {11, 13}, Integer(144));
    require_step(rep, "modp-handoff", smooth && audit10.verdict == "ProperLikely",
                 "the bundle is certified at p = " + std::to_string(cert_p) + " over " + to_string(locus)
                     + " locus points; the degenerate and branch loci meet properly");
    return out;
}

}  // namespace cyq
