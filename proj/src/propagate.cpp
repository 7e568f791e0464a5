#include "cyq/propagate.hpp"

#include <algorithm>
#include <utility>
#include <variant>

#include "cyq/linalg.hpp"

namespace cyq {

namespace {

bool on_model(const GenusOneModel& m, const BlockPoint& p) {
    return std::visit(
        [&](const auto& mm) {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, PlaneCubicModel>) {
                return mm.cubic.eval_point(p) == 0;
            } else if constexpr (std::is_same_v<T, BiquadraticModel>) {
                return mm.form.eval_point(p) == 0;
            } else {
                return mm.q1.eval_point(p) == 0 && mm.q2.eval_point(p) == 0;
            }
        },
        m);
}

BlockPoint qrt_inverse_step(const BiquadraticModel& M, const BlockPoint& p) {
    return vieta_involution(M, vieta_involution(M, p, 2), 1);
}

// a hypersurface of bidegree (2, 2) in P^1 x P^1 is its own fiber
BiquadraticModel curve_model(const FiberedSpace& space) {
    if (space.is_family() || !space.ambient || space.defining.size() != 1)
        throw Error("InvalidInput", "in-place translation needs a single biquadratic equation");
    const SpacePtr& sp = space.ambient;
    if (sp->kind != "product_p1" || sp->param != 2 ||
        space.defining[0].multidegree() != std::vector<int>{2, 2})
        throw Error("InvalidInput", "in-place translation needs a (2,2) curve in P^1 x P^1");
    return BiquadraticModel{space.defining[0], BlockPoint{}};
}

// exponents of every monomial of the multidegree, in a fixed order.
// Variables with a negative weight entry (the bundle coordinate) are
// placed first so that the budget they add to earlier gradings is
// available when the remaining variables are filled in.
void monomials_rec(const GradedSpace& g, const std::vector<int>& order, size_t k,
                   std::vector<int>& left, std::vector<int>& exp,
                   std::vector<std::vector<int>>& out) {
    if (k == order.size()) {
        if (std::all_of(left.begin(), left.end(), [](int v) { return v == 0; })) out.push_back(exp);
        return;
    }
    const int var = order[k];
    const auto& w = g.weights[static_cast<size_t>(var)];
    int emax = -1;
    for (size_t j = 0; j < w.size(); ++j) {
        if (w[j] <= 0) continue;
        const int cap = left[j] / w[j];
        if (emax < 0 || cap < emax) emax = cap;
    }
    if (emax < 0) emax = 0;
    for (int e = emax; e >= 0; --e) {
        exp[static_cast<size_t>(var)] = e;
        for (size_t j = 0; j < w.size(); ++j) left[j] -= e * w[j];
        monomials_rec(g, order, k + 1, left, exp, out);
        for (size_t j = 0; j < w.size(); ++j) left[j] += e * w[j];
        exp[static_cast<size_t>(var)] = 0;
    }
}

std::vector<std::vector<int>> monomials_of(const GradedSpace& g, const std::vector<int>& md) {
    std::vector<int> order;
    for (int v = 0; v < g.nvars(); ++v) {
        const auto& w = g.weights[static_cast<size_t>(v)];
        if (std::any_of(w.begin(), w.end(), [](int x) { return x < 0; })) order.push_back(v);
    }
    for (int v = 0; v < g.nvars(); ++v) {
        const auto& w = g.weights[static_cast<size_t>(v)];
        if (std::none_of(w.begin(), w.end(), [](int x) { return x < 0; })) order.push_back(v);
    }
    std::vector<int> left = md;
    std::vector<int> exp(static_cast<size_t>(g.nvars()), 0);
    std::vector<std::vector<int>> out;
    monomials_rec(g, order, 0, left, exp, out);
    return out;
}

}  // namespace

TranslationDatum translation_datum(const GenusOneModel& fiber, const std::vector<BlockPoint>& pts) {
    if (pts.empty()) throw Error("NoSeed", "no rational multisection point on this fiber");
    if (pts.size() > 2)
        throw Error("InvalidInput", "a degree-two multisection meets the fiber in at most two points");
    TranslationDatum d;
    d.model = fiber;
    d.seed = pts[0];
    d.conjugate = pts.size() > 1 ? pts[1] : pts[0];
    std::visit([&](auto& mm) { mm.marked = d.seed; }, d.model);
    if (!on_model(d.model, d.seed)) throw Error("NotOnCurve", "seed point is not on the fiber");
    if (!on_model(d.model, d.conjugate))
        throw Error("NotOnCurve", "conjugate point is not on the fiber");
    auto reduced = model_to_weierstrass(d.model);
    d.curve = reduced.first;
    d.record = std::move(reduced.second);
    // the seed sits at the origin, so seed (-) conjugate is minus the
    // conjugate's image; a ramification point lands on Infinity
    const MapPoint img = apply_map(d.record, MapPoint(d.conjugate));
    d.tau = ec_neg(d.curve, std::get<ECPoint>(img));
    return d;
}

BlockPoint bt_translate(const TranslationDatum& datum, int n, TranslationBackend backend) {
    switch (backend) {
        case TranslationBackend::Weierstrass: {
            const ECPoint w = ec_mul(datum.curve, Integer(n), datum.tau);
            return std::get<BlockPoint>(apply_map_backward(datum.record, MapPoint(w)));
        }
        case TranslationBackend::Qrt: {
            const auto* bm = std::get_if<BiquadraticModel>(&datum.model);
            if (!bm) throw Error("InvalidInput", "the qrt backend needs a biquadratic fiber");
            BlockPoint acc = datum.seed;
            const int steps = n >= 0 ? n : -n;
            for (int k = 0; k < steps; ++k)
                acc = n >= 0 ? qrt_step(*bm, acc) : qrt_inverse_step(*bm, acc);
            return acc;
        }
        case TranslationBackend::Cubic: {
            const auto* cm = std::get_if<PlaneCubicModel>(&datum.model);
            if (!cm) throw Error("InvalidInput", "the cubic backend needs a plane cubic fiber");
            if (n < 0) throw Error("InvalidInput", "the cubic backend only walks forward");
            // with the conjugate as origin, k chord-tangent additions of the
            // seed to itself reach seed + k (seed - conjugate)
            PlaneCubicModel g = *cm;
            g.marked = datum.conjugate;
            BlockPoint acc = datum.seed;
            for (int k = 0; k < n; ++k) acc = cubic_group_add(g, acc, datum.seed);
            return acc;
        }
    }
    throw Error("InvalidInput", "unknown translation backend");
}

MazurResult certify_nontorsion(const TranslationDatum& datum) {
    return mazur_test(datum.curve, datum.tau);
}

PointStream generate_points(const FiberedSpace& space, const Multisection& M,
                            const std::vector<SeedPoint>& seeds, int per_fiber, int fiber_budget) {
    if (per_fiber < 0 || fiber_budget < 0)
        throw Error("InvalidInput", "orbit length and fiber budget must be nonnegative");
    PointStream out;
    try {
        const SalientResult sr = salient_check(space, M);
        if (!sr.salient)
            out.warnings.push_back(
                "multisection ramification is not salient; fiberwise translations may all be torsion");
    } catch (const Error& e) {
        out.warnings.push_back(std::string("salient check unavailable: ") + e.what());
    }
    int used = 0;
    for (size_t i = 0; i < seeds.size(); ++i) {
        if (used >= fiber_budget) break;
        ++used;
        const SeedPoint& s = seeds[i];
        const int idx = static_cast<int>(i);
        try {
            if (s.fiber_points.empty()) {
                out.skips.push_back({idx, "no rational point over this base value"});
                continue;
            }
            if (s.fiber_points.size() > 2) {
                out.skips.push_back({idx, "more than two points over this base value"});
                continue;
            }
            const bool in_place = s.base.coords.empty();
            GenusOneModel model =
                in_place ? GenusOneModel(curve_model(space)) : fiber_model_at(space, s.base);
            if (per_fiber == 0) {
                if (!on_model(model, s.fiber_points[0]))
                    throw Error("NotOnCurve", "seed point is not on the fiber");
                out.records.push_back(
                    {s.base, s.fiber_points[0], 0, in_place ? "qrt" : "weierstrass"});
                continue;
            }
            TranslationDatum d;
            TranslationBackend backend = TranslationBackend::Weierstrass;
            std::string tag = "weierstrass";
            if (in_place) {
                // in-place orbits walk the QRT step itself; certifying it
                // means taking the conjugate one inverse step back
                BiquadraticModel cm = std::get<BiquadraticModel>(model);
                cm.marked = s.fiber_points[0];
                const BlockPoint back = qrt_inverse_step(cm, s.fiber_points[0]);
                d = translation_datum(model, {s.fiber_points[0], back});
                backend = TranslationBackend::Qrt;
                tag = "qrt";
            } else {
                d = translation_datum(model, s.fiber_points);
            }
            const MazurResult cert = certify_nontorsion(d);
            if (cert.is_torsion) {
                out.skips.push_back(
                    {idx, "translation is torsion of order " + std::to_string(cert.order)});
                continue;
            }
            for (int n = 1; n <= per_fiber; ++n) {
                BlockPoint pt = bt_translate(d, n, backend);
                if (!on_model(d.model, pt))
                    throw Error("InvalidInput", "translated point left the fiber");
                out.records.push_back({s.base, std::move(pt), n, tag});
            }
        } catch (const Error& e) {
            out.skips.push_back({idx, e.what()});
        }
    }
    return out;
}

DensityWitness density_witness(const SpacePtr& sp, const std::vector<BlockPoint>& pts,
                               const std::vector<int>& multidegree) {
    if (!sp) throw Error("InvalidInput", "density witness needs an ambient space");
    if (static_cast<int>(multidegree.size()) != sp->rank())
        throw Error("InvalidInput", "multidegree length must match the grading rank");
    for (int m : multidegree)
        if (m < 0) throw Error("InvalidInput", "multidegree entries must be nonnegative");
    if (pts.empty()) throw Error("InvalidInput", "density witness needs at least one point");
    const auto mons = monomials_of(*sp, multidegree);
    QMatrix mat(pts.size(), QVector(mons.size(), Rational(0)));
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto flat = flatten(sp, pts[i]);
        for (size_t j = 0; j < mons.size(); ++j) {
            Rational v(1);
            for (size_t t = 0; t < flat.size(); ++t)
                for (int e = 0; e < mons[j][t]; ++e) v *= flat[t];
            mat[i][j] = v;
        }
    }
    const auto ker = kernel_basis(mat);
    DensityWitness w;
    w.multidegree = multidegree;
    w.points_used = static_cast<int>(pts.size());
    w.kernel_dim = static_cast<int>(ker.size());
    for (const auto& kv : ker) {
        std::vector<Term> terms;
        for (size_t j = 0; j < mons.size(); ++j)
            if (kv[j] != 0) terms.push_back({mons[j], kv[j]});
        w.kernel.push_back(MultiForm::from_terms(sp, std::move(terms)));
    }
    return w;
}

DensityWitness density_witness(const SpacePtr& sp, const std::vector<PointRecord>& records,
                               const std::vector<int>& multidegree) {
    std::vector<BlockPoint> pts;
    pts.reserve(records.size());
    for (const auto& r : records) pts.push_back(r.point);
    return density_witness(sp, pts, multidegree);
}

}  // namespace cyq
