#pragma once

// Genus-one curve models with a marked rational point: exact Weierstrass
// group law, one-sided and sound torsion tests, chord-tangent addition on
// plane cubics, and the two Vieta involutions on biquadratic curves.

#include <optional>
#include <variant>

#include "cyq/multiform.hpp"
#include "cyq/rational.hpp"

namespace cyq {

// y^2 = x^3 + A x + B
struct WeierstrassCurve {
    Rational A, B;

    // 4A^3 + 27B^2; zero exactly for singular cubics
    Rational lutz_quantity() const;
    bool is_singular() const { return lutz_quantity() == 0; }
};

struct ECPoint {
    bool inf = true;
    Rational x, y;

    static ECPoint infinity() { return ECPoint{}; }
    static ECPoint affine(Rational xx, Rational yy) { return ECPoint{false, std::move(xx), std::move(yy)}; }
    bool operator==(const ECPoint& o) const {
        return inf == o.inf && (inf || (x == o.x && y == o.y));
    }
    bool operator!=(const ECPoint& o) const { return !(*this == o); }
    std::string str() const;
};

bool on_curve(const WeierstrassCurve& E, const ECPoint& P);

ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& P);
ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_mul(const WeierstrassCurve& E, const Integer& n, const ECPoint& P);

enum class OneSided { NonTorsion, CannotConclude };

// Lutz-Nagell divisibility filter; requires integral A, B
OneSided lutz_nagell_test(const WeierstrassCurve& E, const ECPoint& P);

struct MazurResult {
    bool is_torsion = false;
    int order = 0;  // least k <= 12 with kP = Infinity, when is_torsion
};

// decides torsion over Q by walking multiples up to the Mazur bound
MazurResult mazur_test(const WeierstrassCurve& E, const ECPoint& P);

// --- models ----------------------------------------------------------------

struct PlaneCubicModel {
    MultiForm cubic;      // ternary cubic on the p2 space
    BlockPoint marked;    // group origin for chord-tangent addition
    std::optional<BlockPoint> second;
};

struct BiquadraticModel {
    MultiForm form;  // bidegree (2,2) on product_p1(2)
    BlockPoint marked;
};

struct QuadricIntersectionModel {
    MultiForm q1, q2;  // quadrics on the p3 space
    BlockPoint marked;
};

using GenusOneModel = std::variant<PlaneCubicModel, BiquadraticModel, QuadricIntersectionModel>;

// P (+) Q with the model's marked point as origin: the third intersection
// of the line through the marked point and the third intersection of
// line(P, Q), all roots extracted exactly
BlockPoint cubic_group_add(const PlaneCubicModel& C, const BlockPoint& P, const BlockPoint& Q);

// replaces the coordinate on the named axis (1 or 2) by its Vieta
// conjugate in the fiber quadratic through the point; the other axis stays
BlockPoint vieta_involution(const BiquadraticModel& M, const BlockPoint& p, int axis);

// the composition axis-2 o axis-1; a translation on the curve
BlockPoint qrt_step(const BiquadraticModel& M, const BlockPoint& p);

}  // namespace cyq
