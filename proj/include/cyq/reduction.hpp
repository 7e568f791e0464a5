#pragma once

// Reduction of genus-one models with a rational point to short Weierstrass
// form, recorded as an auditable chain of birational steps that can be
// replayed forwards and backwards on exact points.

#include <memory>
#include <variant>

#include "cyq/genus1.hpp"
#include "cyq/linalg.hpp"
#include "cyq/unipoly.hpp"

namespace cyq {

// point on the double cover w^2 = g(S,T) of the line, g a binary form of
// degree 4; w has weight 2, so the stored value belongs to the canonical
// representative of t
struct CoverPoint {
    P1Point t;
    Rational w;

    bool operator==(const CoverPoint& o) const { return t == o.t && w == o.w; }
    bool operator!=(const CoverPoint& o) const { return !(*this == o); }
    std::string str() const;
};

// plain affine coordinate tuple, no projective scaling
struct AffinePoint {
    std::vector<Rational> coords;

    bool operator==(const AffinePoint& o) const { return coords == o.coords; }
    std::string str() const;
};

using MapPoint = std::variant<BlockPoint, CoverPoint, ECPoint, AffinePoint>;

std::string map_point_str(const MapPoint& p);

// one birational change of coordinates; forward and backward are exact and
// total on curve points, with special fibers handled by their limits
class ReductionStep {
  public:
    virtual ~ReductionStep() = default;
    virtual std::string name() const = 0;
    virtual MapPoint forward(const MapPoint& p) const = 0;
    virtual MapPoint backward(const MapPoint& p) const = 0;
    virtual std::vector<std::string> forward_desc() const = 0;
    virtual std::vector<std::string> backward_desc() const = 0;
    virtual std::vector<std::string> denominators() const { return {}; }
};

using StepPtr = std::shared_ptr<const ReductionStep>;

// composition of steps, applied first to last on forward
struct BirationalRecord {
    std::vector<StepPtr> steps;

    MapPoint forward(MapPoint p) const;
    MapPoint backward(MapPoint p) const;
    std::vector<std::string> defined_away_from() const;
};

MapPoint apply_map(const BirationalRecord& r, const MapPoint& p);
MapPoint apply_map_backward(const BirationalRecord& r, const MapPoint& p);

// scale lambda making (lambda^4 A, lambda^6 B) integral with no prime p
// carrying both p^4 | A' and p^6 | B', at every prime the coefficient
// factorizations reach
Rational minimal_twist_scale(const Rational& A, const Rational& B);

// marked rational point goes to Infinity; every returned coordinate change
// is appended to the record
std::pair<WeierstrassCurve, BirationalRecord> model_to_weierstrass(const GenusOneModel& M);

// double cover w^2 = g with a marked rational cover point, reduced to a
// short Weierstrass curve; steps are appended to rec
WeierstrassCurve quartic_to_weierstrass(const BinaryForm& g, const CoverPoint& marked, BirationalRecord& rec);

}  // namespace cyq
