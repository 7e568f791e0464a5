#pragma once

// Fiberwise translation engine: seed a fiber with a multisection point,
// translate by the difference of the two multisection points in the
// fiber's group law, certify that translation non-torsion, and stream
// exact points in a deterministic order; a monomial-kernel witness tracks
// how a finite stream fills out the ambient space.

#include <optional>
#include <string>
#include <vector>

#include "cyq/fibration.hpp"
#include "cyq/genus1.hpp"
#include "cyq/reduction.hpp"

namespace cyq {

// translation data over one fiber: the seed point becomes the marked
// point of the model (hence the origin of the short Weierstrass model),
// and tau is the image of seed (-) conjugate there
struct TranslationDatum {
    GenusOneModel model;  // fiber carrying the seed as its marked point
    BlockPoint seed;
    BlockPoint conjugate;
    int degree = 2;  // degree of the multisection over the base
    WeierstrassCurve curve;
    BirationalRecord record;
    ECPoint tau;  // Infinity exactly on a ramification point
};

// both points must lie on the fiber; a single point is a ramification
// point and yields the identity translation
TranslationDatum translation_datum(const GenusOneModel& fiber, const std::vector<BlockPoint>& pts);

enum class TranslationBackend { Weierstrass, Qrt, Cubic };

// seed (+) n (.) tau. Weierstrass computes in the short model and maps
// back through the recorded steps; Qrt iterates the two Vieta involutions
// on a biquadratic fiber (its own translation, independent of the datum's
// tau); Cubic repeats chord-tangent addition with the conjugate as origin
// and needs n >= 0.
BlockPoint bt_translate(const TranslationDatum& datum, int n,
                        TranslationBackend backend = TranslationBackend::Weierstrass);

// Mazur walk applied to tau in the short model
MazurResult certify_nontorsion(const TranslationDatum& datum);

struct PointRecord {
    BlockPoint base;   // empty when the space itself is the curve
    BlockPoint point;  // fiber-model coordinates
    int n = 0;
    std::string backend;
};

struct SkipReport {
    int seed_index = 0;
    std::string reason;
};

struct PointStream {
    std::vector<PointRecord> records;
    std::vector<SkipReport> skips;
    std::vector<std::string> warnings;
};

// one unit of work: a base point together with the rational multisection
// points over it, or, with an empty base, a point on a space that is
// itself a genus-one curve (translated in place by its QRT step)
struct SeedPoint {
    BlockPoint base;
    std::vector<BlockPoint> fiber_points;
};

// Streams seed (+) n (.) tau for n = 1..per_fiber over at most
// fiber_budget seeds, echoing seeds unchanged when per_fiber is 0.
// Fibers that are singular, seedless, or carry a torsion translation are
// skipped with a report, never retried; every emitted record is checked
// against the fiber equations before emission. Output order is (seed
// index, then n), independent of any evaluation order.
PointStream generate_points(const FiberedSpace& space, const Multisection& M,
                            const std::vector<SeedPoint>& seeds, int per_fiber, int fiber_budget);

struct DensityWitness {
    std::vector<int> multidegree;
    int points_used = 0;
    int kernel_dim = 0;
    std::vector<MultiForm> kernel;  // all forms of the multidegree vanishing on every point
};

// exact kernel of the monomial evaluation matrix; the kernel can only
// shrink as points are appended
DensityWitness density_witness(const SpacePtr& sp, const std::vector<BlockPoint>& pts,
                               const std::vector<int>& multidegree);
DensityWitness density_witness(const SpacePtr& sp, const std::vector<PointRecord>& records,
                               const std::vector<int>& multidegree);

}  // namespace cyq
