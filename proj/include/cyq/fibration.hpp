#pragma once

// Fibered total spaces and their critical loci: multigraded hypersurfaces,
// complete intersections, 2x3 rank-one degeneracy loci, and the quadric-pair
// surface family over an affine conic. Fibers over rational base points come
// out as genus-one models (marked point left empty for the caller to attach),
// discriminant and branch forms are computed in closed form over
// one-dimensional bases, and salient ramification of a multisection is
// decided from exact gcds of those forms.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cyq/genus1.hpp"
#include "cyq/linalg.hpp"
#include "cyq/multiform.hpp"
#include "cyq/unipoly.hpp"

namespace cyq {

// rows homogeneous of one multidegree each; the geometry lives on the locus
// where the matrix drops to rank <= 1
struct DegeneracyMatrix {
    std::array<std::array<MultiForm, 3>, 2> entry;
};

// surface family u1^2 - c(t) = v2^2, u1^2 - d(t) = v3^2 over the affine
// conic w^2 = f(t), with c, d, f quadratic and c d (c-d) f separable. The
// fiber over t sits in P^3 as the intersection of the diagonal quadrics
// x^2 - y^2 - c(t) h^2 and x^2 - z^2 - d(t) h^2.
struct QuadricPairFamily {
    UniPoly c, d, f;
};

struct FiberedSpace {
    SpacePtr ambient;                        // null exactly for the quadric-pair family
    std::vector<MultiForm> defining;         // hypersurface or complete intersection
    std::optional<DegeneracyMatrix> matrix;  // rank-one locus data
    std::optional<QuadricPairFamily> family;
    std::vector<int> base_blocks;            // blocks of the base projection, ascending

    bool is_family() const { return family.has_value(); }
    bool is_degeneracy() const { return matrix.has_value(); }
    std::vector<int> fiber_blocks() const;  // complement of base_blocks
};

FiberedSpace hypersurface_space(MultiForm f, std::vector<int> base_blocks);
FiberedSpace intersection_space(SpacePtr sp, std::vector<MultiForm> forms, std::vector<int> base_blocks);
FiberedSpace degeneracy_space(SpacePtr sp, DegeneracyMatrix m, std::vector<int> base_blocks);
FiberedSpace quadric_pair_family(UniPoly c, UniPoly d, UniPoly f);

// subvariety of a fibered space that is generically finite over the base:
// either coordinate sections (each equation one variable of a P^1 block off
// the base) or, on a quadric-pair family, the substitutions x = a(t),
// y = b(t) into the two surface equations
struct Multisection {
    FiberedSpace parent;
    std::vector<MultiForm> equations;
    std::optional<std::pair<UniPoly, UniPoly>> substitutions;
    int degree = 1;  // degree over the base
};

Multisection coordinate_multisection(const FiberedSpace& parent, const std::string& var, int degree);
// checks a^2 - c = b^2 identically, the condition for the locus to lie on
// the surface; the cut curve is v3^2 = a^2 - d, a double cover of the base
Multisection family_multisection(const FiberedSpace& parent, UniPoly a, UniPoly b);

// closed-form critical loci over a one-dimensional base, both squarefree
struct CriticalData {
    BinaryForm discriminant;
    BinaryForm branch;
};

// The fiber over b as a genus-one model with an unset marked point.
// Dispatch by shape: two P^1 fiber blocks of degree (2,2) give a
// biquadratic model, a P^2 fiber block of degree 3 a plane cubic, a
// degeneracy locus with P^3-like fiber coordinates or a quadric-pair
// family a quadric intersection. Throws SingularFiber over the
// discriminant, NotAFibration when fibers are not genus-one curves.
GenusOneModel fiber_model_at(const FiberedSpace& space, const BlockPoint& b);

// Squarefree form in the coordinates of the named base block whose roots
// are exactly the degenerate-fiber values. Double covers use the fiber
// quadratic's discriminant, biquadratic elliptic families the quartic
// discriminant after completing the square, plane-cubic pencils an
// elimination cascade on the three partials (seeded coordinate changes,
// EliminationFailure after 5 attempts), and the quadric-pair family the
// discriminant of the fiber pencil determinant, interpolated over the base.
BinaryForm projection_discriminant(const FiberedSpace& space, int base_block);

// squarefree form on the base vanishing exactly on the critical values of
// M -> base; throws NotAMultisection when M is not generically finite or
// is everywhere ramified
BinaryForm multisection_branch_form(const Multisection& M);

struct SalientWitness {
    std::optional<Rational> value;  // rational branch value off the discriminant
    BinaryForm factor;              // branch part coprime to the discriminant
    Rational discriminant_value;    // discriminant at value, when value is set
};

struct SalientResult {
    bool salient = false;
    std::optional<SalientWitness> witness;
};

// ramification over a smooth fiber, decided by gcd(branch, discriminant)
// having strictly smaller degree than the branch form
SalientResult salient_check(const FiberedSpace& space, const Multisection& M);

// rank of the 2x3 matrix at the point is <= 1, i.e. all three 2x2 minors vanish
bool degeneracy_membership(const FiberedSpace& space, const BlockPoint& p);

// pencil of fiber quadrics at a base point: Gram matrices of the two rank
// minors in the chart of the largest row-1 value (or of the two diagonal
// family quadrics), and det(lambda m1 + mu m2) interpolated exactly
struct QuadricPencil {
    QMatrix m1, m2;       // symmetric, one row per fiber coordinate
    BinaryForm det_form;  // degree = fiber coordinate count
};

QuadricPencil fiber_quadric_pencil(const FiberedSpace& space, const BlockPoint& b);

// discriminant of the fiber over b: closed-form evaluation when available,
// otherwise the discriminant of the fiber pencil determinant
Rational discriminant_value_at(const FiberedSpace& space, const BlockPoint& b);

CriticalData critical_data(const FiberedSpace& space, const Multisection& M);

}  // namespace cyq
