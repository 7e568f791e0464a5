#pragma once

// Exhaustive finite-field audits for the fibered spaces: coefficientwise
// reduction mod a small prime, enumeration of every torus orbit of the
// ambient in normalized coordinates, Jacobian-criterion smoothness
// certificates, and counting audits for loci and their intersections.
// Certificates are one-sided: Certified means every rational point of the
// reduced locus passed the rank test, Inconclusive only ever means "try
// another prime".

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cyq/fibration.hpp"
#include "cyq/fp.hpp"
#include "cyq/multiform.hpp"
#include "cyq/rational.hpp"

namespace cyq {

inline const std::vector<int64_t> kPrimeLadder = {5, 7, 11, 13};

// term list of a multihomogeneous form with coefficients in F_p; exponent
// vectors follow the flat variable order of the ambient space
struct FpForm {
    std::vector<std::vector<int>> exps;
    std::vector<int64_t> coeffs;  // normalized to [1, p-1], no zeros kept

    bool is_zero() const { return coeffs.empty(); }
    int64_t eval(const std::vector<int64_t>& x, int64_t p) const;
    FpForm partial(int var, int64_t p) const;
};

// throws BadPrime when p divides a denominator
FpForm reduce_form(const MultiForm& f, int64_t p);

// defining data with every coefficient reduced mod p; a form that was
// nonzero over Q must stay nonzero mod p, which pins its multidegree
struct ReducedSpace {
    FiberedSpace original;
    int64_t p = 0;
    std::vector<FpForm> defining;
    std::optional<std::array<std::array<FpForm, 3>, 2>> matrix;
    std::vector<std::vector<int64_t>> family_coeffs;  // reduced c, d, f
};

ReducedSpace reduce_space(const FiberedSpace& space, int64_t p);

// walks each torus orbit of the ambient exactly once: per block the first
// nonzero coordinate is normalized to 1 and earlier coordinates are 0; the
// bundle's fiber block enumerates as a P^3 alongside the base P^2
class PointEnumerator {
  public:
    PointEnumerator(SpacePtr ambient, int64_t p);

    Integer total() const;  // closed-form orbit count
    bool next(std::vector<int64_t>& out);
    void reset();

  private:
    bool advance_block(int b);

    SpacePtr sp_;
    int64_t p_;
    std::vector<std::pair<int, int>> ranges_;
    std::vector<int> lead_;
    std::vector<int64_t> cur_;
    bool started_ = false;
    bool done_ = false;
};

struct SmoothnessCertificate {
    enum class Status { Certified, Inconclusive };
    Status status = Status::Inconclusive;
    int64_t p = 0;
    std::optional<std::vector<int64_t>> witness;  // first failing point
    Integer ambient_examined = 0;
    Integer locus_points = 0;
};

// Exhaustive Jacobian-rank audit over the F_p points of the locus: a
// hypersurface needs gradient rank 1, a rank-one degeneracy locus needs
// rank 2 for the Jacobian of its three minors plus an empty rank-0 locus
// of the matrix itself. Unsupported shapes throw InvalidInput.
SmoothnessCertificate smoothness_certificate(const ReducedSpace& r);

// membership of a normalized ambient point in the reduced vanishing locus
bool locus_contains(const ReducedSpace& r, const std::vector<int64_t>& pt);
// rank of the Jacobian of the defining system (the minors, for a
// degeneracy locus) at the point
int jacobian_rank_at(const ReducedSpace& r, const std::vector<int64_t>& pt);

struct CountEntry {
    int64_t p = 0;
    std::string locus;
    Integer count;
};

struct CountReport {
    std::vector<CountEntry> entries;
    std::string verdict;  // empty unless the audit draws a conclusion
    std::optional<std::pair<Integer, Integer>> window;
};

// exact point count of the reduced locus; TooLarge when the ambient orbit
// count exceeds the budget
CountReport count_points(const ReducedSpace& r, const Integer& budget = Integer(2000000),
                         std::optional<std::pair<Integer, Integer>> window = std::nullopt);

using PointPredicate = std::function<bool(int64_t p, const std::vector<int64_t>& pt)>;

// counts |Delta|, |B|, |Delta cap B| over P^2(F_p) for each prime and
// issues a heuristic verdict: ProperLikely when every intersection count
// stays within the degree-product bound while both loci keep at least
// (p+1)/2 points, NotProper otherwise
CountReport proper_intersection_audit(const PointPredicate& delta, const PointPredicate& branch,
                                      const std::vector<int64_t>& primes, const Integer& bound);

}  // namespace cyq
