#pragma once

// End-to-end drivers for the three families: the pencil fiber product,
// the inductive biquadratic tower, and the quadric-pair threefold with
// its fixed data. Each driver returns its objects together with an audit
// report; "general position" choices are seeded random draws whose
// required properties are verified, with bounded retries.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyq/fibration.hpp"
#include "cyq/genus1.hpp"
#include "cyq/reduction.hpp"
#include "cyq/unipoly.hpp"

namespace cyq {

struct AuditStep {
    std::string id;
    std::string status;  // "pass" or "fail"
    std::string witness;
};

struct AuditReport {
    std::vector<AuditStep> steps;

    bool all_passed() const;
    const AuditStep* find(const std::string& id) const;  // nullptr when absent
};

// pencil of plane cubics through a marked pair, crossed with a seeded
// hypersurface pencil over the same base line
struct Construction1Spec {
    MultiForm cubic;  // ternary cubic C on the p2 space
    BlockPoint O;     // chord-tangent origin on C
    BlockPoint P;     // second marked point on C
    std::optional<MultiForm> second_cubic;  // drawn through O and P when absent
    int dimension = 3;
    std::uint64_t seed = 42;
};

// the pencil surface S of bidegree (1,3), the seeded partner Y of bidegree
// (1,3), and their fiber product X cut by both pullbacks
struct Construction1Bundle {
    Construction1Spec spec;  // with second_cubic resolved
    FiberedSpace S;
    FiberedSpace Y;
    FiberedSpace X;
    BlockPoint O;
    BlockPoint P;
    AuditReport audit;
};

// the rank-two example data: Y^2 Z = X^3 - 52 X Z^2 + 144 Z^3 with
// O = (0:1:0), P = (0:12:1)
Construction1Spec default_construction1();

Construction1Bundle build_construction1(const Construction1Spec& spec);

struct RankCertificate {
    bool positive = false;
    std::optional<int> torsion_order;  // set when a torsion order was proved
    std::string method;                // "lutz-nagell" or "mazur"
};

// certifies the marked section non-torsion on the pencil member over
// (1:0), first by the integrality test, then by the bounded-order walk
RankCertificate verify_positive_mw_rank(const Construction1Bundle& bundle);

// levels[k-1] is the multidegree (2,..,2) hypersurface on (P^1)^{k+1};
// each level restricts to the previous one on the last coordinate chart
struct Construction2Tower {
    std::vector<MultiForm> levels;
    std::uint64_t seed = 0;
    AuditReport audit;
};

// pure check of an existing tower: base form exact, restriction identity,
// mod-p smoothness per level, salient ramification of each layer (exact
// over a one-dimensional base, mod-p evidence above that)
AuditReport audit_tower(const std::vector<MultiForm>& levels);

Construction2Tower build_construction2(int n, std::uint64_t seed);

// fixed quadric-pair data: the family over the conic, its degree-two
// multisection, and the two rank-one loci it glues into
struct Construction3Data {
    UniPoly c, d, f;
    FiberedSpace family;
    Multisection section;   // substitutions t - 3, 2t - 1
    FiberedSpace surface;   // rank-one locus on P^2 x P^2
    FiberedSpace threefold; // rank-one locus on the bundle over the X plane
    AffinePoint O;          // (-1, 0, -1) in coordinates (t, v3, w)
    AffinePoint P;          // (7, -6, 5)
    WeierstrassCurve shortform;  // y^2 = x^3 - 52 x + 144
    AuditReport audit;
};

// assembles the fixed data and runs the ten audit steps in order,
// throwing AuditFailure at the first failing step
Construction3Data build_construction3();

// (t, v3, w) on the multisection's cut curve (v3^2 = (t+1)(t+2)/2 over
// w^2 = (t^2+1)/2) to the short Weierstrass model; the unique point with
// t - 2w - 1 = 0 goes to Infinity
ECPoint cut_curve_to_weierstrass(const AffinePoint& pt);

}  // namespace cyq
