#pragma once

// Multihomogeneous forms on products of projective spaces and on the split
// bundle projectivization used for the Enriques-quotient ambient. A space
// fixes the variable blocks and a Z^r grading; every form carries a shared
// pointer to its space and keeps its term list in canonical order (lex
// descending on exponent vectors, no zero coefficients), so equality and
// serialization are structural.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyq/rational.hpp"
#include "cyq/unipoly.hpp"

namespace cyq {

struct VarBlock {
    std::string label;
    std::vector<std::string> vars;
};

// Convention baked into canonicalization: block i owns grading coordinate i
// (so #blocks == grading rank), and a variable may carry extra weight only
// in gradings of EARLIER blocks (the bundle coordinate Z has weight -1 on
// the base grading). Factories below all satisfy this.
struct GradedSpace {
    std::string kind;  // "product_p1", "p1_p2", "p1_p2_p2", "p2", "p3", "p2_p2", "p2_bundle"
    int param = 0;     // block count for product_p1, otherwise unused
    std::vector<VarBlock> blocks;
    std::vector<std::vector<int>> weights;  // flat var index -> Z^r weight

    int rank() const { return static_cast<int>(blocks.size()); }
    int nvars() const { return static_cast<int>(flat_names_.size()); }
    const std::string& var_name(int flat) const { return flat_names_[static_cast<size_t>(flat)]; }
    int var_index(const std::string& name) const;  // -1 when absent
    int block_of(int flat) const;
    std::pair<int, int> block_range(int b) const;  // [begin, end) in flat indices

    bool same_as(const GradedSpace& o) const { return kind == o.kind && param == o.param; }

    static std::shared_ptr<const GradedSpace> product_p1(int k);  // blocks (S1,T1)..(Sk,Tk)
    static std::shared_ptr<const GradedSpace> p1_p2();            // s,t | x0,x1,x2
    static std::shared_ptr<const GradedSpace> p1_p2_p2();         // s,t | x0,x1,x2 | y0,y1,y2
    static std::shared_ptr<const GradedSpace> p2();               // X,Y,Z
    static std::shared_ptr<const GradedSpace> p3();               // x,y,z,w
    static std::shared_ptr<const GradedSpace> p2_p2();            // X0,X1,X2 | Y0,Y1,Y2
    // base P^2 with fiber coordinates Y0,Y1,Y2,Z of weights (0,1),(0,1),(0,1),(-1,1)
    static std::shared_ptr<const GradedSpace> p2_bundle();

    static std::shared_ptr<const GradedSpace> by_kind(const std::string& kind, int param);

    // filled by the factories
    std::vector<std::string> flat_names_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

// point of a block product, one homogeneous coordinate vector per block
struct BlockPoint {
    std::vector<std::vector<Rational>> coords;
};

// unique representative: per block coprime integers, first nonzero positive,
// with cross-weighted variables rescaled along the way
BlockPoint canonical_point(const SpacePtr& sp, const BlockPoint& p);
bool same_point(const SpacePtr& sp, const BlockPoint& a, const BlockPoint& b);
std::vector<Rational> flatten(const SpacePtr& sp, const BlockPoint& p);
std::string point_str(const SpacePtr& sp, const BlockPoint& p);

struct Term {
    std::vector<int> exp;
    Rational coeff;
};

class MultiForm {
public:
    MultiForm() = default;  // zero with no space; adopts a space on first use

    static MultiForm zero(SpacePtr sp);
    static MultiForm constant(SpacePtr sp, const Rational& c);
    static MultiForm monomial(SpacePtr sp, std::vector<int> exp, const Rational& c);
    static MultiForm var(const SpacePtr& sp, const std::string& name);
    // validates exponent shapes; checks multihomogeneity unless relaxed
    static MultiForm from_terms(SpacePtr sp, std::vector<Term> terms, bool require_homogeneous = true);

    const SpacePtr& space() const { return sp_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_homogeneous() const;
    std::vector<int> multidegree() const;  // throws on inhomogeneous or zero input

    MultiForm operator-() const;
    MultiForm operator+(const MultiForm& o) const;
    MultiForm operator-(const MultiForm& o) const;
    MultiForm operator*(const MultiForm& o) const;
    MultiForm scale(const Rational& k) const;
    MultiForm pow(int e) const;
    bool operator==(const MultiForm& o) const;
    bool operator!=(const MultiForm& o) const { return !(*this == o); }

    Rational eval(const std::vector<Rational>& point) const;
    Rational eval_point(const BlockPoint& p) const;
    MultiForm derivative(int var) const;
    MultiForm derivative(const std::string& var) const;

    int degree_in_var(int var) const;
    int degree_in_block(int block) const;

    MultiForm substitute_scalar(int var, const Rational& value) const;
    MultiForm substitute_block_scalars(int block, const std::vector<Rational>& vals) const;
    // simultaneous substitution of whole forms for variables
    MultiForm substitute_forms(const std::vector<std::pair<int, MultiForm>>& rep) const;
    // x_i -> sum_j M[i][j] x_j on one block
    MultiForm apply_linear(int block, const std::vector<std::vector<Rational>>& M) const;

    // dense coefficients with respect to one variable (its exponent zeroed)
    std::vector<MultiForm> coeffs_in_var(int var) const;
    // binary block (2 vars) of homogeneous degree d: the d+1 coefficient
    // forms indexed by the exponent of the SECOND block variable
    std::vector<MultiForm> coeffs_in_block(int block) const;

    // projections when the support allows them
    BinaryForm restrict_to_binary(int block) const;
    UniPoly restrict_to_uni(int var) const;

    std::string str() const;

private:
    void canonicalize();
    SpacePtr sp_;
    std::vector<Term> terms_;
};

MultiForm scaled(const MultiForm& x, const Rational& k);

// gcd of numerators over lcm of denominators, as a positive rational;
// zero form has content 0
Rational numeric_content(const MultiForm& f);

// divide out min exponents per variable; reports them through removed
MultiForm strip_monomial_content(const MultiForm& f, std::vector<int>* removed = nullptr);

// nullopt unless g divides f exactly
std::optional<MultiForm> exact_divide(const MultiForm& f, const MultiForm& g);

// resultant with respect to one variable, by fraction-free elimination on
// the Sylvester matrix; the result no longer involves that variable
MultiForm resultant_in_var(const MultiForm& f, const MultiForm& g, int var);

// binary form in two chosen variables; every other variable must be absent
BinaryForm binary_in_vars(const MultiForm& f, int v0, int v1);

}  // namespace cyq
