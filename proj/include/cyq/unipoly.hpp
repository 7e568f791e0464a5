#pragma once

// Dense univariate polynomials over Q, homogeneous binary forms, and the
// resultant / discriminant / radical toolkit built on them. Binary forms of
// degree d store coefficients c[0..d] with F(S,T) = sum c[i] S^(d-i) T^i,
// so c[0] is the coefficient of S^d and roots at (0:1) show up as trailing
// zero coefficients.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyq/rational.hpp"

namespace cyq {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);  // coeffs[i] multiplies x^i

    static UniPoly constant(const Rational& c);
    static UniPoly from_ints(const std::vector<long>& coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lead() const;

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scale(const Rational& s) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return c_ != o.c_; }

    Rational eval(const Rational& x) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    // integer-coefficient, content-one copy (up to sign of the leading term)
    UniPoly primitive() const;

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;  // no trailing zeros; empty means 0
};

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b);

// monic gcd via Euclid; gcd(0,0) = 0
UniPoly univariate_gcd(const UniPoly& a, const UniPoly& b);

// nonzero with no repeated root; throws Error("InvalidInput") on the zero
// polynomial
bool is_separable(const UniPoly& f);

// product of the distinct irreducible factors, monic
UniPoly uni_radical(const UniPoly& f);

// all roots in Q, via the rational root bound on the primitive part;
// multiplicities collapsed
std::vector<Rational> rational_roots(const UniPoly& f);

// --- homogeneous binary forms ---------------------------------------------

class BinaryForm {
public:
    BinaryForm() = default;
    BinaryForm(int degree, std::vector<Rational> coeffs);  // coeffs.size() == degree+1

    static BinaryForm from_ints(int degree, const std::vector<long>& coeffs);
    // S^(d - deg f) * f(T/S)-style homogenization of f to total degree d
    static BinaryForm homogenize(const UniPoly& f, int d);

    int degree() const { return deg_; }
    bool is_zero() const;
    Rational coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& s, const Rational& t) const;
    BinaryForm derivative_s() const;
    BinaryForm derivative_t() const;
    BinaryForm operator+(const BinaryForm& o) const;  // same degree
    BinaryForm operator-(const BinaryForm& o) const;
    BinaryForm operator*(const BinaryForm& o) const;
    BinaryForm scale(const Rational& s) const;
    bool operator==(const BinaryForm& o) const { return deg_ == o.deg_ && c_ == o.c_; }

    // F(a S + b T, c S + d T)
    BinaryForm mobius(const Rational& a, const Rational& b, const Rational& c, const Rational& d) const;

    UniPoly dehomogenize() const;  // F(1, t)
    int s_multiplicity() const;    // multiplicity of the root (0:1)

    std::string str(const std::string& s = "s", const std::string& t = "t") const;

private:
    int deg_ = 0;
    std::vector<Rational> c_{Rational(0)};
};

// classical resultant of two binary forms (formal Sylvester determinant on
// the full coefficient arrays, so roots at (0:1) need no special casing)
Rational binary_resultant(const BinaryForm& f, const BinaryForm& g);

// no repeated projective root; degree <= 1 is vacuously squarefree
bool binary_squarefree(const BinaryForm& f);

BinaryForm binary_gcd(const BinaryForm& f, const BinaryForm& g);
BinaryForm binary_radical(const BinaryForm& f);

// rational projective roots (1:r) and possibly (0:1), no multiplicities;
// each returned pair is in lowest terms
std::vector<std::pair<Rational, Rational>> binary_rational_roots(const BinaryForm& f);

// --- discriminants ---------------------------------------------------------

Rational scaled(const Rational& x, const Rational& k);

// deg 2: b^2 - 4ac
template <class R>
R disc_quadratic(const R& a, const R& b, const R& c) {
    return b * b - scaled(a * c, Rational(4));
}

// deg 3 (a,b,c,d) = coefficients of S^3, S^2 T, S T^2, T^3
template <class R>
R disc_cubic(const R& a, const R& b, const R& c, const R& d) {
    return scaled(a * b * c * d, Rational(18)) - scaled(b * b * b * d, Rational(4)) + b * b * c * c
           - scaled(a * c * c * c, Rational(4)) - scaled(a * a * d * d, Rational(27));
}

// deg 4 via the invariants I = 12ae - 3bd + c^2 and
// J = 72ace + 9bcd - 27ad^2 - 27eb^2 - 2c^3: disc = (4 I^3 - J^2) / 27
template <class R>
R disc_quartic(const R& a, const R& b, const R& c, const R& d, const R& e) {
    R I = scaled(a * e, Rational(12)) - scaled(b * d, Rational(3)) + c * c;
    R J = scaled(a * c * e, Rational(72)) + scaled(b * c * d, Rational(9)) - scaled(a * d * d, Rational(27))
          - scaled(e * b * b, Rational(27)) - scaled(c * c * c, Rational(2));
    return scaled(scaled(I * I * I, Rational(4)) - J * J, Rational(1, 27));
}

// discriminant of a binary form of degree 2..4
Rational disc_binary_form(const BinaryForm& f);

// --- conic chords ----------------------------------------------------------

// P^1 point as a pair of homogeneous coordinates, canonicalized to coprime
// integers with positive first nonzero entry
struct P1Point {
    Rational u, v;

    P1Point() : u(0), v(0) {}
    P1Point(Rational uu, Rational vv);

    bool operator==(const P1Point& o) const { return u == o.u && v == o.v; }
    bool operator!=(const P1Point& o) const { return !(*this == o); }
    std::string str() const;
};

// Given a root of the binary quadratic q = a u^2 + b uv + c v^2, return the
// other root (equal to the input at a double root). Throws
// Error("DegenerateForm") if q is identically zero and Error("NotARoot") if
// the point does not lie on q.
P1Point vieta_other_root(const Rational& a, const Rational& b, const Rational& c, const P1Point& root);

}  // namespace cyq
