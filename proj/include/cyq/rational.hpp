#pragma once

// Exact arithmetic ground types. Everything downstream computes over
// arbitrary-precision rationals; no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cyq {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Carries a machine-checkable error kind next to the human message, so
// callers (and tests) can branch on the kind without string matching
// against free-form text.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

bool is_integer(const Rational& q);

// max(|numerator|, denominator) of the reduced fraction
Integer height(const Rational& q);

std::string to_string(const Integer& n);

// "p/q" with the reduced denominator, "p" when the denominator is 1
std::string to_string(const Rational& q);

// Inverse of to_string. Accepts an optional sign, then digits, then an
// optional "/digits" part. Throws Error("InvalidInput") on anything else,
// including a zero denominator.
Rational parse_rational(const std::string& s);

}  // namespace cyq
