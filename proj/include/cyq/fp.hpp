#pragma once

// Prime field arithmetic for word-sized p. Elements carry their modulus so
// mixed-modulus bugs surface immediately instead of corrupting results.

#include <cstdint>

#include "cyq/rational.hpp"

namespace cyq {

bool is_small_prime(int64_t p);

struct Fp {
    int64_t v = 0;  // normalized representative, 0 <= v < p
    int64_t p = 0;  // modulus; p == 0 marks an unattached zero constant

    Fp() = default;
    Fp(int64_t value, int64_t prime);

    bool is_zero() const { return v == 0; }

    Fp operator-() const;
    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    bool operator==(const Fp& o) const;
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inv() const;  // throws Error("InvalidInput") on 0
    Fp pow(uint64_t e) const;
};

// reduces an exact rational mod p; throws Error("BadPrime") when p divides
// the denominator
Fp reduce_mod(const Rational& q, int64_t p);

}  // namespace cyq
