#include "cyq/fp.hpp"

namespace cyq {

bool is_small_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace {

int64_t common_modulus(const Fp& a, const Fp& b) {
    if (a.p == 0) return b.p;
    if (b.p == 0 || a.p == b.p) return a.p;
    throw Error("InvalidInput", "mixed moduli " + std::to_string(a.p) + " and " + std::to_string(b.p));
}

int64_t norm(int64_t v, int64_t p) {
    v %= p;
    if (v < 0) v += p;
    return v;
}

}  // namespace

Fp::Fp(int64_t value, int64_t prime) : p(prime) {
    if (prime <= 1) throw Error("BadPrime", "modulus must be a prime >= 2");
    v = norm(value, prime);
}

Fp Fp::operator-() const {
    Fp r = *this;
    if (r.v != 0) r.v = p - r.v;
    return r;
}

Fp Fp::operator+(const Fp& o) const {
    int64_t m = common_modulus(*this, o);
    if (m == 0) return Fp{};
    return Fp(v + o.v, m);
}

Fp Fp::operator-(const Fp& o) const {
    int64_t m = common_modulus(*this, o);
    if (m == 0) return Fp{};
    return Fp(v - o.v, m);
}

Fp Fp::operator*(const Fp& o) const {
    int64_t m = common_modulus(*this, o);
    if (m == 0) return Fp{};
    return Fp(static_cast<int64_t>((__int128)v * o.v % m), m);
}

bool Fp::operator==(const Fp& o) const {
    common_modulus(*this, o);  // reject mixed moduli
    return v == o.v;
}

Fp Fp::inv() const {
    if (v == 0) throw Error("InvalidInput", "inverse of zero");
    // extended Euclid
    int64_t a = v, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
        int64_t q = a / b;
        int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    return Fp(x0, p);
}

Fp Fp::pow(uint64_t e) const {
    Fp r(1, p), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Fp reduce_mod(const Rational& q, int64_t p) {
    if (!is_small_prime(p)) throw Error("BadPrime", std::to_string(p) + " is not prime");
    Integer n = num(q) % p;
    Integer d = den(q) % p;
    if (d == 0) throw Error("BadPrime", "denominator of " + to_string(q) + " vanishes mod " + std::to_string(p));
    Fp nn(static_cast<int64_t>(n), p);
    Fp dd(static_cast<int64_t>(d), p);
    return nn * dd.inv();
}

}  // namespace cyq
