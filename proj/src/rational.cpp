#include "cyq/rational.hpp"

#include <cctype>

namespace cyq {

bool is_integer(const Rational& q) { return den(q) == 1; }

Integer height(const Rational& q) {
    Integer n = num(q);
    if (n < 0) n = -n;
    Integer d = den(q);
    return n > d ? n : d;
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q) {
    Integer d = den(q);
    if (d == 1) return num(q).str();
    return num(q).str() + "/" + d.str();
}

namespace {

// digits only, at least one
bool parse_digits(const std::string& s, size_t& pos, Integer& out) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return false;
    out = Integer(s.substr(start, pos - start));
    return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
    size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = (s[pos] == '-');
        ++pos;
    }
    Integer n;
    if (!parse_digits(s, pos, n)) throw Error("InvalidInput", "bad rational literal '" + s + "'");
    Integer d = 1;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        if (!parse_digits(s, pos, d)) throw Error("InvalidInput", "bad rational literal '" + s + "'");
        if (d == 0) throw Error("InvalidInput", "zero denominator in '" + s + "'");
    }
    if (pos != s.size()) throw Error("InvalidInput", "trailing characters in rational literal '" + s + "'");
    if (neg) n = -n;
    return Rational(n, d);
}

}  // namespace cyq
