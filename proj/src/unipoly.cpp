#include "cyq/unipoly.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>

namespace cyq {

// --- UniPoly ---------------------------------------------------------------

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::from_ints(const std::vector<long>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long x : coeffs) c.emplace_back(x);
    return UniPoly(std::move(c));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<size_t>(i)];
}

Rational UniPoly::lead() const {
    if (c_.empty()) return Rational(0);
    return c_.back();
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scale(const Rational& s) const {
    UniPoly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<int>(i);
    return UniPoly(std::move(r));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scale(Rational(1) / lead());
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return *this;
    Integer l(1);
    for (const auto& x : c_) l = lcm(l, den(x));
    Integer g(0);
    for (const auto& x : c_) g = gcd(g, num(x) * (l / den(x)));
    Rational k(l, g);
    if (lead() < 0) k = -k;
    return scale(k);
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational a = c < 0 ? Rational(-c) : c;
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        bool unit = (a == 1 && i > 0);
        if (!unit) out += to_string(a);
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error("InvalidInput", "division by the zero polynomial");
    std::vector<Rational> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {UniPoly(), a};
    std::vector<Rational> q(static_cast<size_t>(a.degree() - db) + 1, Rational(0));
    Rational inv_lead = Rational(1) / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        Rational f = rem[static_cast<size_t>(i)] * inv_lead;
        if (f == 0) continue;
        q[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b.coeff(j);
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
}

UniPoly univariate_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly f = a, g = b;
    while (!g.is_zero()) {
        UniPoly r = uni_divmod(f, g).second;
        f = g;
        g = r.monic();  // tame coefficient growth
    }
    return f.monic();
}

bool is_separable(const UniPoly& f) {
    if (f.is_zero()) throw Error("InvalidInput", "separability of the zero polynomial");
    if (f.degree() == 0) return true;
    return univariate_gcd(f, f.derivative()).degree() == 0;
}

UniPoly uni_radical(const UniPoly& f) {
    if (f.is_zero()) throw Error("InvalidInput", "radical of the zero polynomial");
    if (f.degree() == 0) return UniPoly::constant(Rational(1));
    UniPoly g = univariate_gcd(f, f.derivative());
    auto [q, r] = uni_divmod(f, g);
    if (!r.is_zero()) throw Error("InvalidInput", "radical division was not exact");
    return q.monic();
}

namespace {

// trial division to 10^6, then a primality check on the cofactor
std::vector<Integer> divisors_of(Integer n) {
    if (n < 0) n = -n;
    std::vector<std::pair<Integer, int>> fac;
    for (Integer d = 2; d * d <= n && d <= 1000000; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fac.emplace_back(d, e);
        }
    }
    if (n > 1) {
        if (!boost::multiprecision::miller_rabin_test(n, 32))
            throw Error("InvalidInput", "coefficient too hard to factor: " + to_string(n));
        fac.emplace_back(n, 1);
    }
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : fac) {
        size_t base = divs.size();
        Integer pk(1);
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
        if (divs.size() > 100000) throw Error("InvalidInput", "too many divisor candidates");
    }
    return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly& f) {
    if (f.is_zero()) throw Error("InvalidInput", "roots of the zero polynomial");
    std::vector<Rational> roots;
    UniPoly g = f;
    if (g.coeff(0) == 0) {
        roots.emplace_back(0);
        std::vector<Rational> shifted(g.coeffs().begin(), g.coeffs().end());
        size_t k = 0;
        while (k < shifted.size() && shifted[k] == 0) ++k;
        g = UniPoly(std::vector<Rational>(shifted.begin() + static_cast<long>(k), shifted.end()));
    }
    if (g.degree() <= 0) return roots;
    g = g.primitive();
    std::vector<Integer> ps = divisors_of(num(g.coeff(0)));
    std::vector<Integer> qs = divisors_of(num(g.lead()));
    for (const Integer& p : ps)
        for (const Integer& q : qs) {
            if (gcd(p, q) != 1) continue;
            for (int sign : {1, -1}) {
                Rational r(sign * p, q);
                if (g.eval(r) == 0) roots.push_back(r);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// --- BinaryForm ------------------------------------------------------------

BinaryForm::BinaryForm(int degree, std::vector<Rational> coeffs) : deg_(degree), c_(std::move(coeffs)) {
    if (deg_ < 0 || c_.size() != static_cast<size_t>(deg_) + 1)
        throw Error("InvalidInput", "binary form of degree d needs d+1 coefficients");
}

BinaryForm BinaryForm::from_ints(int degree, const std::vector<long>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long x : coeffs) c.emplace_back(x);
    return BinaryForm(degree, std::move(c));
}

BinaryForm BinaryForm::homogenize(const UniPoly& f, int d) {
    if (f.degree() > d) throw Error("InvalidInput", "degree too small to homogenize into");
    std::vector<Rational> c(static_cast<size_t>(d) + 1, Rational(0));
    for (int i = 0; i <= f.degree(); ++i) c[static_cast<size_t>(i)] = f.coeff(i);
    return BinaryForm(d, std::move(c));
}

bool BinaryForm::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

Rational BinaryForm::eval(const Rational& s, const Rational& t) const {
    // two Horner passes would also do; degrees here are tiny
    Rational acc(0), tp(1);
    std::vector<Rational> spow(static_cast<size_t>(deg_) + 1, Rational(1));
    for (int i = 1; i <= deg_; ++i) spow[static_cast<size_t>(i)] = spow[static_cast<size_t>(i - 1)] * s;
    for (int i = 0; i <= deg_; ++i) {
        acc += c_[static_cast<size_t>(i)] * spow[static_cast<size_t>(deg_ - i)] * tp;
        tp *= t;
    }
    return acc;
}

BinaryForm BinaryForm::derivative_s() const {
    if (deg_ == 0) return BinaryForm(0, {Rational(0)});
    std::vector<Rational> r(static_cast<size_t>(deg_), Rational(0));
    for (int i = 0; i < deg_; ++i) r[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] * (deg_ - i);
    return BinaryForm(deg_ - 1, std::move(r));
}

BinaryForm BinaryForm::derivative_t() const {
    if (deg_ == 0) return BinaryForm(0, {Rational(0)});
    std::vector<Rational> r(static_cast<size_t>(deg_), Rational(0));
    for (int i = 1; i <= deg_; ++i) r[static_cast<size_t>(i - 1)] = c_[static_cast<size_t>(i)] * i;
    return BinaryForm(deg_ - 1, std::move(r));
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
    if (deg_ != o.deg_) throw Error("InvalidInput", "adding binary forms of different degrees");
    std::vector<Rational> r = c_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return BinaryForm(deg_, std::move(r));
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const { return *this + o.scale(Rational(-1)); }

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    std::vector<Rational> r(static_cast<size_t>(deg_ + o.deg_) + 1, Rational(0));
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= o.deg_; ++j)
            r[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
    return BinaryForm(deg_ + o.deg_, std::move(r));
}

BinaryForm BinaryForm::scale(const Rational& s) const {
    BinaryForm r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

BinaryForm BinaryForm::mobius(const Rational& a, const Rational& b, const Rational& c, const Rational& d) const {
    BinaryForm l1(1, {a, b});
    BinaryForm l2(1, {c, d});
    // powers of the two substituted linear forms
    std::vector<BinaryForm> p1{BinaryForm(0, {Rational(1)})}, p2{BinaryForm(0, {Rational(1)})};
    for (int i = 1; i <= deg_; ++i) {
        p1.push_back(p1.back() * l1);
        p2.push_back(p2.back() * l2);
    }
    BinaryForm acc(deg_, std::vector<Rational>(static_cast<size_t>(deg_) + 1, Rational(0)));
    for (int i = 0; i <= deg_; ++i) {
        if (c_[static_cast<size_t>(i)] == 0) continue;
        acc = acc + (p1[static_cast<size_t>(deg_ - i)] * p2[static_cast<size_t>(i)]).scale(c_[static_cast<size_t>(i)]);
    }
    return acc;
}

UniPoly BinaryForm::dehomogenize() const { return UniPoly(c_); }

int BinaryForm::s_multiplicity() const {
    for (int i = deg_; i >= 0; --i)
        if (c_[static_cast<size_t>(i)] != 0) return deg_ - i;
    return deg_ + 1;  // zero form
}

std::string BinaryForm::str(const std::string& s, const std::string& t) const {
    if (is_zero()) return "0";
    std::string out;
    auto pow_str = [](const std::string& v, int e) -> std::string {
        if (e == 0) return "";
        if (e == 1) return v;
        return v + "^" + std::to_string(e);
    };
    for (int i = 0; i <= deg_; ++i) {
        const Rational& c = c_[static_cast<size_t>(i)];
        if (c == 0) continue;
        Rational a = c < 0 ? Rational(-c) : c;
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        std::string mono = pow_str(s, deg_ - i);
        std::string mt = pow_str(t, i);
        if (!mono.empty() && !mt.empty()) mono += "*";
        mono += mt;
        bool unit = (a == 1 && !mono.empty());
        if (!unit) out += to_string(a);
        if (!mono.empty()) {
            if (!unit) out += "*";
            out += mono;
        }
    }
    return out;
}

namespace {

Rational gauss_det(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = Rational(1) / m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            Rational f = m[row][col] * inv;
            for (size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
        }
    }
    return det;
}

}  // namespace

Rational binary_resultant(const BinaryForm& f, const BinaryForm& g) {
    int m = f.degree(), n = g.degree();
    size_t sz = static_cast<size_t>(m + n);
    if (sz == 0) return Rational(1);
    std::vector<std::vector<Rational>> syl(sz, std::vector<Rational>(sz, Rational(0)));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) syl[static_cast<size_t>(row)][static_cast<size_t>(row + j)] = f.coeff(j);
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j) syl[static_cast<size_t>(n + row)][static_cast<size_t>(row + j)] = g.coeff(j);
    return gauss_det(std::move(syl));
}

bool binary_squarefree(const BinaryForm& f) {
    if (f.is_zero()) return false;
    if (f.degree() <= 1) return true;
    return binary_resultant(f.derivative_s(), f.derivative_t()) != 0;
}

BinaryForm binary_gcd(const BinaryForm& f, const BinaryForm& g) {
    if (f.is_zero() && g.is_zero()) return BinaryForm(0, {Rational(0)});
    auto normalized = [](const BinaryForm& h) {
        for (int i = 0; i <= h.degree(); ++i)
            if (h.coeff(i) != 0) return h.scale(Rational(1) / h.coeff(i));
        return h;
    };
    if (f.is_zero()) return normalized(g);
    if (g.is_zero()) return normalized(f);
    int k = std::min(f.s_multiplicity(), g.s_multiplicity());
    UniPoly h = univariate_gcd(f.dehomogenize(), g.dehomogenize());
    return BinaryForm::homogenize(h, h.degree() + k);
}

BinaryForm binary_radical(const BinaryForm& f) {
    if (f.is_zero()) throw Error("InvalidInput", "radical of the zero form");
    UniPoly r = uni_radical(f.dehomogenize());
    int extra = f.s_multiplicity() > 0 ? 1 : 0;
    return BinaryForm::homogenize(r, r.degree() + extra);
}

std::vector<std::pair<Rational, Rational>> binary_rational_roots(const BinaryForm& f) {
    if (f.is_zero()) throw Error("InvalidInput", "roots of the zero form");
    std::vector<std::pair<Rational, Rational>> pts;
    if (f.s_multiplicity() > 0) pts.emplace_back(Rational(0), Rational(1));
    UniPoly g = f.dehomogenize();
    if (g.degree() >= 1)
        for (const Rational& r : rational_roots(g)) pts.emplace_back(Rational(den(r)), Rational(num(r)));
    return pts;
}

Rational scaled(const Rational& x, const Rational& k) { return x * k; }

Rational disc_binary_form(const BinaryForm& f) {
    switch (f.degree()) {
        case 2:
            return disc_quadratic(f.coeff(0), f.coeff(1), f.coeff(2));
        case 3:
            return disc_cubic(f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
        case 4:
            return disc_quartic(f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3), f.coeff(4));
        default:
            throw Error("InvalidInput", "discriminant implemented for degrees 2..4");
    }
}

// --- P1Point / vieta -------------------------------------------------------

P1Point::P1Point(Rational uu, Rational vv) : u(std::move(uu)), v(std::move(vv)) {
    if (u == 0 && v == 0) throw Error("InvalidInput", "(0,0) is not a projective point");
    Integer l = lcm(den(u), den(v));
    Integer nu = num(u) * (l / den(u));
    Integer nv = num(v) * (l / den(v));
    Integer g = gcd(nu, nv);
    nu /= g;
    nv /= g;
    Integer s = (nu != 0 ? nu : nv);
    if (s < 0) {
        nu = -nu;
        nv = -nv;
    }
    u = Rational(nu);
    v = Rational(nv);
}

std::string P1Point::str() const { return "(" + to_string(u) + ":" + to_string(v) + ")"; }

P1Point vieta_other_root(const Rational& a, const Rational& b, const Rational& c, const P1Point& root) {
    if (a == 0 && b == 0 && c == 0) throw Error("DegenerateForm", "zero quadratic has no chord");
    if (a * root.u * root.u + b * root.u * root.v + c * root.v * root.v != 0)
        throw Error("NotARoot", root.str() + " is not on the quadratic");
    if (a != 0) {
        // root.v != 0 here: (1:0) on the form would force a == 0
        return P1Point(-b * root.v - a * root.u, a * root.v);
    }
    // a == 0: the form is v (b u + c v), so (1:0) is always one of the roots
    if (root.v == 0) {
        if (b == 0) return P1Point(Rational(1), Rational(0));  // c v^2: double root
        return P1Point(-c, b);
    }
    return P1Point(Rational(1), Rational(0));
}

}  // namespace cyq
