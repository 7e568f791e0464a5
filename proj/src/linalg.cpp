#include "cyq/linalg.hpp"

namespace cyq {

namespace {

// row-reduce in place, return pivot columns
std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

}  // namespace

int matrix_rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

QVector normalize_primitive(QVector v) {
    bool all_zero = true;
    for (const auto& x : v) all_zero = all_zero && x == 0;
    if (all_zero) return v;
    Integer l(1);
    for (const auto& x : v) l = lcm(l, den(x));
    Integer g(0);
    for (const auto& x : v) g = gcd(g, num(x) * (l / den(x)));
    int sign = 0;
    for (const auto& x : v) {
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    }
    Rational lambda = Rational(sign * l, g);
    for (auto& x : v) x *= lambda;
    return v;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    QMatrix red = m;
    std::vector<int> pivots = rref(red);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<QVector> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        QVector v(cols, Rational(0));
        v[free_c] = Rational(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            v[static_cast<size_t>(pivots[pi])] = -red[pi][free_c];
        basis.push_back(normalize_primitive(std::move(v)));
    }
    return basis;
}

std::optional<QVector> solve_square(QMatrix a, QVector b) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a);
    if (pivots.size() != n) return std::nullopt;
    for (int c : pivots)
        if (c >= static_cast<int>(n)) return std::nullopt;  // pivot in the constant column
    QVector x(n);
    for (size_t i = 0; i < n; ++i) x[static_cast<size_t>(pivots[i])] = a[i][n];
    return x;
}

Rational determinant(QMatrix m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = Rational(1) / m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] * inv;
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

std::optional<QMatrix> matrix_inverse(const QMatrix& m) {
    size_t n = m.size();
    QMatrix a(n, QVector(2 * n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
        a[i][n + i] = Rational(1);
    }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[c]);
        Rational inv = Rational(1) / a[c][c];
        for (size_t j = 0; j < 2 * n; ++j) a[c][j] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    QMatrix out(n, QVector(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

}  // namespace cyq
