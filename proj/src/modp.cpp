#include "cyq/modp.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "cyq/linalg.hpp"

namespace cyq {

namespace {

int64_t mod_pow(int64_t b, int e, int64_t p) {
    int64_t r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

FpForm fp_mul(const FpForm& a, const FpForm& b, int64_t p) {
    std::map<std::vector<int>, int64_t> acc;
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        for (size_t j = 0; j < b.coeffs.size(); ++j) {
            std::vector<int> e = a.exps[i];
            for (size_t k = 0; k < e.size(); ++k) e[k] += b.exps[j][k];
            acc[e] = (acc[e] + a.coeffs[i] * b.coeffs[j]) % p;
        }
    }
    FpForm out;
    for (auto& [e, c] : acc) {
        if (c % p == 0) continue;
        out.exps.push_back(e);
        out.coeffs.push_back((c % p + p) % p);
    }
    return out;
}

FpForm fp_sub(const FpForm& a, const FpForm& b, int64_t p) {
    std::map<std::vector<int>, int64_t> acc;
    for (size_t i = 0; i < a.coeffs.size(); ++i) acc[a.exps[i]] = (acc[a.exps[i]] + a.coeffs[i]) % p;
    for (size_t j = 0; j < b.coeffs.size(); ++j) acc[b.exps[j]] = (acc[b.exps[j]] - b.coeffs[j] % p + p) % p;
    FpForm out;
    for (auto& [e, c] : acc) {
        if (c == 0) continue;
        out.exps.push_back(e);
        out.coeffs.push_back(c);
    }
    return out;
}

int matrix_rank_mod(std::vector<std::vector<int64_t>> m, int64_t p) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (m[r][c] % p != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        int64_t inv = Fp(m[rank][c], p).inv().v;
        for (int r = rank + 1; r < rows; ++r) {
            int64_t f = m[r][c] % p * inv % p;
            if (f == 0) continue;
            for (int cc = c; cc < cols; ++cc) m[r][cc] = ((m[r][cc] - f * m[rank][cc]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

void check_prime(int64_t p) {
    if (!is_small_prime(p)) throw Error("BadPrime", "modulus is not a small prime");
}

void check_point_shape(const ReducedSpace& r, const std::vector<int64_t>& pt) {
    if (!r.original.ambient) throw Error("InvalidInput", "the family has no ambient space to audit");
    if (static_cast<int>(pt.size()) != r.original.ambient->nvars())
        throw Error("InvalidInput", "point length does not match the ambient variable count");
}

// defining system whose vanishing cuts the locus: the three minors for a
// degeneracy matrix, the stored forms otherwise
std::vector<FpForm> locus_system(const ReducedSpace& r, int64_t p) {
    if (r.matrix) {
        const auto& m = *r.matrix;
        std::vector<FpForm> sys;
        sys.push_back(fp_sub(fp_mul(m[0][0], m[1][1], p), fp_mul(m[0][1], m[1][0], p), p));
        sys.push_back(fp_sub(fp_mul(m[0][0], m[1][2], p), fp_mul(m[0][2], m[1][0], p), p));
        sys.push_back(fp_sub(fp_mul(m[0][1], m[1][2], p), fp_mul(m[0][2], m[1][1], p), p));
        return sys;
    }
    return r.defining;
}

bool entries_rank_le_1(const std::array<std::array<FpForm, 3>, 2>& m, const std::vector<int64_t>& pt,
                       int64_t p, bool* all_zero) {
    int64_t a[2][3];
    bool zero = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            a[i][j] = m[i][j].eval(pt, p);
            if (a[i][j] != 0) zero = false;
        }
    if (all_zero) *all_zero = zero;
    for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k)
            if ((a[0][j] * a[1][k] - a[0][k] * a[1][j]) % p != 0) return false;
    return true;
}

bool system_vanishes(const std::vector<FpForm>& sys, const std::vector<int64_t>& pt, int64_t p) {
    for (const auto& f : sys)
        if (f.eval(pt, p) != 0) return false;
    return true;
}

}  // namespace

int64_t FpForm::eval(const std::vector<int64_t>& x, int64_t p) const {
    int64_t acc = 0;
    for (size_t t = 0; t < coeffs.size(); ++t) {
        int64_t m = coeffs[t];
        const auto& e = exps[t];
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            m = m * mod_pow(x[v], e[v], p) % p;
            if (m == 0) break;
        }
        acc = (acc + m) % p;
    }
    return acc;
}

FpForm FpForm::partial(int var, int64_t p) const {
    FpForm out;
    for (size_t t = 0; t < coeffs.size(); ++t) {
        int e = exps[t][static_cast<size_t>(var)];
        if (e == 0) continue;
        int64_t c = coeffs[t] * (e % p) % p;
        if (c == 0) continue;
        auto ex = exps[t];
        ex[static_cast<size_t>(var)] = e - 1;
        out.exps.push_back(std::move(ex));
        out.coeffs.push_back(c);
    }
    return out;
}

FpForm reduce_form(const MultiForm& f, int64_t p) {
    check_prime(p);
    FpForm out;
    for (const auto& t : f.terms()) {
        Fp c = reduce_mod(t.coeff, p);
        if (c.is_zero()) continue;
        out.exps.push_back(t.exp);
        out.coeffs.push_back(c.v);
    }
    return out;
}

ReducedSpace reduce_space(const FiberedSpace& space, int64_t p) {
    check_prime(p);
    ReducedSpace r;
    r.original = space;
    r.p = p;
    auto reduce_keeping_degree = [&](const MultiForm& f) {
        FpForm rf = reduce_form(f, p);
        if (!f.is_zero() && rf.is_zero())
            throw Error("BadPrime", "a defining form vanishes mod p, collapsing its multidegree");
        return rf;
    };
    for (const auto& f : space.defining) r.defining.push_back(reduce_keeping_degree(f));
    if (space.matrix) {
        std::array<std::array<FpForm, 3>, 2> m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = reduce_keeping_degree(space.matrix->entry[i][j]);
        r.matrix = std::move(m);
    }
    if (space.family) {
        for (const UniPoly* q : {&space.family->c, &space.family->d, &space.family->f}) {
            std::vector<int64_t> cs;
            for (const auto& c : q->coeffs()) cs.push_back(reduce_mod(c, p).v);
            r.family_coeffs.push_back(std::move(cs));
        }
    }
    return r;
}

PointEnumerator::PointEnumerator(SpacePtr ambient, int64_t p) : sp_(std::move(ambient)), p_(p) {
    check_prime(p);
    if (!sp_) throw Error("InvalidInput", "enumeration needs an ambient space");
    for (int b = 0; b < sp_->rank(); ++b) ranges_.push_back(sp_->block_range(b));
    reset();
}

Integer PointEnumerator::total() const {
    Integer n = 1;
    for (const auto& [lo, hi] : ranges_) {
        Integer block = 0, pw = 1;
        for (int i = lo; i < hi; ++i) {
            block += pw;
            pw *= p_;
        }
        n *= block;
    }
    return n;
}

void PointEnumerator::reset() {
    lead_.assign(ranges_.size(), 0);
    cur_.assign(static_cast<size_t>(sp_->nvars()), 0);
    for (const auto& [lo, hi] : ranges_) cur_[static_cast<size_t>(lo)] = 1;
    started_ = false;
    done_ = false;
}

// base-p odometer over the free coordinates after the block's leading 1;
// on overflow the leading 1 moves one slot right
bool PointEnumerator::advance_block(int b) {
    auto [lo, hi] = ranges_[static_cast<size_t>(b)];
    int lead = lead_[static_cast<size_t>(b)];
    for (int i = hi - 1; i > lo + lead; --i) {
        if (cur_[static_cast<size_t>(i)] + 1 < p_) {
            ++cur_[static_cast<size_t>(i)];
            return true;
        }
        cur_[static_cast<size_t>(i)] = 0;
    }
    if (lo + lead + 1 < hi) {
        cur_[static_cast<size_t>(lo + lead)] = 0;
        cur_[static_cast<size_t>(lo + lead + 1)] = 1;
        ++lead_[static_cast<size_t>(b)];
        return true;
    }
    lead_[static_cast<size_t>(b)] = 0;
    for (int i = lo; i < hi; ++i) cur_[static_cast<size_t>(i)] = (i == lo) ? 1 : 0;
    return false;
}

bool PointEnumerator::next(std::vector<int64_t>& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        out = cur_;
        return true;
    }
    for (int b = static_cast<int>(ranges_.size()) - 1; b >= 0; --b) {
        if (advance_block(b)) {
            out = cur_;
            return true;
        }
    }
    done_ = true;
    return false;
}

SmoothnessCertificate smoothness_certificate(const ReducedSpace& r) {
    if (r.original.is_family()) throw Error("InvalidInput", "the family has no ambient space to audit");
    if (!r.matrix && r.defining.size() != 1)
        throw Error("InvalidInput", "smoothness audit expects a hypersurface or a rank-one locus");
    const int64_t p = r.p;
    const int nv = r.original.ambient->nvars();
    auto sys = locus_system(r, p);
    std::vector<std::vector<FpForm>> partials(sys.size());
    for (size_t i = 0; i < sys.size(); ++i)
        for (int v = 0; v < nv; ++v) partials[i].push_back(sys[i].partial(v, p));
    const int expected = r.matrix ? 2 : 1;

    SmoothnessCertificate cert;
    cert.p = p;
    PointEnumerator en(r.original.ambient, p);
    std::vector<int64_t> pt;
    std::vector<std::vector<int64_t>> jac(sys.size(), std::vector<int64_t>(static_cast<size_t>(nv)));
    while (en.next(pt)) {
        cert.ambient_examined += 1;
        bool rank0 = false;
        if (r.matrix) {
            if (!entries_rank_le_1(*r.matrix, pt, p, &rank0)) continue;
        } else {
            if (!system_vanishes(sys, pt, p)) continue;
        }
        cert.locus_points += 1;
        bool ok = !rank0;
        if (ok) {
            for (size_t i = 0; i < sys.size(); ++i)
                for (int v = 0; v < nv; ++v) jac[i][static_cast<size_t>(v)] = partials[i][static_cast<size_t>(v)].eval(pt, p);
            ok = matrix_rank_mod(jac, p) == expected;
        }
        if (!ok) {
            cert.status = SmoothnessCertificate::Status::Inconclusive;
            cert.witness = pt;
            return cert;
        }
    }
    cert.status = SmoothnessCertificate::Status::Certified;
    return cert;
}

bool locus_contains(const ReducedSpace& r, const std::vector<int64_t>& pt) {
    check_point_shape(r, pt);
    if (r.matrix) return entries_rank_le_1(*r.matrix, pt, r.p, nullptr);
    return system_vanishes(r.defining, pt, r.p);
}

int jacobian_rank_at(const ReducedSpace& r, const std::vector<int64_t>& pt) {
    check_point_shape(r, pt);
    auto sys = locus_system(r, r.p);
    const int nv = r.original.ambient->nvars();
    std::vector<std::vector<int64_t>> jac(sys.size(), std::vector<int64_t>(static_cast<size_t>(nv)));
    for (size_t i = 0; i < sys.size(); ++i)
        for (int v = 0; v < nv; ++v) jac[i][static_cast<size_t>(v)] = sys[i].partial(v, r.p).eval(pt, r.p);
    return matrix_rank_mod(jac, r.p);
}

CountReport count_points(const ReducedSpace& r, const Integer& budget,
                         std::optional<std::pair<Integer, Integer>> window) {
    if (r.original.is_family()) throw Error("InvalidInput", "the family has no ambient space to enumerate");
    PointEnumerator en(r.original.ambient, r.p);
    if (en.total() > budget) throw Error("TooLarge", "ambient orbit count exceeds the enumeration budget");
    auto sys = locus_system(r, r.p);
    Integer n = 0;
    std::vector<int64_t> pt;
    while (en.next(pt)) {
        bool in = r.matrix ? entries_rank_le_1(*r.matrix, pt, r.p, nullptr) : system_vanishes(sys, pt, r.p);
        if (in) n += 1;
    }
    CountReport rep;
    rep.entries.push_back({r.p, "ambient", en.total()});
    rep.entries.push_back({r.p, "locus", n});
    rep.window = std::move(window);
    return rep;
}

CountReport proper_intersection_audit(const PointPredicate& delta, const PointPredicate& branch,
                                      const std::vector<int64_t>& primes, const Integer& bound) {
    CountReport rep;
    bool proper = true;
    for (int64_t p : primes) {
        check_prime(p);
        PointEnumerator en(GradedSpace::p2(), p);
        Integer nd = 0, nb = 0, ni = 0;
        std::vector<int64_t> pt;
        while (en.next(pt)) {
            bool d = delta(p, pt);
            bool b = branch(p, pt);
            if (d) nd += 1;
            if (b) nb += 1;
            if (d && b) ni += 1;
        }
        rep.entries.push_back({p, "discriminant", nd});
        rep.entries.push_back({p, "branch", nb});
        rep.entries.push_back({p, "intersection", ni});
        if (ni > bound || 2 * nd < p + 1 || 2 * nb < p + 1) proper = false;
    }
    rep.verdict = proper ? "ProperLikely" : "NotProper";
    return rep;
}

}  // namespace cyq
