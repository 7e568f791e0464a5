#include "cyq/reduction.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <map>

namespace cyq {

std::string CoverPoint::str() const { return "(" + t.str() + ", w=" + to_string(w) + ")"; }

std::string AffinePoint::str() const {
    std::string out = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ", ";
        out += to_string(coords[i]);
    }
    return out + ")";
}

std::string map_point_str(const MapPoint& p) {
    return std::visit(
        [](const auto& q) -> std::string {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, BlockPoint>) {
                std::string out = "(";
                for (size_t b = 0; b < q.coords.size(); ++b) {
                    if (b) out += ", ";
                    out += "(";
                    for (size_t i = 0; i < q.coords[b].size(); ++i) {
                        if (i) out += ":";
                        out += to_string(q.coords[b][i]);
                    }
                    out += ")";
                }
                return out + ")";
            } else {
                return q.str();
            }
        },
        p);
}

MapPoint BirationalRecord::forward(MapPoint p) const {
    for (const auto& s : steps) p = s->forward(p);
    return p;
}

MapPoint BirationalRecord::backward(MapPoint p) const {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) p = (*it)->backward(p);
    return p;
}

std::vector<std::string> BirationalRecord::defined_away_from() const {
    std::vector<std::string> out;
    for (const auto& s : steps)
        for (const auto& d : s->denominators()) out.push_back(d);
    return out;
}

MapPoint apply_map(const BirationalRecord& r, const MapPoint& p) { return r.forward(p); }

MapPoint apply_map_backward(const BirationalRecord& r, const MapPoint& p) { return r.backward(p); }

// --- minimal twist scale ----------------------------------------------------

namespace {

constexpr long long kInfValuation = 1LL << 40;

long long floordiv(long long a, long long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// trial division up to 10^6 plus a primality test on the leftover; composite
// leftovers are dropped, which only leaves lambda less reduced, never wrong
void add_valuations(const Integer& n_in, long long sgn, std::map<Integer, long long>& val) {
    Integer n = abs(n_in);
    if (n <= 1) return;
    auto strip = [&](const Integer& p) {
        long long e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) val[p] += sgn * e;
    };
    strip(2);
    for (Integer d = 3; d <= 1000000 && d * d <= n; d += 2) strip(d);
    if (n > 1 && boost::multiprecision::miller_rabin_test(n, 32)) val[n] += sgn;
}

std::map<Integer, long long> rational_valuations(const Rational& x) {
    std::map<Integer, long long> val;
    add_valuations(num(x), +1, val);
    add_valuations(den(x), -1, val);
    return val;
}

}  // namespace

Rational minimal_twist_scale(const Rational& A, const Rational& B) {
    if (A == 0 && B == 0) return Rational(1);
    std::map<Integer, long long> va, vb;
    if (A != 0) va = rational_valuations(A);
    if (B != 0) vb = rational_valuations(B);
    std::map<Integer, long long> primes;
    for (const auto& [p, e] : va) primes[p] += 0;
    for (const auto& [p, e] : vb) primes[p] += 0;
    Rational lam(1);
    for (const auto& [p, unused] : primes) {
        long long a = A == 0 ? kInfValuation : (va.count(p) ? va.at(p) : 0);
        long long b = B == 0 ? kInfValuation : (vb.count(p) ? vb.at(p) : 0);
        long long k = -std::min(floordiv(a, 4), floordiv(b, 6));
        Integer pk = 1;
        for (long long i = 0; i < (k >= 0 ? k : -k); ++i) pk *= p;
        if (k >= 0)
            lam *= Rational(pk);
        else
            lam /= Rational(pk);
    }
    return lam;
}

// --- steps ------------------------------------------------------------------

namespace {

template <class T>
const T& expect(const MapPoint& p, const char* step, const char* want) {
    if (const T* q = std::get_if<T>(&p)) return *q;
    throw Error("InvalidInput", std::string(step) + " expects a " + want);
}

std::string lin_str(const QVector& row, const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0) continue;
        Rational c = row[i];
        if (out.empty()) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        if (c != 1) out += to_string(c) + "*";
        out += names[i];
    }
    return out.empty() ? "0" : out;
}

QVector mat_vec(const QMatrix& m, const QVector& v) {
    QVector out(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// invertible substitution on one projective block
class LinearBlockStep final : public ReductionStep {
  public:
    LinearBlockStep(SpacePtr sp, QMatrix m) : sp_(std::move(sp)), m_(std::move(m)) {
        auto inv = matrix_inverse(m_);
        if (!inv) throw Error("InvalidInput", "coordinate change must be invertible");
        minv_ = std::move(*inv);
    }

    std::string name() const override { return "linear-change"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& bp = expect<BlockPoint>(p, "linear-change", "projective point");
        return canonical_point(sp_, BlockPoint{{mat_vec(minv_, canonical_point(sp_, bp).coords[0])}});
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& bp = expect<BlockPoint>(p, "linear-change", "projective point");
        return canonical_point(sp_, BlockPoint{{mat_vec(m_, canonical_point(sp_, bp).coords[0])}});
    }

    std::vector<std::string> forward_desc() const override { return desc(minv_); }
    std::vector<std::string> backward_desc() const override { return desc(m_); }

  private:
    std::vector<std::string> desc(const QMatrix& m) const {
        std::vector<std::string> names;
        for (int i = 0; i < sp_->nvars(); ++i) names.push_back(sp_->var_name(i));
        std::vector<std::string> out;
        for (size_t i = 0; i < m.size(); ++i) out.push_back(names[i] + " -> " + lin_str(m[i], names));
        return out;
    }

    SpacePtr sp_;
    QMatrix m_, minv_;
};

// projection of a plane cubic C3 + Q Z + L Z^2 = 0 away from (0:0:1), onto
// the double cover w^2 = Q^2 - 4 L C3 of the (X:Y) line
class CubicCoverStep final : public ReductionStep {
  public:
    CubicCoverStep(SpacePtr sp, BinaryForm L, BinaryForm Q, BinaryForm C3, P1Point tstar)
        : sp_(std::move(sp)), L_(std::move(L)), Q_(std::move(Q)), C3_(std::move(C3)), tstar_(tstar) {}

    std::string name() const override { return "project-from-marked"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& bp = expect<BlockPoint>(p, "project-from-marked", "projective point");
        BlockPoint cp = canonical_point(sp_, bp);
        const QVector& c = cp.coords[0];
        if (c[0] == 0 && c[1] == 0) return CoverPoint{tstar_, -Q_.eval(tstar_.u, tstar_.v)};
        P1Point t(c[0], c[1]);
        Rational lam = c[0] != 0 ? t.u / c[0] : t.v / c[1];
        Rational w = 2 * L_.eval(t.u, t.v) * (lam * c[2]) + Q_.eval(t.u, t.v);
        return CoverPoint{t, w};
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& cv = expect<CoverPoint>(p, "project-from-marked", "cover point");
        Rational Lv = L_.eval(cv.t.u, cv.t.v), Qv = Q_.eval(cv.t.u, cv.t.v);
        if (Lv != 0) {
            Rational z = (cv.w - Qv) / (2 * Lv);
            return canonical_point(sp_, BlockPoint{{{cv.t.u, cv.t.v, z}}});
        }
        if (cv.w == -Qv) {
            // Qv == 0 puts t under the branch locus; the fiber line meets the
            // cubic only at the marked point unless C3 vanishes there too
            if (Qv == 0 && C3_.eval(cv.t.u, cv.t.v) == 0)
                throw Error("IndeterminatePoint", "degenerate fiber over " + cv.t.str());
            return BlockPoint{{{Rational(0), Rational(0), Rational(1)}}};
        }
        if (cv.w == Qv)
            return canonical_point(sp_, BlockPoint{{{cv.t.u, cv.t.v, -C3_.eval(cv.t.u, cv.t.v) / Qv}}});
        throw Error("NotOnCurve", cv.str() + " is not on the cover");
    }

    std::vector<std::string> forward_desc() const override {
        std::string x = sp_->var_name(0), y = sp_->var_name(1), z = sp_->var_name(2);
        return {"(S:T) = (" + x + ":" + y + ")",
                "w = 2*(" + L_.str(x, y) + ")*" + z + " + (" + Q_.str(x, y) + ")"};
    }

    std::vector<std::string> backward_desc() const override {
        std::string x = sp_->var_name(0), y = sp_->var_name(1), z = sp_->var_name(2);
        return {x + " = S", y + " = T", z + " = (w - (" + Q_.str("S", "T") + "))/(2*(" + L_.str("S", "T") + "))"};
    }

    std::vector<std::string> denominators() const override { return {L_.str("S", "T")}; }

  private:
    SpacePtr sp_;
    BinaryForm L_, Q_, C3_;
    P1Point tstar_;
};

// elimination of the second line factor of a (2,2) curve A v0^2 + B v0 v1
// + C v1^2 = 0, onto the double cover w^2 = B^2 - 4 A C of the first factor
class BiquadraticCoverStep final : public ReductionStep {
  public:
    BiquadraticCoverStep(SpacePtr sp, BinaryForm A, BinaryForm B, BinaryForm C)
        : sp_(std::move(sp)), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {}

    std::string name() const override { return "eliminate-second-line"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& bp = expect<BlockPoint>(p, "eliminate-second-line", "projective point");
        BlockPoint cp = canonical_point(sp_, bp);
        P1Point t(cp.coords[0][0], cp.coords[0][1]);
        Rational Av = A_.eval(t.u, t.v), Bv = B_.eval(t.u, t.v);
        Rational w = cp.coords[1][1] != 0 ? Rational(2 * Av * (cp.coords[1][0] / cp.coords[1][1]) + Bv)
                                          : Rational(-Bv);
        return CoverPoint{t, w};
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& cv = expect<CoverPoint>(p, "eliminate-second-line", "cover point");
        Rational Av = A_.eval(cv.t.u, cv.t.v), Bv = B_.eval(cv.t.u, cv.t.v);
        if (Av != 0) {
            Rational v = (cv.w - Bv) / (2 * Av);
            return canonical_point(sp_, BlockPoint{{{cv.t.u, cv.t.v}, {v, Rational(1)}}});
        }
        if (cv.w == -Bv) {
            if (Bv == 0 && C_.eval(cv.t.u, cv.t.v) == 0)
                throw Error("IndeterminatePoint", "degenerate fiber over " + cv.t.str());
            return canonical_point(sp_, BlockPoint{{{cv.t.u, cv.t.v}, {Rational(1), Rational(0)}}});
        }
        if (cv.w == Bv)
            return canonical_point(sp_, BlockPoint{{{cv.t.u, cv.t.v}, {-C_.eval(cv.t.u, cv.t.v), Bv}}});
        throw Error("NotOnCurve", cv.str() + " is not on the cover");
    }

    std::vector<std::string> forward_desc() const override {
        std::string s = sp_->var_name(0), t = sp_->var_name(1);
        std::string u = sp_->var_name(2), v = sp_->var_name(3);
        return {"(S:T) = (" + s + ":" + t + ")",
                "w = 2*(" + A_.str(s, t) + ")*" + u + "/" + v + " + (" + B_.str(s, t) + ")"};
    }

    std::vector<std::string> backward_desc() const override {
        std::string u = sp_->var_name(2), v = sp_->var_name(3);
        return {u + "/" + v + " = (w - (" + B_.str("S", "T") + "))/(2*(" + A_.str("S", "T") + "))"};
    }

    std::vector<std::string> denominators() const override { return {A_.str("S", "T")}; }

  private:
    SpacePtr sp_;
    BinaryForm A_, B_, C_;
};

// projection of an intersection of quadrics alpha_i w + beta_i = 0 away
// from (0:0:0:1), onto the plane cubic alpha1 beta2 - alpha2 beta1 = 0
class QuadricProjectStep final : public ReductionStep {
  public:
    QuadricProjectStep(SpacePtr sp3, SpacePtr sp2, QVector a1, QVector a2, MultiForm b1, MultiForm b2,
                       BlockPoint oprime)
        : sp3_(std::move(sp3)),
          sp2_(std::move(sp2)),
          a1_(std::move(a1)),
          a2_(std::move(a2)),
          b1_(std::move(b1)),
          b2_(std::move(b2)),
          oprime_(std::move(oprime)) {}

    std::string name() const override { return "project-to-plane"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& bp = expect<BlockPoint>(p, "project-to-plane", "projective point");
        BlockPoint cp = canonical_point(sp3_, bp);
        const QVector& c = cp.coords[0];
        if (c[0] == 0 && c[1] == 0 && c[2] == 0) return oprime_;
        return canonical_point(sp2_, BlockPoint{{{c[0], c[1], c[2]}}});
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& bp = expect<BlockPoint>(p, "project-to-plane", "projective point");
        BlockPoint cp = canonical_point(sp2_, bp);
        if (same_point(sp2_, cp, oprime_))
            return BlockPoint{{{Rational(0), Rational(0), Rational(0), Rational(1)}}};
        const QVector& c = cp.coords[0];
        Rational av = a1_[0] * c[0] + a1_[1] * c[1] + a1_[2] * c[2];
        Rational w;
        if (av != 0) {
            w = -b1_.eval(c) / av;
        } else {
            Rational av2 = a2_[0] * c[0] + a2_[1] * c[1] + a2_[2] * c[2];
            if (av2 == 0) throw Error("IndeterminatePoint", "both linear forms vanish off the image point");
            w = -b2_.eval(c) / av2;
        }
        return canonical_point(sp3_, BlockPoint{{{c[0], c[1], c[2], w}}});
    }

    std::vector<std::string> forward_desc() const override {
        std::string x = sp3_->var_name(0), y = sp3_->var_name(1), z = sp3_->var_name(2);
        return {"(" + sp2_->var_name(0) + ":" + sp2_->var_name(1) + ":" + sp2_->var_name(2) + ") = (" + x +
                ":" + y + ":" + z + ")"};
    }

    std::vector<std::string> backward_desc() const override {
        std::vector<std::string> names;
        for (int i = 0; i < 3; ++i) names.push_back(sp2_->var_name(i));
        return {sp3_->var_name(3) + " = -(" + b1_.str() + ")/(" + lin_str(a1_, names) + ")"};
    }

    std::vector<std::string> denominators() const override {
        std::vector<std::string> names;
        for (int i = 0; i < 3; ++i) names.push_back(sp2_->var_name(i));
        return {lin_str(a1_, names), lin_str(a2_, names)};
    }

  private:
    SpacePtr sp3_, sp2_;
    QVector a1_, a2_;
    MultiForm b1_, b2_;
    BlockPoint oprime_;
};

// substitution g'(S,T) = g(a S + b T, c S + d T) on the cover base, with the
// weight-2 fiber coordinate carried along representatives
class MoebiusCoverStep final : public ReductionStep {
  public:
    MoebiusCoverStep(Rational a, Rational b, Rational c, Rational d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (a_ * d_ - b_ * c_ == 0) throw Error("InvalidInput", "substitution must be invertible");
    }

    std::string name() const override { return "base-substitution"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& cv = expect<CoverPoint>(p, "base-substitution", "cover point");
        P1Point th(d_ * cv.t.u - b_ * cv.t.v, -c_ * cv.t.u + a_ * cv.t.v);
        Rational ou = a_ * th.u + b_ * th.v, ov = c_ * th.u + d_ * th.v;
        Rational mu = cv.t.u != 0 ? ou / cv.t.u : ov / cv.t.v;
        return CoverPoint{th, mu * mu * cv.w};
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& cv = expect<CoverPoint>(p, "base-substitution", "cover point");
        Rational ru = a_ * cv.t.u + b_ * cv.t.v, rv = c_ * cv.t.u + d_ * cv.t.v;
        P1Point t(ru, rv);
        Rational mu = t.u != 0 ? ru / t.u : rv / t.v;
        return CoverPoint{t, cv.w / (mu * mu)};
    }

    std::vector<std::string> forward_desc() const override {
        return {"(S:T) -> (" + lin_str({d_, -b_}, {"S", "T"}) + " : " + lin_str({-c_, a_}, {"S", "T"}) + ")",
                "w scales with the square of the representative change"};
    }

    std::vector<std::string> backward_desc() const override {
        return {"(S:T) -> (" + lin_str({a_, b_}, {"S", "T"}) + " : " + lin_str({c_, d_}, {"S", "T"}) + ")",
                "w scales with the square of the representative change"};
    }

  private:
    Rational a_, b_, c_, d_;
};

// chart u = T/S, w0 = w/S^2 of the cover, taken to a long Weierstrass
// curve; the marked point sits over (0:1) and goes to Infinity
class CoverWeierstrassStep final : public ReductionStep {
  public:
    // w0^2 = e^2 u^4 + 2 e gamma u^2 + delta u + (eps + gamma^2)
    CoverWeierstrassStep(Rational e, Rational gamma, Rational delta, Rational eps)
        : square_lead_(true),
          e_(std::move(e)),
          gamma_(std::move(gamma)),
          delta_(std::move(delta)),
          eps_(std::move(eps)) {}

    // w0^2 = a3 u^3 + a2 u^2 + a1 u + a0, marked over the branch point (0:1)
    explicit CoverWeierstrassStep(Rational a3) : square_lead_(false), a3_(std::move(a3)) {}

    std::string name() const override { return "cover-to-weierstrass"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& cv = expect<CoverPoint>(p, "cover-to-weierstrass", "cover point");
        if (square_lead_) {
            if (cv.t.u == 0) {
                if (cv.w == e_) return ECPoint::infinity();
                if (cv.w == -e_) return ECPoint::affine(Rational(0), -e_ * delta_);
                throw Error("NotOnCurve", cv.str() + " is not on the cover");
            }
            Rational u = cv.t.v / cv.t.u, w0 = cv.w / (cv.t.u * cv.t.u);
            Rational x = 2 * e_ * w0 + 2 * e_ * e_ * u * u + 2 * e_ * gamma_;
            Rational y = 2 * e_ * u * x + e_ * delta_;
            return ECPoint::affine(x, y);
        }
        if (cv.t.u == 0) {
            if (cv.w == 0) return ECPoint::infinity();
            throw Error("NotOnCurve", cv.str() + " is not on the cover");
        }
        Rational u = cv.t.v / cv.t.u, w0 = cv.w / (cv.t.u * cv.t.u);
        return ECPoint::affine(a3_ * u, a3_ * w0);
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& pt = expect<ECPoint>(p, "cover-to-weierstrass", "curve point");
        if (square_lead_) {
            if (pt.inf) return CoverPoint{P1Point(Rational(0), Rational(1)), e_};
            if (pt.x == 0) {
                if (pt.y == -e_ * delta_) return CoverPoint{P1Point(Rational(0), Rational(1)), -e_};
                if (delta_ != 0 && pt.y == e_ * delta_) return lift(-eps_ / delta_);
                throw Error("NotOnCurve", pt.str() + " is not on the curve");
            }
            Rational u = (pt.y - e_ * delta_) / (2 * e_ * pt.x);
            Rational w0 = pt.x / (2 * e_) - e_ * u * u - gamma_;
            P1Point t(Rational(1), u);
            return CoverPoint{t, t.u * t.u * w0};
        }
        if (pt.inf) return CoverPoint{P1Point(Rational(0), Rational(1)), Rational(0)};
        Rational u = pt.x / a3_, w0 = pt.y / a3_;
        P1Point t(Rational(1), u);
        return CoverPoint{t, t.u * t.u * w0};
    }

    std::vector<std::string> forward_desc() const override {
        if (square_lead_)
            return {"u = T/S, w0 = w/S^2", "x = 2*e*w0 + 2*e^2*u^2 + 2*e*gamma", "y = 2*e*u*x + e*delta",
                    "e = " + to_string(e_) + ", gamma = " + to_string(gamma_) + ", delta = " + to_string(delta_) +
                        ", eps = " + to_string(eps_)};
        return {"u = T/S, w0 = w/S^2", "x = " + to_string(a3_) + "*u", "y = " + to_string(a3_) + "*w0"};
    }

    std::vector<std::string> backward_desc() const override {
        if (square_lead_) return {"u = (y - e*delta)/(2*e*x)", "w0 = x/(2*e) - e*u^2 - gamma"};
        return {"u = x/(" + to_string(a3_) + ")", "w0 = y/(" + to_string(a3_) + ")"};
    }

    std::vector<std::string> denominators() const override {
        if (square_lead_) return {"S", "x"};
        return {"S"};
    }

  private:
    // cover point in the affine chart, re-attached to the canonical rep
    CoverPoint lift(const Rational& u) const {
        Rational w0 = -(e_ * u * u + gamma_);
        P1Point t(Rational(1), u);
        return CoverPoint{t, t.u * t.u * w0};
    }

    bool square_lead_;
    Rational e_, gamma_, delta_, eps_;
    Rational a3_;
};

// x translation removing the square term of a long Weierstrass curve
class ShiftXStep final : public ReductionStep {
  public:
    explicit ShiftXStep(Rational s) : s_(std::move(s)) {}

    std::string name() const override { return "complete-the-cube"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& pt = expect<ECPoint>(p, "complete-the-cube", "curve point");
        if (pt.inf) return pt;
        return ECPoint::affine(pt.x + s_, pt.y);
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& pt = expect<ECPoint>(p, "complete-the-cube", "curve point");
        if (pt.inf) return pt;
        return ECPoint::affine(pt.x - s_, pt.y);
    }

    std::vector<std::string> forward_desc() const override { return {"x -> x + " + to_string(s_), "y -> y"}; }
    std::vector<std::string> backward_desc() const override { return {"x -> x - " + to_string(s_), "y -> y"}; }

  private:
    Rational s_;
};

// quadratic twist rescaling (x,y) -> (l^2 x, l^3 y)
class TwistScaleStep final : public ReductionStep {
  public:
    explicit TwistScaleStep(Rational l) : l_(std::move(l)) {}

    std::string name() const override { return "twist-rescale"; }

    MapPoint forward(const MapPoint& p) const override {
        const auto& pt = expect<ECPoint>(p, "twist-rescale", "curve point");
        if (pt.inf) return pt;
        return ECPoint::affine(l_ * l_ * pt.x, l_ * l_ * l_ * pt.y);
    }

    MapPoint backward(const MapPoint& p) const override {
        const auto& pt = expect<ECPoint>(p, "twist-rescale", "curve point");
        if (pt.inf) return pt;
        return ECPoint::affine(pt.x / (l_ * l_), pt.y / (l_ * l_ * l_));
    }

    std::vector<std::string> forward_desc() const override {
        return {"x -> (" + to_string(l_) + ")^2 * x", "y -> (" + to_string(l_) + ")^3 * y"};
    }

    std::vector<std::string> backward_desc() const override {
        return {"x -> x / (" + to_string(l_) + ")^2", "y -> y / (" + to_string(l_) + ")^3"};
    }

  private:
    Rational l_;
};

// --- path builders ----------------------------------------------------------

BinaryForm coeff_binary(const MultiForm& f, int v0, int v1, int d) {
    if (f.is_zero()) return BinaryForm(d, std::vector<Rational>(static_cast<size_t>(d) + 1, Rational(0)));
    BinaryForm b = binary_in_vars(f, v0, v1);
    if (b.degree() != d) throw Error("InvalidInput", "coefficient form has unexpected degree");
    return b;
}

// marked point to the last coordinate spot, unit columns elsewhere
QMatrix move_marked_matrix(const QVector& m) {
    size_t n = m.size(), k = 0;
    while (m[k] == 0) ++k;
    QMatrix M(n, QVector(n, Rational(0)));
    size_t col = 0;
    for (size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        M[j][col++] = 1;
    }
    for (size_t j = 0; j < n; ++j) M[j][n - 1] = m[j];
    return M;
}

void cubic_to_cover(const MultiForm& cubic, const BlockPoint& marked, BirationalRecord& rec, BinaryForm& g,
                    CoverPoint& mc) {
    SpacePtr sp = cubic.space();
    if (!sp || sp->nvars() != 3 || cubic.is_zero() || cubic.multidegree() != std::vector<int>{3})
        throw Error("InvalidInput", "expected a nonzero ternary cubic");
    if (cubic.eval_point(marked) != 0) throw Error("NotOnCurve", "marked point is not on the cubic");
    BlockPoint m = canonical_point(sp, marked);
    QMatrix M = move_marked_matrix(m.coords[0]);
    MultiForm moved = cubic.apply_linear(0, M);
    rec.steps.push_back(std::make_shared<LinearBlockStep>(sp, M));
    auto co = moved.coeffs_in_var(2);
    while (co.size() < 4) co.push_back(MultiForm::zero(sp));
    BinaryForm L = coeff_binary(co[2], 0, 1, 1);
    if (L.is_zero()) throw Error("SingularPoint", "marked point is a singular point of the cubic");
    BinaryForm Q = coeff_binary(co[1], 0, 1, 2);
    BinaryForm C3 = coeff_binary(co[0], 0, 1, 3);
    g = Q * Q - (L * C3).scale(Rational(4));
    P1Point tstar(-L.coeff(1), L.coeff(0));
    mc = CoverPoint{tstar, -Q.eval(tstar.u, tstar.v)};
    rec.steps.push_back(std::make_shared<CubicCoverStep>(sp, L, Q, C3, tstar));
}

void biquadratic_to_cover(const MultiForm& form, const BlockPoint& marked, BirationalRecord& rec, BinaryForm& g,
                          CoverPoint& mc) {
    SpacePtr sp = form.space();
    if (!sp || sp->rank() != 2 || sp->nvars() != 4 || form.is_zero() ||
        form.multidegree() != std::vector<int>{2, 2})
        throw Error("InvalidInput", "expected a nonzero form of bidegree (2,2)");
    if (form.eval_point(marked) != 0) throw Error("NotOnCurve", "marked point is not on the curve");
    auto abc = form.coeffs_in_block(1);
    BinaryForm A = coeff_binary(abc[0], 0, 1, 2);
    BinaryForm B = coeff_binary(abc[1], 0, 1, 2);
    BinaryForm C = coeff_binary(abc[2], 0, 1, 2);
    g = B * B - (A * C).scale(Rational(4));
    BlockPoint m = canonical_point(sp, marked);
    P1Point t(m.coords[0][0], m.coords[0][1]);
    Rational Av = A.eval(t.u, t.v), Bv = B.eval(t.u, t.v);
    Rational w =
        m.coords[1][1] != 0 ? Rational(2 * Av * (m.coords[1][0] / m.coords[1][1]) + Bv) : Rational(-Bv);
    mc = CoverPoint{t, w};
    rec.steps.push_back(std::make_shared<BiquadraticCoverStep>(sp, A, B, C));
}

// strips the trailing zero exponent for forms not involving the last var
MultiForm to_plane(const MultiForm& f, const SpacePtr& sp2) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        if (t.exp[3] != 0) throw Error("InvalidInput", "form still involves the eliminated variable");
        terms.push_back(Term{{t.exp[0], t.exp[1], t.exp[2]}, t.coeff});
    }
    return MultiForm::from_terms(sp2, std::move(terms));
}

void quadric_to_cubic(const QuadricIntersectionModel& QM, BirationalRecord& rec, MultiForm& cubic,
                      BlockPoint& cubic_marked) {
    SpacePtr sp = QM.q1.space();
    if (!sp || sp->nvars() != 4 || sp->rank() != 1)
        throw Error("InvalidInput", "quadric intersections live in projective 3-space");
    for (const MultiForm* q : {&QM.q1, &QM.q2}) {
        if (q->is_zero() || q->multidegree() != std::vector<int>{2})
            throw Error("InvalidInput", "expected two nonzero quadrics");
        if (q->eval_point(QM.marked) != 0) throw Error("NotOnCurve", "marked point is not on both quadrics");
    }
    BlockPoint m = canonical_point(sp, QM.marked);
    QMatrix M = move_marked_matrix(m.coords[0]);
    MultiForm q1 = QM.q1.apply_linear(0, M), q2 = QM.q2.apply_linear(0, M);
    rec.steps.push_back(std::make_shared<LinearBlockStep>(sp, M));
    auto split = [&](const MultiForm& q, MultiForm& alpha, MultiForm& beta) {
        auto co = q.coeffs_in_var(3);
        while (co.size() < 3) co.push_back(MultiForm::zero(sp));
        beta = co[0];
        alpha = co[1];
    };
    MultiForm alpha1, beta1, alpha2, beta2;
    split(q1, alpha1, beta1);
    split(q2, alpha2, beta2);
    auto coeffs_of = [&](const MultiForm& lin) {
        QVector a(3);
        for (size_t j = 0; j < 3; ++j) {
            QVector e(4, Rational(0));
            e[j] = 1;
            a[j] = lin.eval(e);
        }
        return a;
    };
    QVector a1 = coeffs_of(alpha1), a2 = coeffs_of(alpha2);
    QVector cross{a1[1] * a2[2] - a1[2] * a2[1], a1[2] * a2[0] - a1[0] * a2[2], a1[0] * a2[1] - a1[1] * a2[0]};
    if (cross[0] == 0 && cross[1] == 0 && cross[2] == 0)
        throw Error("SingularPoint", "the intersection is singular at the marked point");
    MultiForm g3 = alpha1 * beta2 - alpha2 * beta1;
    if (g3.is_zero()) throw Error("SingularModel", "the quadrics do not cut out an irreducible curve");
    SpacePtr sp2 = GradedSpace::p2();
    cubic = to_plane(g3, sp2);
    cubic_marked = canonical_point(sp2, BlockPoint{{cross}});
    rec.steps.push_back(
        std::make_shared<QuadricProjectStep>(sp, sp2, a1, a2, to_plane(beta1, sp2), to_plane(beta2, sp2),
                                             cubic_marked));
}

}  // namespace

WeierstrassCurve quartic_to_weierstrass(const BinaryForm& g, const CoverPoint& marked, BirationalRecord& rec) {
    if (g.degree() != 4) throw Error("InvalidInput", "cover form must have degree 4");
    if (marked.w * marked.w != g.eval(marked.t.u, marked.t.v))
        throw Error("NotOnCurve", "marked point is not on the double cover");
    if (!binary_squarefree(g)) throw Error("SingularModel", "branch form has a repeated root");
    Rational b = marked.t.u, d = marked.t.v;
    Rational a = d != 0 ? 1 : 0, c = d != 0 ? 0 : 1;
    auto mob = std::make_shared<MoebiusCoverStep>(a, b, c, d);
    BinaryForm g1 = g.mobius(a, b, c, d);
    CoverPoint m1 = std::get<CoverPoint>(mob->forward(MapPoint{marked}));
    rec.steps.push_back(mob);
    Rational e = m1.w;
    Rational c2, c1, c0;
    if (e != 0) {
        Rational shift = -g1.coeff(3) / (4 * g1.coeff(4));
        if (shift != 0) {
            auto mob2 = std::make_shared<MoebiusCoverStep>(Rational(1), Rational(0), shift, Rational(1));
            g1 = g1.mobius(Rational(1), Rational(0), shift, Rational(1));
            m1 = std::get<CoverPoint>(mob2->forward(MapPoint{m1}));
            rec.steps.push_back(mob2);
        }
        Rational gamma = g1.coeff(2) / (2 * e), delta = g1.coeff(1), eps = g1.coeff(0) - gamma * gamma;
        rec.steps.push_back(std::make_shared<CoverWeierstrassStep>(e, gamma, delta, eps));
        c2 = -4 * e * gamma;
        c1 = -4 * e * e * eps;
        c0 = e * e * delta * delta;
    } else {
        Rational a3 = g1.coeff(3);
        if (a3 == 0) throw Error("SingularModel", "branch form has a repeated root at the marked point");
        rec.steps.push_back(std::make_shared<CoverWeierstrassStep>(a3));
        c2 = g1.coeff(2);
        c1 = g1.coeff(1) * a3;
        c0 = g1.coeff(0) * a3 * a3;
    }
    if (c2 != 0) rec.steps.push_back(std::make_shared<ShiftXStep>(c2 / 3));
    Rational A = c1 - c2 * c2 / 3;
    Rational B = c0 - c1 * c2 / 3 + 2 * c2 * c2 * c2 / 27;
    Rational lam = minimal_twist_scale(A, B);
    if (lam != 1) {
        rec.steps.push_back(std::make_shared<TwistScaleStep>(lam));
        Rational l2 = lam * lam;
        A *= l2 * l2;
        B *= l2 * l2 * l2;
    }
    return WeierstrassCurve{A, B};
}

std::pair<WeierstrassCurve, BirationalRecord> model_to_weierstrass(const GenusOneModel& M) {
    BirationalRecord rec;
    BinaryForm g;
    CoverPoint mc;
    if (const auto* C = std::get_if<PlaneCubicModel>(&M)) {
        cubic_to_cover(C->cubic, C->marked, rec, g, mc);
    } else if (const auto* B = std::get_if<BiquadraticModel>(&M)) {
        biquadratic_to_cover(B->form, B->marked, rec, g, mc);
    } else {
        const auto& QM = std::get<QuadricIntersectionModel>(M);
        MultiForm cubic;
        BlockPoint cubic_marked;
        quadric_to_cubic(QM, rec, cubic, cubic_marked);
        cubic_to_cover(cubic, cubic_marked, rec, g, mc);
    }
    WeierstrassCurve W = quartic_to_weierstrass(g, mc, rec);
    return {W, rec};
}

}  // namespace cyq
