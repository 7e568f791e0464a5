#include "cyq/genus1.hpp"

namespace cyq {

Rational WeierstrassCurve::lutz_quantity() const { return 4 * A * A * A + 27 * B * B; }

std::string ECPoint::str() const {
    if (inf) return "Infinity";
    return "(" + to_string(x) + ", " + to_string(y) + ")";
}

bool on_curve(const WeierstrassCurve& E, const ECPoint& P) {
    if (P.inf) return true;
    return P.y * P.y == P.x * P.x * P.x + E.A * P.x + E.B;
}

namespace {

void require_on(const WeierstrassCurve& E, const ECPoint& P) {
    if (E.is_singular()) throw Error("InvalidModel", "curve is singular (4A^3+27B^2 = 0)");
    if (!on_curve(E, P)) throw Error("NotOnCurve", P.str() + " does not satisfy the curve equation");
}

}  // namespace

ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& P) {
    require_on(E, P);
    if (P.inf) return P;
    return ECPoint::affine(P.x, -P.y);
}

ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q) {
    require_on(E, P);
    require_on(E, Q);
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x && P.y == -Q.y) return ECPoint::infinity();
    Rational lambda;
    if (P.x == Q.x)  // doubling; y != 0 here, the opposite-point case is gone
        lambda = (3 * P.x * P.x + E.A) / (2 * P.y);
    else
        lambda = (Q.y - P.y) / (Q.x - P.x);
    Rational x3 = lambda * lambda - P.x - Q.x;
    Rational y3 = lambda * (P.x - x3) - P.y;
    return ECPoint::affine(x3, y3);
}

ECPoint ec_mul(const WeierstrassCurve& E, const Integer& n, const ECPoint& P) {
    require_on(E, P);
    Integer m = n;
    ECPoint base = P;
    if (m < 0) {
        m = -m;
        base = ec_neg(E, P);
    }
    ECPoint acc = ECPoint::infinity();
    while (m > 0) {
        if ((m & 1) != 0) acc = ec_add(E, acc, base);
        base = ec_add(E, base, base);
        m >>= 1;
    }
    return acc;
}

OneSided lutz_nagell_test(const WeierstrassCurve& E, const ECPoint& P) {
    if (!is_integer(E.A) || !is_integer(E.B))
        throw Error("InvalidModel", "integral coefficients required for the divisibility test");
    require_on(E, P);
    if (P.inf) return OneSided::CannotConclude;
    if (!is_integer(P.x) || !is_integer(P.y)) return OneSided::NonTorsion;
    if (P.y == 0) return OneSided::CannotConclude;
    Integer q = num(E.lutz_quantity());
    Integer y2 = num(P.y) * num(P.y);
    if (q % y2 != 0) return OneSided::NonTorsion;
    return OneSided::CannotConclude;
}

MazurResult mazur_test(const WeierstrassCurve& E, const ECPoint& P) {
    require_on(E, P);
    if (P.inf) return {true, 1};
    ECPoint acc = P;
    for (int k = 2; k <= 12; ++k) {
        acc = ec_add(E, acc, P);
        if (acc.inf) return {true, k};
    }
    return {false, 0};  // rational torsion has order at most 12
}

// --- chord-tangent addition on a plane cubic -------------------------------

namespace {

std::vector<Rational> combine(const std::vector<Rational>& p, const Rational& s0, const std::vector<Rational>& q,
                              const Rational& s1) {
    std::vector<Rational> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[i] = s0 * p[i] + s1 * q[i];
    return out;
}

Rational eval_triple(const MultiForm& f, const std::vector<Rational>& v) { return f.eval(v); }

// third intersection of the line through two distinct on-curve points;
// the restriction of the cubic to the line is s0 s1 (c1 s0 + c2 s1)
std::vector<Rational> third_on_chord(const MultiForm& f, const std::vector<Rational>& p,
                                     const std::vector<Rational>& q) {
    Rational f11 = eval_triple(f, combine(p, Rational(1), q, Rational(1)));
    Rational f1m1 = eval_triple(f, combine(p, Rational(1), q, Rational(-1)));
    Rational c1 = (f11 - f1m1) / 2;
    Rational c2 = (f11 + f1m1) / 2;
    if (c1 == 0 && c2 == 0) throw Error("DegenerateCubic", "the chord lies inside the cubic");
    return combine(p, -c2, q, c1);
}

// third intersection of the tangent line at an on-curve point
std::vector<Rational> third_on_tangent(const MultiForm& f, const SpacePtr& sp, const std::vector<Rational>& p) {
    std::vector<Rational> grad(3);
    for (int v = 0; v < 3; ++v) grad[static_cast<size_t>(v)] = f.derivative(v).eval(p);
    size_t k = 0;
    while (k < 3 && grad[k] == 0) ++k;
    if (k == 3) throw Error("SingularPoint", "cubic is singular at " + point_str(sp, BlockPoint{{p}}));
    // two spanning solutions of grad . v = 0; p itself is one by Euler
    std::vector<std::vector<Rational>> basis;
    for (size_t i = 0; i < 3; ++i) {
        if (i == k) continue;
        std::vector<Rational> v(3, Rational(0));
        v[i] = Rational(1);
        v[k] = -grad[i] / grad[k];
        basis.push_back(std::move(v));
    }
    // pick the basis vector that is not proportional to p
    auto proportional = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = i + 1; j < 3; ++j)
                if (a[i] * b[j] != a[j] * b[i]) return false;
        return true;
    };
    const std::vector<Rational>& aux = proportional(basis[0], p) ? basis[1] : basis[0];
    Rational beta = eval_triple(f, aux);  // cubic restricted to the tangent is s1^2 (c2 s0 + beta s1)
    Rational f11 = eval_triple(f, combine(p, Rational(1), aux, Rational(1)));
    Rational c2 = f11 - beta;
    if (c2 == 0 && beta == 0) throw Error("DegenerateCubic", "the tangent line lies inside the cubic");
    return combine(p, -beta, aux, c2);
}

std::vector<Rational> third_point(const MultiForm& f, const SpacePtr& sp, const std::vector<Rational>& p,
                                  const std::vector<Rational>& q) {
    BlockPoint bp{{p}}, bq{{q}};
    if (same_point(sp, bp, bq)) return third_on_tangent(f, sp, canonical_point(sp, bp).coords[0]);
    return third_on_chord(f, p, q);
}

}  // namespace

BlockPoint cubic_group_add(const PlaneCubicModel& C, const BlockPoint& P, const BlockPoint& Q) {
    const SpacePtr& sp = C.cubic.space();
    if (sp->nvars() != 3 || C.cubic.is_zero() || C.cubic.multidegree() != std::vector<int>{3})
        throw Error("InvalidInput", "group law needs a nonzero ternary cubic");
    for (const BlockPoint* pt : {&C.marked, &P, &Q})
        if (C.cubic.eval_point(*pt) != 0)
            throw Error("NotOnCurve", point_str(sp, *pt) + " is not on the cubic");
    std::vector<Rational> p = canonical_point(sp, P).coords[0];
    std::vector<Rational> q = canonical_point(sp, Q).coords[0];
    std::vector<Rational> o = canonical_point(sp, C.marked).coords[0];
    std::vector<Rational> r = third_point(C.cubic, sp, p, q);
    std::vector<Rational> sum = third_point(C.cubic, sp, o, canonical_point(sp, BlockPoint{{r}}).coords[0]);
    return canonical_point(sp, BlockPoint{{sum}});
}

// --- Vieta involutions on a biquadratic model ------------------------------

BlockPoint vieta_involution(const BiquadraticModel& M, const BlockPoint& p, int axis) {
    if (axis != 1 && axis != 2) throw Error("InvalidInput", "axis must be 1 or 2");
    const SpacePtr& sp = M.form.space();
    if (sp->rank() != 2 || sp->nvars() != 4)
        throw Error("InvalidInput", "involutions need a product of two projective lines");
    BlockPoint cp = canonical_point(sp, p);
    if (M.form.eval_point(cp) != 0)
        throw Error("NotOnCurve", point_str(sp, cp) + " is not on the curve");
    int replace = axis - 1;   // block whose coordinate moves
    int fixed = 1 - replace;  // block held still
    std::vector<MultiForm> co = M.form.coeffs_in_block(replace);
    if (co.size() != 3) throw Error("InvalidInput", "form is not quadratic in the chosen axis");
    auto [fb, fe] = sp->block_range(fixed);
    std::vector<Rational> flat(static_cast<size_t>(sp->nvars()), Rational(0));
    for (int i = fb; i < fe; ++i)
        flat[static_cast<size_t>(i)] = cp.coords[static_cast<size_t>(fixed)][static_cast<size_t>(i - fb)];
    std::vector<Rational> vals(3);
    for (size_t i = 0; i < 3; ++i) vals[i] = co[i].eval(flat);
    // restricted fiber quadratic a u^2 + b u v + c v^2 in the moving block
    const Rational &a = vals[0], &b = vals[1], &c = vals[2];
    if (a == 0 && b == 0 && c == 0)
        throw Error("DegenerateFiber", "curve contains the ruling line through " + point_str(sp, cp));
    const auto& blk = cp.coords[static_cast<size_t>(replace)];
    P1Point other = vieta_other_root(a, b, c, P1Point(blk[0], blk[1]));
    BlockPoint out = cp;
    out.coords[static_cast<size_t>(replace)] = {other.u, other.v};
    return canonical_point(sp, out);
}

BlockPoint qrt_step(const BiquadraticModel& M, const BlockPoint& p) {
    return vieta_involution(M, vieta_involution(M, p, 1), 2);
}

}  // namespace cyq
