#include "cyq/fibration.hpp"

#include <algorithm>
#include <utility>

#include "cyq/prng.hpp"

namespace cyq {

namespace {

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

Rational rational_pow(const Rational& x, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r = Rational(r * x);
    return r;
}

void check_point_shape(const GradedSpace& sp, const BlockPoint& p) {
    if (static_cast<int>(p.coords.size()) != sp.rank())
        throw Error("InvalidInput", "point has the wrong number of blocks");
    for (int b = 0; b < sp.rank(); ++b) {
        auto [lo, hi] = sp.block_range(b);
        if (static_cast<int>(p.coords[b].size()) != hi - lo)
            throw Error("InvalidInput", "point block has the wrong length");
        bool allzero = true;
        for (const Rational& c : p.coords[b])
            if (c != 0) allzero = false;
        if (allzero) throw Error("InvalidInput", "point block is identically zero");
    }
}

// Checks b block by block against the base blocks of s, requires it to lie
// on every base-only defining form, and returns its coordinates.
std::vector<std::vector<Rational>> check_base_point(const FiberedSpace& s, const BlockPoint& b) {
    const std::vector<int>& bb = s.base_blocks;
    if (b.coords.size() != bb.size())
        throw Error("InvalidInput", "base point has the wrong number of blocks");
    std::vector<std::vector<Rational>> vals;
    for (size_t i = 0; i < bb.size(); ++i) {
        auto [lo, hi] = s.ambient->block_range(bb[i]);
        if (static_cast<int>(b.coords[i].size()) != hi - lo)
            throw Error("InvalidInput", "base point block has the wrong length");
        bool allzero = true;
        for (const Rational& c : b.coords[i])
            if (c != 0) allzero = false;
        if (allzero) throw Error("InvalidInput", "base point block is identically zero");
        vals.push_back(b.coords[i]);
    }
    for (const MultiForm& f : s.defining) {
        bool base_only = true;
        for (int blk : s.fiber_blocks())
            if (f.degree_in_block(blk) > 0) base_only = false;
        if (!base_only) continue;
        MultiForm g = f;
        for (size_t i = 0; i < bb.size(); ++i) g = g.substitute_block_scalars(bb[i], vals[i]);
        if (!g.is_zero()) throw Error("InvalidInput", "base point does not lie on the base variety");
    }
    return vals;
}

// Specializes the base blocks of f at the given values and transplants the
// surviving fiber monomials onto target, whose blocks must match the fiber
// blocks of f in order and size.
MultiForm fiber_restrict(const MultiForm& f, const GradedSpace& src,
                         const std::vector<int>& base_blocks,
                         const std::vector<std::vector<Rational>>& bvals,
                         const std::vector<int>& fiber_blocks, SpacePtr target) {
    if (static_cast<int>(fiber_blocks.size()) != target->rank())
        throw Error("InvalidInput", "fiber shape does not match the target space");
    int total = 0;
    for (size_t i = 0; i < fiber_blocks.size(); ++i) {
        auto [lo, hi] = src.block_range(fiber_blocks[i]);
        auto [tlo, thi] = target->block_range(static_cast<int>(i));
        if (thi - tlo != hi - lo)
            throw Error("InvalidInput", "fiber shape does not match the target space");
        total += hi - lo;
    }
    if (total != target->nvars())
        throw Error("InvalidInput", "fiber shape does not match the target space");
    std::vector<Term> out;
    for (const Term& t : f.terms()) {
        Rational c = t.coeff;
        for (size_t i = 0; i < base_blocks.size() && c != 0; ++i) {
            auto [lo, hi] = src.block_range(base_blocks[i]);
            for (int v = lo; v < hi; ++v) {
                int e = t.exp[static_cast<size_t>(v)];
                if (e == 0) continue;
                if (bvals[i][static_cast<size_t>(v - lo)] == 0) {
                    c = Rational(0);
                    break;
                }
                c = Rational(c * rational_pow(bvals[i][static_cast<size_t>(v - lo)], e));
            }
        }
        if (c == 0) continue;
        Term nt;
        nt.coeff = c;
        nt.exp.assign(static_cast<size_t>(target->nvars()), 0);
        int off = 0;
        for (int fb : fiber_blocks) {
            auto [lo, hi] = src.block_range(fb);
            for (int v = lo; v < hi; ++v)
                nt.exp[static_cast<size_t>(off + v - lo)] = t.exp[static_cast<size_t>(v)];
            off += hi - lo;
        }
        out.push_back(std::move(nt));
    }
    return MultiForm::from_terms(std::move(target), std::move(out), true);
}

QMatrix gram_of_quadric(const MultiForm& q) {
    int n = q.space()->nvars();
    QMatrix m(static_cast<size_t>(n), QVector(static_cast<size_t>(n), Rational(0)));
    for (const Term& t : q.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < t.exp[static_cast<size_t>(v)]; ++k) {
                if (i < 0)
                    i = v;
                else
                    j = v;
            }
        if (i < 0 || j < 0) throw Error("InvalidInput", "quadric has a term of degree != 2");
        if (i == j) {
            m[i][i] = Rational(m[i][i] + t.coeff);
        } else {
            Rational half = Rational(t.coeff / 2);
            m[i][j] = Rational(m[i][j] + half);
            m[j][i] = Rational(m[j][i] + half);
        }
    }
    return m;
}

// det(l m1 + u m2) as a binary form of degree n, interpolated at n+1 pencil
// parameters.
BinaryForm pencil_det_form(const QMatrix& m1, const QMatrix& m2) {
    int n = static_cast<int>(m1.size());
    static const std::pair<int, int> nodes[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1},
                                               {1, 2}, {1, -2}, {1, 3}};
    QMatrix vdm(static_cast<size_t>(n + 1), QVector(static_cast<size_t>(n + 1)));
    QVector rhs(static_cast<size_t>(n + 1));
    for (int r = 0; r <= n; ++r) {
        Rational l(nodes[r].first), u(nodes[r].second);
        for (int k = 0; k <= n; ++k)
            vdm[static_cast<size_t>(r)][static_cast<size_t>(k)] =
                Rational(rational_pow(l, n - k) * rational_pow(u, k));
        QMatrix m(static_cast<size_t>(n), QVector(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    Rational(l * m1[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                             u * m2[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        rhs[static_cast<size_t>(r)] = determinant(m);
    }
    auto coeffs = solve_square(vdm, rhs);
    if (!coeffs) throw Error("InvalidInput", "pencil interpolation nodes are degenerate");
    return BinaryForm(n, *coeffs);
}

QMatrix family_m1(const QuadricPairFamily& F, const Rational& t) {
    QMatrix m(4, QVector(4, Rational(0)));
    m[0][0] = Rational(1);
    m[1][1] = Rational(-1);
    m[3][3] = Rational(-F.c.eval(t));
    return m;
}

QMatrix family_m2(const QuadricPairFamily& F, const Rational& t) {
    QMatrix m(4, QVector(4, Rational(0)));
    m[0][0] = Rational(1);
    m[2][2] = Rational(-1);
    m[3][3] = Rational(-F.d.eval(t));
    return m;
}

// Base parameter of a family point: either {t} on the parameter line or
// {t, w} on the double cover w^2 = f(t).
Rational family_t(const QuadricPairFamily& F, const BlockPoint& b) {
    if (b.coords.size() != 1) throw Error("InvalidInput", "family base point has one block");
    const std::vector<Rational>& c = b.coords[0];
    if (c.size() == 1) return c[0];
    if (c.size() == 2) {
        if (Rational(c[1] * c[1]) != F.f.eval(c[0]))
            throw Error("InvalidInput", "base point does not lie on the double cover");
        return c[0];
    }
    throw Error("InvalidInput", "family base point block has the wrong length");
}

UniPoly lagrange_fit(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    UniPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] == 0) continue;
        UniPoly term = UniPoly::constant(Rational(1));
        Rational denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            term = term * UniPoly({Rational(-xs[j]), Rational(1)});
            denom = Rational(denom * (xs[i] - xs[j]));
        }
        acc = acc + term.scale(Rational(ys[i] / denom));
    }
    return acc;
}

// Discriminant of the fiber quadric pencil as a polynomial in the base
// parameter. The pencil determinant has degree 4 and coefficients of degree
// at most 2 in t, so the discriminant has degree at most 12; seventeen
// nodes pin it down exactly.
UniPoly family_disc_poly(const QuadricPairFamily& F) {
    std::vector<Rational> xs, ys;
    for (int k = 0; static_cast<int>(xs.size()) < 17; ++k) {
        int t = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
        xs.push_back(Rational(t));
        BinaryForm det = pencil_det_form(family_m1(F, Rational(t)), family_m2(F, Rational(t)));
        ys.push_back(disc_binary_form(det));
    }
    return lagrange_fit(xs, ys);
}

// The two 2x2 minors that cut the rank-one locus in the chart of the
// largest first-row entry, restricted to the fiber over b.
std::pair<MultiForm, MultiForm> degeneracy_fiber_minors(const FiberedSpace& s, const BlockPoint& b,
                                                        SpacePtr target) {
    auto bvals = check_base_point(s, b);
    std::vector<int> fibs = s.fiber_blocks();
    const DegeneracyMatrix& dm = *s.matrix;
    std::array<Rational, 3> row1{Rational(0), Rational(0), Rational(0)};
    for (int j = 0; j < 3; ++j) {
        MultiForm g = dm.entry[0][static_cast<size_t>(j)];
        for (size_t i = 0; i < s.base_blocks.size(); ++i)
            g = g.substitute_block_scalars(s.base_blocks[i], bvals[i]);
        if (g.is_zero()) continue;
        const Term& t = g.terms().front();
        for (int e : t.exp)
            if (e != 0)
                throw Error("InvalidInput", "first row entries must be pulled back from the base");
        row1[static_cast<size_t>(j)] = t.coeff;
    }
    int k = 0;
    for (int j = 1; j < 3; ++j) {
        Rational sj = Rational(row1[static_cast<size_t>(j)] * row1[static_cast<size_t>(j)]);
        Rational sk = Rational(row1[static_cast<size_t>(k)] * row1[static_cast<size_t>(k)]);
        if (sj > sk) k = j;
    }
    if (row1[static_cast<size_t>(k)] == 0)
        throw Error("RankZeroLocus", "first row of the degeneracy matrix vanishes at the point");
    std::vector<MultiForm> minors;
    for (int j = 0; j < 3; ++j) {
        if (j == k) continue;
        MultiForm m = dm.entry[1][static_cast<size_t>(j)].scale(row1[static_cast<size_t>(k)]) -
                      dm.entry[1][static_cast<size_t>(k)].scale(row1[static_cast<size_t>(j)]);
        minors.push_back(fiber_restrict(m, *s.ambient, s.base_blocks, bvals, fibs, target));
    }
    return {minors[0], minors[1]};
}

// Divides out the largest monomial in the variables outside keep_block.
// Along the kept block the form is untouched, so base roots, including the
// one at (0 : 1), survive.
MultiForm strip_outside_block(const MultiForm& f, int keep_block) {
    if (f.is_zero()) return f;
    const GradedSpace& sp = *f.space();
    std::vector<int> mins(static_cast<size_t>(sp.nvars()), -1);
    for (const Term& t : f.terms())
        for (int v = 0; v < sp.nvars(); ++v) {
            int e = t.exp[static_cast<size_t>(v)];
            if (mins[static_cast<size_t>(v)] < 0 || e < mins[static_cast<size_t>(v)])
                mins[static_cast<size_t>(v)] = e;
        }
    auto [klo, khi] = sp.block_range(keep_block);
    for (int v = klo; v < khi; ++v) mins[static_cast<size_t>(v)] = 0;
    std::vector<Term> out;
    for (const Term& t : f.terms()) {
        Term nt = t;
        for (int v = 0; v < sp.nvars(); ++v) nt.exp[static_cast<size_t>(v)] -= mins[static_cast<size_t>(v)];
        out.push_back(std::move(nt));
    }
    return MultiForm::from_terms(f.space(), std::move(out), false);
}

// One elimination pass for a pencil of plane cubics: iterated resultants of
// the three fiber partials, keeping only the base content. Returns nullopt
// when the chain degenerates in this chart.
std::optional<BinaryForm> cubic_disc_pass(const MultiForm& f, int base_block, int fiber_block) {
    const GradedSpace& sp = *f.space();
    auto [flo, fhi] = sp.block_range(fiber_block);
    int x = flo, y = flo + 1, z = flo + 2;
    (void)fhi;
    (void)x;
    MultiForm fx = f.derivative(x), fy = f.derivative(y), fz = f.derivative(z);
    if (fx.is_zero() || fy.is_zero() || fz.is_zero()) return std::nullopt;
    MultiForm r1 = strip_outside_block(resultant_in_var(fx, fy, z), base_block);
    MultiForm r2 = strip_outside_block(resultant_in_var(fx, fz, z), base_block);
    if (r1.is_zero() || r2.is_zero()) return std::nullopt;
    MultiForm r3 = strip_outside_block(resultant_in_var(r1, r2, y), base_block);
    if (r3.is_zero()) return std::nullopt;
    for (int blk = 0; blk < sp.rank(); ++blk)
        if (blk != base_block && r3.degree_in_block(blk) > 0) return std::nullopt;
    return binary_radical(r3.restrict_to_binary(base_block));
}

// Discriminant of a pencil of plane cubics over a line in the base. Each
// pass picks up spurious factors from the projections, so the cascade runs
// in several random coordinate charts and keeps the gcd of the results; the
// genuine discriminant divides every one of them. Accepted once the gcd
// respects the degree bound 12 * (base degree).
BinaryForm cubic_pencil_discriminant(const MultiForm& f, int base_block, int fiber_block) {
    int bound = 12 * f.degree_in_block(base_block);
    SeedStream rng(7, "cubic-pencil-cascade");
    auto random_change = [&rng]() {
        for (;;) {
            QMatrix m(3, QVector(3));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        Rational(rng.next_in(-3, 3));
            if (determinant(m) != 0) return m;
        }
    };
    std::optional<BinaryForm> acc;
    for (int attempt = 0; attempt < 5; ++attempt) {
        MultiForm g = (attempt == 0) ? f : f.apply_linear(fiber_block, random_change());
        auto d1 = cubic_disc_pass(g, base_block, fiber_block);
        auto d2 =
            cubic_disc_pass(g.apply_linear(fiber_block, random_change()), base_block, fiber_block);
        if (d1) acc = acc ? binary_gcd(*acc, *d1) : *d1;
        if (d2) acc = acc ? binary_gcd(*acc, *d2) : *d2;
        if (acc && acc->degree() <= bound) return *acc;
    }
    throw Error("EliminationFailure", "resultant cascade degenerated in every chart");
}

// Exact quotient of binary forms; throws when the division leaves a
// remainder.
BinaryForm binary_exact_quotient(const BinaryForm& f, const BinaryForm& g) {
    int dq = f.degree() - g.degree();
    if (dq < 0) throw Error("InvalidInput", "quotient of binary forms with negative degree");
    std::vector<Rational> fc = f.coeffs();
    std::vector<Rational> gc = g.coeffs();
    size_t s = 0;
    while (s < gc.size() && gc[s] == 0) ++s;
    if (s == gc.size()) throw Error("InvalidInput", "division by the zero form");
    for (size_t i = 0; i < s; ++i)
        if (fc[i] != 0) throw Error("InvalidInput", "binary form division left a remainder");
    std::vector<Rational> fr(fc.begin() + static_cast<long>(s), fc.end());
    std::vector<Rational> gr(gc.begin() + static_cast<long>(s), gc.end());
    int mg = static_cast<int>(gr.size()) - 1;
    std::vector<Rational> q(static_cast<size_t>(dq) + 1, Rational(0));
    for (int k = 0; k < static_cast<int>(fr.size()); ++k) {
        Rational acc = fr[static_cast<size_t>(k)];
        int jlo = std::max(0, k - mg);
        int jhi = std::min(k - 1, dq);
        for (int j = jlo; j <= jhi; ++j)
            acc = Rational(acc - q[static_cast<size_t>(j)] * gr[static_cast<size_t>(k - j)]);
        if (k <= dq)
            q[static_cast<size_t>(k)] = Rational(acc / gr[0]);
        else if (acc != 0)
            throw Error("InvalidInput", "binary form division left a remainder");
    }
    return BinaryForm(dq, q);
}

BinaryForm constant_one_form() { return BinaryForm(0, {Rational(1)}); }

void check_base_blocks(const GradedSpace& sp, const std::vector<int>& base_blocks) {
    if (base_blocks.empty()) throw Error("InvalidInput", "at least one base block is required");
    for (size_t i = 0; i < base_blocks.size(); ++i) {
        if (base_blocks[i] < 0 || base_blocks[i] >= sp.rank())
            throw Error("InvalidInput", "base block index out of range");
        if (i > 0 && base_blocks[i] <= base_blocks[i - 1])
            throw Error("InvalidInput", "base blocks must be strictly increasing");
    }
    if (static_cast<int>(base_blocks.size()) >= sp.rank())
        throw Error("InvalidInput", "no fiber blocks remain");
}

void check_defining(const GradedSpace& sp, const std::vector<MultiForm>& forms) {
    for (const MultiForm& f : forms) {
        if (f.is_zero()) throw Error("InvalidInput", "defining form is zero");
        if (!f.space()->same_as(sp))
            throw Error("InvalidInput", "defining form lives on the wrong space");
        if (!f.is_homogeneous()) throw Error("InvalidInput", "defining form is not homogeneous");
    }
}

// Defining forms of a fibration with genuine fiber dependence; the rest cut
// the base. Exactly one such form is supported.
const MultiForm& single_fiber_form(const FiberedSpace& s) {
    const MultiForm* active = nullptr;
    for (const MultiForm& f : s.defining) {
        bool fiberish = false;
        for (int blk : s.fiber_blocks())
            if (f.degree_in_block(blk) > 0) fiberish = true;
        if (!fiberish) continue;
        if (active)
            throw Error("NotAFibration",
                        "fibers must be cut by a single equation in this representation");
        active = &f;
    }
    if (!active)
        throw Error("NotAFibration",
                    "fibers must be cut by a single equation in this representation");
    return *active;
}

}  // namespace

std::vector<int> FiberedSpace::fiber_blocks() const {
    std::vector<int> out;
    if (!ambient) return out;
    for (int b = 0; b < ambient->rank(); ++b)
        if (!contains(base_blocks, b)) out.push_back(b);
    return out;
}

FiberedSpace hypersurface_space(MultiForm f, std::vector<int> base_blocks) {
    FiberedSpace s;
    s.ambient = f.space();
    if (!s.ambient) throw Error("InvalidInput", "defining form is zero");
    check_base_blocks(*s.ambient, base_blocks);
    check_defining(*s.ambient, {f});
    s.defining = {std::move(f)};
    s.base_blocks = std::move(base_blocks);
    return s;
}

FiberedSpace intersection_space(SpacePtr sp, std::vector<MultiForm> forms,
                                std::vector<int> base_blocks) {
    if (!sp) throw Error("InvalidInput", "ambient space is required");
    if (forms.empty()) throw Error("InvalidInput", "at least one defining form is required");
    FiberedSpace s;
    s.ambient = std::move(sp);
    check_base_blocks(*s.ambient, base_blocks);
    check_defining(*s.ambient, forms);
    s.defining = std::move(forms);
    s.base_blocks = std::move(base_blocks);
    return s;
}

FiberedSpace degeneracy_space(SpacePtr sp, DegeneracyMatrix m, std::vector<int> base_blocks) {
    if (!sp) throw Error("InvalidInput", "ambient space is required");
    FiberedSpace s;
    s.ambient = std::move(sp);
    check_base_blocks(*s.ambient, base_blocks);
    for (int r = 0; r < 2; ++r) {
        std::vector<int> deg;
        for (int j = 0; j < 3; ++j) {
            const MultiForm& e = m.entry[static_cast<size_t>(r)][static_cast<size_t>(j)];
            if (e.is_zero()) throw Error("InvalidInput", "degeneracy matrix entry is zero");
            if (!e.space()->same_as(*s.ambient))
                throw Error("InvalidInput", "degeneracy matrix entry lives on the wrong space");
            if (!e.is_homogeneous())
                throw Error("InvalidInput", "degeneracy matrix entry is not homogeneous");
            if (j == 0)
                deg = e.multidegree();
            else if (e.multidegree() != deg)
                throw Error("InvalidInput", "degeneracy matrix row has mixed degrees");
            if (r == 0)
                for (int blk = 0; blk < s.ambient->rank(); ++blk)
                    if (!contains(base_blocks, blk) && e.degree_in_block(blk) > 0)
                        throw Error("InvalidInput",
                                    "first row entries must be pulled back from the base");
        }
    }
    s.matrix = std::move(m);
    s.base_blocks = std::move(base_blocks);
    return s;
}

FiberedSpace quadric_pair_family(UniPoly c, UniPoly d, UniPoly f) {
    if (c.degree() != 2 || d.degree() != 2 || f.degree() != 2)
        throw Error("InvalidInput", "family data must be three quadratics");
    if (!is_separable(c * d * (c - d) * f))
        throw Error("InvalidInput", "family data has a repeated critical value");
    FiberedSpace s;
    s.family = QuadricPairFamily{std::move(c), std::move(d), std::move(f)};
    return s;
}

Multisection coordinate_multisection(const FiberedSpace& parent, const std::string& var,
                                     int degree) {
    if (parent.is_family())
        throw Error("InvalidInput", "family multisections are given by substitutions");
    if (!parent.ambient) throw Error("InvalidInput", "parent has no ambient space");
    int v = parent.ambient->var_index(var);
    if (v < 0) throw Error("InvalidInput", "unknown variable " + var);
    int blk = parent.ambient->block_of(v);
    if (contains(parent.base_blocks, blk))
        throw Error("InvalidInput", "multisection equations must cut fiber directions");
    auto [lo, hi] = parent.ambient->block_range(blk);
    if (hi - lo != 2)
        throw Error("InvalidInput", "multisection equations cut two variable blocks");
    Multisection m;
    m.parent = parent;
    m.equations = {MultiForm::var(parent.ambient, var)};
    m.degree = degree;
    return m;
}

Multisection family_multisection(const FiberedSpace& parent, UniPoly a, UniPoly b) {
    if (!parent.is_family())
        throw Error("InvalidInput", "substitution multisections require a family");
    if (!(a * a - parent.family->c == b * b))
        throw Error("InvalidInput", "section data does not satisfy the first surface equation");
    Multisection m;
    m.parent = parent;
    m.substitutions = std::make_pair(std::move(a), std::move(b));
    m.degree = 2;
    return m;
}

GenusOneModel fiber_model_at(const FiberedSpace& s, const BlockPoint& b) {
    if (s.is_family()) {
        const QuadricPairFamily& F = *s.family;
        Rational t = family_t(F, b);
        BinaryForm det = pencil_det_form(family_m1(F, t), family_m2(F, t));
        if (disc_binary_form(det) == 0)
            throw Error("SingularFiber", "the quadric pencil over the point is degenerate");
        SpacePtr p3 = GradedSpace::p3();
        MultiForm x = MultiForm::var(p3, "x"), y = MultiForm::var(p3, "y"),
                  z = MultiForm::var(p3, "z"), w = MultiForm::var(p3, "w");
        QuadricIntersectionModel m;
        m.q1 = x * x - y * y - (w * w).scale(F.c.eval(t));
        m.q2 = x * x - z * z - (w * w).scale(F.d.eval(t));
        return GenusOneModel{m};
    }
    if (s.is_degeneracy()) {
        std::vector<int> fibs = s.fiber_blocks();
        if (fibs.size() != 1)
            throw Error("NotAFibration", "degeneracy fibers live in a single block");
        auto [lo, hi] = s.ambient->block_range(fibs[0]);
        int nfib = hi - lo;
        if (nfib == 3)
            throw Error("NotAFibration", "fibers of a conic pair are zero dimensional");
        if (nfib != 4)
            throw Error("NotAFibration", "degeneracy fibers need a four variable block");
        auto [q1, q2] = degeneracy_fiber_minors(s, b, GradedSpace::p3());
        BinaryForm det = pencil_det_form(gram_of_quadric(q1), gram_of_quadric(q2));
        if (disc_binary_form(det) == 0)
            throw Error("SingularFiber", "the quadric pencil over the point is degenerate");
        QuadricIntersectionModel m;
        m.q1 = q1;
        m.q2 = q2;
        return GenusOneModel{m};
    }
    auto bvals = check_base_point(s, b);
    std::vector<int> fibs = s.fiber_blocks();
    const MultiForm& f = single_fiber_form(s);
    if (fibs.size() == 2) {
        auto [l0, h0] = s.ambient->block_range(fibs[0]);
        auto [l1, h1] = s.ambient->block_range(fibs[1]);
        if (h0 - l0 != 2 || h1 - l1 != 2)
            throw Error("NotAFibration", "two block fibers must be products of lines");
        if (f.degree_in_block(fibs[0]) != 2 || f.degree_in_block(fibs[1]) != 2)
            throw Error("NotAFibration", "fiber forms must have bidegree (2, 2)");
        MultiForm fb =
            fiber_restrict(f, *s.ambient, s.base_blocks, bvals, fibs, GradedSpace::product_p1(2));
        if (fb.is_zero() || fb.degree_in_block(0) != 2 || fb.degree_in_block(1) != 2)
            throw Error("SingularFiber", "the fiber over the point is not a genus-one curve");
        auto co = fb.coeffs_in_block(1);
        MultiForm g = disc_quadratic(co[0], co[1], co[2]);
        if (g.is_zero() || !binary_squarefree(g.restrict_to_binary(0)))
            throw Error("SingularFiber", "the fiber over the point is singular");
        BiquadraticModel m;
        m.form = fb;
        return GenusOneModel{m};
    }
    if (fibs.size() != 1) throw Error("NotAFibration", "unsupported fiber shape");
    auto [lo, hi] = s.ambient->block_range(fibs[0]);
    int nfib = hi - lo;
    if (nfib == 2)
        throw Error("NotAFibration", "fibers inside a single line are zero dimensional");
    if (nfib == 3 && f.degree_in_block(fibs[0]) == 3) {
        MultiForm fb =
            fiber_restrict(f, *s.ambient, s.base_blocks, bvals, fibs, GradedSpace::p2());
        if (fb.is_zero() || fb.degree_in_block(0) != 3)
            throw Error("SingularFiber", "the fiber over the point is not a genus-one curve");
        int pb = s.base_blocks[0];
        for (int blk : s.base_blocks)
            if (f.degree_in_block(blk) > 0) pb = blk;
        BinaryForm disc = cubic_pencil_discriminant(f, pb, fibs[0]);
        size_t bi = 0;
        while (s.base_blocks[bi] != pb) ++bi;
        if (disc.eval(bvals[bi][0], bvals[bi][1]) == 0)
            throw Error("SingularFiber", "the fiber over the point is singular");
        PlaneCubicModel m;
        m.cubic = fb;
        return GenusOneModel{m};
    }
    throw Error("NotAFibration", "unsupported fiber shape");
}

BinaryForm projection_discriminant(const FiberedSpace& s, int base_block) {
    if (s.is_family()) {
        UniPoly D = family_disc_poly(*s.family);
        if (D.is_zero()) throw Error("NotAFibration", "every fiber of the family is degenerate");
        UniPoly r = uni_radical(D);
        if (r.degree() <= 0) return constant_one_form();
        return BinaryForm::homogenize(r, r.degree());
    }
    if (s.is_degeneracy())
        throw Error("InvalidInput",
                    "degeneracy fibrations expose per-point data, not a global discriminant");
    if (!contains(s.base_blocks, base_block))
        throw Error("InvalidInput", "discriminant must be taken along a base block");
    auto [blo, bhi] = s.ambient->block_range(base_block);
    if (bhi - blo != 2) throw Error("InvalidInput", "discriminant base must be a line");
    std::vector<int> fibs = s.fiber_blocks();
    const MultiForm& f = single_fiber_form(s);
    MultiForm disc = MultiForm::zero(f.space());
    if (fibs.size() == 1) {
        auto [lo, hi] = s.ambient->block_range(fibs[0]);
        int nfib = hi - lo;
        if (nfib == 2) {
            int d = f.degree_in_block(fibs[0]);
            if (d == 1) return constant_one_form();
            if (d != 2)
                throw Error("InvalidInput",
                            "discriminants implemented for fiber degree at most 2");
            auto co = f.coeffs_in_block(fibs[0]);
            disc = disc_quadratic(co[0], co[1], co[2]);
        } else if (nfib == 3 && f.degree_in_block(fibs[0]) == 3) {
            return cubic_pencil_discriminant(f, base_block, fibs[0]);
        } else {
            throw Error("NotAFibration", "unsupported fiber shape");
        }
    } else if (fibs.size() == 2) {
        if (f.degree_in_block(fibs[0]) != 2 || f.degree_in_block(fibs[1]) != 2)
            throw Error("NotAFibration", "fiber forms must have bidegree (2, 2)");
        auto co = f.coeffs_in_block(fibs[1]);
        MultiForm g = disc_quadratic(co[0], co[1], co[2]);
        if (g.is_zero()) throw Error("NotAFibration", "every fiber is degenerate");
        auto qc = g.coeffs_in_block(fibs[0]);
        if (qc.size() != 5)
            throw Error("NotAFibration", "the inner discriminant must be a fiber quartic");
        disc = disc_quartic(qc[0], qc[1], qc[2], qc[3], qc[4]);
    } else {
        throw Error("NotAFibration", "unsupported fiber shape");
    }
    if (disc.is_zero()) throw Error("NotAFibration", "every fiber is degenerate");
    for (int blk = 0; blk < s.ambient->rank(); ++blk)
        if (blk != base_block && disc.degree_in_block(blk) > 0)
            throw Error("InvalidInput", "discriminant involves more than the chosen base block");
    return binary_radical(disc.restrict_to_binary(base_block));
}

BinaryForm multisection_branch_form(const Multisection& M) {
    if (M.parent.is_family()) {
        if (!M.substitutions)
            throw Error("InvalidInput", "family multisections carry substitution data");
        const UniPoly& a = M.substitutions->first;
        UniPoly e = a * a - M.parent.family->d;
        if (e.is_zero()) throw Error("NotAMultisection", "the cover is ramified everywhere");
        UniPoly r = uni_radical(e);
        if (r.degree() <= 0) return constant_one_form();
        return BinaryForm::homogenize(r, r.degree());
    }
    const FiberedSpace& P = M.parent;
    if (P.defining.size() != 1)
        throw Error("InvalidInput", "closed-form branch data needs a hypersurface parent");
    if (P.base_blocks.size() != 1)
        throw Error("InvalidInput", "closed-form branch data needs a one-dimensional base");
    int base = P.base_blocks[0];
    auto [blo, bhi] = P.ambient->block_range(base);
    if (bhi - blo != 2) throw Error("InvalidInput", "branch base must be a line");
    MultiForm f = P.defining[0];
    std::vector<int> killed;
    for (const MultiForm& eq : M.equations) {
        if (eq.terms().size() != 1)
            throw Error("InvalidInput", "multisection equations must be single coordinates");
        const Term& t = eq.terms().front();
        int v = -1;
        for (size_t i = 0; i < t.exp.size(); ++i) {
            if (t.exp[i] == 0) continue;
            if (t.exp[i] != 1 || v >= 0)
                throw Error("InvalidInput", "multisection equations must be single coordinates");
            v = static_cast<int>(i);
        }
        if (v < 0) throw Error("InvalidInput", "multisection equations must be single coordinates");
        int blk = P.ambient->block_of(v);
        auto [lo, hi] = P.ambient->block_range(blk);
        if (hi - lo != 2)
            throw Error("InvalidInput", "multisection equations cut two variable blocks");
        std::vector<Rational> vals = (v == lo) ? std::vector<Rational>{Rational(0), Rational(1)}
                                               : std::vector<Rational>{Rational(1), Rational(0)};
        f = f.substitute_block_scalars(blk, vals);
        killed.push_back(blk);
    }
    int rem = -1;
    for (int blk : P.fiber_blocks()) {
        if (contains(killed, blk)) continue;
        if (rem >= 0)
            throw Error("InvalidInput", "closed-form branch data needs a single fiber direction");
        rem = blk;
    }
    if (rem < 0) throw Error("InvalidInput", "the equations leave no fiber direction");
    auto [rlo, rhi] = P.ambient->block_range(rem);
    if (rhi - rlo != 2)
        throw Error("InvalidInput", "the remaining fiber direction must be a line");
    if (f.is_zero()) throw Error("NotAMultisection", "the equations cut the whole fiber");
    int d = f.degree_in_block(rem);
    if (d == 0) throw Error("NotAMultisection", "not generically finite over the base");
    if (d == 1) return constant_one_form();
    if (d != 2)
        throw Error("InvalidInput", "branch forms implemented for covers of degree at most 2");
    auto co = f.coeffs_in_block(rem);
    MultiForm disc = disc_quadratic(co[0], co[1], co[2]);
    if (disc.is_zero()) throw Error("NotAMultisection", "the cover is ramified everywhere");
    for (int blk = 0; blk < P.ambient->rank(); ++blk)
        if (blk != base && disc.degree_in_block(blk) > 0)
            throw Error("InvalidInput", "the branch form involves more than the base block");
    return binary_radical(disc.restrict_to_binary(base));
}

SalientResult salient_check(const FiberedSpace& s, const Multisection& M) {
    BinaryForm branch = multisection_branch_form(M);
    if (branch.degree() <= 0) return SalientResult{false, std::nullopt};
    BinaryForm disc;
    UniPoly family_disc;
    if (s.is_family()) {
        const QuadricPairFamily& F = *s.family;
        family_disc = F.c * F.d * (F.c - F.d);
        disc = BinaryForm::homogenize(family_disc, 6);
    } else {
        disc = projection_discriminant(s, s.base_blocks.empty() ? 0 : s.base_blocks[0]);
    }
    BinaryForm g = binary_gcd(branch, disc);
    if (g.degree() >= branch.degree()) return SalientResult{false, std::nullopt};
    BinaryForm h = binary_exact_quotient(branch, g);
    std::optional<std::pair<Rational, Rational>> best;
    for (const auto& [u, v] : binary_rational_roots(h)) {
        if (u == 0) continue;
        if (!best) {
            best = {u, v};
            continue;
        }
        Rational val = Rational(v / u);
        Rational bval = Rational(best->second / best->first);
        Integer hv = height(val), hb = height(bval);
        if (hv < hb || (hv == hb && val < bval)) best = {u, v};
    }
    SalientWitness w;
    w.factor = h;
    if (best) {
        Rational val = Rational(best->second / best->first);
        w.value = val;
        if (s.is_family())
            w.discriminant_value = family_disc.eval(val);
        else
            w.discriminant_value = disc.eval(best->first, best->second);
    } else {
        w.discriminant_value = Rational(0);
    }
    return SalientResult{true, w};
}

bool degeneracy_membership(const FiberedSpace& s, const BlockPoint& p) {
    if (!s.is_degeneracy())
        throw Error("InvalidInput", "membership requires a degeneracy locus");
    check_point_shape(*s.ambient, p);
    const DegeneracyMatrix& dm = *s.matrix;
    std::array<Rational, 3> a, q;
    for (int j = 0; j < 3; ++j) {
        a[static_cast<size_t>(j)] = dm.entry[0][static_cast<size_t>(j)].eval_point(p);
        q[static_cast<size_t>(j)] = dm.entry[1][static_cast<size_t>(j)].eval_point(p);
    }
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            if (Rational(a[i] * q[j] - a[j] * q[i]) != 0) return false;
    return true;
}

QuadricPencil fiber_quadric_pencil(const FiberedSpace& s, const BlockPoint& b) {
    QuadricPencil p;
    if (s.is_family()) {
        const QuadricPairFamily& F = *s.family;
        Rational t = family_t(F, b);
        p.m1 = family_m1(F, t);
        p.m2 = family_m2(F, t);
        p.det_form = pencil_det_form(p.m1, p.m2);
        return p;
    }
    if (!s.is_degeneracy())
        throw Error("InvalidInput", "quadric pencils come from families or degeneracy loci");
    std::vector<int> fibs = s.fiber_blocks();
    if (fibs.size() != 1)
        throw Error("NotAFibration", "degeneracy fibers live in a single block");
    auto [lo, hi] = s.ambient->block_range(fibs[0]);
    int nfib = hi - lo;
    SpacePtr target;
    if (nfib == 4)
        target = GradedSpace::p3();
    else if (nfib == 3)
        target = GradedSpace::p2();
    else
        throw Error("NotAFibration", "unsupported fiber shape");
    auto [q1, q2] = degeneracy_fiber_minors(s, b, target);
    p.m1 = gram_of_quadric(q1);
    p.m2 = gram_of_quadric(q2);
    p.det_form = pencil_det_form(p.m1, p.m2);
    return p;
}

Rational discriminant_value_at(const FiberedSpace& s, const BlockPoint& b) {
    if (s.is_family() || s.is_degeneracy())
        return disc_binary_form(fiber_quadric_pencil(s, b).det_form);
    auto bvals = check_base_point(s, b);
    std::vector<int> fibs = s.fiber_blocks();
    const MultiForm& f = single_fiber_form(s);
    if (fibs.size() == 2) {
        MultiForm fb =
            fiber_restrict(f, *s.ambient, s.base_blocks, bvals, fibs, GradedSpace::product_p1(2));
        if (fb.is_zero()) return Rational(0);
        auto co = fb.coeffs_in_block(1);
        MultiForm g = disc_quadratic(co[0], co[1], co[2]);
        if (g.is_zero()) return Rational(0);
        BinaryForm q = g.restrict_to_binary(0);
        if (q.degree() != 4) return Rational(0);
        return disc_binary_form(q);
    }
    if (fibs.size() == 1) {
        auto [lo, hi] = s.ambient->block_range(fibs[0]);
        if (hi - lo == 2 && f.degree_in_block(fibs[0]) == 2) {
            MultiForm fb = fiber_restrict(f, *s.ambient, s.base_blocks, bvals, fibs,
                                          GradedSpace::product_p1(1));
            if (fb.is_zero()) return Rational(0);
            BinaryForm q = fb.restrict_to_binary(0);
            if (q.degree() != 2) return Rational(0);
            return disc_binary_form(q);
        }
        if (hi - lo == 3 && f.degree_in_block(fibs[0]) == 3) {
            int pb = s.base_blocks[0];
            for (int blk : s.base_blocks)
                if (f.degree_in_block(blk) > 0) pb = blk;
            BinaryForm disc = cubic_pencil_discriminant(f, pb, fibs[0]);
            size_t bi = 0;
            while (s.base_blocks[bi] != pb) ++bi;
            return disc.eval(bvals[bi][0], bvals[bi][1]);
        }
    }
    throw Error("NotAFibration", "unsupported fiber shape");
}

CriticalData critical_data(const FiberedSpace& s, const Multisection& M) {
    return CriticalData{projection_discriminant(s, s.base_blocks.empty() ? 0 : s.base_blocks[0]),
                        multisection_branch_form(M)};
}

}  // namespace cyq
