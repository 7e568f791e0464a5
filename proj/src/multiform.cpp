#include "cyq/multiform.hpp"

#include <algorithm>
#include <map>

namespace cyq {

// --- GradedSpace -----------------------------------------------------------

namespace {

std::shared_ptr<GradedSpace> make_space(std::string kind, int param, std::vector<VarBlock> blocks,
                                        std::vector<std::vector<int>> weights) {
    auto sp = std::make_shared<GradedSpace>();
    sp->kind = std::move(kind);
    sp->param = param;
    sp->blocks = std::move(blocks);
    sp->weights = std::move(weights);
    for (const auto& b : sp->blocks)
        for (const auto& v : b.vars) sp->flat_names_.push_back(v);
    return sp;
}

// standard weights: every variable of block i has weight e_i
std::vector<std::vector<int>> product_weights(const std::vector<VarBlock>& blocks) {
    std::vector<std::vector<int>> w;
    int r = static_cast<int>(blocks.size());
    for (int b = 0; b < r; ++b)
        for (size_t i = 0; i < blocks[static_cast<size_t>(b)].vars.size(); ++i) {
            std::vector<int> e(static_cast<size_t>(r), 0);
            e[static_cast<size_t>(b)] = 1;
            w.push_back(e);
        }
    return w;
}

}  // namespace

int GradedSpace::var_index(const std::string& name) const {
    for (size_t i = 0; i < flat_names_.size(); ++i)
        if (flat_names_[i] == name) return static_cast<int>(i);
    return -1;
}

int GradedSpace::block_of(int flat) const {
    int acc = 0;
    for (size_t b = 0; b < blocks.size(); ++b) {
        acc += static_cast<int>(blocks[b].vars.size());
        if (flat < acc) return static_cast<int>(b);
    }
    throw Error("InvalidInput", "variable index out of range");
}

std::pair<int, int> GradedSpace::block_range(int b) const {
    int begin = 0;
    for (int i = 0; i < b; ++i) begin += static_cast<int>(blocks[static_cast<size_t>(i)].vars.size());
    return {begin, begin + static_cast<int>(blocks[static_cast<size_t>(b)].vars.size())};
}

SpacePtr GradedSpace::product_p1(int k) {
    if (k < 1) throw Error("InvalidInput", "need at least one factor");
    std::vector<VarBlock> blocks;
    for (int i = 1; i <= k; ++i)
        blocks.push_back({"P1#" + std::to_string(i), {"S" + std::to_string(i), "T" + std::to_string(i)}});
    auto w = product_weights(blocks);
    return make_space("product_p1", k, std::move(blocks), std::move(w));
}

SpacePtr GradedSpace::p1_p2() {
    std::vector<VarBlock> blocks{{"base", {"s", "t"}}, {"P2", {"x0", "x1", "x2"}}};
    auto w = product_weights(blocks);
    return make_space("p1_p2", 0, std::move(blocks), std::move(w));
}

SpacePtr GradedSpace::p1_p2_p2() {
    std::vector<VarBlock> blocks{{"base", {"s", "t"}}, {"P2#1", {"x0", "x1", "x2"}}, {"P2#2", {"y0", "y1", "y2"}}};
    auto w = product_weights(blocks);
    return make_space("p1_p2_p2", 0, std::move(blocks), std::move(w));
}

SpacePtr GradedSpace::p2() {
    std::vector<VarBlock> blocks{{"P2", {"X", "Y", "Z"}}};
    auto w = product_weights(blocks);
    return make_space("p2", 0, std::move(blocks), std::move(w));
}

SpacePtr GradedSpace::p3() {
    std::vector<VarBlock> blocks{{"P3", {"x", "y", "z", "w"}}};
    auto w = product_weights(blocks);
    return make_space("p3", 0, std::move(blocks), std::move(w));
}

SpacePtr GradedSpace::p2_p2() {
    std::vector<VarBlock> blocks{{"P2#1", {"X0", "X1", "X2"}}, {"P2#2", {"Y0", "Y1", "Y2"}}};
    auto w = product_weights(blocks);
    return make_space("p2_p2", 0, std::move(blocks), std::move(w));
}

SpacePtr GradedSpace::p2_bundle() {
    std::vector<VarBlock> blocks{{"base", {"X0", "X1", "X2"}}, {"fiber", {"Y0", "Y1", "Y2", "Z"}}};
    std::vector<std::vector<int>> w{{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}, {-1, 1}};
    return make_space("p2_bundle", 0, std::move(blocks), std::move(w));
}

SpacePtr GradedSpace::by_kind(const std::string& kind, int param) {
    if (kind == "product_p1") return product_p1(param);
    if (kind == "p1_p2") return p1_p2();
    if (kind == "p1_p2_p2") return p1_p2_p2();
    if (kind == "p2") return p2();
    if (kind == "p3") return p3();
    if (kind == "p2_p2") return p2_p2();
    if (kind == "p2_bundle") return p2_bundle();
    throw Error("InvalidInput", "unknown ambient kind '" + kind + "'");
}

// --- points ----------------------------------------------------------------

namespace {

void check_point_shape(const SpacePtr& sp, const BlockPoint& p) {
    if (p.coords.size() != sp->blocks.size()) throw Error("InvalidInput", "wrong number of point blocks");
    for (size_t b = 0; b < p.coords.size(); ++b)
        if (p.coords[b].size() != sp->blocks[b].vars.size())
            throw Error("InvalidInput", "wrong coordinate count in block " + std::to_string(b));
}

Rational pow_rational(const Rational& x, int e) {
    if (e == 0) return Rational(1);
    Rational b = e > 0 ? x : Rational(1) / x;
    int n = e > 0 ? e : -e;
    Rational acc(1);
    for (int i = 0; i < n; ++i) acc *= b;
    return acc;
}

}  // namespace

BlockPoint canonical_point(const SpacePtr& sp, const BlockPoint& p) {
    check_point_shape(sp, p);
    BlockPoint out = p;
    for (size_t b = 0; b < out.coords.size(); ++b) {
        auto& v = out.coords[b];
        bool all_zero = true;
        for (const auto& x : v) all_zero = all_zero && x == 0;
        if (all_zero) throw Error("InvalidInput", "zero vector in block " + std::to_string(b));
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
        // rescale cross-weighted variables in later blocks
        auto [begin, end] = sp->block_range(static_cast<int>(b));
        for (int flat = end; flat < sp->nvars(); ++flat) {
            int w = sp->weights[static_cast<size_t>(flat)][b];
            if (w == 0) continue;
            int ob = sp->block_of(flat);
            int off = flat - sp->block_range(ob).first;
            out.coords[static_cast<size_t>(ob)][static_cast<size_t>(off)] *= pow_rational(lambda, w);
        }
        (void)begin;
    }
    return out;
}

bool same_point(const SpacePtr& sp, const BlockPoint& a, const BlockPoint& b) {
    BlockPoint ca = canonical_point(sp, a), cb = canonical_point(sp, b);
    return ca.coords == cb.coords;
}

std::vector<Rational> flatten(const SpacePtr& sp, const BlockPoint& p) {
    check_point_shape(sp, p);
    std::vector<Rational> out;
    for (const auto& blk : p.coords) out.insert(out.end(), blk.begin(), blk.end());
    return out;
}

std::string point_str(const SpacePtr& sp, const BlockPoint& p) {
    check_point_shape(sp, p);
    std::string out = "(";
    for (size_t b = 0; b < p.coords.size(); ++b) {
        if (b) out += ",";
        out += "(";
        for (size_t i = 0; i < p.coords[b].size(); ++i) {
            if (i) out += ":";
            out += to_string(p.coords[b][i]);
        }
        out += ")";
    }
    return out + ")";
}

// --- MultiForm -------------------------------------------------------------

namespace {

bool lex_greater(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

}  // namespace

void MultiForm::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return lex_greater(x.exp, y.exp); });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exp == t.exp)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged)
        if (t.coeff != 0) terms_.push_back(std::move(t));
}

MultiForm MultiForm::zero(SpacePtr sp) {
    MultiForm f;
    f.sp_ = std::move(sp);
    return f;
}

MultiForm MultiForm::constant(SpacePtr sp, const Rational& c) {
    MultiForm f = zero(std::move(sp));
    if (c != 0) f.terms_.push_back({std::vector<int>(static_cast<size_t>(f.sp_->nvars()), 0), c});
    return f;
}

MultiForm MultiForm::monomial(SpacePtr sp, std::vector<int> exp, const Rational& c) {
    MultiForm f = zero(std::move(sp));
    if (exp.size() != static_cast<size_t>(f.sp_->nvars())) throw Error("InvalidInput", "exponent vector length");
    for (int e : exp)
        if (e < 0) throw Error("InvalidInput", "negative exponent");
    if (c != 0) f.terms_.push_back({std::move(exp), c});
    return f;
}

MultiForm MultiForm::var(const SpacePtr& sp, const std::string& name) {
    int idx = sp->var_index(name);
    if (idx < 0) throw Error("InvalidInput", "no variable named '" + name + "'");
    std::vector<int> exp(static_cast<size_t>(sp->nvars()), 0);
    exp[static_cast<size_t>(idx)] = 1;
    return monomial(sp, std::move(exp), Rational(1));
}

MultiForm MultiForm::from_terms(SpacePtr sp, std::vector<Term> terms, bool require_homogeneous) {
    MultiForm f = zero(std::move(sp));
    for (const auto& t : terms) {
        if (t.exp.size() != static_cast<size_t>(f.sp_->nvars()))
            throw Error("InvalidInput", "exponent vector length mismatch");
        for (int e : t.exp)
            if (e < 0) throw Error("InvalidInput", "negative exponent");
    }
    f.terms_ = std::move(terms);
    f.canonicalize();
    if (require_homogeneous && !f.is_homogeneous())
        throw Error("InvalidInput", "terms are not multihomogeneous");
    return f;
}

namespace {

std::vector<int> weighted_degree(const GradedSpace& sp, const std::vector<int>& exp) {
    std::vector<int> d(static_cast<size_t>(sp.rank()), 0);
    for (size_t v = 0; v < exp.size(); ++v)
        for (size_t g = 0; g < d.size(); ++g) d[g] += exp[v] * sp.weights[v][g];
    return d;
}

}  // namespace

bool MultiForm::is_homogeneous() const {
    if (terms_.empty()) return true;
    std::vector<int> d0 = weighted_degree(*sp_, terms_.front().exp);
    for (const auto& t : terms_)
        if (weighted_degree(*sp_, t.exp) != d0) return false;
    return true;
}

std::vector<int> MultiForm::multidegree() const {
    if (terms_.empty()) throw Error("InvalidInput", "zero form has no multidegree");
    if (!is_homogeneous()) throw Error("InvalidInput", "form is not multihomogeneous");
    return weighted_degree(*sp_, terms_.front().exp);
}

MultiForm MultiForm::operator-() const {
    MultiForm f = *this;
    for (auto& t : f.terms_) t.coeff = -t.coeff;
    return f;
}

namespace {

const SpacePtr& join_spaces(const SpacePtr& a, const SpacePtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (!a->same_as(*b)) throw Error("InvalidInput", "forms live on different spaces");
    return a;
}

}  // namespace

MultiForm MultiForm::operator+(const MultiForm& o) const {
    MultiForm f = zero(join_spaces(sp_, o.sp_));
    f.terms_ = terms_;
    f.terms_.insert(f.terms_.end(), o.terms_.begin(), o.terms_.end());
    f.canonicalize();
    return f;
}

MultiForm MultiForm::operator-(const MultiForm& o) const { return *this + (-o); }

MultiForm MultiForm::operator*(const MultiForm& o) const {
    MultiForm f = zero(join_spaces(sp_, o.sp_));
    f.terms_.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            Term t;
            t.exp.resize(a.exp.size());
            for (size_t i = 0; i < a.exp.size(); ++i) t.exp[i] = a.exp[i] + b.exp[i];
            t.coeff = a.coeff * b.coeff;
            f.terms_.push_back(std::move(t));
        }
    f.canonicalize();
    return f;
}

MultiForm MultiForm::scale(const Rational& k) const {
    if (k == 0) return zero(sp_);
    MultiForm f = *this;
    for (auto& t : f.terms_) t.coeff *= k;
    return f;
}

MultiForm MultiForm::pow(int e) const {
    if (e < 0) throw Error("InvalidInput", "negative power");
    MultiForm acc = constant(sp_, Rational(1));
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

bool MultiForm::operator==(const MultiForm& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    if (!sp_ || !o.sp_) return false;
    if (!sp_->same_as(*o.sp_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

Rational MultiForm::eval(const std::vector<Rational>& point) const {
    if (terms_.empty()) return Rational(0);
    if (point.size() != static_cast<size_t>(sp_->nvars())) throw Error("InvalidInput", "point length mismatch");
    Rational acc(0);
    for (const auto& t : terms_) {
        Rational m = t.coeff;
        for (size_t v = 0; v < point.size(); ++v)
            for (int i = 0; i < t.exp[v]; ++i) m *= point[v];
        acc += m;
    }
    return acc;
}

Rational MultiForm::eval_point(const BlockPoint& p) const { return eval(flatten(sp_, p)); }

MultiForm MultiForm::derivative(int var) const {
    MultiForm f = zero(sp_);
    for (const auto& t : terms_) {
        int e = t.exp[static_cast<size_t>(var)];
        if (e == 0) continue;
        Term d = t;
        d.coeff *= e;
        --d.exp[static_cast<size_t>(var)];
        f.terms_.push_back(std::move(d));
    }
    f.canonicalize();
    return f;
}

MultiForm MultiForm::derivative(const std::string& var) const {
    int idx = sp_ ? sp_->var_index(var) : -1;
    if (idx < 0) throw Error("InvalidInput", "no variable named '" + var + "'");
    return derivative(idx);
}

int MultiForm::degree_in_var(int var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[static_cast<size_t>(var)]);
    return d;
}

int MultiForm::degree_in_block(int block) const {
    if (!sp_) return 0;
    auto [begin, end] = sp_->block_range(block);
    int d = 0;
    for (const auto& t : terms_) {
        int s = 0;
        for (int v = begin; v < end; ++v) s += t.exp[static_cast<size_t>(v)];
        d = std::max(d, s);
    }
    return d;
}

MultiForm MultiForm::substitute_scalar(int var, const Rational& value) const {
    MultiForm f = zero(sp_);
    for (const auto& t : terms_) {
        Term n = t;
        for (int i = 0; i < t.exp[static_cast<size_t>(var)]; ++i) n.coeff *= value;
        n.exp[static_cast<size_t>(var)] = 0;
        f.terms_.push_back(std::move(n));
    }
    f.canonicalize();
    return f;
}

MultiForm MultiForm::substitute_block_scalars(int block, const std::vector<Rational>& vals) const {
    auto [begin, end] = sp_->block_range(block);
    if (static_cast<int>(vals.size()) != end - begin) throw Error("InvalidInput", "block value count mismatch");
    MultiForm f = *this;
    for (int v = begin; v < end; ++v) f = f.substitute_scalar(v, vals[static_cast<size_t>(v - begin)]);
    return f;
}

MultiForm MultiForm::substitute_forms(const std::vector<std::pair<int, MultiForm>>& rep) const {
    if (terms_.empty()) return *this;
    // power caches per replaced variable
    std::map<int, std::vector<MultiForm>> pows;
    for (const auto& [v, g] : rep) {
        int d = degree_in_var(v);
        std::vector<MultiForm> p{constant(sp_, Rational(1))};
        for (int i = 1; i <= d; ++i) p.push_back(p.back() * g);
        pows.emplace(v, std::move(p));
    }
    MultiForm acc = zero(sp_);
    for (const auto& t : terms_) {
        Term kept = t;
        for (const auto& [v, g] : rep) kept.exp[static_cast<size_t>(v)] = 0;
        MultiForm part = monomial(sp_, kept.exp, kept.coeff);
        for (const auto& [v, g] : rep) {
            int e = t.exp[static_cast<size_t>(v)];
            if (e > 0) part = part * pows.at(v)[static_cast<size_t>(e)];
        }
        acc = acc + part;
    }
    return acc;
}

MultiForm MultiForm::apply_linear(int block, const std::vector<std::vector<Rational>>& M) const {
    auto [begin, end] = sp_->block_range(block);
    size_t k = static_cast<size_t>(end - begin);
    if (M.size() != k) throw Error("InvalidInput", "linear change has wrong row count");
    std::vector<std::pair<int, MultiForm>> rep;
    for (size_t i = 0; i < k; ++i) {
        if (M[i].size() != k) throw Error("InvalidInput", "linear change has wrong column count");
        MultiForm g = zero(sp_);
        for (size_t j = 0; j < k; ++j) {
            if (M[i][j] == 0) continue;
            g = g + var(sp_, sp_->var_name(begin + static_cast<int>(j))).scale(M[i][j]);
        }
        rep.emplace_back(begin + static_cast<int>(i), std::move(g));
    }
    return substitute_forms(rep);
}

std::vector<MultiForm> MultiForm::coeffs_in_var(int var) const {
    int d = degree_in_var(var);
    std::vector<MultiForm> out(static_cast<size_t>(d) + 1, zero(sp_));
    for (const auto& t : terms_) {
        Term n = t;
        int e = n.exp[static_cast<size_t>(var)];
        n.exp[static_cast<size_t>(var)] = 0;
        out[static_cast<size_t>(e)].terms_.push_back(std::move(n));
    }
    for (auto& f : out) f.canonicalize();
    return out;
}

std::vector<MultiForm> MultiForm::coeffs_in_block(int block) const {
    auto [begin, end] = sp_->block_range(block);
    if (end - begin != 2) throw Error("InvalidInput", "coefficient split needs a binary block");
    int d = degree_in_block(block);
    std::vector<MultiForm> out(static_cast<size_t>(d) + 1, zero(sp_));
    for (const auto& t : terms_) {
        int e0 = t.exp[static_cast<size_t>(begin)], e1 = t.exp[static_cast<size_t>(begin + 1)];
        if (e0 + e1 != d) throw Error("InvalidInput", "form is not homogeneous in the block");
        Term n = t;
        n.exp[static_cast<size_t>(begin)] = 0;
        n.exp[static_cast<size_t>(begin + 1)] = 0;
        out[static_cast<size_t>(e1)].terms_.push_back(std::move(n));
    }
    for (auto& f : out) f.canonicalize();
    return out;
}

BinaryForm MultiForm::restrict_to_binary(int block) const {
    auto [begin, end] = sp_->block_range(block);
    if (end - begin != 2) throw Error("InvalidInput", "binary restriction needs a 2-variable block");
    int d = degree_in_block(block);
    std::vector<Rational> c(static_cast<size_t>(d) + 1, Rational(0));
    for (const auto& t : terms_) {
        for (size_t v = 0; v < t.exp.size(); ++v)
            if (t.exp[v] != 0 && (static_cast<int>(v) < begin || static_cast<int>(v) >= end))
                throw Error("InvalidInput", "form involves variables outside the block");
        if (t.exp[static_cast<size_t>(begin)] + t.exp[static_cast<size_t>(begin + 1)] != d)
            throw Error("InvalidInput", "form is not homogeneous in the block");
        c[static_cast<size_t>(t.exp[static_cast<size_t>(begin + 1)])] = t.coeff;
    }
    return BinaryForm(d, std::move(c));
}

UniPoly MultiForm::restrict_to_uni(int var) const {
    int d = degree_in_var(var);
    std::vector<Rational> c(static_cast<size_t>(d) + 1, Rational(0));
    for (const auto& t : terms_) {
        for (size_t v = 0; v < t.exp.size(); ++v)
            if (t.exp[v] != 0 && static_cast<int>(v) != var)
                throw Error("InvalidInput", "form involves more than the chosen variable");
        c[static_cast<size_t>(t.exp[static_cast<size_t>(var)])] = t.coeff;
    }
    return UniPoly(std::move(c));
}

std::string MultiForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        Rational a = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
        if (out.empty())
            out += (t.coeff < 0) ? "-" : "";
        else
            out += (t.coeff < 0) ? " - " : " + ";
        std::string mono;
        for (size_t v = 0; v < t.exp.size(); ++v) {
            if (t.exp[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += sp_->var_name(static_cast<int>(v));
            if (t.exp[v] > 1) mono += "^" + std::to_string(t.exp[v]);
        }
        bool unit = (a == 1 && !mono.empty());
        if (!unit) out += to_string(a);
        if (!mono.empty()) {
            if (!unit) out += "*";
            out += mono;
        }
    }
    return out;
}

MultiForm scaled(const MultiForm& x, const Rational& k) { return x.scale(k); }

Rational numeric_content(const MultiForm& f) {
    if (f.is_zero()) return Rational(0);
    Integer g(0), l(1);
    for (const auto& t : f.terms()) {
        g = gcd(g, num(t.coeff));
        l = lcm(l, den(t.coeff));
    }
    if (g < 0) g = -g;
    return Rational(g, l);
}

MultiForm strip_monomial_content(const MultiForm& f, std::vector<int>* removed) {
    if (f.is_zero()) {
        if (removed) removed->assign(f.space() ? static_cast<size_t>(f.space()->nvars()) : 0, 0);
        return f;
    }
    size_t n = f.terms().front().exp.size();
    std::vector<int> mins(n, INT32_MAX);
    for (const auto& t : f.terms())
        for (size_t v = 0; v < n; ++v) mins[v] = std::min(mins[v], t.exp[v]);
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        Term m = t;
        for (size_t v = 0; v < n; ++v) m.exp[v] -= mins[v];
        out.push_back(std::move(m));
    }
    if (removed) *removed = mins;
    return MultiForm::from_terms(f.space(), std::move(out), false);
}

std::optional<MultiForm> exact_divide(const MultiForm& f, const MultiForm& g) {
    if (g.is_zero()) throw Error("InvalidInput", "division by the zero form");
    if (f.is_zero()) return MultiForm::zero(f.space() ? f.space() : g.space());
    MultiForm rem = f;
    std::vector<Term> quot;
    const Term& glead = g.terms().front();
    while (!rem.is_zero()) {
        const Term& rlead = rem.terms().front();
        Term t;
        t.exp.resize(rlead.exp.size());
        for (size_t v = 0; v < t.exp.size(); ++v) {
            int e = rlead.exp[v] - glead.exp[v];
            if (e < 0) return std::nullopt;
            t.exp[v] = e;
        }
        t.coeff = rlead.coeff / glead.coeff;
        quot.push_back(t);
        rem = rem - MultiForm::monomial(rem.space(), t.exp, t.coeff) * g;
    }
    return MultiForm::from_terms(g.space(), std::move(quot), false);
}

MultiForm resultant_in_var(const MultiForm& f, const MultiForm& g, int var) {
    const SpacePtr& sp = f.space() ? f.space() : g.space();
    if (f.is_zero() || g.is_zero()) return MultiForm::zero(sp);
    std::vector<MultiForm> fc = f.coeffs_in_var(var);
    std::vector<MultiForm> gc = g.coeffs_in_var(var);
    int m = static_cast<int>(fc.size()) - 1, n = static_cast<int>(gc.size()) - 1;
    size_t sz = static_cast<size_t>(m + n);
    if (sz == 0) return MultiForm::constant(sp, Rational(1));
    // Sylvester matrix, highest-degree coefficients first
    std::vector<std::vector<MultiForm>> a(sz, std::vector<MultiForm>(sz, MultiForm::zero(sp)));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) a[static_cast<size_t>(row)][static_cast<size_t>(row + j)] = fc[static_cast<size_t>(m - j)];
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j) a[static_cast<size_t>(n + row)][static_cast<size_t>(row + j)] = gc[static_cast<size_t>(n - j)];
    // Bareiss fraction-free elimination
    MultiForm prev = MultiForm::constant(sp, Rational(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < sz; ++k) {
        size_t piv = k;
        while (piv < sz && a[piv][k].is_zero()) ++piv;
        if (piv == sz) return MultiForm::zero(sp);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < sz; ++i) {
            for (size_t j = k + 1; j < sz; ++j) {
                MultiForm numf = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                auto q = exact_divide(numf, prev);
                if (!q) throw Error("InvalidInput", "fraction-free elimination lost exactness");
                a[i][j] = *q;
            }
            a[i][k] = MultiForm::zero(sp);
        }
        prev = a[k][k];
    }
    MultiForm det = a[sz - 1][sz - 1];
    return sign < 0 ? -det : det;
}

BinaryForm binary_in_vars(const MultiForm& f, int v0, int v1) {
    if (f.is_zero()) return BinaryForm(0, {Rational(0)});
    int d = 0;
    for (const auto& t : f.terms())
        d = std::max(d, t.exp[static_cast<size_t>(v0)] + t.exp[static_cast<size_t>(v1)]);
    std::vector<Rational> c(static_cast<size_t>(d) + 1, Rational(0));
    for (const auto& t : f.terms()) {
        for (size_t v = 0; v < t.exp.size(); ++v)
            if (t.exp[v] != 0 && static_cast<int>(v) != v0 && static_cast<int>(v) != v1)
                throw Error("InvalidInput", "form involves variables beyond the chosen pair");
        if (t.exp[static_cast<size_t>(v0)] + t.exp[static_cast<size_t>(v1)] != d)
            throw Error("InvalidInput", "form is not homogeneous in the chosen pair");
        c[static_cast<size_t>(t.exp[static_cast<size_t>(v1)])] = t.coeff;
    }
    return BinaryForm(d, std::move(c));
}

}  // namespace cyq
