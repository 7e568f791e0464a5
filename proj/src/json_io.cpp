#include "cyq/json_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace cyq {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw Error("InvalidInput", what);
}

const Json& field(const Json& j, const std::string& key) {
    need(j.is_object(), "expected an object with a '" + key + "' field");
    auto it = j.find(key);
    need(it != j.end(), "missing field '" + key + "'");
    return *it;
}

int int_field(const Json& j, const std::string& key) {
    const Json& v = field(j, key);
    need(v.is_number_integer(), "field '" + key + "' must be an integer");
    return v.get<int>();
}

std::vector<int> int_vector(const Json& j, const std::string& what) {
    need(j.is_array(), what + " must be an array of integers");
    std::vector<int> out;
    for (const auto& e : j) {
        need(e.is_number_integer(), what + " must be an array of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

std::vector<Rational> rational_vector(const Json& j, const std::string& what) {
    need(j.is_array(), what + " must be an array of rational strings");
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

Json rational_array(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

Json ambient_to_json(const SpacePtr& sp) {
    Json out;
    out["kind"] = sp->kind;
    out["param"] = sp->param;
    return out;
}

Json grading_to_json(const SpacePtr& sp) {
    Json out = Json::array();
    for (const auto& w : sp->weights) out.push_back(w);
    return out;
}

Json blocks_to_json(const SpacePtr& sp) {
    Json out = Json::array();
    for (const auto& b : sp->blocks) {
        Json o;
        o["label"] = b.label;
        o["vars"] = b.vars;
        out.push_back(o);
    }
    return out;
}

void check_space_tables(const Json& j, const SpacePtr& sp) {
    if (j.contains("grading")) {
        const Json& g = field(j, "grading");
        need(g.is_array() && g.size() == sp->weights.size(), "grading does not match the ambient");
        for (size_t i = 0; i < sp->weights.size(); ++i)
            need(int_vector(g[i], "grading row") == sp->weights[i], "grading does not match the ambient");
    }
    if (j.contains("blocks")) {
        const Json& b = field(j, "blocks");
        need(b.is_array() && b.size() == sp->blocks.size(), "blocks do not match the ambient");
        for (size_t i = 0; i < sp->blocks.size(); ++i) {
            need(field(b[i], "vars").get<std::vector<std::string>>() == sp->blocks[i].vars,
                 "blocks do not match the ambient");
        }
    }
}

Json matrix_to_json(const DegeneracyMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < 2; ++r) {
        Json row = Json::array();
        for (int j = 0; j < 3; ++j) row.push_back(form_to_json(m.entry[static_cast<size_t>(r)][static_cast<size_t>(j)]));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    need(j.is_string(), "rationals are strings like \"p/q\"");
    return parse_rational(j.get<std::string>());
}

Json form_to_json(const MultiForm& f) {
    const SpacePtr& sp = f.space();
    need(sp != nullptr, "cannot serialize a form with no space");
    Json out;
    Json vars = Json::array();
    for (int i = 0; i < sp->nvars(); ++i) vars.push_back(sp->var_name(i));
    out["vars"] = vars;
    out["grading"] = grading_to_json(sp);
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        Json o;
        o["exp"] = t.exp;
        o["coeff"] = to_string(t.coeff);
        terms.push_back(o);
    }
    out["terms"] = terms;
    return out;
}

MultiForm form_from_json(const Json& j, const SpacePtr& sp) {
    need(sp != nullptr, "a target space is required");
    const Json& vars = field(j, "vars");
    need(vars.is_array() && static_cast<int>(vars.size()) == sp->nvars(),
         "the form quotes different variables than the space");
    for (int i = 0; i < sp->nvars(); ++i)
        need(vars[static_cast<size_t>(i)] == sp->var_name(i),
             "the form quotes different variables than the space");
    check_space_tables(j, sp);
    const Json& terms = field(j, "terms");
    need(terms.is_array(), "terms must be an array");
    std::vector<Term> parsed;
    for (const auto& t : terms) {
        Term term;
        term.exp = int_vector(field(t, "exp"), "exponent vector");
        need(static_cast<int>(term.exp.size()) == sp->nvars(), "exponent vector has the wrong length");
        term.coeff = rational_from_json(field(t, "coeff"));
        parsed.push_back(std::move(term));
    }
    if (parsed.empty()) return MultiForm::zero(sp);
    return MultiForm::from_terms(sp, std::move(parsed));
}

Json block_point_to_json(const BlockPoint& p) {
    Json out = Json::array();
    for (const auto& block : p.coords) out.push_back(rational_array(block));
    return out;
}

BlockPoint block_point_from_json(const Json& j) {
    need(j.is_array(), "a point is an array of coordinate blocks");
    BlockPoint p;
    for (const auto& block : j) p.coords.push_back(rational_vector(block, "coordinate block"));
    return p;
}

Json ecpoint_to_json(const ECPoint& p) {
    if (p.inf) return Json("infinity");
    Json out;
    out["x"] = to_string(p.x);
    out["y"] = to_string(p.y);
    return out;
}

ECPoint ecpoint_from_json(const Json& j) {
    if (j.is_string()) {
        need(j.get<std::string>() == "infinity", "unknown curve point label");
        return ECPoint::infinity();
    }
    return ECPoint::affine(rational_from_json(field(j, "x")), rational_from_json(field(j, "y")));
}

Json unipoly_to_json(const UniPoly& f) { return rational_array(f.coeffs()); }

UniPoly unipoly_from_json(const Json& j) {
    return UniPoly(rational_vector(j, "polynomial coefficients"));
}

Json space_to_json(const FiberedSpace& s) {
    Json out;
    if (s.is_family()) {
        Json fam;
        fam["c"] = unipoly_to_json(s.family->c);
        fam["d"] = unipoly_to_json(s.family->d);
        fam["f"] = unipoly_to_json(s.family->f);
        out["family"] = fam;
        return out;
    }
    need(s.ambient != nullptr, "cannot serialize a space with no ambient");
    out["ambient"] = ambient_to_json(s.ambient);
    out["grading"] = grading_to_json(s.ambient);
    out["blocks"] = blocks_to_json(s.ambient);
    if (s.is_degeneracy()) {
        out["defining"] = matrix_to_json(*s.matrix);
    } else if (s.defining.size() == 1) {
        out["defining"] = form_to_json(s.defining[0]);
    } else {
        Json arr = Json::array();
        for (const auto& f : s.defining) arr.push_back(form_to_json(f));
        out["defining"] = arr;
    }
    out["base_blocks"] = s.base_blocks;
    return out;
}

FiberedSpace space_from_json(const Json& j) {
    need(j.is_object(), "a space file is an object");
    if (j.contains("family")) {
        const Json& fam = field(j, "family");
        return quadric_pair_family(unipoly_from_json(field(fam, "c")), unipoly_from_json(field(fam, "d")),
                                   unipoly_from_json(field(fam, "f")));
    }
    const Json& amb = field(j, "ambient");
    SpacePtr sp = GradedSpace::by_kind(field(amb, "kind").get<std::string>(), int_field(amb, "param"));
    check_space_tables(j, sp);
    std::vector<int> base = int_vector(field(j, "base_blocks"), "base_blocks");
    const Json& def = field(j, "defining");
    if (def.is_object()) return hypersurface_space(form_from_json(def, sp), std::move(base));
    need(def.is_array() && !def.empty(), "defining must be a form, an array, or a matrix");
    if (def.front().is_array()) {
        need(def.size() == 2 && def[0].size() == 3 && def[1].size() == 3,
             "a defining matrix has two rows of three forms");
        DegeneracyMatrix m;
        for (size_t r = 0; r < 2; ++r)
            for (size_t c = 0; c < 3; ++c) m.entry[r][c] = form_from_json(def[r][c], sp);
        return degeneracy_space(sp, std::move(m), std::move(base));
    }
    std::vector<MultiForm> forms;
    for (const auto& f : def) forms.push_back(form_from_json(f, sp));
    return intersection_space(sp, std::move(forms), std::move(base));
}

Json birational_to_json(const BirationalRecord& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        Json o;
        o["name"] = s->name();
        o["forward"] = s->forward_desc();
        o["backward"] = s->backward_desc();
        steps.push_back(o);
    }
    Json out;
    out["steps"] = steps;
    return out;
}

Json audit_to_json(const AuditReport& rep) {
    Json steps = Json::array();
    for (const auto& s : rep.steps) {
        Json o;
        o["id"] = s.id;
        o["status"] = s.status;
        o["witness"] = s.witness;
        steps.push_back(o);
    }
    Json out;
    out["steps"] = steps;
    return out;
}

AuditReport audit_from_json(const Json& j) {
    AuditReport rep;
    const Json& steps = field(j, "steps");
    need(steps.is_array(), "steps must be an array");
    for (const auto& s : steps) {
        AuditStep step;
        step.id = field(s, "id").get<std::string>();
        step.status = field(s, "status").get<std::string>();
        need(step.status == "pass" || step.status == "fail", "a step status is pass or fail");
        step.witness = field(s, "witness").get<std::string>();
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

Json certificate_to_json(const SmoothnessCertificate& c, const std::string& space_id) {
    Json out;
    out["p"] = c.p;
    out["space_id"] = space_id;
    out["status"] = c.status == SmoothnessCertificate::Status::Certified ? "Certified" : "Inconclusive";
    if (c.witness) out["witness"] = *c.witness;
    Json counts;
    counts["ambient_examined"] = to_string(c.ambient_examined);
    counts["locus_points"] = to_string(c.locus_points);
    out["counts"] = counts;
    return out;
}

Json record_to_json(const PointRecord& r) {
    Json out;
    out["base"] = block_point_to_json(r.base);
    out["point"] = block_point_to_json(r.point);
    out["n"] = r.n;
    out["backend"] = r.backend;
    return out;
}

PointRecord record_from_json(const Json& j) {
    PointRecord r;
    r.base = block_point_from_json(field(j, "base"));
    r.point = block_point_from_json(field(j, "point"));
    r.n = int_field(j, "n");
    r.backend = field(j, "backend").get<std::string>();
    return r;
}

std::string stream_to_lines(const PointStream& s) {
    std::ostringstream out;
    for (const auto& w : s.warnings) {
        Json o;
        o["warning"] = w;
        out << o.dump() << "\n";
    }
    for (const auto& r : s.records) out << record_to_json(r).dump() << "\n";
    for (const auto& k : s.skips) {
        Json inner;
        inner["seed_index"] = k.seed_index;
        inner["reason"] = k.reason;
        Json o;
        o["skip"] = inner;
        out << o.dump() << "\n";
    }
    return out.str();
}

PointStream stream_from_lines(const std::string& text) {
    PointStream s;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = parse_json(line);
        if (j.contains("warning")) {
            s.warnings.push_back(field(j, "warning").get<std::string>());
        } else if (j.contains("skip")) {
            const Json& inner = field(j, "skip");
            s.skips.push_back(SkipReport{int_field(inner, "seed_index"),
                                         field(inner, "reason").get<std::string>()});
        } else {
            s.records.push_back(record_from_json(j));
        }
    }
    return s;
}

Json density_to_json(const DensityWitness& w) {
    Json out;
    out["multidegree"] = w.multidegree;
    out["points_used"] = w.points_used;
    out["kernel_dim"] = w.kernel_dim;
    Json basis = Json::array();
    for (const auto& f : w.kernel) basis.push_back(form_to_json(f));
    out["kernel_basis"] = basis;
    return out;
}

DensityWitness density_from_json(const Json& j, const SpacePtr& sp) {
    DensityWitness w;
    w.multidegree = int_vector(field(j, "multidegree"), "multidegree");
    w.points_used = int_field(j, "points_used");
    w.kernel_dim = int_field(j, "kernel_dim");
    const Json& basis = field(j, "kernel_basis");
    need(basis.is_array(), "kernel_basis must be an array");
    for (const auto& f : basis) w.kernel.push_back(form_from_json(f, sp));
    need(static_cast<int>(w.kernel.size()) == w.kernel_dim, "kernel_dim disagrees with the basis");
    return w;
}

Json construction1_to_json(const Construction1Bundle& b) {
    Json spec;
    spec["cubic"] = form_to_json(b.spec.cubic);
    spec["O"] = block_point_to_json(b.spec.O);
    spec["P"] = block_point_to_json(b.spec.P);
    if (b.spec.second_cubic) spec["second_cubic"] = form_to_json(*b.spec.second_cubic);
    spec["dimension"] = b.spec.dimension;
    spec["seed"] = b.spec.seed;
    Json out;
    out["spec"] = spec;
    out["S"] = space_to_json(b.S);
    out["Y"] = space_to_json(b.Y);
    out["X"] = space_to_json(b.X);
    out["O"] = block_point_to_json(b.O);
    out["P"] = block_point_to_json(b.P);
    out["audit"] = audit_to_json(b.audit);
    return out;
}

Construction1Spec construction1_spec_from_json(const Json& j) {
    Construction1Spec spec;
    auto sp = GradedSpace::p2();
    spec.cubic = form_from_json(field(j, "cubic"), sp);
    spec.O = block_point_from_json(field(j, "O"));
    spec.P = block_point_from_json(field(j, "P"));
    if (j.contains("second_cubic")) spec.second_cubic = form_from_json(field(j, "second_cubic"), sp);
    spec.dimension = int_field(j, "dimension");
    const Json& seed = field(j, "seed");
    need(seed.is_number_unsigned() || seed.is_number_integer(), "seed must be an integer");
    spec.seed = seed.get<uint64_t>();
    return spec;
}

Construction1Bundle construction1_from_json(const Json& j) {
    Construction1Bundle b;
    b.spec = construction1_spec_from_json(field(j, "spec"));
    b.S = space_from_json(field(j, "S"));
    b.Y = space_from_json(field(j, "Y"));
    b.X = space_from_json(field(j, "X"));
    b.O = block_point_from_json(field(j, "O"));
    b.P = block_point_from_json(field(j, "P"));
    b.audit = audit_from_json(field(j, "audit"));
    return b;
}

Json construction2_to_json(const Construction2Tower& t) {
    Json out;
    Json levels = Json::array();
    for (const auto& f : t.levels) levels.push_back(form_to_json(f));
    out["levels"] = levels;
    out["seed"] = t.seed;
    out["audit"] = audit_to_json(t.audit);
    return out;
}

Construction2Tower construction2_from_json(const Json& j) {
    Construction2Tower t;
    const Json& levels = field(j, "levels");
    need(levels.is_array() && !levels.empty(), "a tower has at least one level");
    for (size_t k = 0; k < levels.size(); ++k)
        t.levels.push_back(form_from_json(levels[k], GradedSpace::product_p1(static_cast<int>(k) + 2)));
    const Json& seed = field(j, "seed");
    need(seed.is_number_unsigned() || seed.is_number_integer(), "seed must be an integer");
    t.seed = seed.get<uint64_t>();
    t.audit = audit_from_json(field(j, "audit"));
    return t;
}

Json construction3_to_json(const Construction3Data& d) {
    Json out;
    out["c"] = unipoly_to_json(d.c);
    out["d"] = unipoly_to_json(d.d);
    out["f"] = unipoly_to_json(d.f);
    Json section;
    need(d.section.substitutions.has_value(), "the family section carries substitutions");
    section["a"] = unipoly_to_json(d.section.substitutions->first);
    section["b"] = unipoly_to_json(d.section.substitutions->second);
    section["degree"] = d.section.degree;
    out["section"] = section;
    out["family"] = space_to_json(d.family);
    out["surface"] = space_to_json(d.surface);
    out["threefold"] = space_to_json(d.threefold);
    out["O"] = rational_array(d.O.coords);
    out["P"] = rational_array(d.P.coords);
    Json curve;
    curve["A"] = to_string(d.shortform.A);
    curve["B"] = to_string(d.shortform.B);
    out["shortform"] = curve;
    out["audit"] = audit_to_json(d.audit);
    return out;
}

Construction3Data construction3_from_json(const Json& j) {
    Construction3Data d;
    d.c = unipoly_from_json(field(j, "c"));
    d.d = unipoly_from_json(field(j, "d"));
    d.f = unipoly_from_json(field(j, "f"));
    d.family = space_from_json(field(j, "family"));
    const Json& section = field(j, "section");
    d.section = family_multisection(d.family, unipoly_from_json(field(section, "a")),
                                    unipoly_from_json(field(section, "b")));
    need(d.section.degree == int_field(section, "degree"), "section degree mismatch");
    d.surface = space_from_json(field(j, "surface"));
    d.threefold = space_from_json(field(j, "threefold"));
    d.O = AffinePoint{rational_vector(field(j, "O"), "marked point")};
    d.P = AffinePoint{rational_vector(field(j, "P"), "marked point")};
    const Json& curve = field(j, "shortform");
    d.shortform = WeierstrassCurve{rational_from_json(field(curve, "A")), rational_from_json(field(curve, "B"))};
    d.audit = audit_from_json(field(j, "audit"));
    return d;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("InvalidInput", "malformed json");
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("InvalidInput", "cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("InvalidInput", "cannot write " + path);
    out << text;
    if (!out) throw Error("InvalidInput", "cannot write " + path);
}

}  // namespace cyq
