#pragma once

#include <string>

#include <json.hpp>

#include "cyq/constructions.hpp"
#include "cyq/fibration.hpp"
#include "cyq/genus1.hpp"
#include "cyq/modp.hpp"
#include "cyq/multiform.hpp"
#include "cyq/propagate.hpp"
#include "cyq/reduction.hpp"

namespace cyq {

// Key order is part of the format: reports must be byte-stable across reruns.
using Json = nlohmann::ordered_json;

// All numbers that can be non-integral travel as exact "p/q" strings.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {vars, grading, terms: [{exp, coeff}]}; terms in canonical order
Json form_to_json(const MultiForm& f);
// the form must quote the given space's variables and grading verbatim
MultiForm form_from_json(const Json& j, const SpacePtr& sp);

Json block_point_to_json(const BlockPoint& p);
BlockPoint block_point_from_json(const Json& j);

// {"x": "p/q", "y": "r/s"} or the string "infinity"
Json ecpoint_to_json(const ECPoint& p);
ECPoint ecpoint_from_json(const Json& j);

// ascending coefficients as rational strings
Json unipoly_to_json(const UniPoly& f);
UniPoly unipoly_from_json(const Json& j);

// {ambient: {kind, param}, grading, blocks, defining, base_blocks}; the
// defining key holds one form, an array of forms, or a 2 x 3 matrix of forms;
// families carry {family: {c, d, f}} instead of an ambient. Loading rebuilds
// through the factories, so every file re-passes their validation.
Json space_to_json(const FiberedSpace& s);
FiberedSpace space_from_json(const Json& j);

// one-way map transcript: [{name, forward, backward}] per step
Json birational_to_json(const BirationalRecord& r);

Json audit_to_json(const AuditReport& rep);
AuditReport audit_from_json(const Json& j);

// {p, space_id, status, witness?, counts}
Json certificate_to_json(const SmoothnessCertificate& c, const std::string& space_id);

Json record_to_json(const PointRecord& r);
PointRecord record_from_json(const Json& j);

// JSON lines: warnings ({"warning": ...}), then one record per line, then
// skip reports tagged {"skip": {seed_index, reason}}
std::string stream_to_lines(const PointStream& s);
PointStream stream_from_lines(const std::string& text);

// {multidegree, points_used, kernel_dim, kernel_basis}
Json density_to_json(const DensityWitness& w);
DensityWitness density_from_json(const Json& j, const SpacePtr& sp);

Json construction1_to_json(const Construction1Bundle& b);
Construction1Spec construction1_spec_from_json(const Json& j);
Construction1Bundle construction1_from_json(const Json& j);

Json construction2_to_json(const Construction2Tower& t);
Construction2Tower construction2_from_json(const Json& j);

Json construction3_to_json(const Construction3Data& d);
Construction3Data construction3_from_json(const Json& j);

// two-space indentation, trailing newline, keys in insertion order
std::string dump_json(const Json& j);
// throws Error("InvalidInput") instead of nlohmann exceptions
Json parse_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cyq
