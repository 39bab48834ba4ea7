#pragma once

#include <string>

#include "json.hpp"
#include "twocat/algebra.hpp"
#include "twocat/homgroupoid.hpp"
#include "twocat/interval.hpp"

// JSON instance-file formats shared by the CLI and the tests.  Every number
// travels as an exact scalar or rational string; insertion order is
// preserved so identical inputs dump to identical bytes.

namespace twocat::ser {

using json = nlohmann::ordered_json;

// Command-line field tokens: "gauss" or "fp:<p>".
std::string field_token(const exact::FieldDesc& f);
exact::FieldDesc field_from_token(const std::string& token);

// Matrices are bare 2-d arrays of entry strings; the field comes from the
// enclosing document (or flag) so entries stay unambiguous to parse.
json matrix_to_json(const exact::Matrix& m);
exact::Matrix matrix_from_json(const json& j, const exact::FieldDesc& f);

// Algebra definition: {name, field, ambient, generators}.  Loading closes
// the generators under products, so any generating set denotes its span.
// Basis order matters downstream (hom files index into it): an algebra that
// was itself produced by a closure round-trips with its basis intact, so
// derive instance files from a loaded handle, not the original.
json algebra_to_json(const alg::AlgebraRef& a);
alg::AlgebraRef algebra_from_json(const json& j);

// Hom definition: {name, source, target, images}, one image matrix per
// source basis element.  Loading certifies the result is a unital hom.
json hom_to_json(const alg::AlgHomRef& h);
alg::AlgHomRef hom_from_json(const json& j, const alg::AlgebraRef& src,
                             const alg::AlgebraRef& dst);

// Units store element and inverse; the Unit constructor re-verifies both
// products on load, so a tampered file cannot smuggle in a non-unit.
json unit_to_json(const alg::Unit& u);
alg::Unit unit_from_json(const json& j, const alg::AlgebraRef& parent);

// 2-cell instance: {a, b} unit payloads (hom identities live in hom files).
json cell_to_json(const grpd::TwoCell& c);

// Intervals: {left, right} plus a label when one is set.
json interval_to_json(const ivl::Interval& I);
ivl::Interval interval_from_json(const json& j);

// PL maps: {breakpoints, values} rational strings, endpoints included.
// Domain/codomain extents are implied by the first/last entries; explicit
// {domain, codomain} keys appear only for non-surjective embeddings.
json plmap_to_json(const ivl::PLMap& f);
ivl::PLMap plmap_from_json(const json& j);

// Interior-supported diffeo: the PL map keys plus {collar}.
json interior_to_json(const ivl::InteriorDiffeo& c);
ivl::InteriorDiffeo interior_from_json(const json& j);

// Verdict documents.  status: verified | refuted | unknown | error, with a
// witness payload exactly when verified and a counterexample exactly when
// refuted; unknown/error carry a free-form detail instead.  Timing is kept
// out of the document so equal inputs yield byte-identical output.
json verdict_verified(json witness);
json verdict_refuted(json counterexample);
json verdict_unknown(json detail);
json verdict_error(const std::string& message);

// 0 verified, 1 refuted, 2 otherwise (mirrors the process exit code).
int verdict_exit_code(const json& v);

// Structural validity per schemas/verdict.schema.json.
bool verdict_valid(const json& v, std::string* why = nullptr);

// File plumbing.  Reads throw InputError with the path and parse position;
// writes are atomic enough for our purposes (single stream, newline at EOF).
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
std::string json_str(const json& j);

}  // namespace twocat::ser
