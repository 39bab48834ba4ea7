#include "twocat/serialize.hpp"

#include <fstream>
#include <utility>

#include "twocat/errors.hpp"

namespace twocat::ser {

using exact::FieldDesc;
using exact::Matrix;
using exact::Rat;
using exact::Scalar;

namespace {

const json& need(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(what + ": missing key '" + key + "'");
  return *it;
}

std::string need_string(const json& j, const char* key, const std::string& what) {
  const json& v = need(j, key, what);
  if (!v.is_string()) throw InputError(what + ": key '" + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t need_count(const json& j, const char* key, const std::string& what) {
  const json& v = need(j, key, what);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
    throw InputError(what + ": key '" + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

Rat rat_at(const json& v, const std::string& what) {
  if (!v.is_string()) throw InputError(what + ": expected a rational string");
  try {
    return exact::rat_parse(v.get<std::string>());
  } catch (const ParseError& e) {
    throw InputError(what + ": " + e.what());
  }
}

std::vector<Rat> rat_list(const json& j, const char* key, const std::string& what) {
  const json& v = need(j, key, what);
  if (!v.is_array() || v.empty())
    throw InputError(what + ": key '" + key + "' must be a nonempty array");
  std::vector<Rat> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(rat_at(v[i], what + ": " + key + "[" + std::to_string(i) + "]"));
  return out;
}

json rat_json(const std::vector<Rat>& v) {
  json out = json::array();
  for (const Rat& q : v) out.push_back(exact::rat_str(q));
  return out;
}

}  // namespace

std::string field_token(const FieldDesc& f) {
  return f.kind == exact::FieldKind::GaussianRational ? "gauss"
                                                      : "fp:" + std::to_string(f.modulus);
}

FieldDesc field_from_token(const std::string& token) {
  if (token == "gauss") return FieldDesc::rationals();
  if (token.rfind("fp:", 0) == 0) {
    const std::string digits = token.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("field token '" + token + "': modulus must be a positive integer");
    try {
      return FieldDesc::prime(std::stoll(digits));
    } catch (const FieldMismatch& e) {
      throw InputError("field token '" + token + "': " + e.what());
    } catch (const std::out_of_range&) {
      throw InputError("field token '" + token + "': modulus out of range");
    }
  }
  throw InputError("unknown field token '" + token + "' (expected gauss or fp:<p>)");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const FieldDesc& f) {
  if (!j.is_array() || j.empty()) throw InputError("matrix: expected a nonempty array of rows");
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& r = j[i];
    if (!r.is_array() || r.empty())
      throw InputError("matrix row " + std::to_string(i) + ": expected a nonempty array");
    if (r.size() != j[0].size())
      throw InputError("matrix row " + std::to_string(i) + ": ragged row length");
    std::vector<Scalar> row;
    row.reserve(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
      const json& e = r[k];
      const std::string where =
          "matrix entry (" + std::to_string(i) + "," + std::to_string(k) + ")";
      if (!e.is_string()) throw InputError(where + ": expected a scalar string");
      try {
        row.push_back(Scalar::parse(e.get<std::string>(), f));
      } catch (const ParseError& pe) {
        throw InputError(where + ": " + pe.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return Matrix::from_rows(rows);
}

json algebra_to_json(const alg::AlgebraRef& a) {
  json out;
  out["name"] = a->name();
  out["field"] = field_token(a->field());
  out["ambient"] = a->ambient();
  json gens = json::array();
  for (std::size_t i = 0; i < a->dim(); ++i) gens.push_back(matrix_to_json(a->basis(i)));
  out["generators"] = std::move(gens);
  return out;
}

alg::AlgebraRef algebra_from_json(const json& j) {
  const std::string name = need_string(j, "name", "algebra");
  const FieldDesc f = field_from_token(need_string(j, "field", "algebra " + name));
  const std::size_t ambient = need_count(j, "ambient", "algebra " + name);
  const json& gens = need(j, "generators", "algebra " + name);
  if (!gens.is_array()) throw InputError("algebra " + name + ": generators must be an array");
  std::vector<Matrix> mats;
  mats.reserve(gens.size() + 1);
  // Seeding with the identity pins the ambient size even for an empty list.
  mats.push_back(Matrix::identity(ambient, f));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Matrix m = matrix_from_json(gens[i], f);
    if (m.rows() != ambient || m.cols() != ambient)
      throw InputError("algebra " + name + ": generator " + std::to_string(i) + " is " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       ", expected " + std::to_string(ambient) + "x" + std::to_string(ambient));
    mats.push_back(std::move(m));
  }
  return alg::Algebra::closure(name, mats);
}

json hom_to_json(const alg::AlgHomRef& h) {
  json out;
  out["name"] = h->name();
  out["source"] = h->src()->name();
  out["target"] = h->dst()->name();
  json images = json::array();
  for (std::size_t i = 0; i < h->src()->dim(); ++i)
    images.push_back(matrix_to_json(h->image_matrix(i)));
  out["images"] = std::move(images);
  return out;
}

alg::AlgHomRef hom_from_json(const json& j, const alg::AlgebraRef& src,
                             const alg::AlgebraRef& dst) {
  const std::string name = need_string(j, "name", "hom");
  const std::string what = "hom " + name;
  const std::string source = need_string(j, "source", what);
  const std::string target = need_string(j, "target", what);
  if (source != src->name())
    throw InputError(what + ": source label '" + source + "' does not match algebra '" +
                     src->name() + "'");
  if (target != dst->name())
    throw InputError(what + ": target label '" + target + "' does not match algebra '" +
                     dst->name() + "'");
  const json& images = need(j, "images", what);
  if (!images.is_array() || images.size() != src->dim())
    throw InputError(what + ": expected " + std::to_string(src->dim()) +
                     " image matrices, one per source basis element");
  std::vector<alg::AlgebraElement> elems;
  elems.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    Matrix m = matrix_from_json(images[i], dst->field());
    if (m.rows() != dst->ambient() || m.cols() != dst->ambient())
      throw InputError(what + ": image " + std::to_string(i) + " has the wrong shape");
    auto coords = dst->coords_of(m);
    if (!coords)
      throw InputError(what + ": image " + std::to_string(i) +
                       " lies outside the target algebra");
    elems.push_back(dst->from_coords(std::move(*coords)));
  }
  return alg::AlgHom::make(name, src, dst, std::move(elems));
}

json unit_to_json(const alg::Unit& u) {
  json out;
  out["element"] = matrix_to_json(u.elem().to_matrix());
  out["inverse"] = matrix_to_json(u.inv().to_matrix());
  return out;
}

alg::Unit unit_from_json(const json& j, const alg::AlgebraRef& parent) {
  const FieldDesc f = parent->field();
  Matrix m = matrix_from_json(need(j, "element", "unit"), f);
  Matrix mi = matrix_from_json(need(j, "inverse", "unit"), f);
  auto cm = parent->coords_of(m);
  auto cmi = parent->coords_of(mi);
  if (!cm || !cmi) throw InputError("unit: element lies outside the algebra '" +
                                    parent->name() + "'");
  // The Unit constructor re-verifies u * u^-1 = u^-1 * u = 1.
  return alg::Unit(parent->from_coords(std::move(*cm)), parent->from_coords(std::move(*cmi)));
}

json cell_to_json(const grpd::TwoCell& c) {
  json out;
  out["a"] = unit_to_json(c.a());
  out["b"] = unit_to_json(c.b());
  return out;
}

json interval_to_json(const ivl::Interval& I) {
  json out;
  out["left"] = exact::rat_str(I.left);
  out["right"] = exact::rat_str(I.right);
  if (!I.label.empty()) out["label"] = I.label;
  return out;
}

ivl::Interval interval_from_json(const json& j) {
  Rat l = rat_at(need(j, "left", "interval"), "interval: left");
  Rat r = rat_at(need(j, "right", "interval"), "interval: right");
  std::string label;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw InputError("interval: label must be a string");
    label = j.at("label").get<std::string>();
  }
  return ivl::Interval(std::move(l), std::move(r), std::move(label));
}

json plmap_to_json(const ivl::PLMap& f) {
  json out;
  // Breakpoints always include the endpoints, so the domain extent is
  // implied; the codomain needs spelling out only when the map is not onto.
  if (!f.surjective()) out["codomain"] = interval_to_json(f.cod());
  out["breakpoints"] = rat_json(f.xs());
  out["values"] = rat_json(f.ys());
  return out;
}

ivl::PLMap plmap_from_json(const json& j) {
  std::vector<Rat> xs = rat_list(j, "breakpoints", "pl map");
  std::vector<Rat> ys = rat_list(j, "values", "pl map");
  if (xs.size() != ys.size())
    throw InputError("pl map: breakpoints and values must have equal length");
  if (xs.size() < 2) throw InputError("pl map: need at least the two endpoints");
  ivl::Interval dom(xs.front(), xs.back());
  ivl::Interval cod = j.contains("codomain") ? interval_from_json(j.at("codomain"))
                                             : ivl::Interval(ys.front(), ys.back());
  return ivl::PLMap(std::move(dom), std::move(cod), std::move(xs), std::move(ys));
}

json interior_to_json(const ivl::InteriorDiffeo& c) {
  json out = plmap_to_json(c.map());
  out["collar"] = exact::rat_str(c.collar());
  return out;
}

ivl::InteriorDiffeo interior_from_json(const json& j) {
  ivl::PLMap map = plmap_from_json(j);
  Rat collar = rat_at(need(j, "collar", "interior diffeo"), "interior diffeo: collar");
  return ivl::InteriorDiffeo(std::move(map), std::move(collar));
}

json verdict_verified(json witness) {
  json v;
  v["status"] = "verified";
  v["witness"] = std::move(witness);
  return v;
}

json verdict_refuted(json counterexample) {
  json v;
  v["status"] = "refuted";
  v["counterexample"] = std::move(counterexample);
  return v;
}

json verdict_unknown(json detail) {
  json v;
  v["status"] = "unknown";
  if (!detail.is_null()) v["detail"] = std::move(detail);
  return v;
}

json verdict_error(const std::string& message) {
  json v;
  v["status"] = "error";
  v["detail"] = message;
  return v;
}

int verdict_exit_code(const json& v) {
  const std::string s = v.value("status", "error");
  if (s == "verified") return 0;
  if (s == "refuted") return 1;
  return 2;
}

bool verdict_valid(const json& v, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (!v.is_object()) return fail("verdict must be a JSON object");
  auto it = v.find("status");
  if (it == v.end() || !it->is_string()) return fail("missing string key 'status'");
  const std::string s = it->get<std::string>();
  if (s != "verified" && s != "refuted" && s != "unknown" && s != "error")
    return fail("status '" + s + "' is not one of verified/refuted/unknown/error");
  for (const auto& [key, val] : v.items()) {
    (void)val;
    if (key != "status" && key != "witness" && key != "counterexample" && key != "detail" &&
        key != "timing_ms")
      return fail("unexpected key '" + key + "'");
  }
  const bool has_w = v.contains("witness");
  const bool has_c = v.contains("counterexample");
  if (s == "verified" && (!has_w || has_c))
    return fail("verified verdicts carry a witness and no counterexample");
  if (s == "refuted" && (!has_c || has_w))
    return fail("refuted verdicts carry a counterexample and no witness");
  if (v.contains("timing_ms")) {
    // In-memory documents may hold small ints as signed; accept both.
    const auto& t = v.at("timing_ms");
    const bool ok = t.is_number_unsigned() ||
                    (t.is_number_integer() && t.get<std::int64_t>() >= 0);
    if (!ok) return fail("timing_ms must be a nonnegative integer");
  }
  return true;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << json_str(j);
  if (!out) throw InputError(path + ": write failed");
}

std::string json_str(const json& j) { return j.dump(2) + "\n"; }

}  // namespace twocat::ser
