#include "gfc/json_io.hpp"

#include <fstream>
#include <sstream>

#include "gfc/errors.hpp"

namespace gfc::io {

namespace {

std::size_t get_count(const Json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<long long> integer_list(const Json& j, const char* key) {
  std::vector<long long> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw InputError(std::string("\"") + key + "\" must be an array of integers");
  for (const auto& x : j.at(key)) {
    if (!x.is_number_integer()) throw InputError(std::string("\"") + key + "\" must be an array of integers");
    out.push_back(x.get<long long>());
  }
  return out;
}

void reject_unknown_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == k;
    if (!ok) throw InputError("unknown key \"" + k + "\" in " + where);
  }
}

}  // namespace

std::string read_input(const std::string& input) {
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && input[first] == '{') return input;
  std::ifstream in(input);
  if (!in) throw InputError("cannot read input file \"" + input + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("matrix entries must be integers or \"p/q\" strings");
}

rep::Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("a matrix must be a non-empty array of rows");
  rep::Matrix m;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw InputError("a matrix must be square");
    linalg::Vector r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    m.push_back(std::move(r));
  }
  return m;
}

rep::Decomposition decomposition_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("a Decomposition must be a JSON object");
  reject_unknown_keys(j, {"field", "dimV0", "mMinus1", "factors", "beyondHypothesis"}, "Decomposition");
  if (!j.contains("field") || !j.at("field").is_string()) throw InputError("Decomposition needs a \"field\" string");
  rep::Decomposition d;
  d.field = rep::parse_field(j.at("field").get<std::string>());
  d.dimV0 = get_count(j, "dimV0", 0);
  d.mMinus1 = get_count(j, "mMinus1", 0);
  if (j.contains("factors")) {
    if (!j.at("factors").is_array()) throw InputError("\"factors\" must be an array");
    for (const auto& f : j.at("factors")) {
      if (!f.is_object()) throw InputError("each factor must be an object");
      reject_unknown_keys(f, {"label", "m", "dim"}, "factor");
      if (!f.contains("label") || !f.at("label").is_string()) throw InputError("factor needs a \"label\" string");
      rep::Factor x;
      x.label = f.at("label").get<std::string>();
      x.multiplicity = get_count(f, "m", 1);
      x.dim = get_count(f, "dim", d.field == rep::Field::Real ? 2 : 1);
      d.factors.push_back(std::move(x));
    }
  }
  if (j.contains("beyondHypothesis")) {
    if (!j.at("beyondHypothesis").is_boolean()) throw InputError("\"beyondHypothesis\" must be a boolean");
    d.beyond_hypothesis = j.at("beyondHypothesis").get<bool>();
  }
  d.validate();
  return d;
}

Action parse_action(const Json& j) {
  if (!j.is_object()) throw InputError("input must be a JSON object");
  Action a;
  if (!j.contains("group")) {
    a.kind = ActionKind::Decomposition;
    a.decomposition = decomposition_from_json(j);
    a.field = a.decomposition.field;
    return a;
  }
  reject_unknown_keys(j, {"field", "group", "eigen", "rotations", "generator", "weights"}, "Action");
  if (!j.contains("field") || !j.at("field").is_string()) throw InputError("Action needs a \"field\" string");
  a.field = rep::parse_field(j.at("field").get<std::string>());
  const Json& g = j.at("group");
  if (!g.is_object()) throw InputError("\"group\" must be an object");
  reject_unknown_keys(g, {"cyclic", "matrices", "generators"}, "group");
  if (g.contains("cyclic")) {
    a.order = get_count(g, "cyclic", 0);
    if (a.order == 0) throw InputError("\"cyclic\" must be a positive integer");
    if (a.field == rep::Field::Complex) {
      if (!j.contains("weights")) throw InputError("complex cyclic actions need \"weights\"");
      a.kind = ActionKind::ComplexCyclic;
      a.weights = integer_list(j, "weights");
      if (a.weights.empty()) throw InputError("\"weights\" must be non-empty");
      return a;
    }
    if (j.contains("generator")) {
      a.kind = ActionKind::RealCyclicGenerator;
      a.generator = matrix_from_json(j.at("generator"));
      return a;
    }
    a.kind = ActionKind::RealCyclicBlocks;
    if (j.contains("eigen")) {
      const Json& e = j.at("eigen");
      if (!e.is_object()) throw InputError("\"eigen\" must be an object");
      reject_unknown_keys(e, {"plus1", "minus1"}, "eigen");
      a.blocks.plus1 = get_count(e, "plus1", 0);
      a.blocks.minus1 = get_count(e, "minus1", 0);
    }
    a.blocks.rotations = integer_list(j, "rotations");
    if (a.blocks.plus1 + a.blocks.minus1 + a.blocks.rotations.size() == 0)
      throw InputError("real cyclic action acts on a zero-dimensional space");
    return a;
  }
  if (a.field != rep::Field::Real) throw InputError("explicit matrix groups are supported over the reals only");
  const bool has_matrices = g.contains("matrices"), has_gens = g.contains("generators");
  if (has_matrices == has_gens) throw InputError("\"group\" needs exactly one of \"cyclic\", \"matrices\", \"generators\"");
  a.kind = ActionKind::RealMatrixGroup;
  a.closure = has_gens;
  const Json& list = g.at(has_gens ? "generators" : "matrices");
  if (!list.is_array() || list.empty()) throw InputError("matrix list must be a non-empty array");
  for (const auto& m : list) a.matrices.push_back(matrix_from_json(m));
  return a;
}

Json to_json(const rep::Decomposition& d) {
  Json j;
  j["field"] = rep::to_string(d.field);
  j["dimV0"] = d.dimV0;
  j["mMinus1"] = d.mMinus1;
  j["factors"] = Json::array();
  for (const auto& f : d.factors) j["factors"].push_back(Json{{"label", f.label}, {"m", f.multiplicity}, {"dim", f.dim}});
  if (d.beyond_hypothesis) j["beyondHypothesis"] = true;
  return j;
}

Json to_json(const rep::Matrix& m) {
  Json j = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(gfc::to_string(x));
    j.push_back(std::move(r));
  }
  return j;
}

Json to_json(const linalg::BettiTable& b) {
  Json j = Json::array();
  for (const auto& x : b.betti) {
    if (x)
      j.push_back(*x);
    else
      j.push_back("unknown");
  }
  return j;
}

Json to_json(const cc::ClassLabel& c) {
  Json j;
  j["name"] = c.name;
  j["degree"] = c.degree;
  j["kind"] = c.kind;
  j["block"] = c.block;
  if (c.filtration >= 0) {
    j["filtration"] = c.filtration;
    j["corner"] = c.corner;
  }
  return j;
}

Json to_json(const cc::VanishingReport& v) {
  Json j;
  j["bound"] = v.bound;
  j["monomials"] = Json::array();
  for (const auto& m : v.monomials)
    j["monomials"].push_back(Json{{"monomial", m.name},
                                  {"degree", m.degree},
                                  {"zeroWhenTruncated", m.zero_when_truncated},
                                  {"nonzeroUntruncated", m.nonzero_untruncated}});
  j["verified"] = v.verified;
  return j;
}

Json to_json(const cc::RingReport& r) {
  Json j;
  j["schema"] = "gfc.ring-report/v1";
  j["inertia"] = r.inertia_label;
  j["decomposition"] = to_json(r.decomposition);
  j["mode"] = cc::to_string(r.mode);
  j["lieAlgebra"] = r.lie_algebra;
  j["truncationBound"] = r.truncation_bound;
  j["maxDegree"] = r.max_degree;
  j["complexDims"] = r.complex_dims;
  j["betti"] = to_json(r.betti);
  j["primaryDims"] = r.primary_dims;
  j["generators"] = Json::array();
  for (const auto& g : r.generators) j["generators"].push_back(to_json(g));
  j["secondary"] = Json::array();
  for (const auto& s : r.secondary) j["secondary"].push_back(to_json(s));
  j["fiber"] = Json{{"betti", to_json(r.fiber_betti)}, {"exterior", r.fiber_exterior}};
  bool acyclic = true;
  for (std::size_t q = 1; q < r.control.betti.size(); ++q)
    if (r.control.betti[q] && *r.control.betti[q] != 0) acyclic = false;
  j["control"] = Json{{"untruncatedBetti", to_json(r.control)}, {"acyclic", acyclic}};
  j["vanishing"] = to_json(r.vanishing);
  return j;
}

Json to_json(const cc::InertiaEntry& e) {
  Json j;
  j["label"] = e.label;
  j["order"] = e.element_order;
  j["classSize"] = e.class_size;
  j["centralizerOrder"] = e.centralizer_order;
  j["fixedDim"] = e.fixed_dim;
  if (e.representative) j["representative"] = to_json(*e.representative);
  j["report"] = to_json(e.report);
  return j;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace gfc::io
