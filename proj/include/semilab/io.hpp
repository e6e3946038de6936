#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semilab/enumerator.hpp"
#include "semilab/gallery.hpp"
#include "semilab/levi_civita.hpp"
#include "semilab/operators.hpp"
#include "semilab/semigroup.hpp"
#include "semilab/sine_law.hpp"

namespace semilab::io {

using json = nlohmann::json;

// ---- builtins -------------------------------------------------------------

inline std::map<std::string, std::function<Carrier()>> const& builtins() {
  static const std::map<std::string, std::function<Carrier()>> table{
      {"s3-inversion", [] { return make_symmetric_group(3); }},
      {"s4-inversion", [] { return make_symmetric_group(4); }},
      {"gl2-f3-transpose", [] { return make_gl(2, 3); }},
      {"rot24", [] { return make_rotation_group_24(); }},
      {"z2-id", [] { return make_cyclic(2); }},
      {"z3-id", [] { return make_cyclic(3); }},
      {"z3-neg", [] { return make_cyclic(3, true); }},
      {"z4-id", [] { return make_cyclic(4); }},
      {"z5-id", [] { return make_cyclic(5); }},
  };
  return table;
}

inline std::optional<Carrier> builtin_carrier(std::string const& name) {
  auto it = builtins().find(name);
  if (it == builtins().end()) return std::nullopt;
  return it->second();
}

// ---- parsing --------------------------------------------------------------

inline json read_json_file(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (json::exception const& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

template <typename T>
T field_of(json const& j, char const* key, std::string const& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, where + ": missing '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (json::exception const& e) {
    throw Error(ErrorCode::ParseError, where + ": bad '" + key + "': " + e.what());
  }
}

/// Semigroup definition object: {name, order, table, sigma, labels?, identity?}.
inline Carrier carrier_from_json(json const& j) {
  auto name = j.contains("name") ? field_of<std::string>(j, "name", "semigroup") : std::string("custom");
  auto table = field_of<std::vector<std::vector<std::int64_t>>>(j, "table", "semigroup");
  if (j.contains("order") && field_of<std::size_t>(j, "order", "semigroup") != table.size()) {
    throw Error(ErrorCode::ShapeMismatch, "order does not match table size");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = field_of<std::vector<std::string>>(j, "labels", "semigroup");
  std::optional<std::int64_t> identity;
  if (j.contains("identity") && !j.at("identity").is_null())
    identity = field_of<std::int64_t>(j, "identity", "semigroup");
  auto s = FiniteSemigroup::build(table, labels, identity);
  auto sigma = j.contains("sigma")
                   ? InvolutiveAntiAutomorphism::validate(s, field_of<std::vector<std::int64_t>>(j, "sigma", "semigroup"))
                   : InvolutiveAntiAutomorphism::identity_on(s);
  return Carrier{name, std::move(s), std::move(sigma), {}};
}

/// A semigroup reference is a builtin name, a path (relative to `base`), or
/// an inline definition object.
inline Carrier resolve_carrier(json const& ref, std::filesystem::path const& base) {
  if (ref.is_object()) return carrier_from_json(ref);
  if (!ref.is_string()) {
    throw Error(ErrorCode::ParseError, "semigroup must be a builtin name, a path, or an object");
  }
  auto text = ref.get<std::string>();
  if (auto c = builtin_carrier(text)) return *c;
  std::filesystem::path path(text);
  if (path.is_relative() && !base.empty()) path = base / path;
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::ParseError, "unknown builtin or missing file '" + text + "'");
  }
  return carrier_from_json(read_json_file(path));
}

inline std::string scalar_text(json const& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw Error(ErrorCode::ParseError, "scalars must be integers or decimal strings, got " + v.dump());
}

inline FuncOnS function_from_json(json const& v, Field const& field, std::size_t order, std::string const& key) {
  if (!v.is_array()) {
    throw Error(ErrorCode::ParseError, "function '" + key + "' must be an array");
  }
  if (v.size() != order) {
    throw Error(ErrorCode::ShapeMismatch, "function '" + key + "' has " + std::to_string(v.size()) +
                                              " values, carrier has " + std::to_string(order));
  }
  std::vector<Scalar> out;
  for (auto const& e : v) out.push_back(Scalar::parse(field, scalar_text(e)));
  return FuncOnS(field, std::move(out));
}

/// Parsed instance file: {semigroup, sigma?, functions{...}, params{beta, gamma}?, field?}.
struct Instance {
  Carrier carrier;
  Field field;
  std::map<std::string, FuncOnS> functions;
  std::optional<Scalar> beta;
  std::optional<Scalar> gamma;

  FuncOnS const& function(std::string const& key) const {
    auto it = functions.find(key);
    if (it == functions.end()) {
      throw Error(ErrorCode::ParseError, "instance is missing function '" + key + "'");
    }
    return it->second;
  }
};

inline Instance load_instance(json const& j, std::filesystem::path const& base,
                              std::optional<Field> field_override = std::nullopt) {
  if (!j.is_object() || !j.contains("semigroup")) {
    throw Error(ErrorCode::ParseError, "instance: missing 'semigroup'");
  }
  auto carrier = resolve_carrier(j.at("semigroup"), base);
  if (j.contains("sigma")) {
    carrier.sigma = InvolutiveAntiAutomorphism::validate(
        carrier.semigroup, field_of<std::vector<std::int64_t>>(j, "sigma", "instance"));
  }
  Field field = field_override ? *field_override
                : j.contains("field") ? Field::parse(field_of<std::string>(j, "field", "instance"))
                                      : Field::rational();
  Instance inst{std::move(carrier), field, {}, std::nullopt, std::nullopt};
  if (!j.contains("functions") || !j.at("functions").is_object()) {
    throw Error(ErrorCode::ParseError, "instance: missing 'functions' object");
  }
  for (auto const& [key, v] : j.at("functions").items())
    inst.functions.emplace(key, function_from_json(v, field, inst.carrier.semigroup.order(), key));
  if (j.contains("params")) {
    auto const& params = j.at("params");
    if (params.contains("beta")) inst.beta = Scalar::parse(field, scalar_text(params.at("beta")));
    if (params.contains("gamma")) inst.gamma = Scalar::parse(field, scalar_text(params.at("gamma")));
  }
  return inst;
}

inline void apply_caps(json const& caps, SearchLimits& limits) {
  if (!caps.is_object()) {
    throw Error(ErrorCode::ParseError, "caps must be an object");
  }
  if (caps.contains("max_nodes")) limits.max_nodes = field_of<std::uint64_t>(caps, "max_nodes", "caps");
  if (caps.contains("time_budget_s") && !caps.at("time_budget_s").is_null())
    limits.time_budget_seconds = field_of<double>(caps, "time_budget_s", "caps");
  if (caps.contains("pruning")) limits.pruning = field_of<bool>(caps, "pruning", "caps");
  if (caps.contains("max_order")) limits.max_order = field_of<std::size_t>(caps, "max_order", "caps");
  if (caps.contains("max_prime")) limits.max_prime = field_of<std::uint64_t>(caps, "max_prime", "caps");
}

/// Enumerate spec: {semigroup, sigma?, p, equation{kind, ...}, caps?}.
inline SearchSpec load_search_spec(json const& j, std::filesystem::path const& base) {
  if (!j.is_object() || !j.contains("semigroup")) {
    throw Error(ErrorCode::ParseError, "spec: missing 'semigroup'");
  }
  auto carrier = resolve_carrier(j.at("semigroup"), base);
  if (j.contains("sigma")) {
    carrier.sigma = InvolutiveAntiAutomorphism::validate(
        carrier.semigroup, field_of<std::vector<std::int64_t>>(j, "sigma", "spec"));
  }
  auto p = field_of<std::uint64_t>(j, "p", "spec");
  if (!j.contains("equation") || !j.at("equation").is_object()) {
    throw Error(ErrorCode::ParseError, "spec: missing 'equation' object");
  }
  auto const& eq = j.at("equation");
  auto kind = field_of<std::string>(eq, "kind", "equation");
  SearchEquation equation;
  if (kind == "sine-law") {
    equation = SineLawEquation{scalar_text(eq.value("beta", json(1))), scalar_text(eq.value("gamma", json(0)))};
  } else if (kind == "levi-civita") {
    equation = LeviCivitaEquation{field_of<std::vector<std::int64_t>>(eq, "h1", "equation"),
                                  field_of<std::vector<std::int64_t>>(eq, "h2", "equation")};
  } else {
    throw Error(ErrorCode::ParseError, "equation kind must be 'sine-law' or 'levi-civita'");
  }
  SearchSpec spec{std::move(carrier.semigroup), std::move(carrier.sigma), p, std::move(equation), {}};
  if (j.contains("caps")) apply_caps(j.at("caps"), spec.limits);
  return spec;
}

// ---- serialization --------------------------------------------------------

inline json witness_json(std::optional<std::vector<std::size_t>> const& w) {
  return w ? json(*w) : json(nullptr);
}

inline json to_json(LawCheck const& c) {
  return {{"law", c.law}, {"holds", c.holds}, {"witness", witness_json(c.witness)}};
}

json to_json(Scalar const& s);
json to_json(FuncOnS const& f);
json to_json(MatrixF const& m);
json to_json(XyConstantFit const& f);
json to_json(PairLawFit const& f);

template <typename T>
json optional_json(std::optional<T> const& v) {
  return v ? to_json(*v) : json(nullptr);
}

inline json to_json(Scalar const& s) { return s.to_string(); }

inline json to_json(FuncOnS const& f) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f[i].to_string());
  return out;
}

inline json to_json(MatrixF const& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

inline json to_json(InvarianceCheck const& c) {
  json w = nullptr;
  if (c.witness)
    w = {{"y", c.witness->y}, {"vector_index", c.witness->vector_index}, {"residual_index", c.witness->residual_index}};
  return {{"law", c.law}, {"holds", c.holds}, {"witness", w}};
}

inline json to_json(RepresentationReport const& r) {
  return {{"r_homomorphism", to_json(r.r_homomorphism)},
          {"l_anti_homomorphism", to_json(r.l_anti_homomorphism)},
          {"r_commutes", optional_json(r.r_commutes)}};
}

inline json to_json(ConjugationReport const& r) {
  return {{"j_involutive", to_json(r.j_involutive)},
          {"conjugation", to_json(r.conjugation)},
          {"conjugate_form", to_json(r.conjugate_form)},
          {"order_reversal", to_json(r.order_reversal)},
          {"homomorphism_obstruction", witness_json(r.homomorphism_obstruction)}};
}

inline json to_json(LeviCivitaReport const& r) {
  json a = json::array();
  for (auto const& m : r.extraction.a_of_y) a.push_back(to_json(m));
  json constants = nullptr;
  if (r.constants.constants) {
    constants = json::array();
    for (auto const& c : *r.constants.constants) constants.push_back(c.to_string());
  }
  json pivot = nullptr;
  if (r.constants.pivot) pivot = {r.constants.pivot->first, r.constants.pivot->second};
  json affine = nullptr;
  if (r.affine) {
    auto const& f = *r.affine;
    affine = {{"n1", optional_json(f.n1)}, {"n2", optional_json(f.n2)}, {"c", optional_json(f.c)},
              {"m1", optional_json(f.m1)}, {"m2", optional_json(f.m2)},
              {"change_of_basis", to_json(f.change_of_basis)}, {"affine_law", to_json(f.affine_law)}};
  }
  return {{"v_invariance", to_json(r.v_invariance)},
          {"jv_invariance", to_json(r.jv_invariance)},
          {"extraction",
           {{"closure", to_json(r.extraction.closure)},
            {"column_identity", to_json(r.extraction.column_identity)},
            {"a_of_y", a}}},
          {"anti_representation", optional_json(r.anti_representation)},
          {"constants",
           {{"alpha", optional_json(r.constants.alpha)},
            {"beta", optional_json(r.constants.beta_fn)},
            {"pivot", pivot},
            {"c", constants},
            {"fit", to_json(r.constants.fit)}}},
          {"right_translation", optional_json(r.right_translation)},
          {"affine", affine},
          {"violations", r.violations},
          {"ok", r.ok()}};
}

inline json to_json(XyConstantFit const& f) {
  json probe = nullptr;
  if (f.probe) probe = {f.probe->first, f.probe->second};
  return {{"a", f.a.to_string()}, {"probe", probe}, {"verified", to_json(f.verified)}};
}

inline json to_json(PairLawFit const& f) {
  return {{"law", f.law}, {"p", optional_json(f.p)}, {"q", optional_json(f.q)},
          {"holds", f.holds}, {"witness", witness_json(f.witness)}};
}

inline json to_json(SineLawReport const& r) {
  return {{"beta", r.beta},
          {"gamma", r.gamma},
          {"branch", to_string(r.branch)},
          {"gamma_zero", optional_json(r.gamma_zero)},
          {"a_fit", optional_json(r.a_fit)},
          {"bc_fit", optional_json(r.bc_fit)},
          {"g1", optional_json(r.g1)},
          {"two_term", optional_json(r.two_term)},
          {"ac_fit", optional_json(r.ac_fit)},
          {"normalization", r.normalization},
          {"xy_law", to_json(r.xy_law)},
          {"f_parity", to_string(r.f_parity)},
          {"f_sigma", to_json(r.f_sigma)},
          {"g_sigma_law", r.g_sigma_law},
          {"g_sigma", to_json(r.g_sigma)},
          {"central", r.central.holds},
          {"kannappan", r.kannappan.holds},
          {"central_check", to_json(r.central)},
          {"kannappan_check", to_json(r.kannappan)},
          {"violations", r.violations},
          {"ok", r.ok()}};
}

inline json to_json(SolutionSet const& s) {
  json sols = json::array();
  for (auto const& sol : s.solutions) sols.push_back({{"f", sol.f}, {"g", sol.g}, {"independent", sol.independent}});
  return {{"p", s.p},
          {"solutions", sols},
          {"independent_count", s.independent_count},
          {"dependent_count", s.dependent_count},
          {"nodes", s.nodes}};
}

inline json to_json(CrossValidationReport const& r) {
  return {{"equation", r.equation},
          {"beta_input", r.beta_input},
          {"gamma_input", r.gamma_input},
          {"beta_normalized", r.beta_normalized},
          {"gamma_normalized", r.gamma_normalized},
          {"branch", r.branch},
          {"emptiness_required", r.emptiness_required},
          {"solutions", r.solutions},
          {"independent", r.independent},
          {"analyzed", r.analyzed},
          {"soundness_failures", r.soundness_failures},
          {"outcome", r.outcome},
          {"violations", r.violations},
          {"ok", r.ok()}};
}

inline json to_json(Fixture const& fx) {
  json functions = json::object();
  for (auto const& [k, v] : fx.functions) functions[k] = to_json(v);
  json checks = json::array();
  for (auto const& c : fx.checks) checks.push_back(to_json(c));
  json facts = json::object();
  for (auto const& [k, v] : fx.facts) facts[k] = v;
  return {{"name", fx.name}, {"carrier", fx.carrier}, {"field", fx.field}, {"functions", functions},
          {"checks", checks}, {"facts", facts}, {"ok", fx.ok()}};
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string dump(json const& j) { return j.dump(2) + "\n"; }

}  // namespace semilab::io
