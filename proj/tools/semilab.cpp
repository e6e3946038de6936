// semilab: command-line checks for translation operators and the
// Levi-Civita / sine-law structure results on finite semigroups.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "semilab/io.hpp"

namespace {

using semilab::io::json;
namespace fs = std::filesystem;

enum Exit : int { kPass = 0, kViolation = 1, kInvalid = 2, kBudget = 3 };

struct RunConfig {
  std::string input;
  std::optional<std::string> field;
  std::optional<std::string> caps;
  std::optional<std::string> out;
  bool quiet = false;
};

/// Prints every {law, holds} object in the report, depth first in key order.
void summarize_laws(json const& j, std::string const& path, std::ostream& os) {
  if (j.is_object()) {
    if (j.contains("law") && j.contains("holds") && j.at("holds").is_boolean()) {
      os << (j.at("holds").get<bool>() ? "  ok    " : "  FAIL  ") << path << ": " << j.at("law").get<std::string>();
      if (!j.at("witness").is_null()) os << "  witness " << j.at("witness").dump();
      os << "\n";
      return;
    }
    for (auto const& [k, v] : j.items()) summarize_laws(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) summarize_laws(j[i], path + "[" + std::to_string(i) + "]", os);
  }
}

int finish(RunConfig const& cfg, json const& report, std::string const& headline, bool pass) {
  if (cfg.out) {
    auto text = semilab::io::dump(report);
    if (*cfg.out == "-") {
      std::cout << text;
    } else {
      std::ofstream os(*cfg.out, std::ios::binary);
      if (!os) {
        std::cerr << "error: cannot write '" << *cfg.out << "'\n";
        return kInvalid;
      }
      os << text;
    }
  }
  if (!cfg.quiet && cfg.out != "-") {
    std::cout << headline << ": " << (pass ? "PASS" : "VIOLATION") << "\n";
    summarize_laws(report, "", std::cout);
    for (auto const* key : {"", "report", "cross_validation"}) {
      auto const& section = *key ? report.value(key, json::object()) : report;
      if (section.contains("violations"))
        for (auto const& v : section.at("violations")) std::cout << "  " << v.get<std::string>() << "\n";
    }
  }
  return pass ? kPass : kViolation;
}

fs::path base_of(std::string const& input) { return fs::path(input).parent_path(); }

json load_input(std::string const& input) {
  return semilab::io::read_json_file(input);
}

std::optional<semilab::Field> field_flag(RunConfig const& cfg) {
  if (!cfg.field) return std::nullopt;
  return semilab::Field::parse(*cfg.field);
}

json carrier_header(semilab::Carrier const& c) {
  return {{"name", c.name}, {"order", c.semigroup.order()}, {"sigma", c.sigma.map()}};
}

int cmd_verify_conjugation(RunConfig const& cfg) {
  auto carrier = semilab::io::resolve_carrier(json(cfg.input), fs::path());
  auto rep = semilab::check_representation_laws(carrier.semigroup);
  auto conj = semilab::check_conjugation_identity(carrier.semigroup, carrier.sigma);
  bool pass = rep.ok() && conj.ok();
  json report{{"command", "verify-conjugation"},
              {"semigroup", carrier_header(carrier)},
              {"representation", semilab::io::to_json(rep)},
              {"conjugation", semilab::io::to_json(conj)},
              {"ok", pass}};
  return finish(cfg, report, "verify-conjugation " + carrier.name, pass);
}

int cmd_levi_civita(RunConfig const& cfg) {
  auto inst = semilab::io::load_instance(load_input(cfg.input), base_of(cfg.input), field_flag(cfg));
  auto lc = semilab::LeviCivitaInstance::build(inst.carrier.semigroup, inst.carrier.sigma, inst.function("f"),
                                               inst.function("g"), inst.function("h1"), inst.function("h2"));
  auto r = semilab::analyze_levi_civita(lc);
  json report{{"command", "levi-civita"},
              {"semigroup", carrier_header(inst.carrier)},
              {"field", inst.field.name()},
              {"report", semilab::io::to_json(r)},
              {"ok", r.ok()}};
  return finish(cfg, report, "levi-civita " + inst.carrier.name, r.ok());
}

int cmd_sine_law(RunConfig const& cfg) {
  auto inst = semilab::io::load_instance(load_input(cfg.input), base_of(cfg.input), field_flag(cfg));
  if (!inst.beta) {
    throw semilab::Error(semilab::ErrorCode::ParseError, "sine-law instance needs params.beta");
  }
  auto gamma = inst.gamma.value_or(semilab::Scalar::zero(inst.field));
  auto sl = semilab::SineLawInstance::build(inst.carrier.semigroup, inst.carrier.sigma, inst.function("f"),
                                            inst.function("g"), *inst.beta, gamma);
  auto r = semilab::analyze(sl);
  json report{{"command", "sine-law"},
              {"semigroup", carrier_header(inst.carrier)},
              {"field", inst.field.name()},
              {"report", semilab::io::to_json(r)},
              {"ok", r.ok()}};
  return finish(cfg, report, "sine-law " + inst.carrier.name, r.ok());
}

int cmd_enumerate(RunConfig const& cfg) {
  auto spec = semilab::io::load_search_spec(load_input(cfg.input), base_of(cfg.input));
  if (cfg.caps) semilab::io::apply_caps(load_input(*cfg.caps), spec.limits);
  auto set = semilab::enumerate_solutions(spec);
  auto cv = semilab::cross_validate(set, spec);
  json report{{"command", "enumerate"},
              {"order", spec.semigroup.order()},
              {"sigma", spec.sigma.map()},
              {"solution_set", semilab::io::to_json(set)},
              {"cross_validation", semilab::io::to_json(cv)},
              {"ok", cv.ok()}};
  if (!cfg.quiet && cfg.out != "-") {
    std::cout << "enumerate: " << set.solutions.size() << " solutions, " << set.independent_count
              << " independent, branch " << cv.branch << ", " << cv.outcome << "\n";
  }
  return finish(cfg, report, "enumerate", cv.ok());
}

int cmd_examples(RunConfig const& cfg) {
  auto gallery = semilab::run_gallery();
  json fixtures = json::array();
  bool pass = true;
  for (auto const& fx : gallery) {
    fixtures.push_back(semilab::io::to_json(fx));
    pass = pass && fx.ok();
  }
  json report{{"command", "examples"}, {"fixtures", fixtures}, {"ok", pass}};
  return finish(cfg, report, "examples", pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translation-operator and functional-equation checks on finite semigroups"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write the JSON report here ('-' for stdout)");
    sub->add_flag("--quiet", cfg.quiet, "Suppress the human summary");
  };
  auto* verify = app.add_subcommand("verify-conjugation", "Check R, L and J R(sigma(y)) J = L(y) on a carrier");
  verify->add_option("semigroup", cfg.input, "Builtin name or semigroup JSON file")->required();
  common(verify);
  auto* lc = app.add_subcommand("levi-civita", "Run the Levi-Civita pipeline on an instance file");
  lc->add_option("instance", cfg.input, "Instance JSON file")->required();
  lc->add_option("--field", cfg.field, "q or fp:<p>");
  common(lc);
  auto* sine = app.add_subcommand("sine-law", "Analyze a generalized sine-law instance");
  sine->add_option("instance", cfg.input, "Instance JSON file")->required();
  sine->add_option("--field", cfg.field, "q or fp:<p>");
  common(sine);
  auto* enumerate = app.add_subcommand("enumerate", "Exhaustively search solutions over F_p");
  enumerate->add_option("spec", cfg.input, "Search spec JSON file")->required();
  enumerate->add_option("--caps", cfg.caps, "JSON file overriding search caps");
  common(enumerate);
  auto* examples = app.add_subcommand("examples", "Run the fixture gallery");
  common(examples);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*verify) return cmd_verify_conjugation(cfg);
    if (*lc) return cmd_levi_civita(cfg);
    if (*sine) return cmd_sine_law(cfg);
    if (*enumerate) return cmd_enumerate(cfg);
    return cmd_examples(cfg);
  } catch (semilab::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == semilab::ErrorCode::BudgetExceeded ? kBudget : kInvalid;
  } catch (nlohmann::json::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
