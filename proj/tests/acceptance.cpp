// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "semilab/io.hpp"

using namespace semilab;
using semilab::io::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, std::string const& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::vector<Carrier> conjugation_carriers() {
  return {make_symmetric_group(3), make_symmetric_group(4), make_gl(2, 3), make_rotation_group_24(),
          make_cyclic(4),          make_cyclic(5)};
}

Outcome conjugation_identity() {
  Outcome o;
  for (auto const& c : conjugation_carriers()) {
    auto r = check_conjugation_identity(c.semigroup, c.sigma);
    o.require(r.conjugation.holds, c.name + ": J R(sigma(y)) J != L(y)");
    o.require(r.ok(), c.name + ": conjugation report not ok");
    // Full-matrix form: the selection maps must coincide entrywise.
    auto j = op_J(c.semigroup, c.sigma);
    for (std::size_t y = 0; y < c.semigroup.order(); ++y)
      o.require(j * op_R(c.semigroup, c.sigma(y)) * j == op_L(c.semigroup, y), c.name + ": matrix mismatch");
  }
  return o;
}

Outcome representation_laws() {
  Outcome o;
  for (auto const& [name, make] : io::builtins()) {
    auto c = make();
    auto r = check_representation_laws(c.semigroup);
    o.require(r.r_homomorphism.holds, name + ": R(xy) != R(x)R(y)");
    o.require(r.l_anti_homomorphism.holds, name + ": L(xy) != L(y)L(x)");
  }
  auto s3 = make_symmetric_group(3);
  auto conj = check_conjugation_identity(s3.semigroup, s3.sigma);
  o.require(conj.homomorphism_obstruction.has_value(), "no obstruction witness on S_3");
  if (conj.homomorphism_obstruction) {
    auto y1 = (*conj.homomorphism_obstruction)[0];
    auto y2 = (*conj.homomorphism_obstruction)[1];
    auto const& s = s3.semigroup;
    o.require(s.mul(y1, y2) != s.mul(y2, y1), "obstruction pair commutes");
    auto lhs = op_R(s, s3.sigma(y1)) * op_R(s, s3.sigma(y2));
    o.require(lhs == op_R(s, s3.sigma(s.mul(y2, y1))), "order reversal fails");
    o.require(!(lhs == op_R(s, s3.sigma(s.mul(y1, y2)))), "obstruction is not genuine");
  }
  return o;
}

void check_pipeline(Outcome& o, LeviCivitaReport const& r, std::string const& name) {
  o.require(r.v_invariance.holds, name + ": V not L-invariant");
  o.require(r.anti_representation && r.anti_representation->holds, name + ": A(y1 y2) != A(y2) A(y1)");
  o.require(r.constants.fit.holds && r.constants.constants, name + ": constants do not fit");
  o.require(r.affine && r.affine->affine_law.holds, name + ": affine law fails");
  o.require(r.ok(), name + ": report has violations");
}

Outcome levi_civita_pipeline() {
  Outcome o;
  Field f5 = Field::prime(5);
  auto z4 = make_cyclic(4);
  auto f = FuncOnS::from_ints(f5, {0, 2, 0, 3});
  auto g = FuncOnS::from_ints(f5, {1, 0, 4, 0});
  auto r = analyze_levi_civita(LeviCivitaInstance::build(z4.semigroup, z4.sigma, f, g, g, f));
  check_pipeline(o, r, "char-z4");
  if (r.constants.constants) {
    auto const& k = *r.constants.constants;
    o.require(k[0].is_zero() && k[1].is_one() && k[2].is_one() && k[3].is_zero(), "char-z4 constants != (0,1,1,0)");
  }
  auto sgn = fixture_sign_s3(5);
  bool independent = false;
  for (auto const& [k, v] : sgn.facts) independent = independent || (k == "independent" && v == "true");
  if (independent) {
    auto s3 = make_symmetric_group(3);
    auto const& sf = sgn.function("f");
    auto const& sg = sgn.function("g");
    check_pipeline(o, analyze_levi_civita(LeviCivitaInstance::build(s3.semigroup, s3.sigma, sf, sg, sg, sf)),
                   "sgn-s3");
  }
  return o;
}

Outcome remark_negative() {
  Outcome o;
  Field f5 = Field::prime(5);
  auto z5 = make_cyclic(5);
  auto one = FuncOnS::from_ints(f5, {1, 1, 1, 1, 1});
  auto cube = FuncOnS::from_ints(f5, {0, 1, 8, 27, 64});
  auto zero = FuncOnS(f5, 5);
  try {
    LeviCivitaInstance::build(z5.semigroup, z5.sigma, one, cube, one, zero);
    o.require(false, "instance was accepted");
  } catch (Error const& e) {
    o.require(e.code() == ErrorCode::DependentH, "rejected with " + std::string(to_string(e.code())));
  }
  auto inv = check_L_invariance(LeviCivitaInstance::unvalidated(z5.semigroup, z5.sigma, one, cube, one, zero));
  o.require(!inv.holds, "invariance holds with validation bypassed");
  o.require(inv.witness && inv.witness->y != 0, "witness y is 0");
  return o;
}

void check_solutions(Outcome& o, SolutionSet const& set, SearchSpec const& spec, std::string const& name) {
  auto cv = cross_validate(set, spec);
  o.require(cv.ok(), name + ": cross-validation failed (" + cv.outcome + ")");
  o.require(cv.soundness_failures == 0, name + ": unsound solution");
  if (cv.emptiness_required) o.require(set.independent_count == 0, name + ": independent solution in an empty case");

  Field field = Field::prime(spec.p);
  auto const& eq = std::get<SineLawEquation>(spec.equation);
  Scalar beta = Scalar::parse(field, eq.beta_text);
  Scalar gamma = Scalar::parse(field, eq.gamma_text);
  auto branch = branch_of(beta);
  for (auto const& s : set.solutions) {
    if (!s.independent) continue;
    std::vector<long long> fv(s.f.begin(), s.f.end()), gv(s.g.begin(), s.g.end());
    auto f = FuncOnS::from_ints(field, fv);
    auto g = FuncOnS::from_ints(field, gv);
    auto r = analyze(SineLawInstance::build(spec.semigroup, spec.sigma, f, g, beta, gamma));
    if (branch == Branch::BetaPlusOne) {
      o.require(r.f_sigma.holds && r.g_sigma.holds, name + ": f or g not sigma-invariant");
      o.require(r.xy_law.holds, name + ": xy-law fails");
      o.require(r.central.holds && r.kannappan.holds, name + ": not central or not Kannappan");
    } else if (branch == Branch::BetaMinusOne && gamma.is_zero()) {
      o.require(r.f_parity == Parity::Odd && r.f_sigma.holds, name + ": f o sigma != -f");
      o.require(r.a_fit && r.a_fit->verified.holds && r.g_sigma.holds, name + ": g o sigma != g + a f");
    }
    o.require(r.ok(), name + ": analysis reports violations");
  }
}

Outcome enumeration_cross_validation() {
  Outcome o;
  std::size_t odd_found = 0;
  std::vector<std::pair<Carrier, std::vector<std::uint64_t>>> cases{
      {make_cyclic(2), {3, 5}}, {make_cyclic(3), {3, 5}}, {make_cyclic(4), {3, 5}}, {make_symmetric_group(3), {5}},
      {make_cyclic(3, true), {7}}};
  for (auto const& [c, primes] : cases)
    for (auto p : primes)
      for (std::uint64_t b = 1; b < p; ++b)
        for (std::uint64_t gm = 0; gm < p; ++gm) {
          SearchSpec spec{c.semigroup, c.sigma, p, SineLawEquation{std::to_string(b), std::to_string(gm)}, {}};
          spec.limits.max_nodes = 10'000'000;
          auto name = c.name + " p=" + std::to_string(p) + " beta=" + std::to_string(b) + " gamma=" + std::to_string(gm);
          auto set = enumerate_solutions(spec);
          if (c.name == "z3-neg" && b == p - 1 && gm == 0) odd_found += set.independent_count;
          check_solutions(o, set, spec, name);
        }
  o.require(odd_found > 0, "no beta = -1 solutions on z3-neg to check");

  for (auto const& c : {make_cyclic(2), make_cyclic(3)})
    for (std::uint64_t b = 1; b < 3; ++b)
      for (std::uint64_t gm = 0; gm < 3; ++gm) {
        SearchSpec spec{c.semigroup, c.sigma, 3, SineLawEquation{std::to_string(b), std::to_string(gm)}, {}};
        auto pruned = enumerate_solutions(spec);
        spec.limits.pruning = false;
        auto unpruned = enumerate_solutions(spec);
        bool same = pruned.solutions.size() == unpruned.solutions.size();
        for (std::size_t i = 0; same && i < pruned.solutions.size(); ++i)
          same = pruned.solutions[i].f == unpruned.solutions[i].f && pruned.solutions[i].g == unpruned.solutions[i].g;
        o.require(same, c.name + ": pruned and unpruned disagree");
      }
  return o;
}

Outcome gallery() {
  Outcome o;
  auto expect_rank = [&](Fixture const& fx, std::string const& rank) {
    o.require(fx.ok(), fx.name + ": fixture checks fail");
    bool found = false;
    for (auto const& [k, v] : fx.facts) found = found || (k == "rank" && v == rank);
    o.require(found, fx.name + ": rank != " + rank);
  };
  expect_rank(fixture_gl({1, 0}), "2");
  expect_rank(fixture_sym(3, 1), "3");
  expect_rank(fixture_sym(4, 1), "4");
  expect_rank(fixture_rotation(), "3");
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<std::function<json()>> reports{
      [] {
        json out = json::array();
        for (auto const& c : conjugation_carriers())
          out.push_back(io::to_json(check_conjugation_identity(c.semigroup, c.sigma)));
        return out;
      },
      [] {
        Field f5 = Field::prime(5);
        auto z4 = make_cyclic(4);
        auto f = FuncOnS::from_ints(f5, {0, 2, 0, 3});
        auto g = FuncOnS::from_ints(f5, {1, 0, 4, 0});
        return json{{"lc", io::to_json(analyze_levi_civita(LeviCivitaInstance::build(z4.semigroup, z4.sigma, f, g, g, f)))},
                    {"sine", io::to_json(analyze(SineLawInstance::build(z4.semigroup, z4.sigma, f, g,
                                                                        Scalar::one(f5), Scalar::zero(f5))))}};
      },
      [] {
        auto s3 = make_symmetric_group(3);
        SearchSpec spec{s3.semigroup, s3.sigma, 5, SineLawEquation{"1", "0"}, {}};
        auto set = enumerate_solutions(spec);
        return json{{"set", io::to_json(set)}, {"cv", io::to_json(cross_validate(set, spec))}};
      },
      [] {
        json out = json::array();
        for (auto const& fx : run_gallery()) out.push_back(io::to_json(fx));
        return out;
      }};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto first = io::dump(reports[i]());
    for (int rep = 0; rep < 3; ++rep)
      o.require(io::dump(reports[i]()) == first, "report " + std::to_string(i) + " differs between runs");
  }
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"conjugation identity on S_3, S_4, GL_2(F_3), rot24, Z_4, Z_5", conjugation_identity},
      {"representation laws and S_3 order-reversal obstruction", representation_laws},
      {"Levi-Civita pipeline on CHAR-Z4 and SGN-S3", levi_civita_pipeline},
      {"Z_5 counterexample rejected and invariance fails when forced", remark_negative},
      {"exhaustive enumeration cross-validates the sine-law branches", enumeration_cross_validation},
      {"gallery actions and independence ranks", gallery},
      {"byte-identical reports across runs", determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu: %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.pass ? "" : " -- ", o.detail.c_str());
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
