#include <catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "semilab/enumerator.hpp"

using namespace semilab;

namespace {

using Pair = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

SearchSpec sine_spec(Carrier const& c, std::uint64_t p, std::string beta, std::string gamma, bool pruning = true) {
  SearchSpec spec{c.semigroup, c.sigma, p, SineLawEquation{std::move(beta), std::move(gamma)}, {}};
  spec.limits.pruning = pruning;
  return spec;
}

/// Every (f, g) in F_p^n x F_p^n satisfying
/// f(x s(y)) = f(x)g(y) + b g(x)f(y) + c f(x)f(y), by direct enumeration.
std::set<Pair> brute_force_sine(Carrier const& c, std::int64_t p, std::int64_t b, std::int64_t gam) {
  auto t = c.semigroup.table();
  std::size_t n = t.size();
  std::set<Pair> out;
  std::vector<std::uint32_t> fg(2 * n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        std::int64_t fx = fg[x], fy = fg[y], gx = fg[n + x], gy = fg[n + y];
        std::int64_t lhs = fg[static_cast<std::size_t>(t[x][c.sigma(y)])];
        ok = oracle::mod(lhs - fx * gy - b * gx * fy - gam * fx * fy, p) == 0;
      }
    if (ok) out.emplace(std::vector<std::uint32_t>(fg.begin(), fg.begin() + n), std::vector<std::uint32_t>(fg.begin() + n, fg.end()));
    std::size_t k = 0;
    while (k < fg.size() && ++fg[k] == p) fg[k++] = 0;
    if (k == fg.size()) break;
  }
  return out;
}

std::set<Pair> as_set(SolutionSet const& s) {
  std::set<Pair> out;
  for (auto const& sol : s.solutions) out.emplace(sol.f, sol.g);
  return out;
}

bool independent_oracle(Pair const& pr, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> fam{{pr.first.begin(), pr.first.end()}, {pr.second.begin(), pr.second.end()}};
  return oracle::rank_by_span(fam, p) == 2;
}

}  // namespace

TEST_CASE("pruned search matches brute force on small cyclic groups") {
  for (std::size_t n : {2, 3}) {
    auto c = make_cyclic(n);
    for (auto [beta, gamma] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {1, 1}, {2, 1}}) {
      INFO("n = " << n << " beta = " << beta << " gamma = " << gamma);
      auto expected = brute_force_sine(c, 3, beta, gamma);
      auto pruned = enumerate_solutions(sine_spec(c, 3, std::to_string(beta), std::to_string(gamma)));
      auto unpruned = enumerate_solutions(sine_spec(c, 3, std::to_string(beta), std::to_string(gamma), false));
      CHECK(as_set(pruned) == expected);
      CHECK(as_set(unpruned) == expected);
      CHECK(pruned.solutions.size() == expected.size());
      REQUIRE(pruned.solutions.size() == unpruned.solutions.size());
      for (std::size_t i = 0; i < pruned.solutions.size(); ++i) {
        CHECK(pruned.solutions[i].f == unpruned.solutions[i].f);
        CHECK(pruned.solutions[i].g == unpruned.solutions[i].g);
      }
      std::size_t independent = 0;
      for (auto const& pr : expected) independent += independent_oracle(pr, 3);
      CHECK(pruned.independent_count == independent);
      CHECK(pruned.independent_count + pruned.dependent_count == pruned.solutions.size());
    }
  }
}

TEST_CASE("pruned search matches brute force with a nontrivial involution") {
  auto c = make_cyclic(3, true);
  for (auto [beta, gamma] : std::vector<std::pair<int, int>>{{1, 0}, {6, 0}, {6, 3}}) {
    INFO("beta = " << beta << " gamma = " << gamma);
    auto expected = brute_force_sine(c, 7, beta, gamma);
    CHECK(as_set(enumerate_solutions(sine_spec(c, 7, std::to_string(beta), std::to_string(gamma)))) == expected);
  }
}

TEST_CASE("solutions are sorted and include the zero pair") {
  auto set = enumerate_solutions(sine_spec(make_cyclic(2), 3, "1", "0"));
  REQUIRE_FALSE(set.solutions.empty());
  CHECK(set.solutions.front().f == std::vector<std::uint32_t>{0, 0});
  CHECK(set.solutions.front().g == std::vector<std::uint32_t>{0, 0});
  CHECK_FALSE(set.solutions.front().independent);
  for (std::size_t i = 1; i < set.solutions.size(); ++i) {
    auto const& a = set.solutions[i - 1];
    auto const& b = set.solutions[i];
    CHECK(std::tie(a.f, a.g) < std::tie(b.f, b.g));
  }
}

TEST_CASE("beta = 2 over F_3 is the beta = -1 branch") {
  auto c = make_cyclic(2);
  auto spec = sine_spec(c, 3, "2", "0");
  auto set = enumerate_solutions(spec);
  auto cv = cross_validate(set, spec);
  CHECK(cv.beta_input == "2");
  CHECK(cv.beta_normalized == "2 mod 3");
  CHECK(cv.branch == "beta=-1");
  CHECK_FALSE(cv.emptiness_required);
  CHECK(set.independent_count == 0);
  CHECK(cv.ok());
}

TEST_CASE("beta = -1 with gamma != 0 has no independent solutions") {
  auto c = make_cyclic(3);
  auto spec = sine_spec(c, 5, "-1", "1");
  auto set = enumerate_solutions(spec);
  auto cv = cross_validate(set, spec);
  CHECK(cv.emptiness_required);
  CHECK(set.independent_count == 0);
  CHECK(cv.ok());
  CHECK(cv.outcome == "no independent solutions");
}

TEST_CASE("beta = 1 solutions are sigma-invariant and pass the analysis") {
  for (auto c : {make_cyclic(2), make_cyclic(3), make_cyclic(4)}) {
    auto spec = sine_spec(c, 5, "1", "0");
    auto set = enumerate_solutions(spec);
    auto cv = cross_validate(set, spec);
    INFO(c.name);
    CHECK(cv.ok());
    CHECK(cv.analyzed == set.independent_count);
    for (auto const& s : set.solutions) {
      if (!s.independent) continue;
      for (std::size_t x = 0; x < c.semigroup.order(); ++x) {
        CHECK(s.f[c.sigma(x)] == s.f[x]);
        CHECK(s.g[c.sigma(x)] == s.g[x]);
      }
    }
  }
}

TEST_CASE("beta = -1 solutions on Z_3 with negation satisfy the odd branch") {
  auto c = make_cyclic(3, true);
  auto spec = sine_spec(c, 7, "-1", "0");
  auto set = enumerate_solutions(spec);
  auto cv = cross_validate(set, spec);
  CHECK(set.independent_count > 0);
  CHECK(cv.ok());
  for (auto const& s : set.solutions) {
    if (!s.independent) continue;
    for (std::size_t x = 0; x < 3; ++x) CHECK((s.f[c.sigma(x)] + s.f[x]) % 7 == 0);
  }
}

TEST_CASE("excluded beta has no independent solutions") {
  for (auto c : {make_cyclic(2), make_cyclic(3)}) {
    auto spec = sine_spec(c, 5, "2", "0");
    auto set = enumerate_solutions(spec);
    auto cv = cross_validate(set, spec);
    CHECK(cv.branch == "excluded");
    CHECK(cv.emptiness_required);
    CHECK(set.independent_count == 0);
    CHECK(cv.ok());
  }
}

TEST_CASE("Levi-Civita search cross-validates") {
  // h1 = g, h2 = f from the Z_4 character pair over F_5.
  auto c = make_cyclic(4);
  SearchSpec spec{c.semigroup, c.sigma, 5, LeviCivitaEquation{{1, 0, 4, 0}, {0, 2, 0, 3}}, {}};
  auto set = enumerate_solutions(spec);
  auto cv = cross_validate(set, spec);
  CHECK(cv.branch == "h-independent");
  CHECK(cv.ok());
  bool found = false;
  for (auto const& s : set.solutions)
    found = found || (s.f == std::vector<std::uint32_t>{0, 2, 0, 3} && s.g == std::vector<std::uint32_t>{1, 0, 4, 0});
  CHECK(found);
  CHECK(set.independent_count > 0);
}

TEST_CASE("caps and budgets") {
  auto c = make_cyclic(3);
  CHECK_THROWS_AS(enumerate_solutions(sine_spec(c, 11, "1", "0")), Error);
  CHECK_THROWS_AS(enumerate_solutions(sine_spec(make_cyclic(7), 3, "1", "0")), Error);
  auto zero_beta = sine_spec(c, 3, "3", "0");
  try {
    enumerate_solutions(zero_beta);
    FAIL("expected BetaZero");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::BetaZero);
  }

  auto tight = sine_spec(make_cyclic(4), 5, "1", "0");
  tight.limits.max_nodes = 50;
  try {
    enumerate_solutions(tight);
    FAIL("expected BudgetExceeded");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  auto unpruned = sine_spec(make_cyclic(4), 5, "1", "0", false);
  unpruned.limits.max_nodes = 1000;
  try {
    enumerate_solutions(unpruned);
    FAIL("expected BudgetExceeded");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("an empty solution set validates vacuously") {
  auto spec = sine_spec(make_cyclic(2), 3, "1", "0");
  SolutionSet empty;
  empty.p = 3;
  auto cv = cross_validate(empty, spec);
  CHECK(cv.ok());
  CHECK(cv.solutions == 0);
}

TEST_CASE("a forged solution is caught by the soundness check") {
  auto spec = sine_spec(make_cyclic(2), 3, "1", "0");
  auto set = enumerate_solutions(spec);
  set.solutions.push_back({{1, 1}, {2, 0}, true});
  auto cv = cross_validate(set, spec);
  CHECK(cv.soundness_failures > 0);
  CHECK_FALSE(cv.ok());
}

TEST_CASE("enumeration is deterministic") {
  auto spec = sine_spec(make_symmetric_group(3), 3, "1", "0");
  auto a = enumerate_solutions(spec);
  auto b = enumerate_solutions(spec);
  CHECK(as_set(a) == as_set(b));
  CHECK(a.nodes == b.nodes);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) CHECK(a.solutions[i].f == b.solutions[i].f);
}

TEST_CASE("S_3 over F_7 has beta = 1 solutions outside the predicted form") {
  // Independent pairs built from the two-dimensional representation: g is an
  // order-3 character on the rotations, f lives on the transpositions.
  auto c = make_symmetric_group(3);
  auto spec = sine_spec(c, 7, "1", "0");
  auto set = enumerate_solutions(spec);
  auto cv = cross_validate(set, spec);
  CHECK(cv.soundness_failures == 0);
  CHECK_FALSE(cv.ok());

  Field f7 = Field::prime(7);
  std::size_t predicted = 0, outside = 0;
  for (auto const& s : set.solutions) {
    if (!s.independent) continue;
    REQUIRE(independent_oracle({s.f, s.g}, 7));
    std::vector<long long> fv(s.f.begin(), s.f.end()), gv(s.g.begin(), s.g.end());
    auto f = FuncOnS::from_ints(f7, fv);
    auto g = FuncOnS::from_ints(f7, gv);
    auto r = analyze(SineLawInstance::build(c.semigroup, c.sigma, f, g, Scalar::one(f7), Scalar::zero(f7)));
    if (r.ok()) {
      ++predicted;
      continue;
    }
    ++outside;
    bool central = true;
    bool g_fixed = true;
    for (std::size_t x = 0; x < 6; ++x) {
      g_fixed = g_fixed && s.g[c.sigma(x)] == s.g[x];
      for (std::size_t y = 0; y < 6; ++y) central = central && s.f[c.semigroup.mul(x, y)] == s.f[c.semigroup.mul(y, x)];
    }
    CHECK_FALSE(g_fixed);
    CHECK_FALSE(central);
    CHECK_FALSE(r.g_sigma.holds);
    CHECK_FALSE(r.central.holds);
  }
  CHECK(predicted == 6);
  CHECK(outside == 12);
}
