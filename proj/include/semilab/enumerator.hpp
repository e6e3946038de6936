#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semilab/levi_civita.hpp"
#include "semilab/semigroup.hpp"
#include "semilab/sine_law.hpp"

namespace semilab {

struct SineLawEquation {
  std::string beta_text;   // raw input, e.g. "-1" or "2"
  std::string gamma_text;
};

struct LeviCivitaEquation {
  std::vector<std::int64_t> h1;
  std::vector<std::int64_t> h2;
};

using SearchEquation = std::variant<SineLawEquation, LeviCivitaEquation>;

struct SearchLimits {
  std::uint64_t max_nodes = 100'000'000;
  std::optional<double> time_budget_seconds;
  bool pruning = true;
  std::size_t max_order = 6;
  std::uint64_t max_prime = 7;
};

struct SearchSpec {
  FiniteSemigroup semigroup;
  InvolutiveAntiAutomorphism sigma;
  std::uint64_t p;
  SearchEquation equation;
  SearchLimits limits;
};

struct Solution {
  std::vector<std::uint32_t> f;
  std::vector<std::uint32_t> g;
  bool independent = false;
};

struct SolutionSet {
  std::uint64_t p = 0;
  std::vector<Solution> solutions;  // lexicographic by (f, g)
  std::size_t independent_count = 0;
  std::size_t dependent_count = 0;
  std::uint64_t nodes = 0;
};

inline FuncOnS to_function(Field const& field, std::vector<std::uint32_t> const& values) {
  std::vector<Scalar> out;
  out.reserve(values.size());
  for (auto v : values) out.emplace_back(field, static_cast<long long>(v));
  return FuncOnS(field, std::move(out));
}

namespace detail {

inline bool independent_pair(std::vector<std::uint32_t> const& f, std::vector<std::uint32_t> const& g,
                             std::uint64_t p) {
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = x + 1; y < f.size(); ++y) {
      std::uint64_t lhs = std::uint64_t{f[x]} * g[y] % p;
      std::uint64_t rhs = std::uint64_t{f[y]} * g[x] % p;
      if (lhs != rhs) return true;
    }
  return false;
}

/// Both equations are linear in g once f is fixed. Each instance (x, y)
/// contributes the row  sum_k coef[k] g(k) = rhs  over F_p.
class LinearSystemSearch {
 public:
  struct Row {
    std::vector<std::uint64_t> coef;
    std::uint64_t rhs = 0;
    std::size_t pivot = 0;
  };

  LinearSystemSearch(SearchSpec const& spec, std::atomic<std::uint64_t>& nodes,
                     std::chrono::steady_clock::time_point start)
      : s_(spec.semigroup), sigma_(spec.sigma), p_(spec.p), limits_(spec.limits), nodes_(nodes),
        start_(start), n_(s_.order()) {
    Field field = Field::prime(p_);
    if (auto const* sine = std::get_if<SineLawEquation>(&spec.equation)) {
      sine_ = true;
      beta_ = Scalar::parse(field, sine->beta_text).residue();
      gamma_ = Scalar::parse(field, sine->gamma_text).residue();
    } else {
      auto const& lc = std::get<LeviCivitaEquation>(spec.equation);
      if (lc.h1.size() != n_ || lc.h2.size() != n_) {
        throw Error(ErrorCode::ShapeMismatch, "h1/h2 length does not match carrier order");
      }
      for (std::size_t i = 0; i < n_; ++i) {
        h1_.push_back(Scalar(field, static_cast<long long>(lc.h1[i])).residue());
        h2_.push_back(Scalar(field, static_cast<long long>(lc.h2[i])).residue());
      }
    }
    // An instance (x, y) is decided once f(x), f(y), f(x sigma(y)) are set.
    ready_.resize(n_);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) {
        std::size_t z = s_.mul(x, sigma_(y));
        ready_[std::max({x, y, z})].emplace_back(x, y);
      }
  }

  /// All solutions with f(0) = first, in lexicographic order.
  std::vector<Solution> pruned(std::uint32_t first) {
    std::vector<Solution> out;
    std::vector<std::uint32_t> f(n_, 0);
    f[0] = first;
    tick();
    std::vector<Row> rows;
    if (extend(rows, f, 0)) descend(rows, f, 1, out);
    return out;
  }

  /// All solutions with f(0) = first by testing every (f, g).
  std::vector<Solution> unpruned(std::uint32_t first) {
    std::vector<Solution> out;
    std::vector<std::uint32_t> f(n_, 0);
    std::vector<std::uint32_t> g(n_, 0);
    f[0] = first;
    do {
      std::fill(g.begin(), g.end(), 0);
      do {
        tick();
        if (satisfies(f, g)) out.push_back(Solution{f, g, independent_pair(f, g, p_)});
      } while (increment(g, 0));
    } while (increment(f, 1));
    return out;
  }

  bool satisfies(std::vector<std::uint32_t> const& f, std::vector<std::uint32_t> const& g) const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) {
        std::uint64_t lhs = f[s_.mul(x, sigma_(y))];
        std::uint64_t rhs = sine_ ? (std::uint64_t{f[x]} * g[y] + beta_ * g[x] % p_ * f[y] +
                                     gamma_ * f[x] % p_ * f[y]) % p_
                                  : (std::uint64_t{f[x]} * h1_[y] + std::uint64_t{g[x]} * h2_[y]) % p_;
        if (lhs != rhs) return false;
      }
    return true;
  }

 private:
  // Odometer increment over positions [from, n); false once it wraps.
  bool increment(std::vector<std::uint32_t>& v, std::size_t from) const {
    for (std::size_t k = v.size(); k-- > from;) {
      if (++v[k] < p_) return true;
      v[k] = 0;
    }
    return false;
  }

  void tick() {
    auto count = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (count > limits_.max_nodes) {
      throw Error(ErrorCode::BudgetExceeded, "node cap " + std::to_string(limits_.max_nodes) + " reached");
    }
    if (limits_.time_budget_seconds && (count & 0x3FFU) == 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > *limits_.time_budget_seconds) {
        throw Error(ErrorCode::BudgetExceeded, "time budget exhausted");
      }
    }
  }

  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }

  std::uint64_t inv(std::uint64_t a) const { return mod_inverse(a, p_); }

  Row instance_row(std::vector<std::uint32_t> const& f, std::size_t x, std::size_t y) const {
    Row row{std::vector<std::uint64_t>(n_, 0), 0, 0};
    std::uint64_t fx = f[x];
    std::uint64_t fy = f[y];
    std::uint64_t fz = f[s_.mul(x, sigma_(y))];
    if (sine_) {
      row.coef[y] = (row.coef[y] + fx) % p_;
      row.coef[x] = (row.coef[x] + beta_ * fy) % p_;
      row.rhs = (fz + neg(gamma_ * fx % p_ * fy % p_)) % p_;
    } else {
      row.coef[x] = h2_[y];
      row.rhs = (fz + neg(fx * h1_[y] % p_)) % p_;
    }
    return row;
  }

  /// Adds the instances decided at `level`; false on inconsistency.
  bool extend(std::vector<Row>& rows, std::vector<std::uint32_t> const& f, std::size_t level) const {
    for (auto [x, y] : ready_[level]) {
      Row row = instance_row(f, x, y);
      for (auto const& r : rows) {
        std::uint64_t c = row.coef[r.pivot];
        if (c == 0) continue;
        for (std::size_t k = 0; k < n_; ++k) row.coef[k] = (row.coef[k] + neg(c * r.coef[k] % p_)) % p_;
        row.rhs = (row.rhs + neg(c * r.rhs % p_)) % p_;
      }
      std::size_t pivot = 0;
      while (pivot < n_ && row.coef[pivot] == 0) ++pivot;
      if (pivot == n_) {
        if (row.rhs != 0) return false;
        continue;
      }
      std::uint64_t scale = inv(row.coef[pivot]);
      for (auto& c : row.coef) c = c * scale % p_;
      row.rhs = row.rhs * scale % p_;
      row.pivot = pivot;
      rows.push_back(std::move(row));
    }
    return true;
  }

  void descend(std::vector<Row> const& rows, std::vector<std::uint32_t>& f, std::size_t level,
               std::vector<Solution>& out) {
    if (level == n_) {
      emit(rows, f, out);
      return;
    }
    for (std::uint32_t v = 0; v < p_; ++v) {
      tick();
      f[level] = v;
      std::vector<Row> next(rows);
      if (extend(next, f, level)) descend(next, f, level + 1, out);
    }
    f[level] = 0;
  }

  /// Enumerates the affine solution space in g by back-substitution.
  void emit(std::vector<Row> const& rows, std::vector<std::uint32_t> const& f,
            std::vector<Solution>& out) const {
    std::vector<char> is_pivot(n_, 0);
    for (auto const& r : rows) is_pivot[r.pivot] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t k = 0; k < n_; ++k)
      if (!is_pivot[k]) free_cols.push_back(k);
    std::vector<std::uint32_t> free_vals(free_cols.size(), 0);
    std::vector<Solution> batch;
    do {
      std::vector<std::uint32_t> g(n_, 0);
      for (std::size_t i = 0; i < free_cols.size(); ++i) g[free_cols[i]] = free_vals[i];
      for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        std::uint64_t acc = it->rhs;
        for (std::size_t k = 0; k < n_; ++k)
          if (k != it->pivot && it->coef[k] != 0) acc = (acc + neg(it->coef[k] * g[k] % p_)) % p_;
        g[it->pivot] = static_cast<std::uint32_t>(acc);
      }
      batch.push_back(Solution{f, g, independent_pair(f, g, p_)});
    } while (increment(free_vals, 0));
    std::sort(batch.begin(), batch.end(), [](auto const& a, auto const& b) { return a.g < b.g; });
    for (auto& s : batch) out.push_back(std::move(s));
  }

  FiniteSemigroup const& s_;
  InvolutiveAntiAutomorphism const& sigma_;
  std::uint64_t p_;
  SearchLimits limits_;
  std::atomic<std::uint64_t>& nodes_;
  std::chrono::steady_clock::time_point start_;
  std::size_t n_;
  bool sine_ = false;
  std::uint64_t beta_ = 0;
  std::uint64_t gamma_ = 0;
  std::vector<std::uint64_t> h1_;
  std::vector<std::uint64_t> h2_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ready_;
};

}  // namespace detail

/// Every (f, g) in F_p^S x F_p^S satisfying the equation, sorted
/// lexicographically. Throws BudgetExceeded rather than returning a partial
/// set.
inline SolutionSet enumerate_solutions(SearchSpec const& spec) {
  Field::prime(spec.p);
  std::size_t n = spec.semigroup.order();
  if (n > spec.limits.max_order) {
    throw Error(ErrorCode::TooLarge, "carrier order " + std::to_string(n) + " exceeds enumeration cap " +
                                         std::to_string(spec.limits.max_order));
  }
  if (spec.p > spec.limits.max_prime) {
    throw Error(ErrorCode::TooLarge, "p = " + std::to_string(spec.p) + " exceeds enumeration cap " +
                                         std::to_string(spec.limits.max_prime));
  }
  if (auto const* sine = std::get_if<SineLawEquation>(&spec.equation)) {
    if (Scalar::parse(Field::prime(spec.p), sine->beta_text).is_zero()) {
      throw Error(ErrorCode::BetaZero, "beta = " + sine->beta_text + " vanishes in F_" + std::to_string(spec.p));
    }
  }
  if (!spec.limits.pruning) {
    // Candidate count p^(2n) must fit under the node cap.
    std::uint64_t space = 1;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      space *= spec.p;
      if (space > spec.limits.max_nodes) {
        throw Error(ErrorCode::BudgetExceeded, "unpruned search space exceeds node cap");
      }
    }
  }

  std::atomic<std::uint64_t> nodes{0};
  auto start = std::chrono::steady_clock::now();
  std::vector<std::future<std::vector<Solution>>> parts;
  for (std::uint32_t first = 0; first < spec.p; ++first) {
    parts.push_back(std::async(std::launch::async, [&spec, &nodes, start, first] {
      detail::LinearSystemSearch search(spec, nodes, start);
      return spec.limits.pruning ? search.pruned(first) : search.unpruned(first);
    }));
  }
  SolutionSet out;
  out.p = spec.p;
  std::optional<Error> failure;
  for (auto& part : parts) {
    try {
      for (auto& s : part.get()) out.solutions.push_back(std::move(s));
    } catch (Error const& e) {
      if (!failure) failure = e;
    }
  }
  if (failure) throw *failure;
  for (auto const& s : out.solutions) {
    if (s.independent)
      ++out.independent_count;
    else
      ++out.dependent_count;
  }
  out.nodes = nodes.load();
  return out;
}

struct CrossValidationReport {
  std::string equation;  // "sine-law" or "levi-civita"
  std::string beta_input;
  std::string gamma_input;
  std::string beta_normalized;
  std::string gamma_normalized;
  std::string branch;
  /// True when the parameters are excluded by the structure theorem, so no
  /// independent solution may exist.
  bool emptiness_required = false;
  std::size_t solutions = 0;
  std::size_t independent = 0;
  std::size_t analyzed = 0;
  std::size_t soundness_failures = 0;
  std::string outcome;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty() && soundness_failures == 0; }
};

inline CrossValidationReport cross_validate(SolutionSet const& set, SearchSpec const& spec) {
  Field field = Field::prime(spec.p);
  CrossValidationReport r;
  r.solutions = set.solutions.size();
  r.independent = set.independent_count;
  std::atomic<std::uint64_t> unused_nodes{0};
  detail::LinearSystemSearch checker(spec, unused_nodes, std::chrono::steady_clock::now());
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    if (!checker.satisfies(set.solutions[i].f, set.solutions[i].g)) {
      ++r.soundness_failures;
      r.violations.push_back("solution " + std::to_string(i) + " does not satisfy the equation");
    }
  }

  if (auto const* sine = std::get_if<SineLawEquation>(&spec.equation)) {
    r.equation = "sine-law";
    Scalar beta = Scalar::parse(field, sine->beta_text);
    Scalar gamma = Scalar::parse(field, sine->gamma_text);
    r.beta_input = sine->beta_text;
    r.gamma_input = sine->gamma_text;
    r.beta_normalized = beta.to_string();
    r.gamma_normalized = gamma.to_string();
    auto branch = branch_of(beta);
    r.branch = to_string(branch);
    r.emptiness_required =
        branch == Branch::Excluded || (branch == Branch::BetaMinusOne && !gamma.is_zero());
    if (r.emptiness_required && set.independent_count != 0) {
      r.violations.push_back("THEOREM VIOLATION: " + std::to_string(set.independent_count) +
                             " independent solutions for excluded parameters (branch " + r.branch + ")");
    }
    for (std::size_t i = 0; i < set.solutions.size(); ++i) {
      auto const& sol = set.solutions[i];
      if (!sol.independent) continue;
      try {
        auto inst = SineLawInstance::build(spec.semigroup, spec.sigma, to_function(field, sol.f),
                                           to_function(field, sol.g), beta, gamma);
        auto report = analyze(inst);
        ++r.analyzed;
        for (auto const& v : report.violations)
          r.violations.push_back("solution " + std::to_string(i) + ": " + v);
      } catch (Error const& e) {
        ++r.soundness_failures;
        r.violations.push_back("solution " + std::to_string(i) + " rejected: " + e.what());
      }
    }
  } else {
    auto const& lc = std::get<LeviCivitaEquation>(spec.equation);
    r.equation = "levi-civita";
    auto h1 = FuncOnS::from_ints(field, {lc.h1.begin(), lc.h1.end()});
    auto h2 = FuncOnS::from_ints(field, {lc.h2.begin(), lc.h2.end()});
    bool h_independent = rank({h1, h2}) == 2;
    r.branch = h_independent ? "h-independent" : "h-dependent";
    for (std::size_t i = 0; i < set.solutions.size() && h_independent; ++i) {
      auto const& sol = set.solutions[i];
      if (!sol.independent) continue;
      try {
        auto inst = LeviCivitaInstance::build(spec.semigroup, spec.sigma, to_function(field, sol.f),
                                              to_function(field, sol.g), h1, h2);
        auto report = analyze_levi_civita(inst);
        ++r.analyzed;
        for (auto const& v : report.violations)
          r.violations.push_back("solution " + std::to_string(i) + ": " + v);
      } catch (Error const& e) {
        ++r.soundness_failures;
        r.violations.push_back("solution " + std::to_string(i) + " rejected: " + e.what());
      }
    }
  }
  r.outcome = set.independent_count == 0
                  ? "no independent solutions"
                  : std::to_string(r.analyzed) + " independent solutions analyzed";
  return r;
}

}  // namespace semilab
