#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semilab/levi_civita.hpp"
#include "semilab/operators.hpp"
#include "semilab/semigroup.hpp"
#include "semilab/sine_law.hpp"

namespace semilab {

/// A concrete carrier with named functions and the expectations that were
/// checked when it was built. `facts` records computed values for reports.
struct Fixture {
  std::string name;
  std::string carrier;
  std::string field;
  std::vector<std::pair<std::string, FuncOnS>> functions;
  std::vector<LawCheck> checks;
  std::vector<std::pair<std::string, std::string>> facts;

  bool ok() const {
    for (auto const& c : checks)
      if (!c.holds) return false;
    return true;
  }

  FuncOnS const& function(std::string const& key) const {
    for (auto const& [k, v] : functions)
      if (k == key) return v;
    throw Error(ErrorCode::InvalidArgument, "fixture has no function '" + key + "'");
  }
};

namespace detail {

inline LawCheck expect(std::string law, bool holds, std::vector<std::size_t> witness = {}) {
  return holds ? LawCheck::pass(std::move(law)) : LawCheck::fail(std::move(law), std::move(witness));
}

/// Row-convention matrix of L(y) on span(basis): row i holds the
/// coordinates of L(y) basis_i. std::nullopt when L(y) leaves the span.
inline std::optional<MatrixF> left_action_rows(FiniteSemigroup const& s, std::size_t y,
                                               std::vector<FuncOnS> const& basis) {
  std::size_t k = basis.size();
  MatrixF m(basis.front().field(), k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto coords = coordinates_in_basis(apply_L(s, y, basis[i]), std::span<FuncOnS const>(basis));
    if (std::holds_alternative<NotInSpan>(coords)) return std::nullopt;
    auto const& c = std::get<std::vector<Scalar>>(coords);
    for (std::size_t j = 0; j < k; ++j) m.at(i, j) = c[j];
  }
  return m;
}

inline std::string join_functions(std::vector<FuncOnS> const& fs) {
  std::string out;
  for (auto const& f : fs) {
    out += out.empty() ? "(" : ", (";
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? ", " : "") + f[i].to_string();
    out += ")";
  }
  return out;
}

/// Smallest element of multiplicative order `order` in F_p.
inline std::uint64_t root_of_unity(std::uint64_t p, std::uint64_t order) {
  for (std::uint64_t w = 2; w < p; ++w) {
    if (mod_pow(w, order, p) != 1) continue;
    bool primitive = true;
    for (std::uint64_t d = 1; d < order; ++d)
      if (order % d == 0 && mod_pow(w, d, p) == 1) primitive = false;
    if (primitive) return w;
  }
  throw Error(ErrorCode::BadPrime, "F_" + std::to_string(p) + " has no element of order " + std::to_string(order));
}

/// (chi - chi^-1)/2 and (chi + chi^-1)/2 for chi(k) = w^k on Z_m.
inline std::pair<FuncOnS, FuncOnS> character_pair(Field const& field, std::size_t m, std::uint64_t w) {
  auto p = field.characteristic();
  Scalar half = Scalar(field, 2).inverse();
  std::vector<Scalar> f;
  std::vector<Scalar> g;
  for (std::size_t k = 0; k < m; ++k) {
    Scalar chi(field, static_cast<long long>(mod_pow(w, k, p)));
    Scalar chi_inv = chi.inverse();
    f.push_back(half * (chi - chi_inv));
    g.push_back(half * (chi + chi_inv));
  }
  return {FuncOnS(field, f), FuncOnS(field, g)};
}

inline void record_conjugation(Fixture& fx, Carrier const& c) {
  auto report = check_conjugation_identity(c.semigroup, c.sigma);
  fx.checks.push_back(report.conjugation);
}

inline void record_sine(Fixture& fx, Carrier const& c, FuncOnS const& f, FuncOnS const& g,
                        Scalar const& beta, Scalar const& gamma) {
  try {
    auto inst = SineLawInstance::build(c.semigroup, c.sigma, f, g, beta, gamma);
    auto report = analyze(inst);
    fx.checks.push_back(expect("sine-law analysis has no violations", report.ok()));
    fx.facts.emplace_back("sine_branch", to_string(report.branch));
    fx.facts.emplace_back("f_parity", to_string(report.f_parity));
    fx.facts.emplace_back("g_sigma_law", report.g_sigma_law);
    if (report.a_fit) fx.facts.emplace_back("a", report.a_fit->a.to_string());
    if (report.bc_fit && report.bc_fit->p) fx.facts.emplace_back("b", report.bc_fit->p->to_string());
    fx.checks.push_back(report.central);
    fx.checks.push_back(report.kannappan);
  } catch (Error const& e) {
    fx.checks.push_back(expect(std::string("sine-law instance builds: ") + e.what(), false));
  }
}

inline std::optional<LeviCivitaReport> record_levi_civita(Fixture& fx, Carrier const& c,
                                                          FuncOnS const& f, FuncOnS const& g,
                                                          FuncOnS const& h1, FuncOnS const& h2) {
  try {
    auto inst = LeviCivitaInstance::build(c.semigroup, c.sigma, f, g, h1, h2);
    auto report = analyze_levi_civita(inst);
    fx.checks.push_back(expect("Levi-Civita pipeline has no violations", report.ok()));
    if (report.constants.constants) {
      auto const& k = *report.constants.constants;
      fx.facts.emplace_back("constants", "(" + k[0].to_string() + ", " + k[1].to_string() + ", " +
                                             k[2].to_string() + ", " + k[3].to_string() + ")");
    }
    return report;
  } catch (Error const& e) {
    fx.checks.push_back(expect(std::string("Levi-Civita instance builds: ") + e.what(), false));
    return std::nullopt;
  }
}

}  // namespace detail

/// GL_2(F_3) with transpose and f_i(A) = (A v)_i. L(y) acts on span{f_1, f_2}
/// by the matrix y itself (row i = coordinates of L(y) f_i).
inline Fixture fixture_gl(std::vector<std::int64_t> const& v) {
  constexpr std::uint64_t p = 3;
  if (v.size() != 2) {
    throw Error(ErrorCode::ShapeMismatch, "v must have two entries");
  }
  Field field = Field::prime(p);
  if (Scalar(field, static_cast<long long>(v[0])).is_zero() &&
      Scalar(field, static_cast<long long>(v[1])).is_zero()) {
    throw Error(ErrorCode::ZeroVector, "v must be nonzero");
  }
  auto c = make_gl(2, p);
  std::size_t n = c.semigroup.order();
  std::vector<FuncOnS> fs(2, FuncOnS(field, n));
  for (std::size_t a = 0; a < n; ++a) {
    auto const& m = c.element_data[a];
    for (std::size_t i = 0; i < 2; ++i)
      fs[i][a] = Scalar(field, static_cast<long long>(m[i * 2] * v[0] + m[i * 2 + 1] * v[1]));
  }
  Fixture fx{"gl2-f3", c.name, field.name(), {{"f1", fs[0]}, {"f2", fs[1]}}, {}, {}};
  detail::record_conjugation(fx, c);
  LawCheck action = LawCheck::pass("L(y)|_V = y");
  for (std::size_t y = 0; y < n && action.holds; ++y) {
    auto m = detail::left_action_rows(c.semigroup, y, fs);
    MatrixF expected(field, 2, 2);
    for (std::size_t i = 0; i < 4; ++i)
      expected.at(i / 2, i % 2) = Scalar(field, static_cast<long long>(c.element_data[y][i]));
    if (!m || !(*m == expected)) action = LawCheck::fail(action.law, {y});
  }
  fx.checks.push_back(action);
  auto r = rank(std::span<FuncOnS const>(fs));
  fx.checks.push_back(detail::expect("rank{f1, f2} = 2", r == 2));
  fx.facts.emplace_back("rank", std::to_string(r));
  fx.facts.emplace_back("order", std::to_string(n));
  return fx;
}

/// S_n with inversion and f_i(pi) = 1 if pi(j0) = i. L(y) f_i = f_{y^-1(i)},
/// so L(y) acts by the permutation matrix of y^-1 (row i has its 1 in
/// column y^-1(i)). `j0` is 1-based.
inline Fixture fixture_sym(std::size_t n, std::size_t j0) {
  if (n < 2 || n > 4) {
    throw Error(ErrorCode::BadIndex, "n must be in [2, 4]");
  }
  if (j0 < 1 || j0 > n) {
    throw Error(ErrorCode::BadIndex, "j0 must be in [1, n]", {j0});
  }
  Field field = Field::rational();
  auto c = make_symmetric_group(n);
  std::size_t order = c.semigroup.order();
  std::vector<FuncOnS> fs(n, FuncOnS(field, order));
  for (std::size_t a = 0; a < order; ++a) {
    auto image = static_cast<std::size_t>(c.element_data[a][j0 - 1]);
    fs[image][a] = Scalar::one(field);
  }
  Fixture fx{"sym" + std::to_string(n) + "-j" + std::to_string(j0), c.name, field.name(), {}, {}, {}};
  for (std::size_t i = 0; i < n; ++i) fx.functions.emplace_back("f" + std::to_string(i + 1), fs[i]);
  detail::record_conjugation(fx, c);

  LawCheck shift = LawCheck::pass("L(y) f_i = f_{y^-1(i)}");
  LawCheck matrix = LawCheck::pass("L(y)|_V = permutation matrix of y^-1");
  LawCheck permutation = LawCheck::pass("L(y)|_V is a 0/1 matrix with unit row and column sums");
  for (std::size_t y = 0; y < order; ++y) {
    std::vector<std::size_t> inverse(n);
    for (std::size_t i = 0; i < n; ++i) inverse[static_cast<std::size_t>(c.element_data[y][i])] = i;
    for (std::size_t i = 0; i < n && shift.holds; ++i)
      if (!(apply_L(c.semigroup, y, fs[i]) == fs[inverse[i]])) shift = LawCheck::fail(shift.law, {y, i});
    auto m = detail::left_action_rows(c.semigroup, y, fs);
    if (!m) {
      matrix = LawCheck::fail(matrix.law, {y});
      permutation = LawCheck::fail(permutation.law, {y});
      continue;
    }
    MatrixF expected(field, n, n);
    for (std::size_t i = 0; i < n; ++i) expected.at(i, inverse[i]) = Scalar::one(field);
    if (matrix.holds && !(*m == expected)) matrix = LawCheck::fail(matrix.law, {y});
    for (std::size_t i = 0; i < n && permutation.holds; ++i) {
      Scalar row_sum = Scalar::zero(field);
      Scalar col_sum = Scalar::zero(field);
      for (std::size_t j = 0; j < n; ++j) {
        auto const& e = m->at(i, j);
        if (!e.is_zero() && !e.is_one()) permutation = LawCheck::fail(permutation.law, {y});
        row_sum += e;
        col_sum += m->at(j, i);
      }
      if (!row_sum.is_one() || !col_sum.is_one()) permutation = LawCheck::fail(permutation.law, {y});
    }
  }
  fx.checks.push_back(shift);
  fx.checks.push_back(matrix);
  fx.checks.push_back(permutation);
  auto r = rank(std::span<FuncOnS const>(fs));
  fx.checks.push_back(detail::expect("rank{f_1..f_n} = n", r == n));
  fx.facts.emplace_back("rank", std::to_string(r));
  fx.facts.emplace_back("order", std::to_string(order));
  return fx;
}

/// The cube rotation group over Q with f_i(g) = g_{i1}; L(y) acts on
/// span{f_1, f_2, f_3} by the matrix y.
inline Fixture fixture_rotation() {
  Field field = Field::rational();
  auto c = make_rotation_group_24();
  std::size_t n = c.semigroup.order();
  std::vector<FuncOnS> fs(3, FuncOnS(field, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < 3; ++i) fs[i][a] = Scalar(field, static_cast<long long>(c.element_data[a][i * 3]));
  Fixture fx{"rot24", c.name, field.name(), {{"f1", fs[0]}, {"f2", fs[1]}, {"f3", fs[2]}}, {}, {}};
  detail::record_conjugation(fx, c);

  LawCheck orthogonal = LawCheck::pass("g g^T = I");
  LawCheck action = LawCheck::pass("L(y)|_V = y");
  for (std::size_t y = 0; y < n; ++y) {
    auto const& d = c.element_data[y];
    auto product = detail::mat_mul(d, detail::mat_transpose(d, 3), 3, 0);
    if (orthogonal.holds && product != std::vector<std::int64_t>{1, 0, 0, 0, 1, 0, 0, 0, 1})
      orthogonal = LawCheck::fail(orthogonal.law, {y});
    auto m = detail::left_action_rows(c.semigroup, y, fs);
    MatrixF expected(field, 3, 3);
    for (std::size_t i = 0; i < 9; ++i) expected.at(i / 3, i % 3) = Scalar(field, static_cast<long long>(d[i]));
    if (action.holds && (!m || !(*m == expected))) action = LawCheck::fail(action.law, {y});
  }
  fx.checks.push_back(orthogonal);
  fx.checks.push_back(action);

  // Evaluation argument: at I the values are e_1; rotations with first
  // column e_2 and e_3 isolate the remaining coefficients.
  std::vector<std::size_t> evaluation_points;
  if (auto id = c.semigroup.identity()) evaluation_points.push_back(*id);
  for (std::size_t target = 1; target < 3; ++target) {
    for (std::size_t a = 0; a < n; ++a) {
      if (fs[target][a].is_one()) {
        evaluation_points.push_back(a);
        break;
      }
    }
  }
  bool unit_evaluations = evaluation_points.size() == 3;
  for (std::size_t t = 0; t < evaluation_points.size(); ++t)
    for (std::size_t i = 0; i < 3; ++i)
      unit_evaluations = unit_evaluations && fs[i][evaluation_points[t]] == Scalar(field, i == t ? 1 : 0);
  fx.checks.push_back(detail::expect("f evaluated at I, R2, R3 gives e1, e2, e3", unit_evaluations));
  auto r = rank(std::span<FuncOnS const>(fs));
  fx.checks.push_back(detail::expect("rank{f1, f2, f3} = 3", r == 3));
  fx.facts.emplace_back("rank", std::to_string(r));
  fx.facts.emplace_back("order", std::to_string(n));
  std::string points;
  for (auto a : evaluation_points) points += (points.empty() ? "" : ", ") + c.semigroup.label(a);
  fx.facts.emplace_back("evaluation_points", points);
  return fx;
}

/// Z_4 with sigma = id over F_p (p = 1 mod 4): f = (chi1 - chi2)/2,
/// g = (chi1 + chi2)/2 with chi1(k) = w^k, chi2(k) = w^-k, w of order 4.
/// A sine-law solution with beta = 1, gamma = 0 and a Levi-Civita solution
/// with h1 = g, h2 = f.
inline Fixture fixture_char_z4(std::uint64_t p = 5) {
  Field field = Field::prime(p);
  if (p % 4 != 1) {
    throw Error(ErrorCode::BadPrime, "p must be 1 mod 4");
  }
  auto w = detail::root_of_unity(p, 4);
  auto c = make_cyclic(4);
  auto [f, g] = detail::character_pair(field, 4, w);
  Fixture fx{"char-z4", c.name, field.name(), {{"f", f}, {"g", g}}, {}, {}};
  fx.facts.emplace_back("omega", std::to_string(w));
  fx.facts.emplace_back("f", detail::join_functions({f}));
  fx.facts.emplace_back("g", detail::join_functions({g}));
  fx.checks.push_back(detail::expect("rank{f, g} = 2", rank({f, g}) == 2));
  LawCheck cosine = LawCheck::pass("g(x+y) = g(x)g(y) + f(x)f(y)");
  for (std::size_t x = 0; x < 4 && cosine.holds; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      if (!(g[c.semigroup.mul(x, y)] == g[x] * g[y] + f[x] * f[y])) {
        cosine = LawCheck::fail(cosine.law, {x, y});
        break;
      }
  fx.checks.push_back(cosine);
  detail::record_sine(fx, c, f, g, Scalar::one(field), Scalar::zero(field));
  auto lc = detail::record_levi_civita(fx, c, f, g, g, f);
  if (lc && lc->constants.constants) {
    auto const& k = *lc->constants.constants;
    fx.checks.push_back(detail::expect("(c1, c2, c3, c4) = (0, 1, 1, 0)",
                                       k[0].is_zero() && k[1].is_one() && k[2].is_one() && k[3].is_zero()));
  }
  return fx;
}

/// S_3 with inversion over F_p: f = (1 - sgn)/2, g = (1 + sgn)/2, the
/// characters of the abelianization Z_2 lifted through the sign map.
inline Fixture fixture_sign_s3(std::uint64_t p = 5) {
  Field field = Field::prime(p);
  auto c = make_symmetric_group(3);
  std::size_t n = c.semigroup.order();
  auto sign = [&](std::size_t a) {
    auto const& perm = c.element_data[a];
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    return inversions % 2 ? -1 : 1;
  };
  Scalar half = Scalar(field, 2).inverse();
  FuncOnS f(field, n);
  FuncOnS g(field, n);
  LawCheck sign_even = LawCheck::pass("sgn(pi^-1) = sgn(pi)");
  for (std::size_t a = 0; a < n; ++a) {
    Scalar e(field, sign(a));
    f[a] = half * (Scalar::one(field) - e);
    g[a] = half * (Scalar::one(field) + e);
    if (sign_even.holds && sign(a) != sign(c.sigma(a))) sign_even = LawCheck::fail(sign_even.law, {a});
  }
  Fixture fx{"sgn-s3", c.name, field.name(), {{"f", f}, {"g", g}}, {sign_even}, {}};
  fx.facts.emplace_back("f", detail::join_functions({f}));
  fx.facts.emplace_back("g", detail::join_functions({g}));
  bool independent = rank({f, g}) == 2;
  fx.facts.emplace_back("independent", independent ? "true" : "false");
  fx.checks.push_back(check_central(c.semigroup, f));
  fx.checks.push_back(check_kannappan(c.semigroup, f));
  if (independent) {
    detail::record_sine(fx, c, f, g, Scalar::one(field), Scalar::zero(field));
    detail::record_levi_civita(fx, c, f, g, g, f);
  }
  return fx;
}

/// Z_3 with sigma = negation over F_p (p = 1 mod 3): the sine subtraction
/// law f(x - y) = f(x)g(y) - g(x)f(y), a beta = -1 solution.
inline Fixture fixture_odd_z3(std::uint64_t p = 7) {
  Field field = Field::prime(p);
  if (p % 3 != 1) {
    throw Error(ErrorCode::BadPrime, "p must be 1 mod 3");
  }
  auto w = detail::root_of_unity(p, 3);
  auto c = make_cyclic(3, true);
  auto [f, g] = detail::character_pair(field, 3, w);
  Fixture fx{"odd-z3", c.name, field.name(), {{"f", f}, {"g", g}}, {}, {}};
  fx.facts.emplace_back("omega", std::to_string(w));
  fx.facts.emplace_back("f", detail::join_functions({f}));
  fx.facts.emplace_back("g", detail::join_functions({g}));
  fx.checks.push_back(detail::expect("rank{f, g} = 2", rank({f, g}) == 2));
  detail::record_sine(fx, c, f, g, Scalar(field, -1), Scalar::zero(field));
  detail::record_levi_civita(fx, c, f, g, g, -f);
  return fx;
}

inline std::vector<Fixture> run_gallery() {
  std::vector<Fixture> out;
  out.push_back(fixture_gl({1, 0}));
  out.push_back(fixture_sym(3, 1));
  out.push_back(fixture_sym(4, 1));
  out.push_back(fixture_rotation());
  out.push_back(fixture_char_z4(5));
  out.push_back(fixture_sign_s3(5));
  out.push_back(fixture_odd_z3(7));
  return out;
}

}  // namespace semilab
