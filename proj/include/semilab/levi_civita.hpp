#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semilab/linalg.hpp"
#include "semilab/operators.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

namespace detail {

inline void check_functions(FiniteSemigroup const& s, std::initializer_list<FuncOnS const*> fs) {
  Field const& field = (*fs.begin())->field();
  for (auto const* h : fs) {
    if (h->size() != s.order()) {
      throw Error(ErrorCode::ShapeMismatch, "function length " + std::to_string(h->size()) +
                                                " does not match order " + std::to_string(s.order()));
    }
    if (h->field() != field) {
      throw Error(ErrorCode::MixedFields, h->field().name() + " vs " + field.name());
    }
  }
}

inline std::string matrix_text(MatrixF const& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += m.at(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace detail

/// f(x sigma(y)) = f(x) h1(y) + g(x) h2(y) on a carrier, with {f, g} and
/// {h1, h2} linearly independent.
class LeviCivitaInstance {
 public:
  static LeviCivitaInstance build(FiniteSemigroup s, InvolutiveAntiAutomorphism sigma, FuncOnS f,
                                  FuncOnS g, FuncOnS h1, FuncOnS h2) {
    LeviCivitaInstance inst(std::move(s), std::move(sigma), std::move(f), std::move(g),
                            std::move(h1), std::move(h2));
    if (rank({inst.f_, inst.g_}) != 2) {
      throw Error(ErrorCode::DependentFG, "{f, g} is linearly dependent");
    }
    if (rank({inst.h1_, inst.h2_}) != 2) {
      throw Error(ErrorCode::DependentH, "{h1, h2} is linearly dependent");
    }
    if (auto w = inst.equation_witness()) {
      throw Error(ErrorCode::EquationFails, "f(x sigma(y)) != f(x)h1(y) + g(x)h2(y)",
                  {w->first, w->second});
    }
    return inst;
  }

  /// Skips the independence and equation checks; for exercising the
  /// pipeline on data that violates the hypotheses.
  static LeviCivitaInstance unvalidated(FiniteSemigroup s, InvolutiveAntiAutomorphism sigma,
                                        FuncOnS f, FuncOnS g, FuncOnS h1, FuncOnS h2) {
    return LeviCivitaInstance(std::move(s), std::move(sigma), std::move(f), std::move(g),
                              std::move(h1), std::move(h2));
  }

  FiniteSemigroup const& semigroup() const noexcept { return s_; }
  InvolutiveAntiAutomorphism const& sigma() const noexcept { return sigma_; }
  FuncOnS const& f() const noexcept { return f_; }
  FuncOnS const& g() const noexcept { return g_; }
  FuncOnS const& h1() const noexcept { return h1_; }
  FuncOnS const& h2() const noexcept { return h2_; }
  Field const& field() const noexcept { return f_.field(); }

  /// First (x, y) where the equation fails, in index order.
  std::optional<std::pair<std::size_t, std::size_t>> equation_witness() const {
    std::size_t n = s_.order();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (!(f_[s_.mul(x, sigma_(y))] == f_[x] * h1_[y] + g_[x] * h2_[y])) return std::pair{x, y};
    return std::nullopt;
  }

 private:
  LeviCivitaInstance(FiniteSemigroup s, InvolutiveAntiAutomorphism sigma, FuncOnS f, FuncOnS g,
                     FuncOnS h1, FuncOnS h2)
      : s_(std::move(s)), sigma_(std::move(sigma)), f_(std::move(f)), g_(std::move(g)),
        h1_(std::move(h1)), h2_(std::move(h2)) {
    if (sigma_.size() != s_.order()) throw Error(ErrorCode::ShapeMismatch, "sigma length");
    detail::check_functions(s_, {&f_, &g_, &h1_, &h2_});
  }

  FiniteSemigroup s_;
  InvolutiveAntiAutomorphism sigma_;
  FuncOnS f_;
  FuncOnS g_;
  FuncOnS h1_;
  FuncOnS h2_;
};

struct InvarianceWitness {
  std::size_t y;
  std::size_t vector_index;    // 0 for the first basis vector, 1 for the second
  std::size_t residual_index;  // element index of the first nonzero residual
};

struct InvarianceCheck {
  std::string law;
  bool holds = true;
  std::optional<InvarianceWitness> witness;
};

namespace detail {

inline InvarianceCheck invariance(std::string law, FiniteSemigroup const& s, FuncOnS const& u,
                                  FuncOnS const& v) {
  std::vector<FuncOnS> basis{u, v};
  for (std::size_t y = 0; y < s.order(); ++y) {
    for (std::size_t k = 0; k < 2; ++k) {
      if (auto miss = span_residual(apply_L(s, y, basis[k]), basis)) {
        return InvarianceCheck{std::move(law), false, InvarianceWitness{y, k, *miss}};
      }
    }
  }
  return InvarianceCheck{std::move(law), true, std::nullopt};
}

}  // namespace detail

/// L(y)v in span{f, g} for every y and v in {f, g}.
inline InvarianceCheck check_L_invariance(LeviCivitaInstance const& inst) {
  return detail::invariance("L(y)V in V", inst.semigroup(), inst.f(), inst.g());
}

/// L(y)v in span{Jf, Jg} for every y and v in {Jf, Jg}.
inline InvarianceCheck check_JV_invariance(LeviCivitaInstance const& inst) {
  return detail::invariance("L(y)J(V) in J(V)", inst.semigroup(),
                            apply_J(inst.sigma(), inst.f()), apply_J(inst.sigma(), inst.g()));
}

struct MatrixExtraction {
  /// A(y) in the basis (Jf, Jg), column convention: column k holds the
  /// coordinates of L(y) applied to the k-th basis vector. Empty when some
  /// L(y)Jg leaves J(V).
  std::vector<MatrixF> a_of_y;
  LawCheck closure{"L(y)Jg in span{Jf, Jg}", true, std::nullopt};
  LawCheck column_identity{"L(y)Jf = h1(y)Jf + h2(y)Jg", true, std::nullopt};
};

inline MatrixExtraction extract_matrix_A(LeviCivitaInstance const& inst) {
  auto const& s = inst.semigroup();
  Field const& field = inst.field();
  std::vector<FuncOnS> jbasis{apply_J(inst.sigma(), inst.f()), apply_J(inst.sigma(), inst.g())};
  if (rank(std::span<FuncOnS const>(jbasis)) != 2) {
    throw Error(ErrorCode::DependentBasis, "{Jf, Jg} is dependent");
  }
  MatrixExtraction out;
  for (std::size_t y = 0; y < s.order(); ++y) {
    auto first = apply_L(s, y, jbasis[0]);
    auto expected = inst.h1()[y] * jbasis[0] + inst.h2()[y] * jbasis[1];
    if (out.column_identity.holds && !(first == expected)) {
      out.column_identity = LawCheck::fail(out.column_identity.law, {y});
    }
    auto coords = coordinates_in_basis(apply_L(s, y, jbasis[1]), jbasis);
    if (auto const* miss = std::get_if<NotInSpan>(&coords)) {
      out.closure = LawCheck::fail(out.closure.law, {y, miss->witness});
      out.a_of_y.clear();
      return out;
    }
    auto const& second = std::get<std::vector<Scalar>>(coords);
    MatrixF a(field, 2, 2);
    a.at(0, 0) = inst.h1()[y];
    a.at(1, 0) = inst.h2()[y];
    a.at(0, 1) = second[0];
    a.at(1, 1) = second[1];
    out.a_of_y.push_back(std::move(a));
  }
  return out;
}

/// A(y1 y2) == A(y2) A(y1) for all pairs.
inline LawCheck check_anti_representation(FiniteSemigroup const& s, std::vector<MatrixF> const& a) {
  LawCheck check = LawCheck::pass("A(y1y2) = A(y2)A(y1)");
  for (std::size_t y1 = 0; y1 < s.order(); ++y1)
    for (std::size_t y2 = 0; y2 < s.order(); ++y2)
      if (!(a[s.mul(y1, y2)] == a[y2] * a[y1])) return LawCheck::fail(check.law, {y1, y2});
  return check;
}

struct ConstantFit {
  std::optional<FuncOnS> alpha;    // second-column entry (1,2) of A(y)
  std::optional<FuncOnS> beta_fn;  // second-column entry (2,2) of A(y)
  /// Lexicographically first (a, b) with h1(a)h2(b) - h2(a)h1(b) != 0.
  std::optional<std::pair<std::size_t, std::size_t>> pivot;
  std::optional<std::array<Scalar, 4>> constants;
  LawCheck fit{"alpha = c1 h1 + c2 h2, beta = c3 h1 + c4 h2", true, std::nullopt};
};

inline ConstantFit fit_constants(LeviCivitaInstance const& inst, std::vector<MatrixF> const& a) {
  auto const& s = inst.semigroup();
  auto const& h1 = inst.h1();
  auto const& h2 = inst.h2();
  Field const& field = inst.field();
  std::size_t n = s.order();
  ConstantFit out;
  if (a.size() != n) {
    out.fit = LawCheck::fail(out.fit.law, {});
    return out;
  }
  std::vector<Scalar> alpha;
  std::vector<Scalar> beta;
  for (auto const& m : a) {
    alpha.push_back(m.at(0, 1));
    beta.push_back(m.at(1, 1));
  }
  out.alpha = FuncOnS(field, alpha);
  out.beta_fn = FuncOnS(field, beta);

  for (std::size_t i = 0; i < n && !out.pivot; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(h1[i] * h2[j] - h2[i] * h1[j]).is_zero()) {
        out.pivot = std::pair{i, j};
        break;
      }
  if (!out.pivot) {
    out.fit = LawCheck::fail(out.fit.law, {});
    return out;
  }
  auto [pa, pb] = *out.pivot;
  auto first = solve_2x2(h1[pa], h2[pa], h1[pb], h2[pb], alpha[pa], alpha[pb]);
  auto second = solve_2x2(h1[pa], h2[pa], h1[pb], h2[pb], beta[pa], beta[pb]);
  out.constants = std::array<Scalar, 4>{first->first, first->second, second->first, second->second};
  auto const& c = *out.constants;
  for (std::size_t y = 0; y < n; ++y) {
    if (!(alpha[y] == c[0] * h1[y] + c[1] * h2[y]) || !(beta[y] == c[2] * h1[y] + c[3] * h2[y])) {
      out.fit = LawCheck::fail(out.fit.law, {y});
      break;
    }
  }
  return out;
}

/// h1(xy) = h1(y)h1(x) + alpha(y)h2(x) and h2(xy) = h2(y)h1(x) + beta(y)h2(x).
inline LawCheck check_right_translation_invariance(LeviCivitaInstance const& inst,
                                                   FuncOnS const& alpha, FuncOnS const& beta) {
  auto const& s = inst.semigroup();
  auto const& h1 = inst.h1();
  auto const& h2 = inst.h2();
  LawCheck check = LawCheck::pass("h(xy) = A(y) h(x) (W_h right-invariant)");
  for (std::size_t x = 0; x < s.order(); ++x)
    for (std::size_t y = 0; y < s.order(); ++y) {
      auto xy = s.mul(x, y);
      if (!(h1[xy] == h1[y] * h1[x] + alpha[y] * h2[x]) ||
          !(h2[xy] == h2[y] * h1[x] + beta[y] * h2[x]))
        return LawCheck::fail(check.law, {x, y});
    }
  return check;
}

struct AffineForm {
  std::optional<MatrixF> n1;
  std::optional<MatrixF> n2;
  /// Columns are the coordinates of Jf and Jg in the basis (f, g); absent
  /// when J(V) != V.
  std::optional<MatrixF> c;
  std::optional<MatrixF> m1;
  std::optional<MatrixF> m2;
  LawCheck change_of_basis{"Jf, Jg in span{f, g}", true, std::nullopt};
  LawCheck affine_law{"L(y)|_V = M1 h1(y) + M2 h2(y)", true, std::nullopt};
};

/// Matrix of L(y) restricted to span{u, v} in the basis (u, v), column
/// convention; std::nullopt when L(y) leaves the span.
inline std::optional<MatrixF> restricted_matrix(FiniteSemigroup const& s, std::size_t y,
                                                FuncOnS const& u, FuncOnS const& v) {
  std::vector<FuncOnS> basis{u, v};
  MatrixF m(u.field(), 2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    auto coords = coordinates_in_basis(apply_L(s, y, basis[k]), basis);
    if (std::holds_alternative<NotInSpan>(coords)) return std::nullopt;
    auto const& c = std::get<std::vector<Scalar>>(coords);
    m.at(0, k) = c[0];
    m.at(1, k) = c[1];
  }
  return m;
}

inline AffineForm assemble_affine_form(LeviCivitaInstance const& inst,
                                       std::array<Scalar, 4> const& c) {
  Field const& field = inst.field();
  auto const& s = inst.semigroup();
  Scalar zero = Scalar::zero(field);
  Scalar one = Scalar::one(field);
  AffineForm out;
  out.n1 = MatrixF(field, {{one, c[0]}, {zero, c[2]}});
  out.n2 = MatrixF(field, {{zero, c[1]}, {one, c[3]}});

  std::vector<FuncOnS> basis{inst.f(), inst.g()};
  std::vector<FuncOnS> jbasis{apply_J(inst.sigma(), inst.f()), apply_J(inst.sigma(), inst.g())};
  MatrixF change(field, 2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    auto coords = coordinates_in_basis(jbasis[k], basis);
    if (auto const* miss = std::get_if<NotInSpan>(&coords)) {
      out.change_of_basis = LawCheck::fail(out.change_of_basis.law, {k, miss->witness});
      out.affine_law = LawCheck::fail(out.affine_law.law, {});
      return out;
    }
    auto const& v = std::get<std::vector<Scalar>>(coords);
    change.at(0, k) = v[0];
    change.at(1, k) = v[1];
  }
  auto inverse = change.inverse();
  if (!inverse) {
    throw Error(ErrorCode::DependentBasis, "change of basis C is singular");
  }
  out.c = change;
  out.m1 = change * *out.n1 * *inverse;
  out.m2 = change * *out.n2 * *inverse;
  for (std::size_t y = 0; y < s.order(); ++y) {
    auto actual = restricted_matrix(s, y, inst.f(), inst.g());
    if (!actual || !(*actual == inst.h1()[y] * *out.m1 + inst.h2()[y] * *out.m2)) {
      out.affine_law = LawCheck::fail(out.affine_law.law, {y});
      break;
    }
  }
  return out;
}

struct LeviCivitaReport {
  InvarianceCheck v_invariance;
  InvarianceCheck jv_invariance;
  MatrixExtraction extraction;
  std::optional<LawCheck> anti_representation;
  ConstantFit constants;
  std::optional<LawCheck> right_translation;
  std::optional<AffineForm> affine;
  /// "THEOREM VIOLATION: ..." entries for every failed conclusion.
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Runs every stage; a stage that cannot run because an earlier conclusion
/// failed is left empty and the failure is recorded as a violation.
inline LeviCivitaReport analyze_levi_civita(LeviCivitaInstance const& inst) {
  LeviCivitaReport report;
  auto violation = [&](std::string const& what) {
    report.violations.push_back("THEOREM VIOLATION: " + what);
  };
  auto witness_text = [](std::optional<std::vector<std::size_t>> const& w) {
    std::string out;
    if (w)
      for (auto i : *w) out += " " + std::to_string(i);
    return out.empty() ? std::string() : " at" + out;
  };

  report.v_invariance = check_L_invariance(inst);
  report.jv_invariance = check_JV_invariance(inst);
  if (!report.v_invariance.holds) {
    auto const& w = *report.v_invariance.witness;
    violation("V is not L-invariant (y=" + std::to_string(w.y) + ", vector " +
              std::to_string(w.vector_index) + ", residual at " +
              std::to_string(w.residual_index) + ")");
  }
  if (!report.jv_invariance.holds) {
    violation("J(V) is not L-invariant");
  }

  report.extraction = extract_matrix_A(inst);
  if (!report.extraction.column_identity.holds) {
    violation(report.extraction.column_identity.law + witness_text(report.extraction.column_identity.witness));
  }
  if (!report.extraction.closure.holds) {
    violation(report.extraction.closure.law + witness_text(report.extraction.closure.witness));
    return report;
  }
  auto const& a = report.extraction.a_of_y;
  report.anti_representation = check_anti_representation(inst.semigroup(), a);
  if (!report.anti_representation->holds) {
    violation(report.anti_representation->law + witness_text(report.anti_representation->witness));
  }

  report.constants = fit_constants(inst, a);
  if (!report.constants.pivot) {
    violation("no pivot pair with h1(a)h2(b) - h2(a)h1(b) != 0");
    return report;
  }
  if (!report.constants.fit.holds) {
    violation(report.constants.fit.law + witness_text(report.constants.fit.witness));
  }
  report.right_translation =
      check_right_translation_invariance(inst, *report.constants.alpha, *report.constants.beta_fn);
  if (!report.right_translation->holds) {
    violation(report.right_translation->law + witness_text(report.right_translation->witness));
  }
  if (!report.constants.fit.holds) {
    return report;
  }
  report.affine = assemble_affine_form(inst, *report.constants.constants);
  if (!report.affine->change_of_basis.holds) {
    violation("J(V) != V, so the change of basis C is undefined" +
              witness_text(report.affine->change_of_basis.witness));
  }
  if (!report.affine->affine_law.holds) {
    violation(report.affine->affine_law.law + witness_text(report.affine->affine_law.witness));
  }
  return report;
}

}  // namespace semilab
