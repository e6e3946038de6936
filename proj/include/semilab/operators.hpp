#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semilab/linalg.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

/// Outcome of checking one universally quantified law. `witness` holds the
/// first failing tuple of element indices when the law does not hold.
struct LawCheck {
  std::string law;
  bool holds = true;
  std::optional<std::vector<std::size_t>> witness;

  static LawCheck pass(std::string law) { return LawCheck{std::move(law), true, std::nullopt}; }
  static LawCheck fail(std::string law, std::vector<std::size_t> witness) {
    return LawCheck{std::move(law), false, std::move(witness)};
  }
};

enum class OperatorKind { Right, Left, Conjugation, Product };

/// An |S| x |S| 0/1 matrix in the delta basis with exactly one 1 per row.
/// Row x has its 1 in column `selects(x)`, so (M h)(x) = h(selects(x)).
/// The matrix is stored by that column map.
class OperatorMatrix {
 public:
  OperatorMatrix(OperatorKind kind, std::vector<Element> selection,
                 std::optional<Element> y = std::nullopt)
      : kind_(kind), y_(y), selection_(std::move(selection)) {}

  static OperatorMatrix identity(std::size_t n) {
    std::vector<Element> sel(n);
    for (std::size_t i = 0; i < n; ++i) sel[i] = static_cast<Element>(i);
    return OperatorMatrix(OperatorKind::Product, std::move(sel));
  }

  OperatorKind kind() const noexcept { return kind_; }
  std::optional<Element> element() const noexcept { return y_; }
  std::size_t size() const noexcept { return selection_.size(); }
  Element selects(std::size_t x) const noexcept { return selection_[x]; }
  std::vector<Element> const& selection() const noexcept { return selection_; }

  /// Matrix product: (M N h)(x) = (N h)(m(x)) = h(n(m(x))).
  friend OperatorMatrix operator*(OperatorMatrix const& m, OperatorMatrix const& n) {
    if (m.size() != n.size()) {
      throw Error(ErrorCode::ShapeMismatch, "operator sizes differ");
    }
    std::vector<Element> sel(m.size());
    for (std::size_t x = 0; x < sel.size(); ++x) sel[x] = n.selection_[m.selection_[x]];
    return OperatorMatrix(OperatorKind::Product, std::move(sel));
  }

  /// Exact matrix equality (the tag is descriptive only).
  friend bool operator==(OperatorMatrix const& a, OperatorMatrix const& b) {
    return a.selection_ == b.selection_;
  }

  FuncOnS apply(FuncOnS const& h) const {
    if (h.size() != size()) {
      throw Error(ErrorCode::ShapeMismatch, "function length does not match operator");
    }
    std::vector<Scalar> out;
    out.reserve(size());
    for (auto s : selection_) out.push_back(h[s]);
    return FuncOnS(h.field(), std::move(out));
  }

  MatrixF dense(Field const& field) const {
    MatrixF m(field, size(), size());
    for (std::size_t x = 0; x < size(); ++x) m.at(x, selection_[x]) = Scalar::one(field);
    return m;
  }

 private:
  OperatorKind kind_;
  std::optional<Element> y_;
  std::vector<Element> selection_;
};

/// (R(y)h)(x) = h(xy)
inline OperatorMatrix op_R(FiniteSemigroup const& s, std::size_t y) {
  if (y >= s.order()) throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(y));
  std::vector<Element> sel(s.order());
  for (std::size_t x = 0; x < s.order(); ++x) sel[x] = s.mul(x, y);
  return OperatorMatrix(OperatorKind::Right, std::move(sel), static_cast<Element>(y));
}

/// (L(y)h)(x) = h(yx)
inline OperatorMatrix op_L(FiniteSemigroup const& s, std::size_t y) {
  if (y >= s.order()) throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(y));
  std::vector<Element> sel(s.order());
  for (std::size_t x = 0; x < s.order(); ++x) sel[x] = s.mul(y, x);
  return OperatorMatrix(OperatorKind::Left, std::move(sel), static_cast<Element>(y));
}

/// (J h)(x) = h(sigma(x))
inline OperatorMatrix op_J(FiniteSemigroup const& s, InvolutiveAntiAutomorphism const& sigma) {
  if (sigma.size() != s.order()) throw Error(ErrorCode::ShapeMismatch, "sigma length");
  return OperatorMatrix(OperatorKind::Conjugation, sigma.map());
}

/// h(xy) for all x without materializing R(y).
inline FuncOnS apply_R(FiniteSemigroup const& s, std::size_t y, FuncOnS const& h) {
  std::vector<Scalar> out;
  out.reserve(s.order());
  for (std::size_t x = 0; x < s.order(); ++x) out.push_back(h[s.mul(x, y)]);
  return FuncOnS(h.field(), std::move(out));
}

/// h(yx) for all x without materializing L(y).
inline FuncOnS apply_L(FiniteSemigroup const& s, std::size_t y, FuncOnS const& h) {
  std::vector<Scalar> out;
  out.reserve(s.order());
  for (std::size_t x = 0; x < s.order(); ++x) out.push_back(h[s.mul(y, x)]);
  return FuncOnS(h.field(), std::move(out));
}

/// h(sigma(x)) for all x.
inline FuncOnS apply_J(InvolutiveAntiAutomorphism const& sigma, FuncOnS const& h) {
  std::vector<Scalar> out;
  out.reserve(sigma.size());
  for (std::size_t x = 0; x < sigma.size(); ++x) out.push_back(h[sigma(x)]);
  return FuncOnS(h.field(), std::move(out));
}

struct RepresentationReport {
  LawCheck r_homomorphism;      // R(y1)R(y2) == R(y1y2)
  LawCheck l_anti_homomorphism; // L(y2)L(y1) == L(y1y2)
  std::optional<LawCheck> r_commutes;  // only reported for commutative carriers

  bool ok() const { return r_homomorphism.holds && l_anti_homomorphism.holds; }
};

inline RepresentationReport check_representation_laws(FiniteSemigroup const& s) {
  std::size_t n = s.order();
  std::vector<OperatorMatrix> right;
  std::vector<OperatorMatrix> left;
  for (std::size_t y = 0; y < n; ++y) {
    right.push_back(op_R(s, y));
    left.push_back(op_L(s, y));
  }
  RepresentationReport report{LawCheck::pass("R(y1)R(y2) = R(y1y2)"),
                              LawCheck::pass("L(y2)L(y1) = L(y1y2)"), std::nullopt};
  for (std::size_t a = 0; a < n && report.ok(); ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto ab = s.mul(a, b);
      if (report.r_homomorphism.holds && !(right[a] * right[b] == right[ab])) {
        report.r_homomorphism = LawCheck::fail(report.r_homomorphism.law, {a, b});
      }
      if (report.l_anti_homomorphism.holds && !(left[b] * left[a] == left[ab])) {
        report.l_anti_homomorphism = LawCheck::fail(report.l_anti_homomorphism.law, {a, b});
      }
    }
  }
  if (s.is_commutative()) {
    LawCheck commutes = LawCheck::pass("R(y1)R(y2) = R(y2)R(y1)");
    for (std::size_t a = 0; a < n && commutes.holds; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!(right[a] * right[b] == right[b] * right[a])) {
          commutes = LawCheck::fail(commutes.law, {a, b});
          break;
        }
    report.r_commutes = commutes;
  }
  return report;
}

struct ConjugationReport {
  LawCheck j_involutive;          // J J == I
  LawCheck conjugation;           // J R(sigma(y)) J == L(y)
  LawCheck conjugate_form;        // J L(y) J == R(sigma(y))
  LawCheck order_reversal;        // R(sigma(y1)) R(sigma(y2)) == R(sigma(y2 y1))
  /// A pair with R(sigma(y1))R(sigma(y2)) != R(sigma(y1 y2)), i.e. where
  /// y -> R(sigma(y)) fails to be a homomorphism; none on commutative carriers.
  std::optional<std::vector<std::size_t>> homomorphism_obstruction;

  bool ok() const {
    return j_involutive.holds && conjugation.holds && conjugate_form.holds && order_reversal.holds;
  }
};

inline ConjugationReport check_conjugation_identity(FiniteSemigroup const& s,
                                                    InvolutiveAntiAutomorphism const& sigma) {
  std::size_t n = s.order();
  auto J = op_J(s, sigma);
  std::vector<OperatorMatrix> right;
  for (std::size_t y = 0; y < n; ++y) right.push_back(op_R(s, y));

  ConjugationReport report{LawCheck::pass("J J = I"),
                           LawCheck::pass("J R(sigma(y)) J = L(y)"),
                           LawCheck::pass("J L(y) J = R(sigma(y))"),
                           LawCheck::pass("R(sigma(y1)) R(sigma(y2)) = R(sigma(y2 y1))"),
                           std::nullopt};
  if (!(J * J == OperatorMatrix::identity(n))) {
    for (std::size_t x = 0; x < n; ++x)
      if (sigma(sigma(x)) != x) {
        report.j_involutive = LawCheck::fail(report.j_involutive.law, {x});
        break;
      }
  }
  for (std::size_t y = 0; y < n; ++y) {
    auto L = op_L(s, y);
    if (report.conjugation.holds && !(J * right[sigma(y)] * J == L)) {
      report.conjugation = LawCheck::fail(report.conjugation.law, {y});
    }
    if (report.conjugate_form.holds && !(J * L * J == right[sigma(y)])) {
      report.conjugate_form = LawCheck::fail(report.conjugate_form.law, {y});
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto product = right[sigma(a)] * right[sigma(b)];
      if (report.order_reversal.holds && !(product == right[sigma(s.mul(b, a))])) {
        report.order_reversal = LawCheck::fail(report.order_reversal.law, {a, b});
      }
      if (!report.homomorphism_obstruction && !(product == right[sigma(s.mul(a, b))])) {
        report.homomorphism_obstruction = std::vector<std::size_t>{a, b};
      }
    }
  }
  return report;
}

}  // namespace semilab
