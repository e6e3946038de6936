#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semilab/linalg.hpp"
#include "semilab/operators.hpp"
#include "semilab/semigroup.hpp"

namespace semilab {

/// f(x sigma(y)) = f(x)g(y) + beta g(x)f(y) + gamma f(x)f(y) with beta != 0
/// and {f, g} linearly independent.
class SineLawInstance {
 public:
  static SineLawInstance build(FiniteSemigroup s, InvolutiveAntiAutomorphism sigma, FuncOnS f,
                               FuncOnS g, Scalar beta, Scalar gamma) {
    SineLawInstance inst(std::move(s), std::move(sigma), std::move(f), std::move(g),
                         std::move(beta), std::move(gamma));
    if (inst.beta_.is_zero()) {
      throw Error(ErrorCode::BetaZero, "beta must be nonzero");
    }
    if (rank({inst.f_, inst.g_}) != 2) {
      throw Error(ErrorCode::DependentFG, "{f, g} is linearly dependent");
    }
    if (auto w = inst.equation_witness()) {
      throw Error(ErrorCode::EquationFails,
                  "f(x sigma(y)) != f(x)g(y) + beta g(x)f(y) + gamma f(x)f(y)",
                  {w->first, w->second});
    }
    return inst;
  }

  /// No independence or equation check; for exercising analyze() on data
  /// outside the hypotheses.
  static SineLawInstance unvalidated(FiniteSemigroup s, InvolutiveAntiAutomorphism sigma, FuncOnS f,
                                     FuncOnS g, Scalar beta, Scalar gamma) {
    return SineLawInstance(std::move(s), std::move(sigma), std::move(f), std::move(g),
                           std::move(beta), std::move(gamma));
  }

  FiniteSemigroup const& semigroup() const noexcept { return s_; }
  InvolutiveAntiAutomorphism const& sigma() const noexcept { return sigma_; }
  FuncOnS const& f() const noexcept { return f_; }
  FuncOnS const& g() const noexcept { return g_; }
  Scalar const& beta() const noexcept { return beta_; }
  Scalar const& gamma() const noexcept { return gamma_; }
  Field const& field() const noexcept { return f_.field(); }

  std::optional<std::pair<std::size_t, std::size_t>> equation_witness() const {
    std::size_t n = s_.order();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        auto rhs = f_[x] * g_[y] + beta_ * g_[x] * f_[y] + gamma_ * f_[x] * f_[y];
        if (!(f_[s_.mul(x, sigma_(y))] == rhs)) return std::pair{x, y};
      }
    return std::nullopt;
  }

 private:
  SineLawInstance(FiniteSemigroup s, InvolutiveAntiAutomorphism sigma, FuncOnS f, FuncOnS g,
                  Scalar beta, Scalar gamma)
      : s_(std::move(s)), sigma_(std::move(sigma)), f_(std::move(f)), g_(std::move(g)),
        beta_(std::move(beta)), gamma_(std::move(gamma)) {
    if (sigma_.size() != s_.order()) throw Error(ErrorCode::ShapeMismatch, "sigma length");
    if (f_.size() != s_.order() || g_.size() != s_.order()) {
      throw Error(ErrorCode::ShapeMismatch, "function length does not match order");
    }
    if (g_.field() != f_.field() || beta_.field() != f_.field() || gamma_.field() != f_.field()) {
      throw Error(ErrorCode::MixedFields, "f, g, beta, gamma must share a field");
    }
  }

  FiniteSemigroup s_;
  InvolutiveAntiAutomorphism sigma_;
  FuncOnS f_;
  FuncOnS g_;
  Scalar beta_;
  Scalar gamma_;
};

enum class Branch { BetaMinusOne, BetaPlusOne, Excluded };

inline std::string to_string(Branch b) {
  switch (b) {
    case Branch::BetaMinusOne: return "beta=-1";
    case Branch::BetaPlusOne: return "beta=+1";
    case Branch::Excluded: return "excluded";
  }
  return "excluded";
}

/// Branch selected by beta, evaluated in its field (so 2 in F_3 is -1).
inline Branch branch_of(Scalar const& beta) {
  Scalar one = Scalar::one(beta.field());
  if (beta == -one) return Branch::BetaMinusOne;
  if (beta == one) return Branch::BetaPlusOne;
  return Branch::Excluded;
}

struct XyConstantFit {
  Scalar a;
  /// First (x, y) in index order with f(x)f(y) != 0; absent means NoProbe
  /// and a = 0 by convention.
  std::optional<std::pair<std::size_t, std::size_t>> probe;
  LawCheck verified{"f(xy) = f(x)g(y) + g(x)f(y) + a f(x)f(y)", true, std::nullopt};

  bool no_probe() const { return !probe.has_value(); }
};

/// Fits a in f(xy) = f(x)g(y) + g(x)f(y) + a f(x)f(y) from the first probe
/// pair and verifies it on every pair.
inline XyConstantFit fit_xy_constant_a(SineLawInstance const& inst) {
  auto const& s = inst.semigroup();
  auto const& f = inst.f();
  auto const& g = inst.g();
  std::size_t n = s.order();
  XyConstantFit out{Scalar::zero(inst.field()), std::nullopt};
  for (std::size_t x = 0; x < n && !out.probe; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto ff = f[x] * f[y];
      if (!ff.is_zero()) {
        out.a = (f[s.mul(x, y)] - f[x] * g[y] - g[x] * f[y]) / ff;
        out.probe = std::pair{x, y};
        break;
      }
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!(f[s.mul(x, y)] == f[x] * g[y] + g[x] * f[y] + out.a * f[x] * f[y])) {
        out.verified = LawCheck::fail(out.verified.law, {x, y});
        return out;
      }
  return out;
}

/// Exact fit of target(x,y) = p u(x,y) + q w(x,y) over all pairs.
struct PairLawFit {
  std::string law;
  std::optional<Scalar> p;
  std::optional<Scalar> q;
  /// False when no (p, q) satisfies every pair or the fit is not unique.
  bool holds = false;
  std::optional<std::vector<std::size_t>> witness;
};

namespace detail {

template <typename Target, typename U, typename W>
PairLawFit fit_pair_law(std::string law, Field const& field, std::size_t n, Target target, U u, W w) {
  std::vector<Scalar> t;
  std::vector<Scalar> uu;
  std::vector<Scalar> ww;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      t.push_back(target(x, y));
      uu.push_back(u(x, y));
      ww.push_back(w(x, y));
    }
  PairLawFit out;
  out.law = std::move(law);
  std::vector<FuncOnS> basis{FuncOnS(field, uu), FuncOnS(field, ww)};
  if (rank(std::span<FuncOnS const>(basis)) != 2) return out;
  auto coords = coordinates_in_basis(FuncOnS(field, t), basis);
  if (auto const* miss = std::get_if<NotInSpan>(&coords)) {
    out.witness = std::vector<std::size_t>{miss->witness / n, miss->witness % n};
    return out;
  }
  auto const& c = std::get<std::vector<Scalar>>(coords);
  out.p = c[0];
  out.q = c[1];
  out.holds = true;
  return out;
}

}  // namespace detail

/// Fits b and c in f(xy) = f(x)g(y) + b g(x)f(y) + c f(x)f(y).
inline PairLawFit fit_xy_constants_bc(SineLawInstance const& inst) {
  auto const& s = inst.semigroup();
  auto const& f = inst.f();
  auto const& g = inst.g();
  return detail::fit_pair_law(
      "f(xy) = f(x)g(y) + b g(x)f(y) + c f(x)f(y)", inst.field(), s.order(),
      [&](auto x, auto y) { return f[s.mul(x, y)] - f[x] * g[y]; },
      [&](auto x, auto y) { return g[x] * f[y]; }, [&](auto x, auto y) { return f[x] * f[y]; });
}

enum class Parity { Even, Odd, Neither };

inline std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Neither: return "neither";
  }
  return "neither";
}

inline Parity parity(FuncOnS const& f, InvolutiveAntiAutomorphism const& sigma) {
  auto fs = apply_J(sigma, f);
  if (fs == f) return Parity::Even;
  if (fs == -f) return Parity::Odd;
  return Parity::Neither;
}

inline LawCheck check_central(FiniteSemigroup const& s, FuncOnS const& f) {
  for (std::size_t x = 0; x < s.order(); ++x)
    for (std::size_t y = x + 1; y < s.order(); ++y)
      if (!(f[s.mul(x, y)] == f[s.mul(y, x)])) return LawCheck::fail("f(xy) = f(yx)", {x, y});
  return LawCheck::pass("f(xy) = f(yx)");
}

inline LawCheck check_kannappan(FiniteSemigroup const& s, FuncOnS const& f) {
  for (std::size_t x = 0; x < s.order(); ++x)
    for (std::size_t y = 0; y < s.order(); ++y) {
      auto xy = s.mul(x, y);
      for (std::size_t z = y + 1; z < s.order(); ++z)
        if (!(f[s.mul(xy, z)] == f[s.mul(s.mul(x, z), y)]))
          return LawCheck::fail("f(xyz) = f(xzy)", {x, y, z});
    }
  return LawCheck::pass("f(xyz) = f(xzy)");
}

struct SineLawReport {
  std::string beta;   // as given, canonical scalar text
  std::string gamma;
  Branch branch = Branch::Excluded;

  // beta = -1
  std::optional<LawCheck> gamma_zero;
  std::optional<XyConstantFit> a_fit;
  std::optional<PairLawFit> bc_fit;  // b must be 1 and c must equal a

  // beta != -1
  std::optional<FuncOnS> g1;
  std::optional<LawCheck> two_term;
  std::optional<PairLawFit> ac_fit;  // A and C of f(xy) = A(f g1 + g1 f) + C f f
  std::string normalization = "n/a";  // "identity" when A = 1, "sign-flip" when A = -1

  LawCheck xy_law{"", true, std::nullopt};
  Parity f_parity = Parity::Neither;
  LawCheck f_sigma{"", true, std::nullopt};
  std::string g_sigma_law;  // "fixed", "shifted" or "neither"
  LawCheck g_sigma{"", true, std::nullopt};
  LawCheck central{"", true, std::nullopt};
  LawCheck kannappan{"", true, std::nullopt};

  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline SineLawReport analyze(SineLawInstance const& inst) {
  auto const& s = inst.semigroup();
  auto const& sigma = inst.sigma();
  auto const& f = inst.f();
  auto const& g = inst.g();
  Field const& field = inst.field();
  std::size_t n = s.order();
  Scalar one = Scalar::one(field);

  SineLawReport r;
  r.beta = inst.beta().to_string();
  r.gamma = inst.gamma().to_string();
  r.branch = branch_of(inst.beta());
  auto violation = [&](std::string const& what) { r.violations.push_back("THEOREM VIOLATION: " + what); };
  auto require = [&](LawCheck const& check) {
    if (!check.holds) {
      std::string w;
      if (check.witness)
        for (auto i : *check.witness) w += " " + std::to_string(i);
      violation(check.law + (w.empty() ? "" : " fails at" + w));
    }
  };

  auto fs = apply_J(sigma, f);
  auto gs = apply_J(sigma, g);
  r.f_parity = parity(f, sigma);

  if (r.branch == Branch::BetaMinusOne) {
    r.gamma_zero = inst.gamma().is_zero() ? LawCheck::pass("gamma = 0")
                                          : LawCheck::fail("gamma = 0", {});
    require(*r.gamma_zero);
    r.a_fit = fit_xy_constant_a(inst);
    r.xy_law = r.a_fit->verified;
    require(r.xy_law);
    r.bc_fit = fit_xy_constants_bc(inst);
    if (!r.bc_fit->holds) {
      violation("no constants b, c satisfy " + r.bc_fit->law);
    } else if (!r.bc_fit->p->is_one()) {
      violation("b = " + r.bc_fit->p->to_string() + " in " + r.bc_fit->law + ", expected 1");
    } else if (!r.a_fit->no_probe() && !(*r.bc_fit->q == r.a_fit->a)) {
      violation("c = " + r.bc_fit->q->to_string() + " differs from a = " + r.a_fit->a.to_string());
    }
    r.f_sigma = fs == -f ? LawCheck::pass("f o sigma = -f") : LawCheck::fail("f o sigma = -f", {});
    require(r.f_sigma);
    auto shifted = g + r.a_fit->a * f;
    r.g_sigma_law = gs == g ? "fixed" : (gs == shifted ? "shifted" : "neither");
    r.g_sigma = gs == shifted ? LawCheck::pass("g o sigma = g + a f")
                              : LawCheck::fail("g o sigma = g + a f", {});
    require(r.g_sigma);
  } else {
    if (r.branch == Branch::Excluded) {
      violation("beta = " + r.beta + " is neither 1 nor -1");
    }
    r.xy_law = LawCheck::pass("f(xy) = f(x)g(y) + g(x)f(y) + gamma f(x)f(y)");
    for (std::size_t x = 0; x < n && r.xy_law.holds; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (!(f[s.mul(x, y)] == f[x] * g[y] + g[x] * f[y] + inst.gamma() * f[x] * f[y])) {
          r.xy_law = LawCheck::fail(r.xy_law.law, {x, y});
          break;
        }
    require(r.xy_law);
    r.f_sigma = fs == f ? LawCheck::pass("f o sigma = f") : LawCheck::fail("f o sigma = f", {});
    require(r.f_sigma);
    r.g_sigma_law = gs == g ? "fixed" : "neither";
    r.g_sigma = gs == g ? LawCheck::pass("g o sigma = g") : LawCheck::fail("g o sigma = g", {});
    require(r.g_sigma);

    Scalar shift = inst.gamma() / (one + inst.beta());
    FuncOnS g1 = g + shift * f;
    r.g1 = g1;
    r.two_term = LawCheck::pass("f(x sigma(y)) = f(x)g1(y) + beta g1(x)f(y)");
    for (std::size_t x = 0; x < n && r.two_term->holds; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (!(f[s.mul(x, sigma(y))] == f[x] * g1[y] + inst.beta() * g1[x] * f[y])) {
          r.two_term = LawCheck::fail(r.two_term->law, {x, y});
          break;
        }
    require(*r.two_term);
    r.ac_fit = detail::fit_pair_law(
        "f(xy) = A(f(x)g1(y) + g1(x)f(y)) + C f(x)f(y)", field, n,
        [&](auto x, auto y) { return f[s.mul(x, y)]; },
        [&](auto x, auto y) { return f[x] * g1[y] + g1[x] * f[y]; },
        [&](auto x, auto y) { return f[x] * f[y]; });
    if (!r.ac_fit->holds) {
      violation("no constants A, C satisfy " + r.ac_fit->law);
    } else {
      if (r.ac_fit->p->is_one()) {
        r.normalization = "identity";
      } else if (*r.ac_fit->p == -one) {
        r.normalization = "sign-flip";
      } else {
        violation("A = " + r.ac_fit->p->to_string() + " is neither 1 nor -1");
      }
      if (!r.ac_fit->q->is_zero()) {
        violation("C = " + r.ac_fit->q->to_string() + ", expected 0");
      }
    }
  }
  r.central = check_central(s, f);
  require(r.central);
  r.kannappan = check_kannappan(s, f);
  require(r.kannappan);
  return r;
}

}  // namespace semilab
