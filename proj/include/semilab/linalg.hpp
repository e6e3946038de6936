#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semilab/error.hpp"
#include "semilab/scalar.hpp"

namespace semilab {

/// A function S -> F stored by value at each element index.
class FuncOnS {
 public:
  FuncOnS(Field const& field, std::size_t order)
      : field_(field), values_(order, Scalar::zero(field)) {}

  FuncOnS(Field const& field, std::vector<Scalar> values) : field_(field), values_(std::move(values)) {
    for (auto const& v : values_) {
      if (v.field() != field_) {
        throw Error(ErrorCode::MixedFields, "value outside " + field_.name());
      }
    }
  }

  static FuncOnS from_ints(Field const& field, std::vector<long long> const& values) {
    std::vector<Scalar> out;
    out.reserve(values.size());
    for (auto v : values) {
      out.emplace_back(field, v);
    }
    return FuncOnS(field, std::move(out));
  }

  static FuncOnS constant(Field const& field, std::size_t order, Scalar const& c) {
    return FuncOnS(field, std::vector<Scalar>(order, c));
  }

  Field const& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return values_.size(); }
  Scalar const& operator[](std::size_t i) const { return values_[i]; }
  Scalar& operator[](std::size_t i) { return values_[i]; }
  std::vector<Scalar> const& values() const noexcept { return values_; }

  bool is_zero() const {
    for (auto const& v : values_) {
      if (!v.is_zero()) return false;
    }
    return true;
  }

  FuncOnS& operator+=(FuncOnS const& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }

  FuncOnS& operator-=(FuncOnS const& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
  }

  friend FuncOnS operator+(FuncOnS a, FuncOnS const& b) { return a += b; }
  friend FuncOnS operator-(FuncOnS a, FuncOnS const& b) { return a -= b; }

  friend FuncOnS operator*(Scalar const& c, FuncOnS h) {
    for (auto& v : h.values_) v = c * v;
    return h;
  }

  FuncOnS operator-() const { return Scalar(field_, -1) * *this; }

  friend bool operator==(FuncOnS const& a, FuncOnS const& b) {
    return a.field_ == b.field_ && a.values_ == b.values_;
  }

 private:
  void check_compatible(FuncOnS const& other) const {
    if (field_ != other.field_) {
      throw Error(ErrorCode::MixedFields, field_.name() + " vs " + other.field_.name());
    }
    if (values_.size() != other.values_.size()) {
      throw Error(ErrorCode::ShapeMismatch, "function lengths differ");
    }
  }

  Field field_;
  std::vector<Scalar> values_;
};

/// Dense exact matrix, row-major.
class MatrixF {
 public:
  MatrixF(Field const& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {
    if (rows == 0 || cols == 0) {
      throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
    }
  }

  MatrixF(Field const& field, std::vector<std::vector<Scalar>> const& rows)
      : MatrixF(field, rows.size(), rows.empty() ? 0 : rows.front().size()) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (rows[i].size() != cols_) {
        throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
      }
      for (std::size_t j = 0; j < cols_; ++j) {
        if (rows[i][j].field() != field_) {
          throw Error(ErrorCode::MixedFields, "matrix entry outside " + field_.name());
        }
        at(i, j) = rows[i][j];
      }
    }
  }

  static MatrixF identity(Field const& field, std::size_t n) {
    MatrixF m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
    return m;
  }

  static MatrixF from_ints(Field const& field, std::vector<std::vector<long long>> const& rows) {
    std::vector<std::vector<Scalar>> out;
    for (auto const& row : rows) {
      auto& r = out.emplace_back();
      for (auto v : row) r.emplace_back(field, v);
    }
    return MatrixF(field, out);
  }

  Field const& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  Scalar const& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  friend MatrixF operator*(MatrixF const& a, MatrixF const& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::ShapeMismatch, "matrix product dimensions");
    }
    if (a.field_ != b.field_) {
      throw Error(ErrorCode::MixedFields, "matrix product fields");
    }
    MatrixF out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        auto const& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out.at(i, j) += aik * b.at(k, j);
        }
      }
    }
    return out;
  }

  friend MatrixF operator+(MatrixF a, MatrixF const& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw Error(ErrorCode::ShapeMismatch, "matrix sum dimensions");
    }
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
    return a;
  }

  friend MatrixF operator*(Scalar const& c, MatrixF m) {
    for (auto& e : m.entries_) e = c * e;
    return m;
  }

  friend bool operator==(MatrixF const& a, MatrixF const& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

  MatrixF transpose() const {
    MatrixF out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  /// Gauss-Jordan inverse; std::nullopt when singular.
  std::optional<MatrixF> inverse() const {
    if (rows_ != cols_) {
      throw Error(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
    }
    std::size_t n = rows_;
    MatrixF work(*this);
    MatrixF inv = identity(field_, n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && work.at(pivot, col).is_zero()) ++pivot;
      if (pivot == n) return std::nullopt;
      if (pivot != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(work.at(pivot, j), work.at(col, j));
          std::swap(inv.at(pivot, j), inv.at(col, j));
        }
      }
      Scalar scale = work.at(col, col).inverse();
      for (std::size_t j = 0; j < n; ++j) {
        work.at(col, j) *= scale;
        inv.at(col, j) *= scale;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || work.at(i, col).is_zero()) continue;
        Scalar factor = work.at(i, col);
        for (std::size_t j = 0; j < n; ++j) {
          work.at(i, j) -= factor * work.at(col, j);
          inv.at(i, j) -= factor * inv.at(col, j);
        }
      }
    }
    return inv;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

namespace detail {

inline void check_family(std::span<FuncOnS const> vectors) {
  for (auto const& v : vectors) {
    if (v.field() != vectors.front().field()) {
      throw Error(ErrorCode::MixedFields, v.field().name() + " vs " + vectors.front().field().name());
    }
    if (v.size() != vectors.front().size()) {
      throw Error(ErrorCode::ShapeMismatch, "vectors have different lengths");
    }
  }
}

/// Reduces the columns `vectors` to echelon form, scanning coordinates in
/// index order. Returns the coordinate (row) chosen as pivot for each
/// independent column in order; dependent columns are skipped.
inline std::vector<std::size_t> pivot_rows(std::span<FuncOnS const> vectors,
                                           std::vector<std::vector<Scalar>>& reduced) {
  reduced.clear();
  std::vector<std::size_t> pivots;
  for (auto const& v : vectors) {
    std::vector<Scalar> col = v.values();
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      auto const& prev = reduced[k];
      std::size_t row = pivots[k];
      if (col[row].is_zero()) continue;
      Scalar factor = col[row] / prev[row];
      for (std::size_t i = 0; i < col.size(); ++i) col[i] -= factor * prev[i];
    }
    std::size_t row = 0;
    while (row < col.size() && col[row].is_zero()) ++row;
    if (row == col.size()) continue;  // dependent on earlier columns
    pivots.push_back(row);
    reduced.push_back(std::move(col));
  }
  return pivots;
}

}  // namespace detail

/// Exact rank of a family of functions on S.
inline std::size_t rank(std::span<FuncOnS const> vectors) {
  if (vectors.empty()) return 0;
  detail::check_family(vectors);
  std::vector<std::vector<Scalar>> columns;
  return detail::pivot_rows(vectors, columns).size();
}

inline std::size_t rank(std::initializer_list<FuncOnS> vectors) {
  std::vector<FuncOnS> v(vectors);
  return rank(std::span<FuncOnS const>(v));
}

struct NotInSpan {
  /// Element index of the first nonzero coordinate of the residual.
  std::size_t witness;
};

using Coordinates = std::variant<std::vector<Scalar>, NotInSpan>;

/// Coefficients c with target = sum_i c_i basis_i. The residual witness is
/// taken against the unique candidate fixed by the basis pivot coordinates.
inline Coordinates coordinates_in_basis(FuncOnS const& target, std::span<FuncOnS const> basis) {
  std::vector<FuncOnS> family(basis.begin(), basis.end());
  family.push_back(target);
  detail::check_family(family);
  if (basis.empty()) {
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (!target[i].is_zero()) return NotInSpan{i};
    }
    return std::vector<Scalar>{};
  }
  std::vector<std::vector<Scalar>> columns;
  auto pivots = detail::pivot_rows(basis, columns);
  std::size_t k = basis.size();
  if (pivots.size() != k) {
    throw Error(ErrorCode::DependentBasis, "basis of size " + std::to_string(k) + " has rank " +
                                               std::to_string(pivots.size()));
  }
  // Solve the k x k system restricted to the pivot coordinates.
  Field const& field = target.field();
  MatrixF system(field, k, k);
  MatrixF rhs(field, k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) system.at(i, j) = basis[j][pivots[i]];
    rhs.at(i, 0) = target[pivots[i]];
  }
  auto inv = system.inverse();
  if (!inv) {
    throw Error(ErrorCode::DependentBasis, "pivot system is singular");
  }
  MatrixF solution = *inv * rhs;
  std::vector<Scalar> coeffs;
  for (std::size_t j = 0; j < k; ++j) coeffs.push_back(solution.at(j, 0));
  FuncOnS residual = target;
  for (std::size_t j = 0; j < k; ++j) residual -= coeffs[j] * basis[j];
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (!residual[i].is_zero()) return NotInSpan{i};
  }
  return coeffs;
}

inline Coordinates coordinates_in_basis(FuncOnS const& target, std::initializer_list<FuncOnS> basis) {
  std::vector<FuncOnS> b(basis);
  return coordinates_in_basis(target, std::span<FuncOnS const>(b));
}

/// Witness of non-membership of `target` in span(family), or std::nullopt
/// when it lies in the span. The family may be dependent.
inline std::optional<std::size_t> span_residual(FuncOnS const& target, std::span<FuncOnS const> family) {
  std::vector<FuncOnS> independent;
  for (auto const& v : family) {
    independent.push_back(v);
    if (rank(std::span<FuncOnS const>(independent)) != independent.size()) independent.pop_back();
  }
  auto coords = coordinates_in_basis(target, std::span<FuncOnS const>(independent));
  if (auto const* miss = std::get_if<NotInSpan>(&coords)) return miss->witness;
  return std::nullopt;
}

/// Cramer's rule for [[a11, a12], [a21, a22]] x = (b1, b2); std::nullopt
/// when the determinant vanishes.
inline std::optional<std::pair<Scalar, Scalar>> solve_2x2(Scalar const& a11, Scalar const& a12,
                                                          Scalar const& a21, Scalar const& a22,
                                                          Scalar const& b1, Scalar const& b2) {
  Scalar det = a11 * a22 - a12 * a21;
  if (det.is_zero()) return std::nullopt;
  return std::pair{(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

inline FuncOnS linear_combination(std::span<Scalar const> coeffs, std::span<FuncOnS const> basis) {
  if (coeffs.size() != basis.size() || basis.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "coefficient count does not match basis");
  }
  FuncOnS out(basis.front().field(), basis.front().size());
  for (std::size_t i = 0; i < basis.size(); ++i) out += coeffs[i] * basis[i];
  return out;
}

}  // namespace semilab
