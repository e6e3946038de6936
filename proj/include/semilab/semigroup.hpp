#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semilab/error.hpp"
#include "semilab/scalar.hpp"

namespace semilab {

using Element = std::uint32_t;

/// Size caps for carriers. Defaults keep every exhaustive check desk-scale.
struct CarrierLimits {
  std::size_t max_order = 5000;
  std::size_t max_symmetric_degree = 6;
};

/// A finite semigroup given by its Cayley table. Instances only exist in
/// validated form: every entry is in range and the operation is associative.
class FiniteSemigroup {
 public:
  /// Validates `table` (row a, column b holds a*b). An identity is detected
  /// automatically; if `identity` is supplied it must be a two-sided identity.
  static FiniteSemigroup build(std::vector<std::vector<std::int64_t>> const& table,
                               std::vector<std::string> labels = {},
                               std::optional<std::int64_t> identity = std::nullopt,
                               CarrierLimits const& limits = {}) {
    std::size_t n = table.size();
    if (n == 0) {
      throw Error(ErrorCode::InvalidArgument, "semigroup must have at least one element");
    }
    if (n > limits.max_order) {
      throw Error(ErrorCode::TooLarge, "order " + std::to_string(n) + " exceeds cap " +
                                           std::to_string(limits.max_order));
    }
    std::vector<Element> flat(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) {
        throw Error(ErrorCode::ShapeMismatch, "Cayley table row " + std::to_string(a) +
                                                  " has length " + std::to_string(table[a].size()));
      }
      for (std::size_t b = 0; b < n; ++b) {
        auto v = table[a][b];
        if (v < 0 || static_cast<std::size_t>(v) >= n) {
          throw Error(ErrorCode::IndexOutOfRange, "table entry " + std::to_string(v), {a, b});
        }
        flat[a * n + b] = static_cast<Element>(v);
      }
    }
    return FiniteSemigroup(n, std::move(flat), std::move(labels), identity);
  }

  /// Same as build() for a table that is already flat and in range.
  static FiniteSemigroup from_flat(std::size_t n, std::vector<Element> flat,
                                   std::vector<std::string> labels = {},
                                   CarrierLimits const& limits = {}) {
    if (n == 0 || flat.size() != n * n) {
      throw Error(ErrorCode::ShapeMismatch, "flat table size");
    }
    if (n > limits.max_order) {
      throw Error(ErrorCode::TooLarge, "order " + std::to_string(n) + " exceeds cap " +
                                           std::to_string(limits.max_order));
    }
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (flat[i] >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "table entry " + std::to_string(flat[i]),
                    {i / n, i % n});
      }
    }
    return FiniteSemigroup(n, std::move(flat), std::move(labels), std::nullopt);
  }

  std::size_t order() const noexcept { return n_; }

  Element mul(std::size_t a, std::size_t b) const noexcept { return table_[a * n_ + b]; }

  std::optional<Element> identity() const noexcept { return identity_; }

  std::vector<std::string> const& labels() const noexcept { return labels_; }

  std::string label(std::size_t a) const {
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }

  std::vector<std::vector<std::int64_t>> table() const {
    std::vector<std::vector<std::int64_t>> out(n_, std::vector<std::int64_t>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) out[a][b] = mul(a, b);
    return out;
  }

  bool is_commutative() const noexcept {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// A generating set chosen greedily in index order.
  std::vector<Element> const& generators() const noexcept { return generators_; }

 private:
  FiniteSemigroup(std::size_t n, std::vector<Element> flat, std::vector<std::string> labels,
                  std::optional<std::int64_t> identity_hint)
      : n_(n), table_(std::move(flat)), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n_) {
      throw Error(ErrorCode::ShapeMismatch, "label count " + std::to_string(labels_.size()) +
                                                " does not match order " + std::to_string(n_));
    }
    generators_ = greedy_generators();
    check_associative();
    identity_ = find_identity();
    if (identity_hint) {
      auto e = *identity_hint;
      if (e < 0 || static_cast<std::size_t>(e) >= n_) {
        throw Error(ErrorCode::IndexOutOfRange, "identity " + std::to_string(e));
      }
      if (!is_identity(static_cast<std::size_t>(e))) {
        throw Error(ErrorCode::BadIdentity, "declared identity is not two-sided",
                    {static_cast<std::size_t>(e)});
      }
    }
  }

  bool is_identity(std::size_t e) const noexcept {
    for (std::size_t a = 0; a < n_; ++a) {
      if (mul(e, a) != a || mul(a, e) != a) return false;
    }
    return true;
  }

  std::optional<Element> find_identity() const noexcept {
    for (std::size_t e = 0; e < n_; ++e) {
      if (is_identity(e)) return static_cast<Element>(e);
    }
    return std::nullopt;
  }

  std::vector<Element> greedy_generators() const {
    std::vector<Element> gens;
    std::vector<char> reached(n_, 0);
    std::vector<Element> members;
    for (std::size_t e = 0; e < n_; ++e) {
      if (reached[e]) continue;
      gens.push_back(static_cast<Element>(e));
      // Close members + {e} under right multiplication by generators; this
      // yields every left-bracketed word in the generators.
      std::vector<Element> queue(members);
      reached[e] = 1;
      members.push_back(static_cast<Element>(e));
      queue.push_back(static_cast<Element>(e));
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Element x = queue[head];
        for (Element g : gens) {
          Element y = mul(x, g);
          if (!reached[y]) {
            reached[y] = 1;
            members.push_back(y);
            queue.push_back(y);
          }
        }
      }
    }
    return gens;
  }

  // Light's test: elements a with (xa)y == x(ay) for all x, y form a
  // subsemigroup, so checking the generators suffices.
  void check_associative() const {
    for (Element a : generators_) {
      for (std::size_t x = 0; x < n_; ++x) {
        Element xa = mul(x, a);
        for (std::size_t y = 0; y < n_; ++y) {
          if (mul(xa, y) != mul(x, mul(a, y))) {
            throw Error(ErrorCode::NonAssociative, "(x*a)*y != x*(a*y)", {x, a, y});
          }
        }
      }
    }
  }

  std::size_t n_;
  std::vector<Element> table_;
  std::vector<std::string> labels_;
  std::optional<Element> identity_;
  std::vector<Element> generators_;
};

/// A validated permutation sigma of S with sigma(xy) = sigma(y)sigma(x) and
/// sigma(sigma(x)) = x.
class InvolutiveAntiAutomorphism {
 public:
  static InvolutiveAntiAutomorphism validate(FiniteSemigroup const& s,
                                             std::vector<std::int64_t> const& sigma) {
    std::size_t n = s.order();
    if (sigma.size() != n) {
      throw Error(ErrorCode::ShapeMismatch, "sigma has length " + std::to_string(sigma.size()) +
                                                ", expected " + std::to_string(n));
    }
    std::vector<Element> map(n);
    std::vector<char> hit(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      auto v = sigma[x];
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw Error(ErrorCode::NotPermutation, "image " + std::to_string(v) + " out of range", {x});
      }
      if (hit[static_cast<std::size_t>(v)]) {
        throw Error(ErrorCode::NotPermutation, "repeated image " + std::to_string(v), {x});
      }
      hit[static_cast<std::size_t>(v)] = 1;
      map[x] = static_cast<Element>(v);
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (map[s.mul(x, y)] != s.mul(map[y], map[x])) {
          throw Error(ErrorCode::NotAntiHomomorphism, "sigma(xy) != sigma(y)sigma(x)", {x, y});
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (map[map[x]] != x) {
        throw Error(ErrorCode::NotInvolutive, "sigma(sigma(x)) != x", {x});
      }
    }
    return InvolutiveAntiAutomorphism(std::move(map));
  }

  static InvolutiveAntiAutomorphism identity_on(FiniteSemigroup const& s) {
    std::vector<std::int64_t> id(s.order());
    std::iota(id.begin(), id.end(), 0);
    return validate(s, id);
  }

  Element operator()(std::size_t x) const noexcept { return map_[x]; }
  std::size_t size() const noexcept { return map_.size(); }
  std::vector<Element> const& map() const noexcept { return map_; }

 private:
  explicit InvolutiveAntiAutomorphism(std::vector<Element> map) : map_(std::move(map)) {}

  std::vector<Element> map_;
};

/// A semigroup together with its involution and, for concrete carriers, the
/// integer data behind each element (permutation images for S_n, row-major
/// matrix entries for matrix groups, residue for Z_n).
struct Carrier {
  std::string name;
  FiniteSemigroup semigroup;
  InvolutiveAntiAutomorphism sigma;
  std::vector<std::vector<std::int64_t>> element_data;
};

namespace detail {

inline std::string cycle_label(std::vector<std::int64_t> const& perm) {
  std::string out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<std::int64_t>(start)) continue;
    out += '(';
    std::size_t i = start;
    bool first = true;
    while (!seen[i]) {
      seen[i] = 1;
      if (!first) out += ' ';
      out += std::to_string(i + 1);
      first = false;
      i = static_cast<std::size_t>(perm[i]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

inline std::string matrix_label(std::vector<std::int64_t> const& entries, std::size_t dim) {
  std::string out = "[";
  for (std::size_t i = 0; i < dim; ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < dim; ++j) {
      if (j) out += ',';
      out += std::to_string(entries[i * dim + j]);
    }
    out += ']';
  }
  return out + "]";
}

/// Builds a carrier whose elements are the given data vectors, closed under
/// `multiply`, with sigma given by `involution` on the data.
template <typename Multiply, typename Involution, typename Label>
Carrier carrier_from_elements(std::string name, std::vector<std::vector<std::int64_t>> elements,
                              Multiply multiply, Involution involution, Label label) {
  std::sort(elements.begin(), elements.end());
  std::size_t n = elements.size();
  auto index_of = [&](std::vector<std::int64_t> const& v) {
    auto it = std::lower_bound(elements.begin(), elements.end(), v);
    if (it == elements.end() || *it != v) {
      throw Error(ErrorCode::InvalidArgument, "element set is not closed");
    }
    return static_cast<std::int64_t>(it - elements.begin());
  };
  std::vector<std::vector<std::int64_t>> table(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index_of(multiply(elements[a], elements[b]));
  std::vector<std::string> labels;
  for (auto const& e : elements) labels.push_back(label(e));
  std::vector<std::int64_t> sigma(n);
  for (std::size_t a = 0; a < n; ++a) sigma[a] = index_of(involution(elements[a]));
  auto s = FiniteSemigroup::build(table, std::move(labels));
  auto inv = InvolutiveAntiAutomorphism::validate(s, sigma);
  return Carrier{std::move(name), std::move(s), std::move(inv), std::move(elements)};
}

inline std::vector<std::int64_t> mat_mul(std::vector<std::int64_t> const& a,
                                         std::vector<std::int64_t> const& b, std::size_t dim,
                                         std::int64_t modulus) {
  std::vector<std::int64_t> out(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < dim; ++k) acc += a[i * dim + k] * b[k * dim + j];
      out[i * dim + j] = modulus ? ((acc % modulus) + modulus) % modulus : acc;
    }
  return out;
}

inline std::vector<std::int64_t> mat_transpose(std::vector<std::int64_t> const& a, std::size_t dim) {
  std::vector<std::int64_t> out(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) out[j * dim + i] = a[i * dim + j];
  return out;
}

inline std::int64_t det(std::vector<std::int64_t> const& a, std::size_t dim) {
  switch (dim) {
    case 1: return a[0];
    case 2: return a[0] * a[3] - a[1] * a[2];
    case 3:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
    default: throw Error(ErrorCode::InvalidArgument, "det only for dim <= 3");
  }
}

}  // namespace detail

/// S_n under composition (pi*rho)(i) = pi(rho(i)), with sigma = inversion.
/// Elements are ordered lexicographically by their image lists.
inline Carrier make_symmetric_group(std::size_t n, CarrierLimits const& limits = {}) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "S_0 is not supported");
  }
  if (n > limits.max_symmetric_degree) {
    throw Error(ErrorCode::TooLarge, "S_" + std::to_string(n) + " exceeds degree cap " +
                                         std::to_string(limits.max_symmetric_degree));
  }
  std::vector<std::vector<std::int64_t>> perms;
  std::vector<std::int64_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto compose = [n](auto const& a, auto const& b) {
    std::vector<std::int64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[static_cast<std::size_t>(b[i])];
    return out;
  };
  auto inverse = [n](auto const& a) {
    std::vector<std::int64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[static_cast<std::size_t>(a[i])] = static_cast<std::int64_t>(i);
    return out;
  };
  return detail::carrier_from_elements("s" + std::to_string(n) + "-inversion", std::move(perms),
                                       compose, inverse, detail::cycle_label);
}

/// GL_n(F_p) with sigma = transpose; elements ordered by row-major entries.
inline Carrier make_gl(std::size_t n, std::uint64_t p, CarrierLimits const& limits = {}) {
  Field::prime(p);  // rejects p = 2 and composites
  if (n == 0 || n > 3) {
    throw Error(ErrorCode::TooLarge, "GL_n supported for n in {1,2,3}");
  }
  // |GL_n(F_p)| = prod_{k<n} (p^n - p^k)
  std::uint64_t pn = 1;
  for (std::size_t k = 0; k < n; ++k) pn *= p;
  std::uint64_t expected = 1;
  std::uint64_t pk = 1;
  for (std::size_t k = 0; k < n; ++k) {
    expected *= pn - pk;
    pk *= p;
    if (expected > limits.max_order) {
      throw Error(ErrorCode::TooLarge, "GL_" + std::to_string(n) + "(F_" + std::to_string(p) +
                                           ") exceeds order cap " + std::to_string(limits.max_order));
    }
  }
  std::size_t cells = n * n;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < cells; ++k) total *= p;
  std::vector<std::vector<std::int64_t>> elements;
  auto modulus = static_cast<std::int64_t>(p);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::int64_t> m(cells);
    std::uint64_t c = code;
    for (std::size_t k = cells; k-- > 0;) {
      m[k] = static_cast<std::int64_t>(c % p);
      c /= p;
    }
    if (((detail::det(m, n) % modulus) + modulus) % modulus != 0) elements.push_back(std::move(m));
  }
  auto multiply = [n, modulus](auto const& a, auto const& b) { return detail::mat_mul(a, b, n, modulus); };
  auto transpose = [n](auto const& a) { return detail::mat_transpose(a, n); };
  auto label = [n](auto const& a) { return detail::matrix_label(a, n); };
  return detail::carrier_from_elements(
      "gl" + std::to_string(n) + "-f" + std::to_string(p) + "-transpose", std::move(elements),
      multiply, transpose, label);
}

/// The 24 rotations of the cube: signed 3x3 permutation matrices with
/// determinant +1, sigma = transpose (= inverse).
inline Carrier make_rotation_group_24() {
  std::vector<std::vector<std::int64_t>> elements;
  std::vector<std::size_t> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      std::vector<std::int64_t> m(9, 0);
      for (std::size_t i = 0; i < 3; ++i) m[i * 3 + perm[i]] = (signs >> i) & 1 ? -1 : 1;
      if (detail::det(m, 3) == 1) elements.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto multiply = [](auto const& a, auto const& b) { return detail::mat_mul(a, b, 3, 0); };
  auto transpose = [](auto const& a) { return detail::mat_transpose(a, 3); };
  auto label = [](auto const& a) { return detail::matrix_label(a, 3); };
  return detail::carrier_from_elements("rot24", std::move(elements), multiply, transpose, label);
}

/// Z_n under addition with sigma = id or sigma = negation.
inline Carrier make_cyclic(std::size_t n, bool negate = false, CarrierLimits const& limits = {}) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "Z_0 is not supported");
  }
  if (n > limits.max_order) {
    throw Error(ErrorCode::TooLarge, "Z_" + std::to_string(n) + " exceeds order cap");
  }
  std::vector<std::vector<std::int64_t>> table(n, std::vector<std::int64_t>(n));
  std::vector<std::string> labels;
  std::vector<std::vector<std::int64_t>> data;
  std::vector<std::int64_t> sigma(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a][b] = static_cast<std::int64_t>((a + b) % n);
    labels.push_back(std::to_string(a));
    data.push_back({static_cast<std::int64_t>(a)});
    sigma[a] = static_cast<std::int64_t>(negate ? (n - a) % n : a);
  }
  auto s = FiniteSemigroup::build(table, std::move(labels), 0, limits);
  auto inv = InvolutiveAntiAutomorphism::validate(s, sigma);
  return Carrier{"z" + std::to_string(n) + (negate ? "-neg" : "-id"), std::move(s), std::move(inv),
                 std::move(data)};
}

}  // namespace semilab
