#pragma once

// Brute-force reference computations used as test oracles. They work on
// plain integers and tables and share no code with the library.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inverse_by_search(std::int64_t a, std::int64_t p) {
  for (std::int64_t b = 1; b < p; ++b)
    if (mod(a * b, p) == 1) return b;
  return 0;
}

/// First (a, b, c) with (ab)c != a(bc), scanning all n^3 triples.
inline std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> non_associative(Table const& t) {
  std::size_t n = t.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return std::tuple{a, b, c};
  return std::nullopt;
}

inline bool anti_homomorphism(Table const& t, std::vector<std::int64_t> const& s) {
  for (std::size_t x = 0; x < t.size(); ++x)
    for (std::size_t y = 0; y < t.size(); ++y)
      if (s[t[x][y]] != t[s[y]][s[x]]) return false;
  return true;
}

inline bool involutive(std::vector<std::int64_t> const& s) {
  for (std::size_t x = 0; x < s.size(); ++x)
    if (static_cast<std::size_t>(s[s[x]]) != x) return false;
  return true;
}

/// Number of distinct vectors in the F_p-span of `family`, by enumerating
/// every coefficient tuple. rank = log_p(count).
inline std::size_t span_size(std::vector<std::vector<std::int64_t>> const& family, std::int64_t p) {
  std::size_t len = family.empty() ? 0 : family.front().size();
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::int64_t> coeff(family.size(), 0);
  while (true) {
    std::vector<std::int64_t> v(len, 0);
    for (std::size_t k = 0; k < family.size(); ++k)
      for (std::size_t i = 0; i < len; ++i) v[i] = mod(v[i] + coeff[k] * family[k][i], p);
    seen.insert(v);
    std::size_t k = 0;
    while (k < coeff.size() && ++coeff[k] == p) coeff[k++] = 0;
    if (k == coeff.size()) break;
  }
  return seen.size();
}

inline std::size_t rank_by_span(std::vector<std::vector<std::int64_t>> const& family, std::int64_t p) {
  std::size_t count = span_size(family, p);
  std::size_t r = 0;
  for (std::size_t c = 1; c < count; c *= static_cast<std::size_t>(p)) ++r;
  return r;
}

/// Number of invertible 2x2 matrices over F_p by direct enumeration.
inline std::size_t count_gl2(std::int64_t p) {
  std::size_t count = 0;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      for (std::int64_t c = 0; c < p; ++c)
        for (std::int64_t d = 0; d < p; ++d) count += mod(a * d - b * c, p) != 0;
  return count;
}

}  // namespace oracle
