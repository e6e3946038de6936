#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "semilab/error.hpp"

namespace semilab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

/// The scalar field F: either the rationals or a prime field F_p with p odd.
class Field {
 public:
  enum class Kind { Rational, Prime };

  static Field rational() { return Field(Kind::Rational, 0); }

  static Field prime(std::uint64_t p) {
    if (p == 2) {
      throw Error(ErrorCode::CharacteristicTwo, "F_2 is excluded (char(F) must not be 2)");
    }
    if (!is_prime(p)) {
      throw Error(ErrorCode::BadPrime, std::to_string(p) + " is not prime");
    }
    // Products of two residues must fit in 64 bits.
    if (p >= (std::uint64_t{1} << 31)) {
      throw Error(ErrorCode::TooLarge, "prime modulus must be below 2^31");
    }
    return Field(Kind::Prime, p);
  }

  /// Accepts "q" for the rationals or "fp:<p>".
  static Field parse(std::string_view text) {
    if (text == "q" || text == "Q") {
      return rational();
    }
    if (text.substr(0, 3) == "fp:") {
      std::uint64_t p = 0;
      auto digits = text.substr(3);
      if (digits.empty()) {
        throw Error(ErrorCode::ParseError, "missing prime in field spec");
      }
      for (char c : digits) {
        if (c < '0' || c > '9') {
          throw Error(ErrorCode::ParseError, "bad field spec '" + std::string(text) + "'");
        }
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
        if (p > (std::uint64_t{1} << 40)) {
          throw Error(ErrorCode::TooLarge, "prime modulus too large");
        }
      }
      return prime(p);
    }
    throw Error(ErrorCode::ParseError, "bad field spec '" + std::string(text) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rational; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const noexcept { return p_; }

  std::string name() const {
    return is_rational() ? std::string("q") : "fp:" + std::to_string(p_);
  }

  friend bool operator==(Field const&, Field const&) = default;

 private:
  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

namespace detail {

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) {
      result = result * base % p;
    }
    base = base * base % p;
    exp >>= 1U;
  }
  return result;
}

/// Inverse of a nonzero residue via the extended Euclidean algorithm.
inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t old_r = static_cast<std::int64_t>(a % p);
  std::int64_t r = static_cast<std::int64_t>(p);
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(ErrorCode::DivisionByZero, "residue is not invertible");
  }
  auto sp = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((old_s % sp) + sp) % sp);
}

inline std::uint64_t reduce(BigInt const& value, std::uint64_t p) {
  BigInt r = value % BigInt(p);
  if (r < 0) {
    r += p;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// An exact element of a Field. Rationals are kept gcd-reduced with a
/// positive denominator; residues are canonical in [0, p).
class Scalar {
 public:
  Scalar() : field_(Field::rational()) {}

  Scalar(Field const& field, long long value) : field_(field) {
    if (field_.is_rational()) {
      q_ = value;
    } else {
      r_ = detail::reduce(BigInt(value), field_.characteristic());
    }
  }

  Scalar(Field const& field, Rational const& value) : field_(field) {
    if (field_.is_rational()) {
      q_ = value;
    } else {
      auto p = field_.characteristic();
      auto den = detail::reduce(boost::multiprecision::denominator(value), p);
      if (den == 0) {
        throw Error(ErrorCode::DivisionByZero, "denominator vanishes mod " + std::to_string(p));
      }
      auto num = detail::reduce(boost::multiprecision::numerator(value), p);
      r_ = num * detail::mod_inverse(den, p) % p;
    }
  }

  static Scalar zero(Field const& field) { return Scalar(field, 0); }
  static Scalar one(Field const& field) { return Scalar(field, 1); }

  /// Parses "a", "-a" or "a/b" (decimal integers) into the given field.
  static Scalar parse(Field const& field, std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    auto parse_int = [&](std::string_view s) {
      s = trim(s);
      bool negative = false;
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
      }
      if (s.empty()) {
        throw Error(ErrorCode::ParseError, "bad scalar '" + std::string(text) + "'");
      }
      BigInt v = 0;
      for (char c : s) {
        if (c < '0' || c > '9') {
          throw Error(ErrorCode::ParseError, "bad scalar '" + std::string(text) + "'");
        }
        v = v * 10 + (c - '0');
      }
      return negative ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = slash == std::string_view::npos ? BigInt(1) : parse_int(text.substr(slash + 1));
    if (den == 0) {
      throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Scalar(field, Rational(num, den));
  }

  Field const& field() const noexcept { return field_; }

  bool is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

  /// Canonical residue; only meaningful over F_p.
  std::uint64_t residue() const noexcept { return r_; }
  Rational const& rational() const noexcept { return q_; }

  Scalar inverse() const {
    if (is_zero()) {
      throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    }
    Scalar out(*this);
    if (field_.is_rational()) {
      out.q_ = 1 / q_;
    } else {
      out.r_ = detail::mod_inverse(r_, field_.characteristic());
    }
    return out;
  }

  Scalar operator-() const {
    Scalar out(*this);
    if (field_.is_rational()) {
      out.q_ = -q_;
    } else if (r_ != 0) {
      out.r_ = field_.characteristic() - r_;
    }
    return out;
  }

  Scalar& operator+=(Scalar const& other) {
    check_same(other);
    if (field_.is_rational()) {
      q_ += other.q_;
    } else {
      r_ = (r_ + other.r_) % field_.characteristic();
    }
    return *this;
  }

  Scalar& operator-=(Scalar const& other) { return *this += -other; }

  Scalar& operator*=(Scalar const& other) {
    check_same(other);
    if (field_.is_rational()) {
      q_ *= other.q_;
    } else {
      r_ = r_ * other.r_ % field_.characteristic();
    }
    return *this;
  }

  Scalar& operator/=(Scalar const& other) {
    check_same(other);
    return *this *= other.inverse();
  }

  friend Scalar operator+(Scalar a, Scalar const& b) { return a += b; }
  friend Scalar operator-(Scalar a, Scalar const& b) { return a -= b; }
  friend Scalar operator*(Scalar a, Scalar const& b) { return a *= b; }
  friend Scalar operator/(Scalar a, Scalar const& b) { return a /= b; }

  friend bool operator==(Scalar const& a, Scalar const& b) {
    if (a.field_ != b.field_) {
      return false;
    }
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
  }

  /// "a/b" over the rationals, "k mod p" over F_p.
  std::string to_string() const {
    if (field_.is_rational()) {
      return boost::multiprecision::numerator(q_).str() + "/" +
             boost::multiprecision::denominator(q_).str();
    }
    return std::to_string(r_) + " mod " + std::to_string(field_.characteristic());
  }

  friend std::ostream& operator<<(std::ostream& os, Scalar const& s) {
    return os << s.to_string();
  }

 private:
  void check_same(Scalar const& other) const {
    if (field_ != other.field_) {
      throw Error(ErrorCode::MixedFields, field_.name() + " vs " + other.field_.name());
    }
  }

  Field field_;
  Rational q_ = 0;
  std::uint64_t r_ = 0;
};

}  // namespace semilab
