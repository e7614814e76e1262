#pragma once

// Exact rational scalar and the integer combinatorics everything else is built on.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qbern {

using BigInt = mpz_class;

/// Raised when an argument lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  Rational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }

  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  /// Exact binary value of a finite double.
  static Rational from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("non-finite double has no rational value");
    return Rational(mpq_class(value));
  }

  /// Parses "n", "-n" or "n/d".
  static Rational parse(std::string_view text) {
    const std::string s(text);
    mpq_class v;
    if (s.empty() || v.set_str(s, 10) != 0) throw DomainError("malformed rational '" + s + "'");
    if (v.get_den() == 0) throw DomainError("rational with zero denominator");
    return Rational(v);
  }

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }

  /// "num/den", or just "num" when the denominator is 1.
  std::string to_string() const { return value_.get_str(10); }

  const mpq_class& gmp() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
  mpq_class value_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Integer power; negative exponents invert (and reject a zero base).
inline Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw DomainError("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  const auto e = static_cast<unsigned long>(exponent);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.gmp().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.gmp().get_den_mpz_t(), e);
  return Rational(num, den);
}

inline double pow(double base, long exponent) { return std::pow(base, static_cast<double>(exponent)); }

inline BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// Scalar types the generic code runs on: Rational for the exact path, double for the floating one.
template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
S from_integer(const BigInt& v) {
  if constexpr (std::same_as<S, Rational>) {
    return Rational(v);
  } else {
    return v.get_d();
  }
}

template <Scalar S>
S from_rational(const Rational& r) {
  if constexpr (std::same_as<S, Rational>) {
    return r;
  } else {
    return r.to_double();
  }
}

}  // namespace qbern
