#pragma once

// Truncated formal power series in t.
//
// Coefficient extraction for the generating functions: n! times the t^n
// coefficient is the residue a contour integral would pick out.

#include "qbern/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace qbern {

template <Scalar S>
class TruncatedSeries {
public:
  using scalar_type = S;

  /// Zero series storing `order` coefficients (t^0 .. t^{order-1}).
  explicit TruncatedSeries(std::size_t order) : coefficients_(order, S(0)) {}
  explicit TruncatedSeries(std::vector<S> coefficients) : coefficients_(std::move(coefficients)) {}
  TruncatedSeries(std::initializer_list<S> coefficients) : coefficients_(coefficients) {}

  /// 1 + 0 t + ... truncated to `order`.
  static TruncatedSeries identity(std::size_t order) {
    TruncatedSeries s(order);
    if (order > 0) s.coefficients_[0] = S(1);
    return s;
  }

  std::size_t order() const { return coefficients_.size(); }
  const std::vector<S>& coefficients() const { return coefficients_; }
  const S& operator[](std::size_t i) const { return coefficients_.at(i); }
  S& operator[](std::size_t i) { return coefficients_.at(i); }

  TruncatedSeries truncated(std::size_t order) const {
    const auto n = std::min(order, coefficients_.size());
    return TruncatedSeries(std::vector<S>(coefficients_.begin(), coefficients_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    coefficients_.resize(std::min(order(), o.order()));
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += o.coefficients_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    coefficients_.resize(std::min(order(), o.order()));
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= o.coefficients_[i];
    return *this;
  }
  TruncatedSeries& operator*=(const S& c) {
    for (auto& a : coefficients_) a *= c;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const S& c) { return a *= c; }
  friend TruncatedSeries operator*(const S& c, TruncatedSeries a) { return a *= c; }

  /// Cauchy product, truncated to the smaller order.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coefficients_[i] == S(0)) continue;
      for (std::size_t j = 0; i + j < n; ++j) r.coefficients_[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
    return r;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
  std::vector<S> coefficients_;
};

/// e^{c t}: coefficient n is c^n / n!.
template <Scalar S>
TruncatedSeries<S> exp_ct(const S& c, std::size_t order) {
  if (order == 0) throw DomainError("exp_ct needs order >= 1");
  TruncatedSeries<S> s(order);
  S term(1);
  for (std::size_t n = 0; n < order; ++n) {
    if (n > 0) term = term * c / S(static_cast<long>(n));
    s[n] = term;
  }
  return s;
}

template <Scalar S>
TruncatedSeries<S> mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  return a * b;
}

/// Multiplies by t^k, keeping the order.
template <Scalar S>
TruncatedSeries<S> shift_mul_tk(const TruncatedSeries<S>& a, std::size_t k) {
  TruncatedSeries<S> r(a.order());
  for (std::size_t n = k; n < a.order(); ++n) r[n] = a[n - k];
  return r;
}

/// Multiplicative inverse of a series with nonzero constant term.
template <Scalar S>
TruncatedSeries<S> invert_unit(const TruncatedSeries<S>& a) {
  if (a.order() == 0 || a[0] == S(0)) throw DomainError("series with zero constant term is not invertible");
  TruncatedSeries<S> b(a.order());
  const S inv0 = S(1) / a[0];
  b[0] = inv0;
  for (std::size_t n = 1; n < a.order(); ++n) {
    S acc(0);
    for (std::size_t i = 1; i <= n; ++i) acc += a[i] * b[n - i];
    b[n] = -acc * inv0;
  }
  return b;
}

/// a^k by binary powering; k = 0 gives the identity series.
template <Scalar S>
TruncatedSeries<S> pow(TruncatedSeries<S> a, unsigned long k) {
  auto result = TruncatedSeries<S>::identity(a.order());
  while (k > 0) {
    if (k & 1U) result = result * a;
    k >>= 1U;
    if (k > 0) a = a * a;
  }
  return result;
}

/// n! a_n, the coefficient of t^n / n!. Rejects n beyond the truncation.
template <Scalar S>
S egf_coefficient(const TruncatedSeries<S>& a, std::size_t n) {
  if (n >= a.order()) throw DomainError("coefficient index beyond series truncation");
  return a[n] * from_integer<S>(factorial(static_cast<long>(n)));
}

}  // namespace qbern
