#pragma once

// Evaluation points and q-analogs of numbers, factorials and binomials.
//
// A point stands for a pair (q, x) with 0 < q < 1 and x in [0, 1]. The exact
// point stores X = q^x instead of x: every quantity used here is a rational
// function of q, q^x, q^{1-x} = q/X and q^{x-j} = X q^{-j}, so choosing q and
// X rational keeps every identity an exact equality.

#include "qbern/rational.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>
#include <vector>

namespace qbern {

/// Exact point (q, X = q^x). Requires 0 < q < 1 and q <= X <= 1.
class QPoint {
public:
  using scalar_type = Rational;

  QPoint(Rational q, Rational X) : q_(std::move(q)), X_(std::move(X)) {
    if (q_.sign() <= 0 || q_ >= 1) throw DomainError("q must lie in (0, 1), got " + q_.to_string());
    if (X_ < q_ || X_ > 1) {
      throw DomainError("X = q^x must lie in [q, 1], got " + X_.to_string());
    }
  }

  const Rational& q() const { return q_; }
  const Rational& X() const { return X_; }
  Rational pow_x() const { return X_; }
  Rational pow_one_minus_x() const { return q_ / X_; }

  std::string to_string() const { return "(q=" + q_.to_string() + ",X=" + X_.to_string() + ")"; }

  friend bool operator==(const QPoint&, const QPoint&) = default;

private:
  Rational q_;
  Rational X_;
};

/// Floating point (q, x). Requires 0 < q < 1 and 0 <= x <= 1.
class FloatPoint {
public:
  using scalar_type = double;

  FloatPoint(double q, double x) : q_(q), x_(x) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0, 1)");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x must lie in [0, 1]");
  }

  double q() const { return q_; }
  double x() const { return x_; }
  double pow_x() const { return std::exp(x_ * std::log(q_)); }
  double pow_one_minus_x() const { return std::exp((1.0 - x_) * std::log(q_)); }

  std::string to_string() const {
    return "(q=" + Rational::from_double(q_).to_string() + ",x=" + Rational::from_double(x_).to_string() + ")";
  }

  friend bool operator==(const FloatPoint&, const FloatPoint&) = default;

private:
  double q_;
  double x_;
};

/// [x]_q = (1 - X) / (1 - q).
inline Rational q_number(const QPoint& p) { return (1 - p.X()) / (1 - p.q()); }

/// [1-x]_q = (1 - q/X) / (1 - q).
inline Rational q_complement(const QPoint& p) { return (1 - p.q() / p.X()) / (1 - p.q()); }

/// [x-j]_q = (1 - X q^{-j}) / (1 - q); negative once x < j.
inline Rational q_shifted(const QPoint& p, long j) {
  return (1 - p.X() * pow(p.q(), -j)) / (1 - p.q());
}

namespace detail {
// (1 - q^e) / (1 - q) without cancellation when q^e is close to 1. Exact at e = 0 and e = 1.
inline double q_number_of_exponent(double q, double e) {
  if (e == 0.0) return 0.0;
  if (e == 1.0) return 1.0;
  return -std::expm1(e * std::log(q)) / (1.0 - q);
}
}  // namespace detail

inline double q_number(const FloatPoint& p) { return detail::q_number_of_exponent(p.q(), p.x()); }
inline double q_complement(const FloatPoint& p) { return detail::q_number_of_exponent(p.q(), 1.0 - p.x()); }
inline double q_shifted(const FloatPoint& p, long j) {
  return detail::q_number_of_exponent(p.q(), p.x() - static_cast<double>(j));
}

/// Anything q-Bernstein machinery can be evaluated at.
template <class P>
concept EvaluationPoint = requires(const P& p, long j) {
  typename P::scalar_type;
  requires Scalar<typename P::scalar_type>;
  { p.q() } -> std::convertible_to<typename P::scalar_type>;
  { p.pow_x() } -> std::convertible_to<typename P::scalar_type>;
  { p.pow_one_minus_x() } -> std::convertible_to<typename P::scalar_type>;
  { q_number(p) } -> std::same_as<typename P::scalar_type>;
  { q_complement(p) } -> std::same_as<typename P::scalar_type>;
  { q_shifted(p, j) } -> std::same_as<typename P::scalar_type>;
};

/// [n]_q = 1 + q + ... + q^{n-1}.
template <Scalar S>
S q_int(long n, const S& q) {
  if (n < 0) throw DomainError("q_int of a negative integer");
  S sum(0);
  S term(1);
  for (long i = 0; i < n; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

/// [k]_q! = [1]_q [2]_q ... [k]_q.
template <Scalar S>
S q_factorial(long k, const S& q) {
  if (k < 0) throw DomainError("q_factorial of a negative integer");
  S prod(1);
  for (long i = 2; i <= k; ++i) prod *= q_int(i, q);
  return prod;
}

/// Gaussian binomial by the q-Pascal rule C(n,k) = C(n-1,k-1) + q^k C(n-1,k).
template <Scalar S>
S gaussian_binomial(long n, long k, const S& q) {
  if (n < 0 || k < 0 || k > n) return S(0);
  // row[j] holds C(m, j)_q for the current m, j <= k.
  std::vector<S> row(static_cast<std::size_t>(k) + 1, S(0));
  row[0] = S(1);
  std::vector<S> q_pow(static_cast<std::size_t>(k) + 1, S(1));
  for (std::size_t j = 1; j < q_pow.size(); ++j) q_pow[j] = q_pow[j - 1] * q;
  for (long m = 1; m <= n; ++m) {
    for (long j = std::min(m, k); j >= 1; --j) {
      const auto uj = static_cast<std::size_t>(j);
      row[uj] = row[uj - 1] + q_pow[uj] * row[uj];
    }
  }
  return row[static_cast<std::size_t>(k)];
}

/// [n]_q! / ([k]_q! [n-k]_q!), kept as a cross-check for the recurrence.
template <Scalar S>
S gaussian_binomial_quotient(long n, long k, const S& q) {
  if (n < 0 || k < 0 || k > n) return S(0);
  return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q));
}

/// [x choose k]_q = [x]_q [x-1]_q ... [x-k+1]_q / [k]_q!.
template <EvaluationPoint P>
typename P::scalar_type q_x_binomial(const P& p, long k) {
  using S = typename P::scalar_type;
  if (k < 0) throw DomainError("q_x_binomial with negative k");
  S prod(1);
  for (long j = 0; j < k; ++j) prod *= q_shifted(p, j);
  return prod / q_factorial(k, S(p.q()));
}

}  // namespace qbern
