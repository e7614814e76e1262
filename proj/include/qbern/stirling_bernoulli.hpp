#pragma once

// Stirling numbers of the second kind, higher-order Bernoulli numbers and
// polynomials, the shift and q-difference operators, q-Stirling numbers, and
// the expansions of the q-Bernstein basis and of [x]_q^n built from them.

#include "qbern/bernstein.hpp"
#include "qbern/power_series.hpp"
#include "qbern/qnumbers.hpp"
#include "qbern/rational.hpp"

#include <span>
#include <utility>
#include <vector>

namespace qbern {

/// Lower-triangular table of S(n,k) for 0 <= n, k <= max_n.
class StirlingTable {
public:
  explicit StirlingTable(long max_n)
      : max_n_(max_n), entries_(static_cast<std::size_t>((max_n + 1) * (max_n + 1)), Rational(0)) {
    if (max_n < 0) throw DomainError("negative table size");
  }

  long max_n() const { return max_n_; }
  long max_k() const { return max_n_; }

  /// S(n,k); zero for k > n. Indices outside the table are rejected.
  const Rational& at(long n, long k) const { return entries_.at(index(n, k)); }
  Rational& at(long n, long k) { return entries_.at(index(n, k)); }

private:
  std::size_t index(long n, long k) const {
    if (n < 0 || k < 0 || n > max_n_ || k > max_n_) throw DomainError("Stirling table index out of range");
    return static_cast<std::size_t>(n * (max_n_ + 1) + k);
  }

  long max_n_;
  std::vector<Rational> entries_;
};

/// S(n,k) = k S(n-1,k) + S(n-1,k-1), S(0,0) = 1.
inline StirlingTable stirling2_recurrence(long max_n) {
  StirlingTable t(max_n);
  t.at(0, 0) = 1;
  for (long n = 1; n <= max_n; ++n) {
    for (long k = 1; k <= n; ++k) t.at(n, k) = Rational(k) * t.at(n - 1, k) + t.at(n - 1, k - 1);
  }
  return t;
}

/// Delta^n f(0) = sum_k binomial(n,k) (-1)^{n-k} f(k), with Delta f(x) = f(x+1) - f(x).
template <Scalar S>
S forward_difference_at_zero(std::span<const S> f_values, long n) {
  if (n < 0) throw DomainError("negative difference order");
  if (f_values.size() < static_cast<std::size_t>(n) + 1) throw DomainError("need f(0..n) for an n-th difference");
  S sum(0);
  for (long k = 0; k <= n; ++k) {
    S term = from_integer<S>(binomial(n, k)) * f_values[static_cast<std::size_t>(k)];
    if ((n - k) % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

/// S(n,k) = Delta^k 0^n / k!, with 0^0 = 1.
inline Rational stirling2_difference(long n, long k) {
  if (n < 0 || k < 0) throw DomainError("negative Stirling index");
  std::vector<Rational> powers;
  for (long l = 0; l <= k; ++l) powers.push_back(pow(Rational(l), n));  // 0^0 = 1
  return forward_difference_at_zero<Rational>(powers, k) / Rational(factorial(k));
}

/// n! [t^n] (e^t - 1)^k / k!.
inline Rational stirling2_series_oracle(long n, long k) {
  if (n < 0 || k < 0) throw DomainError("negative Stirling index");
  const auto order = static_cast<std::size_t>(n) + 1;
  const auto e_minus_one = exp_ct(Rational(1), order) - TruncatedSeries<Rational>::identity(order);
  auto series = pow(e_minus_one, static_cast<unsigned long>(k));
  series *= Rational(1) / Rational(factorial(k));
  return egf_coefficient(series, static_cast<std::size_t>(n));
}

/// Bell numbers 0..max_n from the Bell triangle.
inline std::vector<BigInt> bell_numbers(long max_n) {
  if (max_n < 0) throw DomainError("negative table size");
  std::vector<BigInt> bell{1};
  std::vector<BigInt> row{1};
  for (long n = 1; n <= max_n; ++n) {
    std::vector<BigInt> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
    bell.push_back(row.front());
  }
  return bell;
}

/// Bernoulli numbers of order k, B_n^{(k)} for n = 0..max_n.
class BernoulliOrderTable {
public:
  BernoulliOrderTable(long order, std::vector<Rational> numbers) : order_(order), numbers_(std::move(numbers)) {}

  long order() const { return order_; }
  long max_n() const { return static_cast<long>(numbers_.size()) - 1; }
  const Rational& operator[](long n) const {
    if (n < 0 || n > max_n()) throw DomainError("Bernoulli table index out of range");
    return numbers_[static_cast<std::size_t>(n)];
  }
  const std::vector<Rational>& numbers() const { return numbers_; }

private:
  long order_;
  std::vector<Rational> numbers_;
};

/// (e^t - 1)/t truncated to `order`: coefficient n is 1/(n+1)!.
inline TruncatedSeries<Rational> exp_minus_one_over_t(std::size_t order) {
  TruncatedSeries<Rational> s(order);
  for (std::size_t n = 0; n < order; ++n) s[n] = Rational(1) / Rational(factorial(static_cast<long>(n) + 1));
  return s;
}

/// (t / (e^t - 1))^k truncated to `order`.
inline TruncatedSeries<Rational> bernoulli_generating_series(long k, std::size_t order) {
  if (k < 0) throw DomainError("negative Bernoulli order");
  return pow(invert_unit(exp_minus_one_over_t(order)), static_cast<unsigned long>(k));
}

inline BernoulliOrderTable bernoulli_order(long k, long max_n) {
  if (max_n < 0) throw DomainError("negative table size");
  const auto order = static_cast<std::size_t>(max_n) + 1;
  const auto series = bernoulli_generating_series(k, order);
  std::vector<Rational> numbers;
  numbers.reserve(order);
  for (std::size_t n = 0; n < order; ++n) numbers.push_back(egf_coefficient(series, n));
  return BernoulliOrderTable(k, std::move(numbers));
}

/// B_n^{(k)}(y) = sum_j binomial(n,j) B_j^{(k)} y^{n-j}.
inline Rational bernoulli_order_poly(const BernoulliOrderTable& table, long n, const Rational& y) {
  if (n < 0 || n > table.max_n()) throw DomainError("Bernoulli polynomial degree outside the table");
  Rational sum(0);
  Rational y_pow(1);
  for (long j = n; j >= 0; --j) {
    sum += Rational(binomial(n, j)) * table[j] * y_pow;
    y_pow *= y;
  }
  return sum;
}

inline Rational bernoulli_order_poly(long k, long n, const Rational& y) {
  return bernoulli_order_poly(bernoulli_order(k, n), n, y);
}

/// B_{k,l}(x,q) = [x]_q^k sum_n B_n^{(k)}([1-x]_q) binomial(l,n) Delta^k 0^{l-n} / k!.
///
/// `table` must hold the order-k Bernoulli numbers up to index l.
inline Rational qbern_via_bernoulli(const BernoulliOrderTable& table, long l, const QPoint& p) {
  const long k = table.order();
  if (l < 0) throw DomainError("negative degree");
  const Rational y = q_complement(p);
  Rational sum(0);
  for (long n = 0; n <= l; ++n) {
    const Rational s = stirling2_difference(l - n, k);
    if (s.is_zero()) continue;
    sum += bernoulli_order_poly(table, n, y) * Rational(binomial(l, n)) * s;
  }
  return pow(q_number(p), k) * sum;
}

inline Rational qbern_via_bernoulli(long k, long l, const QPoint& p) {
  return qbern_via_bernoulli(bernoulli_order(k, std::max(l, 0L)), l, p);
}

/// Delta_q^n f(0) with Delta_q^n = prod_{i=0}^{n-1} (E - q^i I), applied factor by factor.
template <Scalar S>
S q_difference_at_zero(std::span<const S> f_values, long n, const S& q) {
  if (n < 0) throw DomainError("negative difference order");
  if (f_values.size() < static_cast<std::size_t>(n) + 1) throw DomainError("need f(0..n) for an n-th q-difference");
  std::vector<S> g(f_values.begin(), f_values.begin() + n + 1);
  S q_pow(1);
  for (long i = 0; i < n; ++i) {
    // (E - q^i I) g, valid on one fewer argument each round.
    for (std::size_t m = 0; m + 1 < g.size(); ++m) g[m] = g[m + 1] - q_pow * g[m];
    g.pop_back();
    q_pow *= q;
  }
  return g.front();
}

/// S(n,k:q) = q^{-binomial(k,2)} / [k]_q! sum_j (-1)^j q^{binomial(j,2)} C(k,j)_q [k-j]_q^n.
template <Scalar S>
S q_stirling(long n, long k, const S& q) {
  if (n < 0 || k < 0) throw DomainError("negative q-Stirling index");
  if (!(q > S(0) && q < S(1))) throw DomainError("q must lie in (0, 1)");
  S sum(0);
  for (long j = 0; j <= k; ++j) {
    S term = pow(q, j * (j - 1) / 2) * gaussian_binomial(k, j, q) * pow(q_int(k - j, q), n);
    if (j % 2 != 0) term = -term;
    sum += term;
  }
  return sum / (pow(q, k * (k - 1) / 2) * q_factorial(k, q));
}

/// n! [t^n] of q^{-binomial(k,2)}/[k]_q! sum_j (-1)^{k-j} C(k,j)_q q^{binomial(k-j,2)} e^{[j]_q t}.
inline Rational q_stirling_series_oracle(long n, long k, const Rational& q) {
  if (n < 0 || k < 0) throw DomainError("negative q-Stirling index");
  if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0, 1)");
  const auto order = static_cast<std::size_t>(n) + 1;
  TruncatedSeries<Rational> series(order);
  for (long j = 0; j <= k; ++j) {
    Rational weight = gaussian_binomial(k, j, q) * pow(q, (k - j) * (k - j - 1) / 2);
    if ((k - j) % 2 != 0) weight = -weight;
    series += exp_ct(q_int(j, q), order) * weight;
  }
  series *= Rational(1) / (pow(q, k * (k - 1) / 2) * q_factorial(k, q));
  return egf_coefficient(series, static_cast<std::size_t>(n));
}

/// Table of S(n,k:q) for 0 <= n, k <= max_n at one q.
class QStirlingTable {
public:
  QStirlingTable(Rational q, long max_n) : q_(std::move(q)), table_(max_n) {
    for (long n = 0; n <= max_n; ++n) {
      for (long k = 0; k <= n; ++k) table_.at(n, k) = q_stirling(n, k, q_);
    }
  }

  const Rational& q() const { return q_; }
  long max_n() const { return table_.max_n(); }
  long max_k() const { return table_.max_k(); }
  const Rational& at(long n, long k) const { return table_.at(n, k); }

private:
  Rational q_;
  StirlingTable table_;
};

/// sum_{k=0}^i q^{binomial(k,2)} [x choose k]_q [k]_q! S(i,k:q); equals [x]_q^i.
template <EvaluationPoint P>
typename P::scalar_type q_power_expansion(long i, const P& p) {
  using S = typename P::scalar_type;
  if (i < 0) throw DomainError("negative power");
  const S q(p.q());
  S sum(0);
  for (long k = 0; k <= i; ++k) {
    sum += pow(q, k * (k - 1) / 2) * q_x_binomial(p, k) * q_factorial(k, q) * q_stirling(i, k, q);
  }
  return sum;
}

/// The normalized moment sum and the q-Stirling power expansion of [x]_q^i, which agree.
template <EvaluationPoint P>
std::pair<typename P::scalar_type, typename P::scalar_type> moment_power_pair(long i, long n, const P& p) {
  if (i < 1) throw DomainError("needs i >= 1");
  if (i > n) throw DomainError("needs i <= n");
  return {moment_identity(i, n, p), q_power_expansion(i, p)};
}

}  // namespace qbern
