#pragma once

// Classical and modified q-Bernstein bases, the modified q-Bernstein operator,
// and the alternative forms of the basis (recurrences, expansions, moments).
//
// Every function is generic over the evaluation point: QPoint gives exact
// rationals, FloatPoint gives doubles. Out-of-range degrees (k < 0 or k > n)
// evaluate to zero, matching the generating-function definition.

#include "qbern/power_series.hpp"
#include "qbern/qnumbers.hpp"
#include "qbern/rational.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace qbern {

/// binomial(n,k) x^k (1-x)^{n-k} on [0,1].
template <Scalar S>
S classical_basis(long k, long n, const S& x) {
  if (n < 0) throw DomainError("negative degree");
  if (x < S(0) || x > S(1)) throw DomainError("classical basis evaluated outside [0, 1]");
  if (k < 0 || k > n) return S(0);
  return from_integer<S>(binomial(n, k)) * pow(x, k) * pow(S(1) - x, n - k);
}

/// B_{k,n}(x,q) = binomial(n,k) [x]_q^k [1-x]_q^{n-k}.
template <EvaluationPoint P>
typename P::scalar_type q_basis(long k, long n, const P& p) {
  using S = typename P::scalar_type;
  if (n < 0) throw DomainError("negative degree");
  if (k < 0 || k > n) return S(0);
  return from_integer<S>(binomial(n, k)) * pow(q_number(p), k) * pow(q_complement(p), n - k);
}

/// B_{k,n}(x,q) read off its generating function ([x]_q t)^k / k! e^{[1-x]_q t}.
inline Rational q_basis_oracle(long k, long n, const QPoint& p) {
  if (n < 0 || k < 0) throw DomainError("negative degree");
  const auto order = static_cast<std::size_t>(n) + 1;
  auto series = shift_mul_tk(exp_ct(q_complement(p), order), static_cast<std::size_t>(k));
  series *= pow(q_number(p), k) / Rational(factorial(k));
  return egf_coefficient(series, static_cast<std::size_t>(n));
}

/// A basis value tagged with where it came from.
struct BasisValue {
  long k;
  long n;
  QPoint point;
  Rational value;
};

inline BasisValue evaluate_basis(long k, long n, const QPoint& p) { return {k, n, p, q_basis(k, n, p)}; }

/// [1-x]_q B_{k,n-1} + [x]_q B_{k-1,n-1}.
template <EvaluationPoint P>
typename P::scalar_type additive_recurrence(long k, long n, const P& p) {
  if (n < 1) throw DomainError("additive recurrence needs n >= 1");
  return q_complement(p) * q_basis(k, n - 1, p) + q_number(p) * q_basis(k - 1, n - 1, p);
}

/// d/dx B_{k,n}(x,q) = n (q^x B_{k-1,n-1} - q^{1-x} B_{k,n-1}) ln q / (q - 1), for 0 < x < 1.
inline double derivative(long k, long n, const FloatPoint& fp) {
  if (n < 1) throw DomainError("derivative needs n >= 1");
  if (!(fp.x() > 0.0 && fp.x() < 1.0)) throw DomainError("derivative is only checked on the open interval (0, 1)");
  const double q = fp.q();
  const double scale = std::log(q) / (q - 1.0);
  return static_cast<double>(n) *
         (fp.pow_x() * q_basis(k - 1, n - 1, fp) - fp.pow_one_minus_x() * q_basis(k, n - 1, fp)) * scale;
}

/// Values f(j/n), j = 0..n.
template <Scalar S>
struct SampledFunction {
  SampledFunction(long degree, std::vector<S> values) : n(degree), samples(std::move(values)) {
    if (n < 0 || samples.size() != static_cast<std::size_t>(n) + 1) {
      throw DomainError("sampled function needs exactly n+1 samples");
    }
  }

  template <class F>
  static SampledFunction sample(long degree, F&& f) {
    std::vector<S> values;
    for (long j = 0; j <= degree; ++j) {
      if constexpr (std::same_as<S, Rational>) {
        values.push_back(f(Rational(BigInt(j), BigInt(degree == 0 ? 1 : degree))));
      } else {
        values.push_back(f(degree == 0 ? 0.0 : static_cast<double>(j) / static_cast<double>(degree)));
      }
    }
    return SampledFunction(degree, std::move(values));
  }

  long n;
  std::vector<S> samples;
};

/// B_{n,q}(f:x) = sum_j f(j/n) B_{j,n}(x,q).
template <EvaluationPoint P>
typename P::scalar_type operator_apply(const SampledFunction<typename P::scalar_type>& f, const P& p) {
  using S = typename P::scalar_type;
  S sum(0);
  for (long j = 0; j <= f.n; ++j) sum += f.samples[static_cast<std::size_t>(j)] * q_basis(j, f.n, p);
  return sum;
}

/// 1 + (1-q)[x]_q[1-x]_q, which equals [x]_q + [1-x]_q.
template <EvaluationPoint P>
typename P::scalar_type q_sum_factor(const P& p) {
  using S = typename P::scalar_type;
#ifdef QBERN_MUTATE_SUM_SIGN
  const S weight = S(p.q()) - S(1);
#else
  const S weight = S(1) - S(p.q());
#endif
  return S(1) + weight * q_number(p) * q_complement(p);
}

/// Closed form of sum_k B_{k,n}(x,q): (1 + (1-q)[x]_q[1-x]_q)^n.
template <EvaluationPoint P>
typename P::scalar_type sum_basis(long n, const P& p) {
  if (n < 0) throw DomainError("negative degree");
  return pow(q_sum_factor(p), n);
}

/// Point for 1 - x: X' = q / X.
inline QPoint reflect(const QPoint& p) { return QPoint(p.q(), p.q() / p.X()); }
inline FloatPoint reflect(const FloatPoint& p) { return FloatPoint(p.q(), 1.0 - p.x()); }

/// ((n-k)/n) B_{k,n} + ((k+1)/n) B_{k+1,n}; equals B_{k,n-1} (1 + (1-q)[x]_q[1-x]_q).
template <EvaluationPoint P>
typename P::scalar_type degree_reduction(long k, long n, const P& p) {
  using S = typename P::scalar_type;
  if (n < 1 || k < 0 || k > n) throw DomainError("degree reduction needs n >= 1 and 0 <= k <= n");
  const S nn(n);
  return S(n - k) / nn * q_basis(k, n, p) + S(k + 1) / nn * q_basis(k + 1, n, p);
}

/// ((n-k+1)/k) ([x]_q / [1-x]_q) B_{k-1,n}; equals B_{k,n}. Undefined at x = 1.
template <EvaluationPoint P>
typename P::scalar_type ratio_identity(long k, long n, const P& p) {
  using S = typename P::scalar_type;
  if (k < 1 || n < 1) throw DomainError("ratio identity needs k, n >= 1");
  const S complement = q_complement(p);
  if (complement == S(0)) throw DomainError("ratio identity divides by [1-x]_q = 0 (x = 1)");
  return S(n - k + 1) / S(k) * (q_number(p) / complement) * q_basis(k - 1, n, p);
}

/// sum_{i=k}^n binomial(i,k) binomial(n,i) (-1)^{i-k} q^{(1-x)(i-k)} [x]_q^i.
template <EvaluationPoint P>
typename P::scalar_type monomial_expansion(long k, long n, const P& p) {
  using S = typename P::scalar_type;
  if (n < 0 || k < 0) throw DomainError("negative degree");
  const S a = q_number(p);
  const S r = p.pow_one_minus_x();
  S sum(0);
  for (long i = k; i <= n; ++i) {
    S term = from_integer<S>(binomial(i, k) * binomial(n, i)) * pow(r, i - k) * pow(a, i);
    if ((i - k) % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

/// ([1-x]_q + [x]_q)^{-(n-i)} sum_k (binomial(k,i)/binomial(n,i)) B_{k,n}; equals [x]_q^i.
///
/// The sum starts at k = i: the k = i-1 term carries binomial(i-1, i) = 0.
template <EvaluationPoint P>
typename P::scalar_type moment_identity(long i, long n, const P& p) {
  using S = typename P::scalar_type;
  if (i < 1) throw DomainError("moment identity needs i >= 1");
  if (i > n) throw DomainError("moment identity needs i <= n");
  const S denom = from_integer<S>(binomial(n, i));
  S sum(0);
  for (long k = i; k <= n; ++k) sum += from_integer<S>(binomial(k, i)) / denom * q_basis(k, n, p);
  return sum / pow(q_complement(p) + q_number(p), n - i);
}

/// |B_{k,n}(x,q) - B_{k,n}(x)| for each q in `qs`.
inline std::vector<double> classical_limit_check(long k, long n, double x, std::span<const double> qs) {
  std::vector<double> out;
  out.reserve(qs.size());
  const double classical = classical_basis(k, n, x);
  for (double q : qs) out.push_back(std::abs(q_basis(k, n, FloatPoint(q, x)) - classical));
  return out;
}

}  // namespace qbern
