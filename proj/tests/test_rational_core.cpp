#include "oracles.hpp"
#include "qbern/qnumbers.hpp"
#include "qbern/rational.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qbern;
using qbern::testing::random_rational;

namespace {
Rational r(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }
QPoint pt(long qn, long qd, long xn, long xd) { return QPoint(r(qn, qd), r(xn, xd)); }
}  // namespace

TEST_CASE("rational keeps canonical form") {
  const Rational a(BigInt(6), BigInt(-8));
  CHECK(a.numerator() == -3);
  CHECK(a.denominator() == 4);
  CHECK(a.to_string() == "-3/4");
  CHECK((r(1, 3) + r(1, 6)).to_string() == "1/2");
  CHECK((r(2, 3) * r(3, 2)).to_string() == "1");
  CHECK(r(1, 2) < r(2, 3));
  CHECK(Rational::parse("10/4") == r(5, 2));
  CHECK(Rational::parse("-7") == r(-7));
  CHECK(Rational::from_double(0.375) == r(3, 8));
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DomainError);
  CHECK_THROWS_AS(r(1) / r(0), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/x"), DomainError);
  CHECK_THROWS_AS(Rational::parse("3/0"), DomainError);
}

TEST_CASE("rational integer powers, including negative exponents") {
  CHECK(pow(r(2, 3), 3) == r(8, 27));
  CHECK(pow(r(2, 3), -2) == r(9, 4));
  CHECK(pow(r(-1, 2), 3) == r(-1, 8));
  CHECK(pow(r(0), 0) == r(1));
  CHECK_THROWS_AS(pow(r(0), -1), DomainError);
}

TEST_CASE("q_number") {
  CHECK(q_number(pt(1, 2, 1, 1)) == r(0));
  CHECK(q_number(pt(1, 2, 1, 2)) == r(1));
  CHECK(q_number(pt(1, 4, 1, 2)) == r(2, 3));
}

TEST_CASE("q_complement") {
  CHECK(q_complement(pt(1, 2, 1, 2)) == r(0));
  CHECK(q_complement(pt(1, 4, 1, 2)) == r(2, 3));
  CHECK(q_complement(pt(1, 2, 1, 1)) == r(1));
}

TEST_CASE("q_shifted") {
  CHECK(q_shifted(pt(1, 2, 1, 1), 0) == r(0));
  CHECK(q_shifted(pt(1, 2, 1, 2), 1) == r(0));
  CHECK(q_shifted(pt(1, 2, 1, 1), 1) == r(-2));
  // j = 0 is the q-number itself.
  const QPoint p = pt(1, 3, 3, 5);
  CHECK(q_shifted(p, 0) == q_number(p));
}

TEST_CASE("q_int and q_factorial") {
  CHECK(q_int(0, r(1, 2)) == r(0));
  CHECK(q_int(1, r(1, 3)) == r(1));
  CHECK(q_int(3, r(1, 2)) == r(7, 4));
  CHECK(q_factorial(0, r(1, 2)) == r(1));
  CHECK(q_factorial(1, r(1, 2)) == r(1));
  CHECK(q_factorial(3, r(1, 2)) == r(21, 8));
  CHECK(q_factorial(4, r(1, 3)) == r(2080, 729));
  CHECK_THROWS_AS(q_int(-1, r(1, 2)), DomainError);
}

TEST_CASE("q_int matches the q-number of the point q^n when that point is valid") {
  // QPoint needs X = q^n in [q, 1], so only n = 0 and n = 1 are representable;
  // beyond that compare against the closed quotient (1 - q^n)/(1 - q).
  const Rational q = r(2, 7);
  CHECK(q_int(0, q) == q_number(QPoint(q, pow(q, 0))));
  CHECK(q_int(1, q) == q_number(QPoint(q, pow(q, 1))));
  for (long n = 0; n <= 16; ++n) CHECK(q_int(n, q) == (1 - pow(q, n)) / (1 - q));
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(10, 5) == 252);
  for (long n = 0; n <= 30; ++n) {
    const auto row = qbern::testing::pascal_row(n);
    for (long k = 0; k <= n; ++k) CHECK(binomial(n, k) == row[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("gaussian_binomial examples") {
  CHECK(gaussian_binomial(5, 0, r(2, 9)) == r(1));
  CHECK(gaussian_binomial(2, 1, r(1, 2)) == r(3, 2));
  CHECK(gaussian_binomial(4, 2, r(1, 3)) == r(130, 81));
  CHECK(gaussian_binomial(6, 3, r(2, 5)) == r(3976567, 1953125));
  CHECK(gaussian_binomial(3, 4, r(1, 2)) == r(0));
}

TEST_CASE("gaussian_binomial agrees with subset-inversion enumeration") {
  for (const Rational& q : {r(1, 3), r(3, 4)}) {
    for (long n = 0; n <= 10; ++n)
      for (long k = 0; k <= n; ++k) CHECK(gaussian_binomial(n, k, q) == qbern::testing::gaussian_by_inversions(n, k, q));
  }
}

TEST_CASE("gaussian_binomial recurrence equals the factorial quotient for n <= 16") {
  for (const Rational& q : {r(1, 5), r(1, 2), r(9, 10)}) {
    for (long n = 0; n <= 16; ++n)
      for (long k = 0; k <= n; ++k) CHECK(gaussian_binomial(n, k, q) == gaussian_binomial_quotient(n, k, q));
  }
}

TEST_CASE("gaussian_binomial tends to the ordinary binomial as q -> 1") {
  for (long n = 0; n <= 10; ++n) {
    for (long k = 0; k <= n; ++k) {
      const double target = binomial(n, k).get_d();
      double prev = std::abs(gaussian_binomial(n, k, 0.9) - target);
      for (int m = 2; m <= 6; ++m) {
        const double q = 1.0 - std::pow(10.0, -m);
        const double err = std::abs(gaussian_binomial(n, k, q) - target);
        CHECK(err <= prev + 1e-9);
        prev = err;
      }
      CHECK(prev <= 1e-4 * std::max(target, 1.0));  // relative gap ~ k(n-k)(1-q)/2
    }
  }
}

TEST_CASE("q_x_binomial") {
  const QPoint any = pt(1, 3, 2, 3);
  CHECK(q_x_binomial(any, 0) == r(1));
  CHECK(q_x_binomial(pt(1, 2, 1, 2), 1) == r(1));
  CHECK(q_x_binomial(pt(1, 2, 1, 2), 2) == r(0));
}

TEST_CASE("QPoint rejects invalid coordinates") {
  CHECK_THROWS_AS(pt(0, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(pt(1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(pt(3, 2, 1, 1), DomainError);
  CHECK_THROWS_AS(pt(1, 2, 1, 4), DomainError);  // X < q
  CHECK_THROWS_AS(pt(1, 2, 5, 4), DomainError);  // X > 1
  CHECK_NOTHROW(pt(1, 2, 1, 2));
  CHECK_THROWS_AS(FloatPoint(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(FloatPoint(0.5, 1.5), DomainError);
}

TEST_CASE("q-number relations hold at random points") {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational q = random_rational(rng, r(0), r(1));
    const Rational X = trial % 10 == 0 ? (trial % 20 == 0 ? q : r(1)) : random_rational(rng, q, r(1));
    const QPoint p(q, X);
    const Rational a = q_number(p);
    const Rational b = q_complement(p);
    CHECK(a + b == 1 + (1 - q) * a * b);
    CHECK(b == 1 - (q / X) * a);
    CHECK(a >= 0);
    CHECK(a <= 1);
    CHECK(b >= 0);
    CHECK(b <= 1);
  }
}

TEST_CASE("floating q-numbers agree with the exact ones") {
  // x = 1/2 gives X = sqrt(q); pick q a perfect square.
  const QPoint exact = pt(9, 16, 3, 4);
  const FloatPoint fp(9.0 / 16.0, 0.5);
  CHECK(q_number(fp) == doctest::Approx(q_number(exact).to_double()).epsilon(1e-14));
  CHECK(q_complement(fp) == doctest::Approx(q_complement(exact).to_double()).epsilon(1e-14));
  CHECK(q_shifted(fp, 2) == doctest::Approx(q_shifted(exact, 2).to_double()).epsilon(1e-13));
  CHECK(q_number(FloatPoint(0.3, 0.0)) == 0.0);
  CHECK(q_number(FloatPoint(0.3, 1.0)) == 1.0);
}
