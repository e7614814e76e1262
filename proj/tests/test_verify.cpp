#include "qbern/verify.hpp"

#include <doctest.h>

using namespace qbern;

namespace {
Rational r(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }
}  // namespace

TEST_CASE("identity ids round-trip through their names") {
  for (IdentityId id : all_identities()) CHECK(parse_identity(to_string(id)) == id);
  CHECK(to_string(IdentityId::T3_SUM) == "T3_SUM");
  CHECK_FALSE(parse_identity("T9_NOPE").has_value());
}

TEST_CASE("x_grid has both endpoints and evenly spaced interior points") {
  const auto pts = x_grid(r(1, 2), 9);
  REQUIRE(pts.size() == 11);
  CHECK(pts.front().X() == r(1, 2));
  CHECK(pts.back().X() == r(1));
  for (std::size_t j = 1; j + 1 < pts.size(); ++j) CHECK(pts[j].X() == r(1, 2) + r(static_cast<long>(j), 20));
}

TEST_CASE("parse_config accepts inline pairs and JSON") {
  const auto c = parse_config("max_n=6, q_list=1/2;2/3");
  CHECK(c.max_n == 6);
  REQUIRE(c.q_list.size() == 2);
  CHECK(c.q_list[1] == r(2, 3));
  CHECK(c.x_grid_size == 9);

  const auto j = parse_config(R"({"max_n": 4, "q_list": ["1/5"], "parallel": true, "float_tol_limit": 0.01})");
  CHECK(j.max_n == 4);
  CHECK(j.parallel);
  CHECK(j.float_tol_limit == doctest::Approx(0.01));

  const auto lines = parse_config("# comment\nx_grid_size = 3\nfloat_tol_derivative=2e-5\n");
  CHECK(lines.x_grid_size == 3);
}

TEST_CASE("parse_config rejects bad input") {
  CHECK_THROWS_AS(parse_config("max_n=0"), DomainError);
  CHECK_THROWS_AS(parse_config("max_n=abc"), DomainError);
  CHECK_THROWS_AS(parse_config("q_list=3/2"), DomainError);
  CHECK_THROWS_AS(parse_config("colour=blue"), DomainError);
  CHECK_THROWS_AS(parse_config("max_n"), DomainError);
  CHECK_THROWS_AS(parse_config("{not json"), DomainError);
}

TEST_CASE("default values") {
  const VerifyConfig c;
  CHECK(c.max_n == 12);
  CHECK(c.q_list.size() == 5);
  CHECK(c.x_grid_size == 9);
  CHECK(c.float_tol_derivative == 1e-5);
  CHECK(c.float_tol_limit == 1e-3);
  CHECK_FALSE(c.parallel);
}

TEST_CASE("a small verification run passes every identity") {
  VerifyConfig c;
  c.max_n = 5;
  c.x_grid_size = 3;
  const auto result = run_verification(c);
  CHECK(result.all_pass());
  CHECK(result.counts().size() == all_identities().size());
  for (const auto& [id, counts] : result.counts()) CHECK(counts.pass > 0);
}

TEST_CASE("parallel and sequential runs produce the same sorted reports") {
  VerifyConfig c;
  c.max_n = 4;
  c.x_grid_size = 2;
  const auto seq = run_verification(c);
  c.parallel = true;
  const auto par = run_verification(c);
  REQUIRE(seq.reports.size() == par.reports.size());
  for (std::size_t i = 0; i < seq.reports.size(); ++i) {
    CHECK(to_json(seq.reports[i]) == to_json(par.reports[i]));
  }
}

TEST_CASE("selected identities only") {
  VerifyConfig c;
  c.max_n = 3;
  const std::vector<IdentityId> only{IdentityId::C5_RATIO};
  const auto result = run_verification(c, only);
  REQUIRE(result.counts().size() == 1);
  CHECK(result.counts().begin()->first == IdentityId::C5_RATIO);
  // The x = 1 endpoint is reported as an expected domain error.
  bool saw_domain_error = false;
  for (const auto& rep : result.reports) saw_domain_error |= rep.parameters.detail == "x=1 domain error" && rep.pass;
  CHECK(saw_domain_error);
}

TEST_CASE("report JSON schema") {
  VerifyConfig c;
  c.max_n = 2;
  c.x_grid_size = 1;
  const std::vector<IdentityId> only{IdentityId::T3_SUM};
  const auto result = run_verification(c, only);
  const auto j = report_json(c, result);
  CHECK(j.contains("config"));
  CHECK(j["config"]["max_n"] == 2);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["pass"] == result.reports.size());
  CHECK(j["results"].size() == result.reports.size());
  CHECK(j["results"][0]["identity_id"] == "T3_SUM");
  CHECK(j["results"][0]["status"] == "pass");

  IdentityReport failing{IdentityId::T3_SUM, {std::nullopt, 2, std::nullopt, "(q=1/2,X=1)", {}}, false, "7/4", "3/2"};
  const auto fj = to_json(failing);
  CHECK(fj["status"] == "fail");
  CHECK(fj["witness"]["left"] == "7/4");
  CHECK(fj["witness"]["right"] == "3/2");
}

TEST_CASE("central_difference approximates the basis slope") {
  // B_{1,1}(x,q) = [x]_q, slope -q^x ln q / (1-q).
  const double q = 0.5;
  const double x = 0.4;
  const double slope = -std::pow(q, x) * std::log(q) / (1 - q);
  CHECK(central_difference(1, 1, q, x, 1e-6) == doctest::Approx(slope).epsilon(1e-8));
}
