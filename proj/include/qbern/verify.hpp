#pragma once

// Identity suites: each identity is checked over a grid of evaluation points
// and produces one report per parameter tuple.

#include "qbern/qnumbers.hpp"
#include "qbern/rational.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbern {

enum class IdentityId {
  T1_ORACLE,
  T2_RECURRENCE,
  T2_DERIVATIVE,
  T3_SYMMETRY,
  T3_SUM,
  EQ7_IDENTITY_FN,
  T4_REDUCTION,
  C5_RATIO,
  T6_MONOMIAL,
  T7_MOMENT,
  EQ20_BERNOULLI,
  EQ21_22_QSTIRLING,
  EQ23_POWER,
  T8_EQUALITY,
  QLIMIT,
};

const std::array<IdentityId, 15>& all_identities();
std::string_view to_string(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

struct VerifyConfig {
  long max_n = 12;
  std::vector<Rational> q_list{Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(3, 4), Rational(9, 10)};
  long x_grid_size = 9;
  double float_tol_derivative = 1e-5;
  double float_tol_limit = 1e-3;
  bool parallel = false;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Overrides fields of `base` from a JSON object or from "key=value" pairs
/// separated by commas or newlines. q_list takes rationals separated by ';'
/// (or a JSON array of strings).
VerifyConfig parse_config(std::string_view text, VerifyConfig base = {});

nlohmann::json to_json(const VerifyConfig& config);

/// X = q, the G interior values q + j(1-q)/(G+1), and X = 1, ascending.
std::vector<QPoint> x_grid(const Rational& q, long interior_points);

struct IdentityParameters {
  std::optional<long> k;
  std::optional<long> n;
  std::optional<long> i;
  std::string point;
  std::string detail;
};

struct IdentityReport {
  IdentityId identity;
  IdentityParameters parameters;
  bool pass = false;
  // Exact rational strings; floating values are written as the exact rational of the double.
  std::string left;
  std::string right;
};

nlohmann::json to_json(const IdentityReport& report);

struct IdentityCounts {
  std::size_t pass = 0;
  std::size_t fail = 0;
};

struct VerifyResult {
  std::vector<IdentityReport> reports;

  std::size_t pass_count() const;
  std::size_t fail_count() const;
  bool all_pass() const { return fail_count() == 0; }
  std::map<IdentityId, IdentityCounts> counts() const;
};

/// Runs the selected identities (all when `selected` is empty). Reports are
/// sorted by identity then parameters, so the result does not depend on
/// `config.parallel`.
VerifyResult run_verification(const VerifyConfig& config, std::span<const IdentityId> selected = {});

/// {"config": ..., "results": [...], "summary": {"pass": N, "fail": M}}.
nlohmann::json report_json(const VerifyConfig& config, const VerifyResult& result);

/// Central difference (f(x+h) - f(x-h)) / 2h of B_{k,n}(., q).
double central_difference(long k, long n, double q, double x, double h);

}  // namespace qbern
