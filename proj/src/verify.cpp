#include "qbern/verify.hpp"

#include "qbern/bernstein.hpp"
#include "qbern/stirling_bernoulli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>
#include <tuple>

namespace qbern {

namespace {

constexpr std::array<IdentityId, 15> kIdentities{
    IdentityId::T1_ORACLE,      IdentityId::T2_RECURRENCE,     IdentityId::T2_DERIVATIVE, IdentityId::T3_SYMMETRY,
    IdentityId::T3_SUM,         IdentityId::EQ7_IDENTITY_FN,   IdentityId::T4_REDUCTION,  IdentityId::C5_RATIO,
    IdentityId::T6_MONOMIAL,    IdentityId::T7_MOMENT,         IdentityId::EQ20_BERNOULLI,
    IdentityId::EQ21_22_QSTIRLING, IdentityId::EQ23_POWER,     IdentityId::T8_EQUALITY,   IdentityId::QLIMIT,
};

constexpr std::array<std::string_view, 15> kNames{
    "T1_ORACLE", "T2_RECURRENCE", "T2_DERIVATIVE", "T3_SYMMETRY", "T3_SUM",
    "EQ7_IDENTITY_FN", "T4_REDUCTION", "C5_RATIO", "T6_MONOMIAL", "T7_MOMENT",
    "EQ20_BERNOULLI", "EQ21_22_QSTIRLING", "EQ23_POWER", "T8_EQUALITY", "QLIMIT",
};

// Floating-path grids.
constexpr std::array<double, 3> kDerivativeQs{0.3, 0.5, 0.9};
constexpr double kDerivativeStep = 1e-6;
constexpr long kFloatMaxN = 8;
constexpr std::array<double, 6> kLimitQs{1 - 1e-1, 1 - 1e-2, 1 - 1e-3, 1 - 1e-4, 1 - 1e-5, 1 - 1e-6};
constexpr std::size_t kLimitCheckIndex = 3;  // q = 1 - 1e-4

std::string float_string(double v) { return Rational::from_double(v).to_string(); }

class Recorder {
public:
  Recorder(IdentityId id, std::vector<IdentityReport>& out) : id_(id), out_(out) {}

  void exact(IdentityParameters params, const Rational& left, const Rational& right) {
    add(std::move(params), left == right, left.to_string(), right.to_string());
  }

  void floating(IdentityParameters params, bool pass, double left, double right) {
    add(std::move(params), pass, float_string(left), float_string(right));
  }

  void add(IdentityParameters params, bool pass, std::string left, std::string right) {
    out_.push_back({id_, std::move(params), pass, std::move(left), std::move(right)});
  }

private:
  IdentityId id_;
  std::vector<IdentityReport>& out_;
};

IdentityParameters kn(long k, long n, const QPoint& p) { return {k, n, std::nullopt, p.to_string(), {}}; }
IdentityParameters in(long i, long n, const QPoint& p) { return {std::nullopt, n, i, p.to_string(), {}}; }

// One unit of work: an identity at one q (q_index >= 0) or its q-independent part (q_index = -1).
struct Task {
  IdentityId id;
  long q_index;
};

void check_oracle(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts)
    for (long n = 0; n <= c.max_n; ++n)
      for (long k = 0; k <= n; ++k) r.exact(kn(k, n, p), q_basis(k, n, p), q_basis_oracle(k, n, p));
}

void check_recurrence(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts)
    for (long n = 1; n <= c.max_n; ++n)
      for (long k = 0; k <= n; ++k) r.exact(kn(k, n, p), additive_recurrence(k, n, p), q_basis(k, n, p));
}

void check_derivative(const VerifyConfig& c, Recorder& r) {
  const long max_n = std::min(c.max_n, kFloatMaxN);
  for (double q : kDerivativeQs) {
    for (int xi = 1; xi <= 9; ++xi) {
      const double x = xi / 10.0;
      const FloatPoint fp(q, x);
      for (long n = 1; n <= max_n; ++n) {
        for (long k = 0; k <= n; ++k) {
          const double d = derivative(k, n, fp);
          const double fd = central_difference(k, n, q, x, kDerivativeStep);
          const bool pass = std::abs(d - fd) <= c.float_tol_derivative * std::max(std::abs(d), 1.0);
          r.floating({k, n, std::nullopt, fp.to_string(), "h=1e-6"}, pass, d, fd);
        }
      }
    }
  }
}

void check_symmetry(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    const QPoint mirrored = reflect(p);
    for (long n = 0; n <= c.max_n; ++n)
      for (long k = 0; k <= n; ++k) r.exact(kn(k, n, p), q_basis(n - k, n, mirrored), q_basis(k, n, p));
  }
}

void check_sum(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    for (long n = 0; n <= c.max_n; ++n) {
      Rational literal(0);
      for (long k = 0; k <= n; ++k) literal += q_basis(k, n, p);
      IdentityParameters params{std::nullopt, n, std::nullopt, p.to_string(), "literal=closed_form"};
      r.exact(params, literal, sum_basis(n, p));
      params.detail = "literal=(a+b)^n";
      r.exact(params, literal, pow(q_number(p) + q_complement(p), n));
    }
  }
}

void check_identity_fn(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    const Rational a = q_number(p);
    const Rational factor = 1 + (1 - p.q()) * a * q_complement(p);
    for (long n = 1; n <= c.max_n; ++n) {
      const auto f = SampledFunction<Rational>::sample(n, [](const Rational& t) { return t; });
      r.exact({std::nullopt, n, std::nullopt, p.to_string(), {}}, operator_apply(f, p), a * pow(factor, n - 1));
    }
  }
}

void check_reduction(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    const Rational factor = 1 + (1 - p.q()) * q_number(p) * q_complement(p);
    for (long n = 1; n <= c.max_n; ++n)
      for (long k = 0; k <= n; ++k) r.exact(kn(k, n, p), degree_reduction(k, n, p), q_basis(k, n - 1, p) * factor);
  }
}

void check_ratio(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    for (long n = 1; n <= c.max_n; ++n) {
      for (long k = 1; k <= n; ++k) {
        if (p.X() == p.q()) {
          auto params = kn(k, n, p);
          params.detail = "x=1 domain error";
          try {
            const Rational v = ratio_identity(k, n, p);
            r.add(params, false, v.to_string(), "domain error");
          } catch (const DomainError&) {
            r.add(params, true, "domain error", "domain error");
          }
          continue;
        }
        r.exact(kn(k, n, p), ratio_identity(k, n, p), q_basis(k, n, p));
      }
    }
  }
}

void check_monomial(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts)
    for (long n = 0; n <= c.max_n; ++n)
      for (long k = 0; k <= n; ++k) r.exact(kn(k, n, p), monomial_expansion(k, n, p), q_basis(k, n, p));
}

void check_moment(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    const Rational a = q_number(p);
    for (long n = 1; n <= c.max_n; ++n)
      for (long i = 1; i <= n; ++i) r.exact(in(i, n, p), moment_identity(i, n, p), pow(a, i));
  }
}

void check_bernoulli(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  std::vector<BernoulliOrderTable> tables;
  for (long k = 0; k <= c.max_n; ++k) tables.push_back(bernoulli_order(k, c.max_n));
  for (const auto& p : pts)
    for (long l = 0; l <= c.max_n; ++l)
      for (long k = 0; k <= c.max_n; ++k)
        r.exact({k, l, std::nullopt, p.to_string(), {}}, qbern_via_bernoulli(tables[static_cast<std::size_t>(k)], l, p),
                q_basis(k, l, p));
}

// Stirling numbers feed the Bernoulli decomposition: recurrence, difference and
// series paths must agree, and rows must sum to the Bell numbers.
void check_stirling(const VerifyConfig& c, Recorder& r) {
  const auto table = stirling2_recurrence(c.max_n);
  for (long n = 0; n <= c.max_n; ++n) {
    for (long k = 0; k <= n; ++k) {
      const Rational diff = stirling2_difference(n, k);
      r.exact({k, n, std::nullopt, "-", "stirling recurrence=difference"}, table.at(n, k), diff);
      r.exact({k, n, std::nullopt, "-", "stirling difference=series"}, diff, stirling2_series_oracle(n, k));
    }
  }
  const auto bell = bell_numbers(std::min(c.max_n, 10L));
  for (long n = 0; n < static_cast<long>(bell.size()); ++n) {
    Rational row(0);
    for (long k = 0; k <= n; ++k) row += table.at(n, k);
    r.exact({std::nullopt, n, std::nullopt, "-", "stirling row sum=bell"}, row, Rational(bell[static_cast<std::size_t>(n)]));
  }
}

void check_q_stirling(const VerifyConfig& c, const Rational& q, Recorder& r) {
  for (long n = 0; n <= c.max_n; ++n) {
    for (long k = 0; k <= n; ++k) {
      const Rational sum_form = q_stirling(n, k, q);
      IdentityParameters params{k, n, std::nullopt, "q=" + q.to_string(), "sum=series"};
      r.exact(params, sum_form, q_stirling_series_oracle(n, k, q));

      // Sum form against the q-difference operator applied to m -> [m]_q^n.
      std::vector<Rational> values;
      for (long m = 0; m <= k; ++m) values.push_back(pow(q_int(m, q), n));
      const Rational via_operator =
          q_difference_at_zero<Rational>(values, k, q) / (pow(q, k * (k - 1) / 2) * q_factorial(k, q));
      params.detail = "sum=q-difference";
      r.exact(params, sum_form, via_operator);
    }
  }
}

void check_q_stirling_limit(const VerifyConfig& c, Recorder& r) {
  const long max_n = std::min(c.max_n, kFloatMaxN);
  const double q = kLimitQs[kLimitCheckIndex];
  const auto table = stirling2_recurrence(max_n);
  for (long n = 0; n <= max_n; ++n) {
    for (long k = 0; k <= n; ++k) {
      const double classical = table.at(n, k).to_double();
      const double value = q_stirling(n, k, q);
      const bool pass = std::abs(value - classical) <= c.float_tol_limit * std::max(std::abs(classical), 1.0);
      r.floating({k, n, std::nullopt, "q=" + float_string(q), "q->1 limit"}, pass, value, classical);
    }
  }
}

void check_power(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    const Rational a = q_number(p);
    for (long i = 0; i <= c.max_n; ++i)
      r.exact({std::nullopt, std::nullopt, i, p.to_string(), {}}, q_power_expansion(i, p), pow(a, i));
  }
}

void check_moment_power(const VerifyConfig& c, std::span<const QPoint> pts, Recorder& r) {
  for (const auto& p : pts) {
    for (long n = 1; n <= c.max_n; ++n) {
      for (long i = 1; i <= n; ++i) {
        const auto [moment, power] = moment_power_pair(i, n, p);
        r.exact(in(i, n, p), moment, power);
      }
    }
  }
}

void check_limit(const VerifyConfig& c, Recorder& r) {
  const long max_n = std::min(c.max_n, kFloatMaxN);
  for (int xi = 0; xi <= 10; ++xi) {
    const double x = xi / 10.0;
    for (long n = 0; n <= max_n; ++n) {
      for (long k = 0; k <= n; ++k) {
        const auto diffs = classical_limit_check(k, n, x, kLimitQs);
        const bool monotone = std::is_sorted(diffs.rbegin(), diffs.rend());
        const double at_check = diffs[kLimitCheckIndex];
        const bool pass = monotone && at_check < c.float_tol_limit;
        r.floating({k, n, std::nullopt, "x=" + float_string(x), monotone ? "q=1-1e-4" : "not monotone in q"}, pass,
                   at_check, c.float_tol_limit);
      }
    }
  }
}

std::vector<IdentityReport> run_task(const VerifyConfig& c, const Task& task) {
  std::vector<IdentityReport> out;
  Recorder r(task.id, out);
  if (task.q_index < 0) {
    switch (task.id) {
      case IdentityId::T2_DERIVATIVE: check_derivative(c, r); break;
      case IdentityId::EQ20_BERNOULLI: check_stirling(c, r); break;
      case IdentityId::EQ21_22_QSTIRLING: check_q_stirling_limit(c, r); break;
      case IdentityId::QLIMIT: check_limit(c, r); break;
      default: break;
    }
    return out;
  }
  const Rational& q = c.q_list[static_cast<std::size_t>(task.q_index)];
  const auto pts = x_grid(q, c.x_grid_size);
  switch (task.id) {
    case IdentityId::T1_ORACLE: check_oracle(c, pts, r); break;
    case IdentityId::T2_RECURRENCE: check_recurrence(c, pts, r); break;
    case IdentityId::T3_SYMMETRY: check_symmetry(c, pts, r); break;
    case IdentityId::T3_SUM: check_sum(c, pts, r); break;
    case IdentityId::EQ7_IDENTITY_FN: check_identity_fn(c, pts, r); break;
    case IdentityId::T4_REDUCTION: check_reduction(c, pts, r); break;
    case IdentityId::C5_RATIO: check_ratio(c, pts, r); break;
    case IdentityId::T6_MONOMIAL: check_monomial(c, pts, r); break;
    case IdentityId::T7_MOMENT: check_moment(c, pts, r); break;
    case IdentityId::EQ20_BERNOULLI: check_bernoulli(c, pts, r); break;
    case IdentityId::EQ21_22_QSTIRLING: check_q_stirling(c, q, r); break;
    case IdentityId::EQ23_POWER: check_power(c, pts, r); break;
    case IdentityId::T8_EQUALITY: check_moment_power(c, pts, r); break;
    default: break;
  }
  return out;
}

bool is_point_free(IdentityId id) { return id == IdentityId::T2_DERIVATIVE || id == IdentityId::QLIMIT; }

bool has_point_free_part(IdentityId id) {
  return is_point_free(id) || id == IdentityId::EQ20_BERNOULLI || id == IdentityId::EQ21_22_QSTIRLING;
}

auto sort_key(const IdentityReport& r) {
  const auto& p = r.parameters;
  return std::make_tuple(static_cast<int>(r.identity), p.point, p.k.value_or(-1), p.n.value_or(-1),
                         p.i.value_or(-1), p.detail);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

long parse_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    throw DomainError("config: " + key + " expects an integer, got '" + value + "'");
  }
  if (used != value.size()) throw DomainError("config: " + key + " expects an integer, got '" + value + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw DomainError("config: " + key + " expects a number, got '" + value + "'");
  }
  if (used != value.size()) throw DomainError("config: " + key + " expects a number, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw DomainError("config: " + key + " expects a boolean, got '" + value + "'");
}

void apply_field(VerifyConfig& c, const std::string& key, const std::string& value) {
  if (key == "max_n") {
    c.max_n = parse_long(key, value);
  } else if (key == "x_grid_size") {
    c.x_grid_size = parse_long(key, value);
  } else if (key == "float_tol_derivative") {
    c.float_tol_derivative = parse_double(key, value);
  } else if (key == "float_tol_limit") {
    c.float_tol_limit = parse_double(key, value);
  } else if (key == "parallel") {
    c.parallel = parse_bool(key, value);
  } else if (key == "q_list") {
    c.q_list.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ';')) {
      item = trim(item);
      if (!item.empty()) c.q_list.push_back(Rational::parse(item));
    }
  } else {
    throw DomainError("config: unknown key '" + key + "'");
  }
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : ";") + json_scalar(e);
    return joined;
  }
  return v.dump();
}

}  // namespace

const std::array<IdentityId, 15>& all_identities() { return kIdentities; }

std::string_view to_string(IdentityId id) { return kNames.at(static_cast<std::size_t>(id)); }

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return kIdentities[i];
  return std::nullopt;
}

void VerifyConfig::validate() const {
  if (max_n < 1) throw DomainError("config: max_n must be >= 1");
  if (x_grid_size < 1) throw DomainError("config: x_grid_size must be >= 1");
  if (q_list.empty()) throw DomainError("config: q_list must not be empty");
  for (const auto& q : q_list)
    if (q.sign() <= 0 || q >= 1) throw DomainError("config: q = " + q.to_string() + " is outside (0, 1)");
  if (!(float_tol_derivative > 0) || !(float_tol_limit > 0)) throw DomainError("config: tolerances must be positive");
}

VerifyConfig parse_config(std::string_view text, VerifyConfig base) {
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("config: malformed JSON: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) apply_field(base, key, json_scalar(value));
  } else {
    std::string normalized(body);
    std::replace(normalized.begin(), normalized.end(), '\n', ',');
    std::stringstream ss(normalized);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty() || item.front() == '#') continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("config: expected key=value, got '" + item + "'");
      apply_field(base, trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
  }
  base.validate();
  return base;
}

nlohmann::json to_json(const VerifyConfig& c) {
  nlohmann::json qs = nlohmann::json::array();
  for (const auto& q : c.q_list) qs.push_back(q.to_string());
  return {{"max_n", c.max_n},
          {"q_list", qs},
          {"x_grid_size", c.x_grid_size},
          {"float_tol_derivative", c.float_tol_derivative},
          {"float_tol_limit", c.float_tol_limit},
          {"parallel", c.parallel}};
}

std::vector<QPoint> x_grid(const Rational& q, long interior_points) {
  if (interior_points < 0) throw DomainError("negative grid size");
  std::vector<QPoint> pts;
  pts.emplace_back(q, q);
  const Rational step = (1 - q) / Rational(interior_points + 1);
  for (long j = 1; j <= interior_points; ++j) pts.emplace_back(q, q + Rational(j) * step);
  pts.emplace_back(q, Rational(1));
  return pts;
}

nlohmann::json to_json(const IdentityReport& report) {
  nlohmann::json params = nlohmann::json::object();
  const auto& p = report.parameters;
  if (p.k) params["k"] = *p.k;
  if (p.n) params["n"] = *p.n;
  if (p.i) params["i"] = *p.i;
  params["point"] = p.point;
  if (!p.detail.empty()) params["detail"] = p.detail;
  nlohmann::json j{{"identity_id", std::string(to_string(report.identity))},
                   {"parameters", params},
                   {"status", report.pass ? "pass" : "fail"}};
  if (!report.pass) j["witness"] = {{"left", report.left}, {"right", report.right}};
  return j;
}

std::size_t VerifyResult::pass_count() const {
  return static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass; }));
}

std::size_t VerifyResult::fail_count() const { return reports.size() - pass_count(); }

std::map<IdentityId, IdentityCounts> VerifyResult::counts() const {
  std::map<IdentityId, IdentityCounts> m;
  for (const auto& r : reports) {
    auto& c = m[r.identity];
    (r.pass ? c.pass : c.fail) += 1;
  }
  return m;
}

VerifyResult run_verification(const VerifyConfig& config, std::span<const IdentityId> selected) {
  config.validate();
  const std::span<const IdentityId> ids = selected.empty() ? std::span<const IdentityId>(kIdentities) : selected;

  std::vector<Task> tasks;
  for (IdentityId id : ids) {
    if (has_point_free_part(id)) tasks.push_back({id, -1});
    if (is_point_free(id)) continue;
    for (std::size_t qi = 0; qi < config.q_list.size(); ++qi) tasks.push_back({id, static_cast<long>(qi)});
  }

  std::vector<std::vector<IdentityReport>> partial(tasks.size());
  if (config.parallel) {
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(tasks.size())));
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) partial[t] = run_task(config, tasks[t]);
      });
    }
  } else {
    for (std::size_t t = 0; t < tasks.size(); ++t) partial[t] = run_task(config, tasks[t]);
  }

  VerifyResult result;
  for (auto& part : partial)
    for (auto& r : part) result.reports.push_back(std::move(r));
  std::stable_sort(result.reports.begin(), result.reports.end(),
                   [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
  return result;
}

nlohmann::json report_json(const VerifyConfig& config, const VerifyResult& result) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : result.reports) results.push_back(to_json(r));
  return {{"config", to_json(config)},
          {"results", std::move(results)},
          {"summary", {{"pass", result.pass_count()}, {"fail", result.fail_count()}}}};
}

double central_difference(long k, long n, double q, double x, double h) {
  return (q_basis(k, n, FloatPoint(q, x + h)) - q_basis(k, n, FloatPoint(q, x - h))) / (2.0 * h);
}

}  // namespace qbern
