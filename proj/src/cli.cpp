#include "qbern/cli.hpp"

#include "qbern/bernstein.hpp"
#include "qbern/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

namespace qbern::cli {

namespace {

struct GlobalOptions {
  std::string format;
  std::string out_path;
  bool parallel = false;
};

/// Usage problems detected after parsing (exit 2).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string seventeen_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string resolve_format(const GlobalOptions& g, std::initializer_list<std::string_view> allowed,
                           std::string_view fallback) {
  const std::string f = g.format.empty() ? std::string(fallback) : g.format;
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
    throw UsageError("--format " + f + " is not supported by this command");
  }
  return f;
}

int emit(const GlobalOptions& g, const std::string& text, std::ostream& out, std::ostream& err) {
  if (g.out_path.empty()) {
    out << text;
    return kSuccess;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << g.out_path << "' for writing\n";
    return kIoError;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing '" << g.out_path << "'\n";
    return kIoError;
  }
  return kSuccess;
}

// ---- eval ----------------------------------------------------------------

struct EvalOptions {
  long k = 0;
  long n = 0;
  std::optional<std::string> q_num, q_den, X_num, X_den;
  std::optional<double> q, x;
};

BigInt parse_integer(const std::string& flag, const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) throw UsageError(flag + " expects an integer, got '" + text + "'");
  return v;
}

int cmd_eval(const EvalOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  if (o.k < 0 || o.n < 0) throw UsageError("--k and --n must be nonnegative");
  const bool exact = o.q_num || o.q_den || o.X_num || o.X_den;
  const bool floating = o.q || o.x;
  if (exact == floating) throw UsageError("give either --q-num/--q-den/--X-num/--X-den or --q/--x");

  std::string value;
  try {
    if (exact) {
      if (!(o.q_num && o.q_den && o.X_num && o.X_den)) throw UsageError("exact mode needs all of --q-num --q-den --X-num --X-den");
      const BigInt qd = parse_integer("--q-den", *o.q_den);
      const BigInt Xd = parse_integer("--X-den", *o.X_den);
      if (qd == 0 || Xd == 0) throw UsageError("denominators must be nonzero");
      const QPoint p(Rational(parse_integer("--q-num", *o.q_num), qd), Rational(parse_integer("--X-num", *o.X_num), Xd));
      value = q_basis(o.k, o.n, p).to_string();
    } else {
      if (!(o.q && o.x)) throw UsageError("float mode needs both --q and --x");
      value = seventeen_digits(q_basis(o.k, o.n, FloatPoint(*o.q, *o.x)));
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const std::string format = resolve_format(g, {"text", "json", "csv"}, "text");
  std::string text;
  if (format == "json") {
    text = nlohmann::json{{"k", o.k}, {"n", o.n}, {"mode", exact ? "exact" : "float"}, {"value", value}}.dump() + "\n";
  } else if (format == "csv") {
    text = "k,n,value\n" + std::to_string(o.k) + "," + std::to_string(o.n) + "," + value + "\n";
  } else {
    text = value + "\n";
  }
  return emit(g, text, out, err);
}

// ---- table ---------------------------------------------------------------

struct TableOptions {
  long n = 0;
  double q = 0.5;
  long samples = 10;
};

int cmd_table(const TableOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  if (o.n < 0) throw UsageError("--n must be nonnegative");
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  if (!(o.q > 0.0 && o.q < 1.0)) throw UsageError("--q must lie in (0, 1)");
  const std::string format = resolve_format(g, {"csv", "json", "text"}, "csv");

  std::vector<std::vector<double>> rows;
  for (long s = 0; s <= o.samples; ++s) {
    const double x = static_cast<double>(s) / static_cast<double>(o.samples);
    const FloatPoint p(o.q, x);
    std::vector<double> row{x};
    for (long k = 0; k <= o.n; ++k) row.push_back(q_basis(k, o.n, p));
    rows.push_back(std::move(row));
  }

  std::string text;
  if (format == "json") {
    nlohmann::json columns = nlohmann::json::array({"x"});
    for (long k = 0; k <= o.n; ++k) columns.push_back("B" + std::to_string(k));
    text = nlohmann::json{{"n", o.n}, {"q", o.q}, {"columns", columns}, {"rows", rows}}.dump() + "\n";
  } else {
    std::ostringstream os;
    os << "x";
    for (long k = 0; k <= o.n; ++k) os << ",B" << k;
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << shortest_decimal(row[c]);
      os << "\n";
    }
    text = os.str();
  }
  return emit(g, text, out, err);
}

// ---- verify --------------------------------------------------------------

struct VerifyOptions {
  std::string config;
  std::string only;
};

std::string read_config_source(const std::string& source) {
  std::ifstream file(source);
  if (file) return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  if (source.find('=') != std::string::npos || source.starts_with('{')) return source;
  throw UsageError("cannot read config file '" + source + "'");
}

int cmd_verify(const VerifyOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const std::string format = resolve_format(g, {"text", "json"}, "text");
  VerifyConfig config;
  try {
    if (!o.config.empty()) config = parse_config(read_config_source(o.config));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (g.parallel) config.parallel = true;

  std::vector<IdentityId> selected;
  if (!o.only.empty()) {
    std::stringstream ss(o.only);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      const auto id = parse_identity(name);
      if (!id) throw UsageError("unknown identity '" + name + "'");
      selected.push_back(*id);
    }
  }

  const VerifyResult result = run_verification(config, selected);

  std::string text;
  if (format == "json") {
    text = report_json(config, result).dump(1) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& [id, c] : result.counts()) {
      os << to_string(id) << " pass=" << c.pass << " fail=" << c.fail << "\n";
    }
    for (const auto& r : result.reports) {
      if (r.pass) continue;
      const auto& p = r.parameters;
      os << "FAIL " << to_string(r.identity);
      if (p.k) os << " k=" << *p.k;
      if (p.n) os << " n=" << *p.n;
      if (p.i) os << " i=" << *p.i;
      os << " point=" << p.point;
      if (!p.detail.empty()) os << " [" << p.detail << "]";
      os << " left=" << r.left << " right=" << r.right << "\n";
    }
    os << "summary pass=" << result.pass_count() << " fail=" << result.fail_count() << "\n";
    text = os.str();
  }
  const int io = emit(g, text, out, err);
  if (io != kSuccess) return io;
  return result.all_pass() ? kSuccess : kIdentityFailure;
}

// ---- approx --------------------------------------------------------------

struct ApproxOptions {
  std::string fn;
  long n = 0;
  double q = 0.5;
  long samples = 100;
};

std::optional<std::function<double(double)>> builtin_function(const std::string& name) {
  if (name == "id") return [](double x) { return x; };
  if (name == "square") return [](double x) { return x * x; };
  if (name == "abs-half") return [](double x) { return std::abs(x - 0.5); };
  if (name == "exp-neg") return [](double x) { return std::exp(-x); };
  return std::nullopt;
}

int cmd_approx(const ApproxOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto f = builtin_function(o.fn);
  if (!f) throw UsageError("unknown function '" + o.fn + "' (choose id, square, abs-half, exp-neg)");
  if (o.n < 0) throw UsageError("--n must be nonnegative");
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  if (!(o.q > 0.0 && o.q < 1.0)) throw UsageError("--q must lie in (0, 1)");
  const std::string format = resolve_format(g, {"text", "csv", "json"}, "text");

  const auto sampled = SampledFunction<double>::sample(o.n, *f);
  struct Row {
    double x, fx, approx, diff;
  };
  std::vector<Row> rows;
  double sup = 0.0;
  for (long s = 0; s <= o.samples; ++s) {
    const double x = static_cast<double>(s) / static_cast<double>(o.samples);
    const double fx = (*f)(x);
    const double b = operator_apply(sampled, FloatPoint(o.q, x));
    rows.push_back({x, fx, b, std::abs(fx - b)});
    sup = std::max(sup, std::abs(fx - b));
  }

  std::ostringstream os;
  if (format == "json") {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& r : rows) jr.push_back({{"x", r.x}, {"f", r.fx}, {"Bnq", r.approx}, {"abs_diff", r.diff}});
    os << nlohmann::json{{"fn", o.fn}, {"n", o.n}, {"q", o.q}, {"rows", jr}, {"sup_norm", sup}}.dump() << "\n";
  } else {
    os << "x,f,Bnq,abs_diff\n";
    for (const auto& r : rows) {
      os << shortest_decimal(r.x) << "," << shortest_decimal(r.fx) << "," << shortest_decimal(r.approx) << ","
         << shortest_decimal(r.diff) << "\n";
    }
    if (format == "text") os << "sup_norm=" << shortest_decimal(sup) << "\n";
  }
  const int io = emit(g, os.str(), out, err);
  if (format == "csv" && io == kSuccess) err << "sup_norm=" << shortest_decimal(sup) << "\n";
  return io;
}

}  // namespace

std::string shortest_decimal(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and floating evaluation of modified q-Bernstein polynomials and their identities", "qbern"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format: text, csv or json");
  app.add_option("--out", g.out_path, "Write output to FILE instead of stdout");
  app.add_flag("--parallel", g.parallel, "Run identity suites in parallel");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one basis polynomial B_{k,n}(x,q)");
  eval_cmd->add_option("--k", eval.k, "Basis index")->required();
  eval_cmd->add_option("--n", eval.n, "Degree")->required();
  eval_cmd->add_option("--q-num", eval.q_num, "Exact q numerator");
  eval_cmd->add_option("--q-den", eval.q_den, "Exact q denominator");
  eval_cmd->add_option("--X-num", eval.X_num, "Exact q^x numerator");
  eval_cmd->add_option("--X-den", eval.X_den, "Exact q^x denominator");
  eval_cmd->add_option("--q", eval.q, "Floating q in (0,1)");
  eval_cmd->add_option("--x", eval.x, "Floating x in [0,1]");

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "Tabulate B_{0,n}..B_{n,n} on an even x grid");
  table_cmd->add_option("--n", table.n, "Degree")->required();
  table_cmd->add_option("--q", table.q, "q in (0,1)")->required();
  table_cmd->add_option("--samples", table.samples, "Number of x intervals M (M+1 rows)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check every identity over a grid of exact points");
  verify_cmd->add_option("--config", verify.config, "Config file, or inline key=value[,key=value...]");
  verify_cmd->add_option("--only", verify.only, "Comma-separated identity ids");

  ApproxOptions approx;
  auto* approx_cmd = app.add_subcommand("approx", "Apply the modified q-Bernstein operator to a built-in function");
  approx_cmd->add_option("--fn", approx.fn, "id, square, abs-half or exp-neg")->required();
  approx_cmd->add_option("--n", approx.n, "Degree")->required();
  approx_cmd->add_option("--q", approx.q, "q in (0,1)")->required();
  approx_cmd->add_option("--samples", approx.samples, "Number of x intervals M (M+1 rows)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval, g, out, err);
    if (*table_cmd) return cmd_table(table, g, out, err);
    if (*verify_cmd) return cmd_verify(verify, g, out, err);
    if (*approx_cmd) return cmd_approx(approx, g, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qbern::cli
