#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "stieltjes/analysis.hpp"
#include "stieltjes/densities.hpp"
#include "stieltjes/phi.hpp"
#include "stieltjes/quadrature.hpp"

namespace phitool {
namespace {

using nlohmann::json;
using namespace stieltjes;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV with a header row and LF line endings.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string csv() const {
    std::ostringstream s;
    write_row(s, columns_);
    for (const auto& r : rows_) write_row(s, r);
    return s.str();
  }

 private:
  static void write_row(std::ostream& s, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << r[i];
    s << '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

struct Output {
  std::string format = "csv";
  std::string path;
};

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::filesystem::path target(o.path);
  if (target.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      target = std::filesystem::path(dir) / target;
    }
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + target.string());
  file << text;
}

std::vector<double> sorted_unique(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// ---- eval ---------------------------------------------------------------

struct EvalConfig {
  std::vector<double> xs;
  std::string method = "direct";
  double tolerance = 1e-10;
};

int cmd_eval(const EvalConfig& c, const Output& o, std::ostream& out) {
  if (c.xs.empty()) throw ConfigError("eval: give at least one --x");
  for (double x : c.xs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("eval: x must be finite and > 0");
  }
  if (c.tolerance < quad::kMinTargetError) throw ConfigError("eval: --tol must be >= 1e-13");
  const auto xs = sorted_unique(c.xs);
  bool budget_ok = true;

  json rows = json::array();
  std::string text;
  if (c.method == "all") {
    Table t({"x", "phi_direct", "log_phi_direct", "phi_series", "log_phi_series", "phi_stieltjes",
             "log_phi_stieltjes", "error_bound_stieltjes", "residual_series",
             "residual_stieltjes"});
    for (double x : xs) {
      const auto d = phi::phi_direct(x);
      const auto s = phi::log_phi_series(x);
      const auto q = phi::phi_stieltjes(x, c.tolerance);
      budget_ok = budget_ok && q.budget_met;
      const double res_series = std::abs(s.log_phi - d.log_phi);
      const double res_stieltjes = std::abs(q.phi - d.phi);
      t.add({num(x), num(d.phi), num(d.log_phi), num(s.phi), num(s.log_phi), num(q.phi),
             num(q.log_phi), num(q.error_bound), num(res_series), num(res_stieltjes)});
      rows.push_back({{"x", x},
                      {"phi_direct", json_number(d.phi)},
                      {"log_phi_direct", json_number(d.log_phi)},
                      {"phi_series", json_number(s.phi)},
                      {"log_phi_series", json_number(s.log_phi)},
                      {"phi_stieltjes", json_number(q.phi)},
                      {"log_phi_stieltjes", json_number(q.log_phi)},
                      {"error_bound_stieltjes", json_number(q.error_bound)},
                      {"residual_series", json_number(res_series)},
                      {"residual_stieltjes", json_number(res_stieltjes)}});
    }
    text = t.csv();
  } else {
    Table t({"x", "method", "phi", "log_phi", "error_bound", "budget_met"});
    for (double x : xs) {
      phi::PhiValue v;
      if (c.method == "direct") {
        v = phi::phi_direct(x);
      } else if (c.method == "series") {
        v = phi::log_phi_series(x);
      } else if (c.method == "stieltjes") {
        v = phi::phi_stieltjes(x, c.tolerance);
      } else {
        throw ConfigError("eval: unknown method " + c.method);
      }
      budget_ok = budget_ok && v.budget_met;
      t.add({num(x), c.method, num(v.phi), num(v.log_phi), num(v.error_bound),
             v.budget_met ? "true" : "false"});
      rows.push_back({{"x", x},
                      {"method", c.method},
                      {"phi", json_number(v.phi)},
                      {"log_phi", json_number(v.log_phi)},
                      {"error_bound", json_number(v.error_bound)},
                      {"budget_met", v.budget_met}});
    }
    text = t.csv();
  }
  if (o.format == "json") {
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "eval"},
                {"method", c.method},
                {"tolerance", c.tolerance},
                {"rows", rows}};
    text = doc.dump(2) + "\n";
  }
  emit(o, text, out);
  return budget_ok ? kExitOk : kExitBudget;
}

// ---- density ------------------------------------------------------------

struct DensityConfig {
  std::string which = "h";
  double from = 0.0;
  double to = 1.0;
  double step = 0.1;
};

int cmd_density(const DensityConfig& c, const Output& o, std::ostream& out) {
  if (!(c.from >= 0.0) || !(c.to >= c.from) || !std::isfinite(c.to)) {
    throw ConfigError("density: need 0 <= from <= to");
  }
  if (!(c.step > 0.0)) throw ConfigError("density: --step must be > 0");
  if (c.which != "phi" && c.which != "h") throw ConfigError("density: --which is phi or h");

  const bool is_h = c.which == "h";
  const auto count = static_cast<long long>(std::floor((c.to - c.from) / c.step + 1e-9)) + 1;
  Table t(is_h ? std::vector<std::string>{"s", "value", "log_value"}
               : std::vector<std::string>{"s", "value"});
  json rows = json::array();
  for (long long i = 0; i < count; ++i) {
    double s = c.from + static_cast<double>(i) * c.step;
    // Land exactly on integers that the grid is meant to hit.
    const double nearest = std::nearbyint(s);
    if (std::abs(s - nearest) <= 1e-9 * std::max(1.0, std::abs(s))) s = nearest;
    if (is_h) {
      const auto p = density::h_density(s);
      t.add({num(s), num(p.value), num(p.log_value)});
      rows.push_back({{"s", s}, {"value", p.value}, {"log_value", json_number(p.log_value)}});
    } else {
      const double v = density::phi_density(s);
      t.add({num(s), num(v)});
      rows.push_back({{"s", s}, {"value", v}});
    }
  }
  std::string text = t.csv();
  if (o.format == "json") {
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "density"},
                {"which", c.which},
                {"rows", rows}};
    text = doc.dump(2) + "\n";
  }
  emit(o, text, out);
  return kExitOk;
}

// ---- verify -------------------------------------------------------------

struct VerifyConfig {
  std::string suite = "all";
  int order = -1;
  std::size_t count = 10000;
  std::uint64_t seed = 7;
  double xmax = 20.0;
  std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
};

struct Tally {
  int pass = 0;
  int fail = 0;
  int inconclusive = 0;

  void add(analysis::Verdict v) {
    if (v == analysis::Verdict::kPass) ++pass;
    if (v == analysis::Verdict::kFail) ++fail;
    if (v == analysis::Verdict::kInconclusive) ++inconclusive;
  }
};

analysis::Verdict overall(const analysis::MonotonicityReport& r) {
  if (r.count(analysis::Verdict::kFail) > 0) return analysis::Verdict::kFail;
  if (r.count(analysis::Verdict::kInconclusive) > 0) return analysis::Verdict::kInconclusive;
  return analysis::Verdict::kPass;
}

json report_json(const std::string& name, const analysis::MonotonicityReport& r) {
  json orders = json::array();
  for (std::size_t k = 0; k < r.orders.size(); ++k) {
    json points = json::array();
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
      points.push_back({{"x", r.grid[i]},
                        {"margin", json_number(r.margins[k][i])},
                        {"noise_floor", json_number(r.noise_floors[k][i])},
                        {"verdict", analysis::verdict_name(r.verdicts[k][i])}});
    }
    orders.push_back({{"order", r.orders[k]}, {"points", points}});
  }
  return {{"name", name},
          {"verdict", analysis::verdict_name(overall(r))},
          {"method", analysis::method_name(r.method)},
          {"orders", orders}};
}

json pick_json(const std::string& name, const analysis::PickReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"re", v.z.real()}, {"im", v.z.imag()}, {"im_value", v.value.imag()}});
  }
  return {{"name", name},
          {"verdict", r.passed() ? "pass" : "fail"},
          {"samples", r.samples},
          {"max_im", json_number(r.max_im)},
          {"axis_points", r.axis_points},
          {"negative_on_axis", r.negative_on_axis},
          {"violations", violations}};
}

int cmd_verify(const VerifyConfig& c, const Output& o, std::ostream& out) {
  static const std::vector<std::string> suites = {"cm", "lcm", "pick", "identity", "corpus", "all"};
  if (std::find(suites.begin(), suites.end(), c.suite) == suites.end()) {
    throw ConfigError("verify: unknown suite " + c.suite);
  }
  if (c.order > analysis::kMaxFiniteDifferenceOrder) {
    throw ConfigError("verify: --order is capped at 8 for finite differences");
  }
  if (c.order == 0 || c.order < -1) throw ConfigError("verify: --order must be >= 1");
  if (c.count == 0) throw ConfigError("verify: --count must be >= 1");
  if (!(c.xmax >= 0.0) || !std::isfinite(c.xmax)) throw ConfigError("verify: --xmax must be >= 0");
  const auto grid = sorted_unique(c.grid);
  if (grid.empty() || !(grid.front() > 0.0)) throw ConfigError("verify: grid must be > 0");

  const bool all = c.suite == "all";
  const analysis::RealSampler phi_real = [](double x) { return phi::phi_direct(x).phi; };
  const analysis::ComplexSampler phi_cut = [](const CutPlanePoint& z) {
    return phi::phi_complex(z).phi;
  };
  const analysis::ComplexSampler log_phi_cut = [](const CutPlanePoint& z) {
    return phi::phi_complex(z).log_phi;
  };

  json checks = json::array();
  Tally tally;
  auto record = [&](json check) {
    const std::string v = check["verdict"];
    tally.add(v == "pass" ? analysis::Verdict::kPass
              : v == "fail" ? analysis::Verdict::kFail
                            : analysis::Verdict::kInconclusive);
    checks.push_back(std::move(check));
  };

  if (all || c.suite == "cm") {
    const int order = c.order > 0 ? c.order : 6;
    record(report_json("cm_phi_finite_difference", analysis::check_cm(phi_real, grid, order)));
    record(report_json("cm_phi_representation",
                       analysis::check_cm_phi_representation(grid, std::max(order, 12))));
    for (double alpha : {1.0 / 3.0, 0.5, 2.7}) {
      auto j = report_json("power_cm_phi", analysis::check_power_cm(phi_real, alpha, grid,
                                                                    std::min(order, 5)));
      j["alpha"] = alpha;
      record(std::move(j));
    }
  }
  if (all || c.suite == "lcm") {
    const int order = c.order > 0 ? c.order : 5;
    record(report_json("lcm_phi", analysis::check_lcm(phi_real, grid, order)));
  }
  if (all || c.suite == "pick") {
    const analysis::PickRegion region;
    record(pick_json("pick_phi", analysis::pick_sample(phi_cut, c.count, region, c.seed)));
    auto log_report = analysis::pick_sample(log_phi_cut, c.count, region, c.seed);
    auto j = pick_json("pick_log_phi", log_report);
    // Im log Phi must also stay above -pi.
    double min_im = 0.0;
    std::mt19937_64 replay(c.seed);
    std::uniform_real_distribution<double> re(region.re_min, region.re_max);
    std::uniform_real_distribution<double> log_im(std::log(region.im_min),
                                                  std::log(region.im_max));
    for (std::size_t i = 0; i < c.count; ++i) {
      const double a = re(replay);
      const double b = std::exp(log_im(replay));
      min_im = std::min(min_im, phi::phi_complex(CutPlanePoint(a, b)).log_phi.imag());
    }
    j["min_im"] = min_im;
    if (!(min_im > -kPi)) j["verdict"] = "fail";
    record(std::move(j));
  }
  if (all || c.suite == "identity") {
    double max_residual = 0.0;
    int points = 0;
    for (double x = 0.0; x <= c.xmax + 1e-12; x += 0.25) {
      max_residual = std::max(max_residual, std::abs(phi::log_gamma_identity_check(x).residual));
      ++points;
    }
    record({{"name", "log_gamma_identity"},
            {"verdict", max_residual <= 1e-10 ? "pass" : "fail"},
            {"points", points},
            {"xmax", c.xmax},
            {"max_residual", max_residual},
            {"tolerance", 1e-10}});
  }
  if (all || c.suite == "corpus") {
    const std::size_t count = c.suite == "corpus" ? c.count : std::min<std::size_t>(c.count, 1000);
    for (const auto& m : analysis::remark_corpus()) {
      auto j = pick_json("corpus_pick_" + m.name, analysis::pick_sample(m.f, count, {}, c.seed));
      j["formula"] = m.formula;
      record(std::move(j));
      const auto lcm = analysis::check_lcm(analysis::on_real_axis(m.f), grid, 5);
      auto l = report_json("corpus_lcm_" + m.name, lcm);
      l["formula"] = m.formula;
      record(std::move(l));
    }
  }

  json doc = {{"schema_version", kSchemaVersion},
              {"command", "verify"},
              {"suite", c.suite},
              {"seed", c.seed},
              {"checks", checks},
              {"summary",
               {{"pass", tally.pass}, {"fail", tally.fail}, {"inconclusive", tally.inconclusive}}}};
  std::string text;
  if (o.format == "csv") {
    Table t({"name", "verdict"});
    for (const auto& ch : checks) {
      std::string name = ch["name"];
      if (ch.contains("alpha")) name += "_alpha_" + num(ch["alpha"].get<double>());
      t.add({name, ch["verdict"].get<std::string>()});
    }
    text = t.csv();
  } else {
    text = doc.dump(2) + "\n";
  }
  emit(o, text, out);
  return tally.fail == 0 ? kExitOk : kExitVerifyFailed;
}

// ---- invert -------------------------------------------------------------

struct InvertConfig {
  std::vector<double> xs;
  std::vector<double> ys;
  bool strict = false;
};

int cmd_invert(const InvertConfig& c, const Output& o, std::ostream& out) {
  if (c.xs.empty()) throw ConfigError("invert: give at least one --x");
  for (double x : c.xs) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ConfigError("invert: x must be finite and >= 0");
  }
  const auto ys = c.ys.empty() ? analysis::default_y_sequence() : c.ys;
  if (ys.size() < 3) throw ConfigError("invert: need at least three y values");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ys[i] > 0.0) || (i > 0 && !(ys[i] < ys[i - 1]))) {
      throw ConfigError("invert: y values must be positive and strictly decreasing");
    }
  }
  const analysis::ComplexSampler phi_cut = [](const CutPlanePoint& z) {
    return phi::phi_complex(z).phi;
  };
  Table t({"x", "extrapolated", "closed_form_h", "abs_diff", "error_estimate", "unstable"});
  json rows = json::array();
  bool any_unstable = false;
  for (double x : sorted_unique(c.xs)) {
    const auto est = analysis::stieltjes_invert(phi_cut, x, ys);
    const double h = density::h_density(x).value;
    const double diff = std::abs(est.extrapolated - h);
    any_unstable = any_unstable || est.unstable;
    t.add({num(x), num(est.extrapolated), num(h), num(diff), num(est.error_estimate),
           est.unstable ? "true" : "false"});
    rows.push_back({{"x", x},
                    {"extrapolated", json_number(est.extrapolated)},
                    {"closed_form_h", h},
                    {"abs_diff", json_number(diff)},
                    {"error_estimate", json_number(est.error_estimate)},
                    {"unstable", est.unstable},
                    {"raw_values", est.raw_values}});
  }
  std::string text = t.csv();
  if (o.format == "json") {
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "invert"},
                {"y_sequence", ys},
                {"rows", rows}};
    text = doc.dump(2) + "\n";
  }
  emit(o, text, out);
  return (c.strict && any_unstable) ? kExitVerifyFailed : kExitOk;
}

void add_output_options(CLI::App* sub, Output& o, const std::string& default_format) {
  o.format = default_format;
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", o.path, "Write to this file instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate Phi(x) = Gamma(x+1)^(1/x) (1+1/x)^x / x and verify its properties"};
  app.name("phitool");
  app.require_subcommand(1);

  EvalConfig eval;
  Output eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "Phi and log Phi by one or all routes");
  eval_cmd->add_option("--x", eval.xs, "Evaluation points (repeatable)")->required();
  eval_cmd->add_option("--method", eval.method, "direct, series, stieltjes or all")
      ->check(CLI::IsMember({"direct", "series", "stieltjes", "all"}))
      ->capture_default_str();
  eval_cmd->add_option("--tol", eval.tolerance, "Quadrature budget for the stieltjes route")
      ->capture_default_str();
  add_output_options(eval_cmd, eval_out, "csv");

  DensityConfig dens;
  Output dens_out;
  auto* dens_cmd = app.add_subcommand("density", "Tabulate phi(s) or h(s)");
  dens_cmd->add_option("--which", dens.which, "phi or h")
      ->check(CLI::IsMember({"phi", "h"}))
      ->capture_default_str();
  dens_cmd->add_option("--from", dens.from, "First s")->capture_default_str();
  dens_cmd->add_option("--to", dens.to, "Last s")->capture_default_str();
  dens_cmd->add_option("--step", dens.step, "Grid step")->capture_default_str();
  add_output_options(dens_cmd, dens_out, "csv");

  VerifyConfig ver;
  Output ver_out;
  auto* ver_cmd = app.add_subcommand("verify", "Run verification suites");
  ver_cmd->add_option("--suite", ver.suite, "cm, lcm, pick, identity, corpus or all")
      ->capture_default_str();
  ver_cmd->add_option("--order", ver.order, "Highest derivative order (cm <= 8)");
  ver_cmd->add_option("--count", ver.count, "Samples for pick suites")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Seed for pick suites")->capture_default_str();
  ver_cmd->add_option("--xmax", ver.xmax, "Upper end of the identity grid")->capture_default_str();
  ver_cmd->add_option("--grid", ver.grid, "Grid for monotonicity checks");
  add_output_options(ver_cmd, ver_out, "json");

  InvertConfig inv;
  Output inv_out;
  auto* inv_cmd = app.add_subcommand("invert", "Recover h from boundary values of Phi");
  inv_cmd->add_option("--x", inv.xs, "Points s >= 0 (repeatable)")->required();
  inv_cmd->add_option("--y", inv.ys, "Decreasing y sequence (default 1e-1 .. 1e-12)");
  inv_cmd->add_flag("--strict", inv.strict, "Exit 1 when an extrapolation is unstable");
  add_output_options(inv_cmd, inv_out, "csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "phitool: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval, eval_out, out);
    if (dens_cmd->parsed()) return cmd_density(dens, dens_out, out);
    if (ver_cmd->parsed()) return cmd_verify(ver, ver_out, out);
    if (inv_cmd->parsed()) return cmd_invert(inv, inv_out, out);
  } catch (const ConfigError& e) {
    err << "phitool: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "phitool: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "phitool: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace phitool
