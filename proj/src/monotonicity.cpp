#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stieltjes/analysis.hpp"
#include "stieltjes/phi.hpp"

namespace stieltjes::analysis {
namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

void validate(const std::vector<double>& grid, int max_order, int cap) {
  if (grid.empty()) throw std::invalid_argument("monotonicity check: empty grid");
  for (double x : grid) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("monotonicity check: grid points must be finite and > 0");
    }
  }
  if (max_order < 0 || max_order > cap) {
    throw std::invalid_argument("monotonicity check: order out of range");
  }
}

Verdict classify(double margin, double floor) {
  if (std::abs(margin) <= floor) return Verdict::kInconclusive;
  return margin > 0.0 ? Verdict::kPass : Verdict::kFail;
}

struct Difference {
  double value;
  double noise;
};

// k-th central difference of g at x with step x * precision^{1/(k+2)}.
// scale bounds |g| near x for the rounding estimate.
Difference central_difference(const RealSampler& g, double x, int k, double precision,
                              double scale) {
  if (k == 0) return {g(x), precision * scale};
  const double h = x * std::pow(precision, 1.0 / (k + 2));
  double sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(k, j) * g(x + (0.5 * k - j) * h);
  }
  const double weight = std::max(factorial(k), std::pow(2.0, k));
  return {sum / std::pow(h, k), precision * scale * weight / std::pow(h, k)};
}

MonotonicityReport difference_report(const RealSampler& g, const std::vector<double>& grid,
                                     int first_order, int max_order, double precision,
                                     bool log_scale) {
  MonotonicityReport report;
  report.grid = grid;
  report.max_order = max_order;
  report.method = DerivativeMethod::kFiniteDifference;
  for (int k = first_order; k <= max_order; ++k) {
    report.orders.push_back(k);
    std::vector<double> margins;
    std::vector<double> floors;
    std::vector<Verdict> verdicts;
    for (double x : grid) {
      const double gx = g(x);
      const double scale = log_scale ? std::max(std::abs(gx), 1.0) : std::abs(gx);
      const auto d = central_difference(g, x, k, precision, scale);
      const double margin = (k % 2 == 0) ? d.value : -d.value;
      margins.push_back(margin);
      floors.push_back(d.noise);
      verdicts.push_back(classify(margin, d.noise));
    }
    report.margins.push_back(std::move(margins));
    report.noise_floors.push_back(std::move(floors));
    report.verdicts.push_back(std::move(verdicts));
  }
  return report;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

const char* method_name(DerivativeMethod m) {
  return m == DerivativeMethod::kFiniteDifference ? "finite-difference" : "representation";
}

std::size_t MonotonicityReport::count(Verdict v) const {
  std::size_t n = 0;
  for (const auto& row : verdicts) n += std::count(row.begin(), row.end(), v);
  return n;
}

MonotonicityReport check_cm(const RealSampler& f, const std::vector<double>& grid, int max_order,
                            double precision) {
  validate(grid, max_order, kMaxFiniteDifferenceOrder);
  return difference_report(f, grid, 0, max_order, precision, false);
}

MonotonicityReport check_lcm(const RealSampler& f, const std::vector<double>& grid, int max_order,
                             double precision) {
  validate(grid, max_order, kMaxFiniteDifferenceOrder);
  const RealSampler log_f = [&f](double x) {
    const double v = f(x);
    if (!(v > 0.0)) throw DomainError("check_lcm: sampler must be positive");
    return std::log(v);
  };
  return difference_report(log_f, grid, std::min(1, max_order), max_order, precision, true);
}

MonotonicityReport check_power_cm(const RealSampler& f, double alpha,
                                  const std::vector<double>& grid, int max_order,
                                  double precision) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("check_power_cm: alpha must be finite and > 0");
  }
  if (alpha == 1.0) return check_cm(f, grid, max_order, precision);
  const RealSampler power = [&f, alpha](double x) {
    const double v = f(x);
    if (!(v > 0.0)) throw DomainError("check_power_cm: sampler must be positive");
    return std::exp(alpha * std::log(v));
  };
  return check_cm(power, grid, max_order, precision);
}

MonotonicityReport check_cm_phi_representation(const std::vector<double>& grid, int max_order) {
  validate(grid, max_order, phi::kMaxDerivativeOrder);
  MonotonicityReport report;
  report.grid = grid;
  report.max_order = max_order;
  report.method = DerivativeMethod::kRepresentation;
  for (int k = 0; k <= max_order; ++k) {
    report.orders.push_back(k);
    std::vector<double> margins;
    std::vector<double> floors;
    std::vector<Verdict> verdicts;
    for (double x : grid) {
      double margin;
      double floor;
      if (k == 0) {
        const auto v = phi::phi_stieltjes(x);
        margin = v.phi;
        floor = v.error_bound;
      } else {
        const auto d = phi::phi_derivative_via_rep(x, k);
        margin = (k % 2 == 0) ? d.value : -d.value;
        floor = d.total_error();
      }
      margins.push_back(margin);
      floors.push_back(floor);
      verdicts.push_back(classify(margin, floor));
    }
    report.margins.push_back(std::move(margins));
    report.noise_floors.push_back(std::move(floors));
    report.verdicts.push_back(std::move(verdicts));
  }
  return report;
}

}  // namespace stieltjes::analysis
