#include "stieltjes/densities.hpp"

#include <cmath>

#include "stieltjes/specfun.hpp"

namespace stieltjes::density {
namespace {

constexpr double kPiSquaredOver12 = 0.82246703342411321824;
// 1 - pi^2/6 - zeta(3)/3
constexpr double kSmallSQuadratic = -1.0456197012347578649;

void require_nonnegative(double s, const char* who) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw DomainError(std::string(who) + ": s must be finite and >= 0");
  }
}

std::vector<double> integer_breakpoints(int last) {
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(last) + 1);
  for (int n = 0; n <= last; ++n) points.push_back(n);
  return points;
}

}  // namespace

namespace detail {

double log_h_small(double s) {
  if (s == 0.0) return -kEulerGamma;
  return -kEulerGamma + s * std::log(s) - kPiSquaredOver12 * s + kSmallSQuadratic * s * s;
}

double log_h_direct(double s) {
  double power_term;  // (s-1) log s - s log|1-s|
  double reduced;     // 1 - phi(s), so sin(pi phi) = sin(pi reduced)
  if (s < 1.0) {
    power_term = (s - 1.0) * std::log(s) - s * std::log1p(-s);
    reduced = s;
  } else {
    power_term = -std::log(s) - s * std::log1p(-1.0 / s);
    reduced = (s - std::floor(s)) / s;
  }
  reduced = std::min(reduced, 1.0 - reduced);
  const double log_sin = std::log(std::sin(kPi * reduced));
  return power_term - specfun::log_abs_gamma_one_minus(s) / s + log_sin - kLogPi;
}

double sawtooth(double s) { return (s - std::floor(s)) / s; }

double h_cell_remainder(double nu, double t) {
  if (!(nu >= 16.0) || !std::isfinite(nu) || !(t > 0.0) || !(t < 1.0)) {
    throw DomainError("h_cell_remainder: need nu >= 16 and 0 < t < 1");
  }
  const double s = nu + t;
  const double y = kPi * t / s;
  const double sinc_log = std::log(std::sin(y) / y);
  const double u = -1.0 / s;
  const double reduced = std::min(t, 1.0 - t);
  const double rest = specfun::detail::stirling_remainder(s) - 0.5 * std::log(s) + kHalfLog2Pi -
                      kLogPi + std::log(std::sin(kPi * reduced));
  const double log_ratio = sinc_log + specfun::detail::log1p_minus(u) / u + rest / s;
  return (t / s) * std::expm1(log_ratio);
}

}  // namespace detail

double phi_density(double s) {
  require_nonnegative(s, "phi_density");
  if (s < 1.0) return 1.0 - s;
  return detail::sawtooth(s);
}

double phi_density_left_limit(double s) {
  require_nonnegative(s, "phi_density_left_limit");
  if (s >= 2.0 && s == std::floor(s)) return 1.0 / s;
  return phi_density(s);
}

DensityPoint h_density(double s) {
  require_nonnegative(s, "h_density");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (s < detail::kSmallS) {
    const double log_value = detail::log_h_small(s);
    return {s, std::exp(log_value), log_value};
  }
  const double nearest = std::nearbyint(s);
  if (nearest >= 1.0 && std::abs(s - nearest) < detail::kIntegerSnap) {
    return {s, 0.0, kNegInf};
  }
  const double log_value = detail::log_h_direct(s);
  return {s, std::exp(log_value), log_value};
}

PiecewiseDensity make_phi_density() {
  PiecewiseDensity d;
  d.name = "phi";
  d.eval = [](double s) { return phi_density(s); };
  d.breakpoints = integer_breakpoints(detail::kExplicitBreakpoints);
  d.unit_breakpoints_beyond = true;
  d.tail = {TailModel::kSawtooth, 1.0, static_cast<double>(detail::kExplicitBreakpoints)};
  return d;
}

PiecewiseDensity make_h_density() {
  PiecewiseDensity d;
  d.name = "h";
  d.eval = [](double s) { return h_density(s).value; };
  d.breakpoints = integer_breakpoints(detail::kExplicitBreakpoints);
  d.unit_breakpoints_beyond = true;
  // h - phi has panel integrals ~ (-0.21 - log(n)/4) / n^2: exponent 2 with a
  // log factor, fitted on [10, 1e3].
  d.tail = {TailModel::kSawtoothRemainder, 2.0, static_cast<double>(detail::kExplicitBreakpoints)};
  d.cell_remainder = [](double nu, double t) { return detail::h_cell_remainder(nu, t); };
  return d;
}

PiecewiseDensity make_indicator_density(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw DomainError("make_indicator_density: need 0 <= a < b < inf");
  }
  PiecewiseDensity d;
  d.name = "indicator";
  d.eval = [a, b](double s) { return (s >= a && s <= b) ? 1.0 : 0.0; };
  d.breakpoints = {0.0};
  if (a > 0.0) d.breakpoints.push_back(a);
  d.breakpoints.push_back(b);
  d.support_end = b;
  d.tail = {TailModel::kCompact, 0.0, b};
  return d;
}

PiecewiseDensity make_zero_density() {
  PiecewiseDensity d;
  d.name = "zero";
  d.eval = [](double) { return 0.0; };
  d.breakpoints = {0.0, 1.0};
  d.support_end = 0.0;
  d.tail = {TailModel::kCompact, 0.0, 0.0};
  return d;
}

}  // namespace stieltjes::density
