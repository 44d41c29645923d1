#include "stieltjes/phi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stieltjes::phi {
namespace {

using specfun::detail::log1p_minus;

constexpr double kStirlingSwitch = 10.0;
// The integral never exceeds the atom term by much, so this is near rounding.
constexpr double kDerivativeRelativeFloor = 1e-13;

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": x must be finite and > 0");
  }
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// g(t) = t log(1 + 1/t) - 1.
double shifted_g(double t) {
  const double u = 1.0 / t;
  return log1p_minus(u) / u;
}

// Antiderivative of g: log1p_minus(1/t) t^2 / 2 - log1p(t) / 2.
double shifted_g_primitive(double t) {
  const double u = 1.0 / t;
  return log1p_minus(u) / (2.0 * u * u) - 0.5 * std::log1p(t);
}

// n-th derivative of t log(1 + 1/t), n >= 2.
double g_derivative(int n, double t) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double a = std::pow(t + 1.0, -(n - 1));
  const double b = std::pow(t, -(n - 1));
  return sign * (factorial(n - 2) * (a - b) + factorial(n - 1) / std::pow(t + 1.0, n));
}

double g_first_derivative(double t) { return std::log1p(1.0 / t) - 1.0 / (t + 1.0); }

}  // namespace

const char* route_name(Route route) {
  switch (route) {
    case Route::kDirect:
      return "direct";
    case Route::kSeries:
      return "series";
    case Route::kStieltjes:
      return "stieltjes";
  }
  return "unknown";
}

PhiValue phi_direct(double x) {
  require_positive(x, "phi_direct");
  const double u = 1.0 / x;
  double log_phi;
  if (x >= kStirlingSwitch) {
    log_phi = (0.5 * std::log(x) + kHalfLog2Pi + specfun::detail::stirling_remainder(x)) / x +
              log1p_minus(u) / u;
  } else {
    const double lg =
        x <= 0.5 ? specfun::detail::log_gamma_1p(x) : specfun::log_gamma_pos(x + 1.0);
    log_phi = lg / x - std::log(x) + std::log1p(u) / u;
  }
  return {x, std::exp(log_phi), log_phi, Route::kDirect, 0.0, true};
}

ComplexPhiValue phi_complex(const CutPlanePoint& z) {
  const cplx w = z.value();
  cplx log_phi;
  if (z.re() >= 0.0 && std::abs(w) >= kStirlingSwitch) {
    const cplx u = 1.0 / w;
    log_phi = (0.5 * std::log(w) + kHalfLog2Pi + specfun::detail::stirling_remainder(w)) / w +
              log1p_minus(u) / u;
  } else {
    cplx lg;
    if (std::abs(w) <= 0.5) {
      lg = specfun::detail::log_gamma_1p(w);
    } else {
      lg = specfun::log_gamma_cut(CutPlanePoint(w + 1.0));
    }
    // z Log(1 + 1/z) = Log(1 + u)/u; on the real axis use the real log1p.
    cplx tail;
    if (z.im() == 0.0) {
      tail = std::log1p(1.0 / z.re()) * z.re();
    } else {
      tail = w * std::log(1.0 + 1.0 / w);
    }
    log_phi = lg / w - std::log(w) + tail;
  }
  if (z.im() == 0.0) log_phi.imag(0.0);
  return {z, std::exp(log_phi), log_phi, Route::kDirect};
}

PhiValue log_phi_series(double x) {
  require_positive(x, "log_phi_series");
  const int cells = 64;
  const auto est = quad::phi_integral_closed_form(x, cells, quad::SeriesTail::kEulerMaclaurin);
  return {x, std::exp(est.value), est.value, Route::kSeries, est.total_error(), true};
}

IdentityCheck log_gamma_identity_check(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma_identity_check: x must be finite and >= 0");
  }
  IdentityCheck out;
  out.x = x;
  out.lhs = x == 0.0 ? 0.0 : specfun::log_gamma_pos(x + 1.0);

  // Each bracket is g(k + x) - g(k) with g(t) = t log(1 + 1/t) - 1, so the
  // constant 1 cancels and nothing is lost to the size of t log(1 + 1/t).
  const int last = 64 + static_cast<int>(std::ceil(4.0 * x));
  double sum = x * (std::log1p(x) - 1.0);
  double carry = 0.0;
  auto add = [&sum, &carry](double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  for (int k = 1; k <= last; ++k) add(shifted_g(k + x) - shifted_g(k));

  // sum_{k > K} F(k) = int_K^inf F - F(K)/2 - F'(K)/12 + F'''(K)/720
  //                   - F^(5)(K)/30240 + ...
  const double K = last;
  const double integral = -(shifted_g_primitive(K + x) - shifted_g_primitive(K));
  const double f0 = shifted_g(K + x) - shifted_g(K);
  const double f1 = g_first_derivative(K + x) - g_first_derivative(K);
  const double f3 = g_derivative(3, K + x) - g_derivative(3, K);
  const double f5 = g_derivative(5, K + x) - g_derivative(5, K);
  const double f7 = g_derivative(7, K + x) - g_derivative(7, K);
  add(integral - 0.5 * f0 - f1 / 12.0 + f3 / 720.0 - f5 / 30240.0);
  out.truncation_error = std::abs(f7) / 1209600.0;

  out.rhs = sum + carry;
  out.residual = out.lhs - out.rhs;
  return out;
}

StieltjesRepresentation stieltjes_phi() {
  StieltjesRepresentation rep;
  rep.constant_a = 1.0;
  rep.atoms = {{0.0, std::exp(-kEulerGamma)}};
  rep.density = density::make_h_density();
  rep.label = "Phi";
  return rep;
}

StieltjesRepresentation stieltjes_log_phi() {
  StieltjesRepresentation rep;
  rep.constant_a = 0.0;
  rep.density = density::make_phi_density();
  rep.label = "log Phi";
  return rep;
}

quad::QuadratureEstimate evaluate_representation(const StieltjesRepresentation& rep, double x,
                                                 double target_abs_error) {
  quad::IntegrationRequest request;
  request.density = rep.density;
  request.target_abs_error = target_abs_error;
  auto est = quad::integrate_stieltjes(request, x);
  double discrete = rep.constant_a;
  for (const auto& atom : rep.atoms) discrete += atom.mass / (atom.s + x);
  est.value += discrete;
  return est;
}

quad::ComplexEstimate evaluate_representation(const StieltjesRepresentation& rep,
                                              const CutPlanePoint& z, double target_abs_error) {
  quad::IntegrationRequest request;
  request.density = rep.density;
  request.target_abs_error = target_abs_error;
  auto est = quad::integrate_stieltjes(request, z);
  cplx discrete = rep.constant_a;
  for (const auto& atom : rep.atoms) discrete += atom.mass / (atom.s + z.value());
  est.value += discrete;
  return est;
}

PhiValue phi_stieltjes(double x, double target_abs_error) {
  require_positive(x, "phi_stieltjes");
  const auto est = evaluate_representation(stieltjes_phi(), x, target_abs_error);
  return {x, est.value, std::log(est.value), Route::kStieltjes, est.total_error(), est.budget_met};
}

PhiValue log_phi_stieltjes(double x, double target_abs_error) {
  require_positive(x, "log_phi_stieltjes");
  const auto est = evaluate_representation(stieltjes_log_phi(), x, target_abs_error);
  return {x, std::exp(est.value), est.value, Route::kStieltjes, est.total_error(), est.budget_met};
}

quad::QuadratureEstimate phi_derivative_via_rep(double x, int n, double target_abs_error) {
  require_positive(x, "phi_derivative_via_rep");
  if (n < 1 || n > kMaxDerivativeOrder) {
    throw std::invalid_argument("phi_derivative_via_rep: order must be in [1, 12]");
  }
  const double atom = std::exp(-kEulerGamma) / std::pow(x, n + 1);
  quad::IntegrationRequest request;
  request.density = density::make_h_density();
  request.target_abs_error = std::max(target_abs_error, kDerivativeRelativeFloor * atom);
  request.kernel_power = n + 1;
  auto est = quad::integrate_stieltjes(request, x);
  const double scale = ((n % 2 == 0) ? 1.0 : -1.0) * factorial(n);
  est.value = scale * (atom + est.value);
  est.discretization_error *= std::abs(scale);
  est.truncation_error *= std::abs(scale);
  return est;
}

}  // namespace stieltjes::phi
