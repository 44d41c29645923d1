// Breakpoint-aware adaptive integration of density(s) / (s + z)^m over
// [0, inf), with the error split into a discretization part (Gauss-Kronrod
// 10/21 pairs, globally adaptive bisection) and a truncation part (tail).
#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "stieltjes/densities.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes::quad {

template <class T>
struct Estimate {
  T value{};
  double discretization_error = 0.0;
  double truncation_error = 0.0;
  std::size_t intervals_used = 0;
  /// Point past which the integral is supplied by the tail treatment.
  double s_max = 0.0;
  /// False when the requested budget could not be met; the bound is still
  /// reported honestly.
  bool budget_met = true;

  double total_error() const { return discretization_error + truncation_error; }
};

using QuadratureEstimate = Estimate<double>;
using ComplexEstimate = Estimate<cplx>;

inline constexpr double kMinTargetError = 1e-13;

struct IntegrationRequest {
  density::PiecewiseDensity density;
  double target_abs_error = 1e-10;
  /// Integrand is density(s) / (s + z)^kernel_power.
  int kernel_power = 1;
  std::size_t max_intervals = 4'000'000;
};

QuadratureEstimate integrate_stieltjes(const IntegrationRequest& request, double x);
ComplexEstimate integrate_stieltjes(const IntegrationRequest& request, const CutPlanePoint& z);

/// Globally adaptive GK21 over consecutive panels [edges[i], edges[i+1]].
/// Subdivision never crosses an edge. The final sum runs in panel order with
/// compensated summation, so the result does not depend on refinement order.
QuadratureEstimate adaptive_integrate(const std::function<double(double)>& f,
                                      std::span<const double> edges, double abs_tol,
                                      std::size_t max_intervals = 1'000'000);
ComplexEstimate adaptive_integrate(const std::function<cplx(double)>& f,
                                   std::span<const double> edges, double abs_tol,
                                   std::size_t max_intervals = 1'000'000);

enum class SeriesTail {
  kNone,            // partial sum only; truncation_error bounds the tail by 1/(2k^2) per term
  kEulerMaclaurin,  // partial sum plus the analytic tail estimate
};

/// Per-interval closed form of int_0^inf phi(s)/(s+x) ds:
///   -1 + (x+1) log(1 + 1/x)
///   + sum_{k=1}^{K} [(1 + k/x) log(1 + 1/(x+k)) - (k/x) log(1 + 1/k)].
/// Each bracket is the exact integral over [k, k+1) and is kept paired; the
/// two halves diverge separately.
QuadratureEstimate phi_integral_closed_form(double x, int intervals,
                                            SeriesTail tail = SeriesTail::kEulerMaclaurin);

namespace detail {

/// int_S^inf (frac(s)/s) (s + z)^{-m} ds for integer S >= 1, z in the cut
/// plane. Half the integrand's mean is integrated exactly; the sawtooth part
/// uses Euler-Maclaurin with three Bernoulli terms. truncation_error holds
/// the size of the first omitted term.
QuadratureEstimate sawtooth_tail(double x, double start, int power);
ComplexEstimate sawtooth_tail(cplx z, double start, int power);

}  // namespace detail
}  // namespace stieltjes::quad
