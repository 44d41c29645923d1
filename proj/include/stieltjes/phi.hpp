// Phi(x) = Gamma(x+1)^{1/x} (1 + 1/x)^x / x and log Phi by each route:
// the direct formula, its cut-plane extension, the cell series for log Phi,
// and the two Stieltjes representations.
#pragma once

#include <string>
#include <vector>

#include "stieltjes/densities.hpp"
#include "stieltjes/quadrature.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes::phi {

enum class Route { kDirect, kSeries, kStieltjes };

const char* route_name(Route route);

struct PhiValue {
  double x = 0.0;
  double phi = 0.0;
  double log_phi = 0.0;
  Route route = Route::kDirect;
  /// Absolute error bound on whichever of phi / log_phi the route computes
  /// first; 0 for the direct route.
  double error_bound = 0.0;
  bool budget_met = true;
};

struct ComplexPhiValue {
  CutPlanePoint z{1.0, 0.0};
  cplx phi;
  cplx log_phi;
  Route route = Route::kDirect;
};

/// log Phi = log Gamma(x+1)/x - log x + x log1p(1/x); for x >= 10 the
/// Stirling form (log(2 pi x)/2 + R(x))/x + log1p_minus(1/x) x.
PhiValue phi_direct(double x);

/// The holomorphic branch log Gamma(z+1)/z - Log z + z Log(1 + 1/z).
ComplexPhiValue phi_complex(const CutPlanePoint& z);

/// log Phi(x) as the paired cell series with its Euler-Maclaurin tail.
PhiValue log_phi_series(double x);

struct IdentityCheck {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// First omitted Euler-Maclaurin term of the series tail.
  double truncation_error = 0.0;
};

/// log Gamma(x+1) against
///   x (log(1+x) - 1) + sum_{k>=1} [(k+x) log(1 + 1/(x+k)) - k log(1 + 1/k)].
IdentityCheck log_gamma_identity_check(double x);

struct PointMass {
  double s;
  double mass;
};

/// f(z) = constant_a + sum mass/(s + z) + int density(s)/(s + z) ds.
struct StieltjesRepresentation {
  double constant_a = 0.0;
  std::vector<PointMass> atoms;
  density::PiecewiseDensity density;
  std::string label;
};

/// Phi(x) = 1 + e^{-gamma}/x + int h(s)/(s+x) ds. The atom at 0 is
/// lim x Phi(x) as x -> 0+.
StieltjesRepresentation stieltjes_phi();

/// log Phi(x) = int phi(s)/(s+x) ds.
StieltjesRepresentation stieltjes_log_phi();

quad::QuadratureEstimate evaluate_representation(const StieltjesRepresentation& rep, double x,
                                                 double target_abs_error = 1e-10);
quad::ComplexEstimate evaluate_representation(const StieltjesRepresentation& rep,
                                              const CutPlanePoint& z,
                                              double target_abs_error = 1e-10);

/// Phi from the h representation; log_phi = log(phi).
PhiValue phi_stieltjes(double x, double target_abs_error = 1e-10);

/// log Phi from the phi representation; phi = exp(log_phi).
PhiValue log_phi_stieltjes(double x, double target_abs_error = 1e-10);

inline constexpr int kMaxDerivativeOrder = 12;

/// Phi^{(n)}(x) = (-1)^n n! [e^{-gamma}/x^{n+1} + int h(s)/(s+x)^{n+1} ds].
/// target_abs_error applies to the integral, raised to 1e-13 of the atom term
/// when that is larger; the reported errors are scaled by n!.
quad::QuadratureEstimate phi_derivative_via_rep(double x, int n, double target_abs_error = 1e-12);

}  // namespace stieltjes::phi
