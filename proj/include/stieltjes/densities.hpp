// The two explicit Stieltjes densities:
//
//   phi(s) = 1 - s on [0, 1),  1 - n/s on [n, n+1), n >= 1,
//   h(s)   = (1/pi) s^{s-1} / (|1-s|^s |Gamma(1-s)|^{1/s}) sin(pi phi(s)),
//
// packaged with the breakpoint and tail metadata the quadrature engine uses.
#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace stieltjes::density {

/// How the integrand behaves beyond TailHint::onset.
enum class TailModel {
  kCompact,             // zero beyond support_end
  kSawtooth,            // equal to frac(s)/s; tail integral is analytic
  kSawtoothRemainder,   // asymptotic to frac(s)/s; remainder summed cell by cell
  kDoubling,            // no model; integrated by octaves directly
};

struct TailHint {
  TailModel model = TailModel::kDoubling;
  /// Average decay exponent p with density ~ s^{-p} (for the remainder when
  /// the model is kSawtoothRemainder).
  double decay_exponent = 1.0;
  /// Integer where the tail treatment starts.
  double onset = 64.0;
};

struct PiecewiseDensity {
  std::string name;
  std::function<double(double)> eval;
  /// Ascending; the integrand may kink or jump only here.
  std::vector<double> breakpoints;
  /// Integers keep acting as breakpoints past breakpoints.back().
  bool unit_breakpoints_beyond = false;
  double support_end = std::numeric_limits<double>::infinity();
  TailHint tail;
  /// For kSawtoothRemainder: (nu, t) -> density(nu + t) - t / (nu + t) with
  /// the offset t in (0, 1) held fixed, smooth in a continuous nu >= onset.
  std::function<double(double, double)> cell_remainder;
};

struct DensityPoint {
  double s;
  double value;
  double log_value;  // -inf where value == 0
};

/// phi(s), right-continuous at the integers.
double phi_density(double s);

/// lim_{t -> s-} phi(t); differs from phi_density only at integers n >= 2,
/// where it is 1/n.
double phi_density_left_limit(double s);

/// h(s), evaluated in the log domain. Exactly 0 within 1e-12 of n >= 1;
/// below s = 1e-6 the small-s expansion of log h is used.
DensityPoint h_density(double s);

PiecewiseDensity make_phi_density();
PiecewiseDensity make_h_density();

/// Indicator of [a, b]; a convenience for quadrature checks.
PiecewiseDensity make_indicator_density(double a, double b);
PiecewiseDensity make_zero_density();

namespace detail {

inline constexpr double kSmallS = 1e-6;
inline constexpr double kIntegerSnap = 1e-12;
inline constexpr int kExplicitBreakpoints = 64;

/// log h(s) = -gamma + s log s - (pi^2/12) s + (1 - pi^2/6 - zeta(3)/3) s^2
/// + O(s^3), from expanding each factor of h at 0.
double log_h_small(double s);

/// log h(s) from the closed form; s > 0 and not within kIntegerSnap of n >= 1.
double log_h_direct(double s);

/// frac(s)/s, which equals phi(s) for s >= 1.
double sawtooth(double s);

/// h(nu + t) - t/(nu + t) for t in (0, 1) and continuous nu >= 16. Uses
/// log h - log(t/s) = log(sin(pi t/s) / (pi t/s)) + log1p_minus(-1/s) (-s)
///   + (R(s) - log(s)/2 + log(2 pi)/2 - log(pi) + log sin(pi t)) / s.
double h_cell_remainder(double nu, double t);

}  // namespace detail
}  // namespace stieltjes::density
