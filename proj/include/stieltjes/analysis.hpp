// Numerical witnesses for the function classes around Phi: complete and
// logarithmic complete monotonicity, power criteria, Pick sampling in the
// upper half-plane, Stieltjes-Perron inversion, and a corpus of functions
// built from Gamma(1 + x)^{1/x} and Gamma(1 + 1/x)^x.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stieltjes/specfun.hpp"

namespace stieltjes::analysis {

using RealSampler = std::function<double(double)>;
using ComplexSampler = std::function<cplx(const CutPlanePoint&)>;

enum class Verdict { kPass, kFail, kInconclusive };
enum class DerivativeMethod { kFiniteDifference, kRepresentation };

const char* verdict_name(Verdict v);
const char* method_name(DerivativeMethod m);

/// Rows are derivative orders, columns grid points. margins[r][i] is
/// (-1)^k f^(k)(grid[i]) for k = orders[r]; the verdict is inconclusive when
/// |margin| <= noise_floor.
struct MonotonicityReport {
  std::vector<double> grid;
  int max_order = 0;
  std::vector<int> orders;
  std::vector<std::vector<double>> margins;
  std::vector<std::vector<double>> noise_floors;
  std::vector<std::vector<Verdict>> verdicts;
  DerivativeMethod method = DerivativeMethod::kFiniteDifference;

  std::size_t count(Verdict v) const;
  bool passed() const { return count(Verdict::kFail) == 0; }
};

inline constexpr int kMaxFiniteDifferenceOrder = 8;
/// Relative accuracy assumed for samplers unless told otherwise.
inline constexpr double kDefaultPrecision = 4.0 * 2.220446049250313e-16;

/// (-1)^k f^(k) >= 0 for k = 0..max_order by central differences with step
/// x * precision^{1/(k+2)}. Noise floor precision * |f| * max(k!, 2^k) / h^k.
MonotonicityReport check_cm(const RealSampler& f, const std::vector<double>& grid, int max_order,
                            double precision = kDefaultPrecision);

/// (-1)^k (log f)^(k) >= 0 for k = 1..max_order. Throws DomainError when a
/// sample is not positive.
MonotonicityReport check_lcm(const RealSampler& f, const std::vector<double>& grid, int max_order,
                             double precision = kDefaultPrecision);

/// check_cm on f^alpha = exp(alpha log f); alpha == 1 samples f itself.
MonotonicityReport check_power_cm(const RealSampler& f, double alpha,
                                  const std::vector<double>& grid, int max_order,
                                  double precision = kDefaultPrecision);

/// CM report for Phi with derivatives from the h representation, orders
/// 0..max_order (max_order <= 12). The noise floor is the quadrature bound.
MonotonicityReport check_cm_phi_representation(const std::vector<double>& grid, int max_order);

struct PickRegion {
  double re_min = -5.0;
  double re_max = 5.0;
  double im_min = 1e-6;
  double im_max = 5.0;
};

struct PickViolation {
  cplx z;
  cplx value;
};

/// Imaginary parts are drawn log-uniformly in [im_min, im_max] so the
/// neighbourhood of the cut is covered.
struct PickReport {
  std::size_t samples = 0;
  std::vector<PickViolation> violations;
  double max_im = -INFINITY;
  std::size_t axis_points = 0;
  std::vector<double> negative_on_axis;

  bool passed() const { return violations.empty() && negative_on_axis.empty(); }
};

/// A violation is Im f(z) > tolerance * max(1, |f(z)|). The positive axis is
/// checked on 121 log-spaced points in [1e-3, 1e3].
PickReport pick_sample(const ComplexSampler& f, std::size_t count, const PickRegion& region,
                       std::uint64_t seed, double tolerance = 1e-12);

struct InversionEstimate {
  double x = 0.0;
  std::vector<double> y_sequence;
  std::vector<double> raw_values;
  /// Quadratic extrapolants to y = 0 through consecutive triples.
  std::vector<double> extrapolants;
  double extrapolated = 0.0;
  double error_estimate = 0.0;
  bool unstable = false;
};

/// 1e-1, 1e-2, ..., 1e-12.
std::vector<double> default_y_sequence();

/// -(1/pi) Im f(-x + iy) as y -> 0+. The estimate is the extrapolant of the
/// three smallest y; error_estimate is its distance to the previous one.
/// Flagged unstable when the last extrapolants move apart instead of
/// settling and the error estimate exceeds 1e-10.
InversionEstimate stieltjes_invert(const ComplexSampler& f, double x,
                                   const std::vector<double>& y_sequence = default_y_sequence());

struct CorpusMember {
  std::string name;
  std::string formula;
  ComplexSampler log_f;
  ComplexSampler f;
};

/// Six functions built as exp of a cut-plane logarithm:
/// 1/(Gamma(1+x)^{1/x} (1+1/x)^x), Gamma(1+1/x)^x (1+x)^{1/x},
/// 1/(x Gamma(1+1/x)^x (1+x)^{1/x}), Gamma(1+x)^{1/x}/x, 1/Gamma(1+x)^{1/x},
/// 1/(x Gamma(1+1/x)^x).
std::vector<CorpusMember> remark_corpus();

/// The real restriction of a cut-plane sampler.
RealSampler on_real_axis(const ComplexSampler& f);

}  // namespace stieltjes::analysis
