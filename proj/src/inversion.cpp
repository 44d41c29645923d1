#include <cmath>
#include <stdexcept>

#include "stieltjes/analysis.hpp"

namespace stieltjes::analysis {
namespace {

constexpr double kSettledError = 1e-10;

// Value at 0 of the parabola through (y0, v0), (y1, v1), (y2, v2).
double extrapolate_to_zero(const double* y, const double* v) {
  const double l0 = (y[1] * y[2]) / ((y[0] - y[1]) * (y[0] - y[2]));
  const double l1 = (y[0] * y[2]) / ((y[1] - y[0]) * (y[1] - y[2]));
  const double l2 = (y[0] * y[1]) / ((y[2] - y[0]) * (y[2] - y[1]));
  return l0 * v[0] + l1 * v[1] + l2 * v[2];
}

}  // namespace

std::vector<double> default_y_sequence() {
  std::vector<double> ys;
  for (int k = 1; k <= 12; ++k) ys.push_back(std::pow(10.0, -k));
  return ys;
}

InversionEstimate stieltjes_invert(const ComplexSampler& f, double x,
                                   const std::vector<double>& y_sequence) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("stieltjes_invert: x must be finite and >= 0");
  }
  if (y_sequence.size() < 3) {
    throw std::invalid_argument("stieltjes_invert: need at least three y values");
  }
  for (std::size_t i = 0; i < y_sequence.size(); ++i) {
    if (!(y_sequence[i] > 0.0) || (i > 0 && !(y_sequence[i] < y_sequence[i - 1]))) {
      throw std::invalid_argument("stieltjes_invert: y_sequence must be positive and decreasing");
    }
  }

  InversionEstimate out;
  out.x = x;
  out.y_sequence = y_sequence;
  for (double y : y_sequence) {
    out.raw_values.push_back(-f(CutPlanePoint(-x, y)).imag() / kPi);
  }
  for (std::size_t i = 0; i + 2 < y_sequence.size(); ++i) {
    out.extrapolants.push_back(extrapolate_to_zero(&y_sequence[i], &out.raw_values[i]));
  }
  const std::size_t n = out.extrapolants.size();
  out.extrapolated = out.extrapolants.back();
  out.error_estimate = n >= 2 ? std::abs(out.extrapolants[n - 1] - out.extrapolants[n - 2])
                              : std::abs(out.extrapolated - out.raw_values.back());
  if (n >= 3) {
    const double previous = std::abs(out.extrapolants[n - 2] - out.extrapolants[n - 3]);
    out.unstable = out.error_estimate > previous && out.error_estimate > kSettledError;
  }
  if (!std::isfinite(out.extrapolated)) out.unstable = true;
  return out;
}

}  // namespace stieltjes::analysis
