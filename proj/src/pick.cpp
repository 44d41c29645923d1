#include <cmath>
#include <random>
#include <stdexcept>

#include "stieltjes/analysis.hpp"

namespace stieltjes::analysis {

PickReport pick_sample(const ComplexSampler& f, std::size_t count, const PickRegion& region,
                       std::uint64_t seed, double tolerance) {
  if (!(region.im_min >= 1e-9) || !(region.im_max > region.im_min) ||
      !(region.re_max > region.re_min)) {
    throw std::invalid_argument("pick_sample: region must lie in Im z >= 1e-9 and be nonempty");
  }
  PickReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(region.re_min, region.re_max);
  std::uniform_real_distribution<double> log_im(std::log(region.im_min), std::log(region.im_max));
  for (std::size_t i = 0; i < count; ++i) {
    // Draw in a fixed order so the sample set depends on the seed only.
    const double a = re(rng);
    const double b = std::exp(log_im(rng));
    const CutPlanePoint z(a, b);
    const cplx v = f(z);
    ++report.samples;
    report.max_im = std::max(report.max_im, v.imag());
    if (!(v.imag() <= tolerance * std::max(1.0, std::abs(v)))) {
      report.violations.push_back({z.value(), v});
    }
  }
  for (int i = 0; i <= 120; ++i) {
    const double x = std::pow(10.0, -3.0 + 0.05 * i);
    const double v = f(CutPlanePoint(x, 0.0)).real();
    ++report.axis_points;
    if (!(v >= 0.0)) report.negative_on_axis.push_back(x);
  }
  return report;
}

}  // namespace stieltjes::analysis
