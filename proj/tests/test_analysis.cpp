#include <doctest.h>

#include <cmath>
#include <vector>

#include "stieltjes/analysis.hpp"
#include "stieltjes/densities.hpp"
#include "stieltjes/phi.hpp"
#include "stieltjes/quadrature.hpp"

using namespace stieltjes;
using namespace stieltjes::analysis;

namespace {

const std::vector<double> kGrid = {0.25, 0.5, 1.0, 2.0, 5.0, 10.0};

double phi_real(double x) { return phi::phi_direct(x).phi; }

cplx phi_cut(const CutPlanePoint& z) { return phi::phi_complex(z).phi; }
cplx log_phi_cut(const CutPlanePoint& z) { return phi::phi_complex(z).log_phi; }

bool same_verdicts(const MonotonicityReport& a, const MonotonicityReport& b) {
  return a.orders == b.orders && a.verdicts == b.verdicts;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("check_cm on simple functions") {
  const auto reciprocal = check_cm([](double x) { return 1.0 / x; }, kGrid, 6);
  CHECK(reciprocal.count(Verdict::kPass) == 7 * kGrid.size());
  CHECK(reciprocal.orders.front() == 0);
  CHECK(reciprocal.method == DerivativeMethod::kFiniteDifference);
  // The margins are (-1)^k k!/x^{k+1}.
  CHECK(std::abs(reciprocal.margins[3][2] - 6.0) <= 1e-4 * 6.0);

  const auto identity = check_cm([](double x) { return x; }, kGrid, 3);
  CHECK_FALSE(identity.passed());
  for (auto v : identity.verdicts[1]) CHECK(v == Verdict::kFail);
  // Higher derivatives of x vanish: inconclusive, never failed.
  for (auto v : identity.verdicts[2]) CHECK(v == Verdict::kInconclusive);

  CHECK_THROWS_AS(check_cm(phi_real, kGrid, 9), std::invalid_argument);
  CHECK_THROWS_AS(check_cm(phi_real, {0.0, 1.0}, 2), DomainError);
}

TEST_CASE("check_cm on Phi") {
  const auto report = check_cm(phi_real, {0.5, 1.0, 2.0, 5.0}, 6);
  CHECK(report.count(Verdict::kPass) == 7 * 4);
}

TEST_CASE("check_lcm") {
  const auto on_phi = check_lcm(phi_real, kGrid, 5);
  CHECK(on_phi.count(Verdict::kPass) == 5 * kGrid.size());
  CHECK(on_phi.orders.front() == 1);

  CHECK(check_lcm([](double x) { return std::exp(1.0 / x); }, kGrid, 5).passed());
  const auto growing = check_lcm([](double x) { return 1.0 + x; }, kGrid, 3);
  for (auto v : growing.verdicts[0]) CHECK(v == Verdict::kFail);
  CHECK_THROWS_AS(check_lcm([](double x) { return -x; }, kGrid, 2), DomainError);
}

TEST_CASE("check_power_cm") {
  for (double alpha : {1.0 / 3.0, 0.5, 2.7}) {
    CAPTURE(alpha);
    const auto r = check_power_cm(phi_real, alpha, kGrid, 5);
    CHECK(r.count(Verdict::kPass) == 6 * kGrid.size());
  }
  CHECK(same_verdicts(check_power_cm(phi_real, 1.0, kGrid, 6), check_cm(phi_real, kGrid, 6)));

  // (e^{-x} + c)^3 expands into positive multiples of e^{-jx}.
  const double c = 0.01;
  const auto shifted = check_power_cm([c](double x) { return std::exp(-x) + c; }, 3.0,
                                      {0.5, 1.0, 2.0, 4.0}, 4);
  CHECK(shifted.passed());
  for (std::size_t i = 0; i < shifted.grid.size(); ++i) {
    const double x = shifted.grid[i];
    // Order-4 derivative: sum_j C(3,j) c^{3-j} j^4 e^{-jx}.
    const double exact = 3.0 * c * c * std::exp(-x) + 3.0 * c * 16.0 * std::exp(-2.0 * x) +
                         81.0 * std::exp(-3.0 * x);
    CHECK(std::abs(shifted.margins[4][i] - exact) <= 1e-3 * exact);
  }
  CHECK_THROWS_AS(check_power_cm(phi_real, 0.0, kGrid, 2), DomainError);
}

TEST_CASE("representation signs and agreement with finite differences") {
  const auto rep = check_cm_phi_representation(kGrid, 12);
  CHECK(rep.method == DerivativeMethod::kRepresentation);
  CHECK(rep.count(Verdict::kPass) == 13 * kGrid.size());
  const auto fd = check_cm(phi_real, kGrid, 8);
  for (std::size_t r = 0; r < fd.orders.size(); ++r) {
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
      if (fd.verdicts[r][i] == Verdict::kInconclusive) continue;
      CAPTURE(r);
      CAPTURE(kGrid[i]);
      CHECK(fd.verdicts[r][i] == rep.verdicts[r][i]);
      // The central differences are second order in the step, which grows
      // with the order; the magnitudes are compared where that is small.
      if (fd.orders[r] <= 4) {
        CHECK(std::abs(fd.margins[r][i] - rep.margins[r][i]) <= 1e-3 * rep.margins[r][i]);
      }
    }
  }
}

TEST_CASE("pick_sample") {
  PickRegion region;
  const auto on_phi = pick_sample(phi_cut, 10000, region, 7);
  CHECK(on_phi.samples == 10000);
  CHECK(on_phi.passed());
  CHECK(on_phi.max_im < 0.0);

  const auto identity = pick_sample([](const CutPlanePoint& z) { return z.value(); }, 200, region, 1);
  CHECK(identity.violations.size() == 200);

  const auto reciprocal =
      pick_sample([](const CutPlanePoint& z) { return 1.0 / z.value(); }, 2000, region, 1);
  CHECK(reciprocal.passed());

  const auto negative = pick_sample([](const CutPlanePoint& z) { return -1.0 / z.value(); }, 10,
                                    region, 1);
  CHECK(negative.negative_on_axis.size() == negative.axis_points);

  // Same seed, same samples.
  const auto again = pick_sample([](const CutPlanePoint& z) { return z.value(); }, 200, region, 1);
  REQUIRE(again.violations.size() == identity.violations.size());
  for (std::size_t i = 0; i < again.violations.size(); ++i) {
    CHECK(again.violations[i].z == identity.violations[i].z);
  }
  PickRegion touching = region;
  touching.im_min = 0.0;
  CHECK_THROWS_AS(pick_sample(phi_cut, 1, touching, 1), std::invalid_argument);
}

TEST_CASE("log Phi keeps its imaginary part in (-pi, 0)") {
  PickRegion wide{-30.0, 30.0, 1e-9, 30.0};
  const auto report = pick_sample(log_phi_cut, 10000, wide, 11);
  CHECK(report.passed());
  CHECK(report.max_im < 0.0);
}

TEST_CASE("corpus") {
  const auto corpus = remark_corpus();
  REQUIRE(corpus.size() == 6);
  const auto& root_over_x = corpus[3];
  CHECK(std::abs(root_over_x.f(CutPlanePoint(1.0, 0.0)) - 1.0) <= 1e-15);
  // Closed forms at x = 1: Gamma(2) = 1 and 2^1 = 2.
  const double at_one[] = {0.5, 2.0, 0.5, 1.0, 1.0, 1.0};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(corpus[i].name);
    CHECK(std::abs(corpus[i].f(CutPlanePoint(1.0, 0.0)).real() - at_one[i]) <= 1e-15);
    const auto report = pick_sample(corpus[i].f, 1000, PickRegion{}, 3);
    CHECK(report.passed());
    // Conjugate symmetry of the branch.
    const cplx up = corpus[i].log_f(CutPlanePoint(-0.7, 0.3));
    const cplx down = corpus[i].log_f(CutPlanePoint(-0.7, -0.3));
    CHECK(std::abs(up - std::conj(down)) <= 1e-14 * std::abs(up));
  }
  // Gamma(1+x)^{1/x}/x against the direct real formula at x = 3: 6^{1/3}/3.
  CHECK(std::abs(root_over_x.f(CutPlanePoint(3.0, 0.0)).real() - std::cbrt(6.0) / 3.0) <= 1e-15);
}

TEST_CASE("LCM implies CM on the corpus") {
  for (const auto& m : remark_corpus()) {
    CAPTURE(m.name);
    const auto f = on_real_axis(m.f);
    const auto lcm = check_lcm(f, kGrid, 5);
    const auto cm = check_cm(f, kGrid, 5);
    if (lcm.passed()) CHECK(cm.passed());
    CHECK(lcm.count(Verdict::kPass) == 5 * kGrid.size());
  }
}

TEST_CASE("inversion recovers h") {
  const auto half = stieltjes_invert(phi_cut, 0.5);
  CHECK(std::abs(half.extrapolated - 2.0 / (kPi * kPi)) <= 1e-4);
  CHECK_FALSE(half.unstable);
  CHECK(half.raw_values.size() == half.y_sequence.size());
  CHECK(half.extrapolants.size() == half.y_sequence.size() - 2);

  const auto one = stieltjes_invert(phi_cut, 1.0);
  CHECK(std::abs(one.extrapolated) <= 1e-4);

  const auto log_inv = stieltjes_invert(log_phi_cut, 0.25);
  CHECK(std::abs(log_inv.extrapolated - 0.75) <= 1e-4);

  for (double x : {0.75, 1.5, 2.5, 2.0, 3.0}) {
    CAPTURE(x);
    const auto est = stieltjes_invert(phi_cut, x);
    CHECK(std::abs(est.extrapolated - density::h_density(x).value) <= 1e-4);
  }

  // The atom e^{-gamma} at 0 makes the boundary values at x = 0 grow like
  // e^{-gamma}/(pi y).
  const auto origin = stieltjes_invert(phi_cut, 0.0);
  CHECK(origin.unstable);
  CHECK(std::abs(origin.raw_values.back() * kPi * 1e-12 - std::exp(-kEulerGamma)) <= 1e-9);

  CHECK_THROWS_AS(stieltjes_invert(phi_cut, 0.5, {1e-2, 1e-1, 1e-3}), std::invalid_argument);
  CHECK_THROWS_AS(stieltjes_invert(phi_cut, -1.0), DomainError);
}

TEST_CASE("raw boundary values approach h monotonically") {
  for (double x : {0.25, 0.5, 1.5}) {
    CAPTURE(x);
    const auto est = stieltjes_invert(phi_cut, x, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
    const double target = density::h_density(x).value;
    const std::size_t n = est.raw_values.size();
    for (std::size_t i = n - 3; i < n; ++i) {
      CHECK(std::abs(est.raw_values[i] - target) < std::abs(est.raw_values[i - 1] - target));
    }
  }
}

TEST_CASE("reintegrating the inverted density") {
  // Phi(2) - 1 = e^{-gamma}/2 + int h/(s+2). The atom is added explicitly:
  // its boundary values diverge at s = 0.
  const double x = 2.0;
  const double step = 0.01;
  std::vector<double> samples;
  for (int i = 1; i <= 600; ++i) {
    samples.push_back(stieltjes_invert(phi_cut, i * step).extrapolated / (i * step + x));
  }
  double trapezoid = 0.5 * step * samples.front();  // [0, 0.01] from its right end
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    trapezoid += 0.5 * step * (samples[i] + samples[i + 1]);
  }
  quad::IntegrationRequest request;
  request.density = density::make_h_density();
  const double whole = quad::integrate_stieltjes(request, x).value;
  const std::vector<double> head_edges = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const std::function<double(double)> integrand = [x](double s) {
    return density::h_density(s).value / (s + x);
  };
  const double head = quad::adaptive_integrate(integrand, head_edges, 1e-12).value;
  const double tail = whole - head;
  const double rebuilt = std::exp(-kEulerGamma) / x + trapezoid + tail;
  CHECK(std::abs(rebuilt - (phi::phi_direct(x).phi - 1.0)) <= 5e-3);
}

}  // TEST_SUITE
