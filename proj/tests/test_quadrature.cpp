#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "stieltjes/quadrature.hpp"

using namespace stieltjes;
using namespace stieltjes::quad;

namespace {

const double kExpMinusGamma = 0.56145948356688516982;
const double kLn2 = 0.69314718055994530942;

IntegrationRequest request_for(density::PiecewiseDensity d, double target) {
  IntegrationRequest r;
  r.density = std::move(d);
  r.target_abs_error = target;
  return r;
}

// log Phi(x) from mpmath.
struct Ref {
  double x;
  double log_phi;
};
constexpr Ref kLogPhi[] = {
    {0.5, 1.0008888496235097104},
    {2.0, 0.46435662593635610925},
    {5.0, 0.25966822009208195531},
    {10.0, 0.16095796235675444594},
};

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("trivial densities") {
  const auto zero = integrate_stieltjes(request_for(density::make_zero_density(), 1e-10), 1.0);
  CHECK(zero.value == 0.0);
  CHECK(zero.total_error() == 0.0);

  const auto box =
      integrate_stieltjes(request_for(density::make_indicator_density(0.0, 1.0), 1e-12), 1.0);
  CHECK(std::abs(box.value - kLn2) <= 1e-13);
  CHECK(box.budget_met);
}

TEST_CASE("request validation") {
  auto r = request_for(density::make_phi_density(), 1e-14);
  CHECK_THROWS_AS(integrate_stieltjes(r, 1.0), std::invalid_argument);
  r.target_abs_error = 1e-10;
  CHECK_THROWS_AS(integrate_stieltjes(r, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_stieltjes(r, -2.0), DomainError);
  r.kernel_power = 0;
  CHECK_THROWS_AS(integrate_stieltjes(r, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(phi_integral_closed_form(0.0, 10), DomainError);
}

TEST_CASE("h integral at x = 1 carries the atom deficit") {
  // Phi(1) = 2 = 1 + e^{-gamma} + int h/(s+1), so the integral is 1 - e^{-gamma}.
  const auto est = integrate_stieltjes(request_for(density::make_h_density(), 1e-10), 1.0);
  CHECK(est.budget_met);
  CHECK(std::abs(est.value - (1.0 - kExpMinusGamma)) <= 1e-10);
  CHECK(std::abs(est.value - (1.0 - kExpMinusGamma)) <= est.total_error());
  CHECK(est.s_max >= 64.0);
}

TEST_CASE("h integral against high-precision log-free values") {
  // Phi(x) - 1 - e^{-gamma}/x from mpmath.
  struct Pair {
    double x;
    double expected;
  };
  for (const Pair& p : {Pair{0.1, 7.7187328169024700899 - 1.0 - kExpMinusGamma / 0.1},
                        Pair{2.0, 1.5909902576697319299 - 1.0 - kExpMinusGamma / 2.0},
                        Pair{100.0, 1.0276315155682365372 - 1.0 - kExpMinusGamma / 100.0}}) {
    CAPTURE(p.x);
    const auto est = integrate_stieltjes(request_for(density::make_h_density(), 1e-10), p.x);
    CHECK(std::abs(est.value - p.expected) <= est.total_error() + 1e-13);
    CHECK(est.total_error() <= 1e-10);
  }
}

TEST_CASE("closed form for the phi integral") {
  const auto prefix = phi_integral_closed_form(1.0, 0, SeriesTail::kNone);
  CHECK(std::abs(prefix.value - (-1.0 + 2.0 * kLn2)) <= 1e-15);

  const auto full = phi_integral_closed_form(1.0, 100000);
  CHECK(std::abs(full.value - kLn2) <= 1e-10);
  CHECK(std::abs(phi_integral_closed_form(1.0, 10).value - kLn2) <= 1e-10);

  // Without the tail the partial sums undershoot by less than the stated bound.
  for (int k : {1, 10, 100, 1000}) {
    CAPTURE(k);
    const auto partial = phi_integral_closed_form(1.0, k, SeriesTail::kNone);
    CHECK(partial.value < kLn2);
    CHECK(kLn2 - partial.value <= partial.truncation_error);
  }
  for (const auto& ref : kLogPhi) {
    CAPTURE(ref.x);
    CHECK(std::abs(phi_integral_closed_form(ref.x, 50).value - ref.log_phi) <= 1e-13);
  }
}

TEST_CASE("closed form agrees with adaptive quadrature") {
  const auto request = request_for(density::make_phi_density(), 1e-12);
  for (double x : {0.5, 1.0, 3.0, 10.0}) {
    CAPTURE(x);
    const auto closed = phi_integral_closed_form(x, 1000);
    const auto adaptive = integrate_stieltjes(request, x);
    CHECK(std::abs(closed.value - adaptive.value) <=
          closed.total_error() + adaptive.total_error());
  }
}

TEST_CASE("monotone refinement on phi") {
  for (double x : {0.3, 1.7, 12.0}) {
    CAPTURE(x);
    const double reference = phi_integral_closed_form(x, 2000).value;
    double previous = INFINITY;
    for (double target = 1e-4; target >= 1e-12; target *= 0.5) {
      CAPTURE(target);
      const auto est = integrate_stieltjes(request_for(density::make_phi_density(), target), x);
      const double err = std::abs(est.value - reference);
      // Below a few ulp the comparison is rounding noise.
      CHECK(err <= std::max(previous, 4e-16 * std::abs(reference)));
      previous = std::max(err, 1e-300);
    }
  }
}

TEST_CASE("error bounds are honest on phi") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> log_x(std::log(0.05), std::log(200.0));
  std::uniform_real_distribution<double> log_budget(std::log(1e-12), std::log(1e-5));
  int honest = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const double x = std::exp(log_x(rng));
    const double budget = std::exp(log_budget(rng));
    const auto est = integrate_stieltjes(request_for(density::make_phi_density(), budget), x);
    const auto reference = phi_integral_closed_form(x, 4000);
    if (std::abs(est.value - reference.value) <= est.total_error() + reference.total_error()) {
      ++honest;
    }
  }
  CHECK(honest >= 198);
}

TEST_CASE("breakpoint at 2 inside [1.5, 2.5]") {
  const std::function<double(double)> f = [](double s) {
    return density::h_density(s).value / (s + 1.0);
  };
  const std::vector<double> plain = {1.5, 2.5};
  const std::vector<double> split = {1.5, 2.0, 2.5};
  const auto without = adaptive_integrate(f, plain, 1e-12);
  const auto with = adaptive_integrate(f, split, 1e-12);
  CHECK(std::abs(without.value - with.value) <=
        without.discretization_error + with.discretization_error);
  CHECK(with.intervals_used <= without.intervals_used);

  // phi jumps at 2; only the split version reaches the budget cheaply.
  const std::function<double(double)> g = [](double s) { return density::phi_density(s); };
  const auto jump_split = adaptive_integrate(g, split, 1e-13);
  const double exact = 0.5 - std::log(2.0 / 1.5) + 0.5 - 2.0 * std::log(2.5 / 2.0);
  CHECK(std::abs(jump_split.value - exact) <= 1e-14);
  CHECK(jump_split.intervals_used <= 4);
}

TEST_CASE("complex shift gives negative imaginary part") {
  const auto request = request_for(density::make_phi_density(), 1e-10);
  for (double y : {0.01, 0.5, 3.0}) {
    for (double x : {-2.0, 0.0, 1.0, 7.0}) {
      CAPTURE(x);
      CAPTURE(y);
      const auto est = integrate_stieltjes(request, CutPlanePoint(x, y));
      CHECK(est.value.imag() < 0.0);
    }
  }
  // log Phi(2 + i) from mpmath.
  const auto at = integrate_stieltjes(request, CutPlanePoint(2.0, 1.0));
  CHECK(std::abs(at.value - cplx(0.41995410821126989177, -0.12197981659590611658)) <= 1e-10);
  const auto below = integrate_stieltjes(request, CutPlanePoint(2.0, -1.0));
  CHECK(std::abs(below.value - std::conj(at.value)) <= 1e-13);
}

TEST_CASE("sawtooth tail against direct summation") {
  // int_S^inf frac(s)/s (s+z)^{-m} ds: adaptive over 4000 cells, then the
  // analytic tail from there on.
  for (int power : {2, 3}) {
    for (double start : {1.0, 8.0, 64.0}) {
      CAPTURE(power);
      CAPTURE(start);
      const double x = 1.5;
      std::vector<double> edges;
      for (double s = start; s <= start + 4000.0; s += 1.0) edges.push_back(s);
      const std::function<double(double)> f = [x, power](double s) {
        return density::detail::sawtooth(s) * std::pow(s + x, -power);
      };
      const auto brute = adaptive_integrate(f, edges, 1e-15);
      const auto rest = detail::sawtooth_tail(x, start + 4000.0, power);
      const auto tail = detail::sawtooth_tail(x, start, power);
      const double tolerance = tail.truncation_error + rest.truncation_error + 1e-14;
      CHECK(std::abs(brute.value + rest.value - tail.value) <= tolerance);
      if (start == 64.0) CHECK(tail.truncation_error <= 1e-13);
    }
  }
  CHECK_THROWS_AS(detail::sawtooth_tail(1.0, 2.5, 1), std::invalid_argument);
}

TEST_CASE("higher kernel powers") {
  // int_0^1 ds/(s+1)^3 = (1 - 1/4)/2.
  auto r = request_for(density::make_indicator_density(0.0, 1.0), 1e-13);
  r.kernel_power = 3;
  CHECK(std::abs(integrate_stieltjes(r, 1.0).value - 0.375) <= 1e-14);
}

}  // TEST_SUITE
