#include "stieltjes/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace stieltjes::quad {
namespace {

using density::PiecewiseDensity;
using density::TailModel;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 10-point Gauss / 21-point Kronrod pair (QUADPACK dqk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

double magnitude(double v) { return std::abs(v); }
double magnitude(cplx v) { return std::abs(v); }

// QUADPACK's error heuristic for one real component.
double component_error(double resk, double resg, double resabs, double resasc, double half) {
  double err = std::abs((resk - resg) * half);
  const double asc = resasc * std::abs(half);
  const double abs_sum = resabs * std::abs(half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * abs_sum, err);
  }
  return err;
}

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  /// Rounding level of the rule on this panel; bisecting below it is futile.
  double floor;
};

template <class T>
Panel<T> gauss_kronrod21(const std::function<T(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<T, 21> fv;
  fv[20] = f(center);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv[2 * j] = f(center - dx);
    fv[2 * j + 1] = f(center + dx);
  }
  T resk = kWgk[10] * fv[20];
  T resg = 0.0;
  for (int j = 0; j < 10; ++j) {
    const T pair = fv[2 * j] + fv[2 * j + 1];
    resk += kWgk[j] * pair;
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }

  double abs_total = 0.0;
  auto component = [&](auto pick) {
    const double k = pick(resk);
    const double g = pick(resg);
    double abs_sum = kWgk[10] * std::abs(pick(fv[20]));
    for (int j = 0; j < 10; ++j) {
      abs_sum += kWgk[j] * (std::abs(pick(fv[2 * j])) + std::abs(pick(fv[2 * j + 1])));
    }
    const double mean = 0.5 * k;
    double asc = kWgk[10] * std::abs(pick(fv[20]) - mean);
    for (int j = 0; j < 10; ++j) {
      asc += kWgk[j] * (std::abs(pick(fv[2 * j]) - mean) + std::abs(pick(fv[2 * j + 1]) - mean));
    }
    abs_total += abs_sum * std::abs(half);
    return component_error(k, g, abs_sum, asc, half);
  };

  double error;
  if constexpr (std::is_same_v<T, double>) {
    error = component([](double v) { return v; });
  } else {
    error = component([](cplx v) { return v.real(); }) +
            component([](cplx v) { return v.imag(); });
  }
  return {a, b, resk * half, error, 50.0 * kEps * abs_total};
}

// Neumaier summation, applied per real component.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <class T>
Estimate<T> adaptive_impl(const std::function<T(double)>& f, std::span<const double> edges,
                          double abs_tol, std::size_t max_intervals) {
  Estimate<T> out;
  if (edges.size() < 2) return out;

  std::vector<Panel<T>> panels;
  panels.reserve(edges.size() * 2);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) panels.push_back(gauss_kronrod21(f, edges[i], edges[i + 1]));
  }

  auto worse = [&panels](std::size_t l, std::size_t r) { return panels[l].error < panels[r].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  double total_error = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    total_error += panels[i].error;
    queue.push(i);
  }

  while (total_error > abs_tol && panels.size() < max_intervals && !queue.empty()) {
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel<T> parent = panels[worst];
    const double mid = 0.5 * (parent.a + parent.b);
    if (parent.error <= 1.01 * parent.floor || !(mid > parent.a && mid < parent.b) ||
        (parent.b - parent.a) <= 1e3 * kEps * std::max(std::abs(parent.a), 1e-300)) {
      continue;  // cannot be refined; its error stays in the total
    }
    panels[worst] = gauss_kronrod21(f, parent.a, mid);
    panels.push_back(gauss_kronrod21(f, mid, parent.b));
    total_error += panels[worst].error + panels.back().error - parent.error;
    queue.push(worst);
    queue.push(panels.size() - 1);
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel<T>& l, const Panel<T>& r) { return l.a < r.a; });
  CompensatedSum re;
  CompensatedSum im;
  CompensatedSum err;
  for (const auto& p : panels) {
    if constexpr (std::is_same_v<T, double>) {
      re.add(p.value);
    } else {
      re.add(p.value.real());
      im.add(p.value.imag());
    }
    err.add(p.error);
  }
  if constexpr (std::is_same_v<T, double>) {
    out.value = re.value();
  } else {
    out.value = cplx(re.value(), im.value());
  }
  out.discretization_error = err.value();
  out.intervals_used = panels.size();
  out.s_max = edges.back();
  out.budget_met = out.discretization_error <= abs_tol;
  return out;
}

std::vector<double> integer_edges(double from, double to) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(to - from) + 1);
  for (double s = from; s <= to; s += 1.0) edges.push_back(s);
  return edges;
}

std::vector<double> core_edges(const PiecewiseDensity& d, double upper) {
  std::vector<double> edges;
  for (double b : d.breakpoints) {
    if (b >= 0.0 && b < upper) edges.push_back(b);
  }
  if (edges.empty() || edges.front() > 0.0) edges.insert(edges.begin(), 0.0);
  if (d.unit_breakpoints_beyond) {
    double next = std::floor(edges.back()) + 1.0;
    for (; next < upper; next += 1.0) edges.push_back(next);
  }
  edges.push_back(upper);
  return edges;
}

// Sum over cells n >= N of int_0^1 r(n + t) k(n + t) dt, with the cell
// offset t as the outer variable. For fixed t the summand is smooth in n, so
// the sum is the midpoint Euler-Maclaurin form
//   int_{N-1/2}^inf F + F'(N-1/2)/24 - (7/5760) F'''(N-1/2),
// with the derivatives from finite differences at unit step.
template <class T, class Kernel>
Estimate<T> cell_sum_tail(const std::function<double(double, double)>& cell, const Kernel& kernel,
                          double first_cell, double tolerance) {
  const double nu0 = first_cell - 0.5;
  const double inner_tol = 1e-3 * tolerance;
  std::size_t inner_intervals = 0;
  const std::array<double, 2> unit = {0.0, 1.0};

  auto stencil = [&](double t) {
    auto f = [&](double nu) -> T { return cell(nu, t) * kernel(nu + t); };
    const T fm2 = f(nu0 - 2.0);
    const T fm1 = f(nu0 - 1.0);
    const T fp1 = f(nu0 + 1.0);
    const T fp2 = f(nu0 + 2.0);
    const T d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / 12.0;
    const T d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / 2.0;
    return std::pair<T, T>(d1, d3);
  };

  const std::function<T(double)> summed = [&](double t) -> T {
    const std::function<T(double)> mapped = [&](double u) -> T {
      const double nu = nu0 / u;
      return cell(nu, t) * kernel(nu + t) * (nu0 / (u * u));
    };
    const auto inner = adaptive_impl(mapped, std::span<const double>(unit), inner_tol, 10000);
    inner_intervals += inner.intervals_used;
    const auto [d1, d3] = stencil(t);
    return inner.value + d1 / 24.0 - (7.0 / 5760.0) * d3;
  };
  const std::function<double(double)> next_term = [&](double t) {
    return (7.0 / 5760.0) * magnitude(stencil(t).second);
  };

  Estimate<T> out = adaptive_impl(summed, std::span<const double>(unit), 0.5 * tolerance, 100000);
  const auto bound =
      adaptive_impl(next_term, std::span<const double>(unit), 0.05 * tolerance, 100000);
  out.discretization_error += inner_tol;
  // The applied third-derivative correction doubles as the truncation bound.
  out.truncation_error = bound.value + bound.discretization_error;
  out.intervals_used += inner_intervals;
  return out;
}

template <class T>
Estimate<T> integrate_impl(const IntegrationRequest& request, T z) {
  const PiecewiseDensity& d = request.density;
  const double budget = request.target_abs_error;
  const int power = request.kernel_power;
  if (!(budget >= kMinTargetError)) {
    throw std::invalid_argument("integrate_stieltjes: target_abs_error must be >= 1e-13");
  }
  if (power < 1) throw std::invalid_argument("integrate_stieltjes: kernel_power must be >= 1");
  if (!d.eval) throw std::invalid_argument("integrate_stieltjes: density has no evaluator");

  auto kernel = [z, power](double s) -> T {
    const T base = T(s) + z;
    if (power == 1) return T(1.0) / base;
    return std::pow(base, -static_cast<double>(power));
  };
  const auto& density_eval = d.eval;
  const std::function<T(double)> integrand = [&](double s) -> T {
    const double v = density_eval(s);
    return v == 0.0 ? T(0.0) : v * kernel(s);
  };

  if (d.tail.model == TailModel::kCompact) {
    Estimate<T> out;
    if (!(d.support_end > 0.0)) return out;
    const auto edges = core_edges(d, d.support_end);
    out = adaptive_impl(integrand, std::span<const double>(edges), budget, request.max_intervals);
    out.s_max = d.support_end;
    return out;
  }

  const double onset = std::max(1.0, std::ceil(d.tail.onset));
  double start = std::max(onset, std::ceil(4.0 * magnitude(z)));

  if (d.tail.model == TailModel::kSawtooth || d.tail.model == TailModel::kSawtoothRemainder) {
    if (d.tail.model == TailModel::kSawtoothRemainder && !d.cell_remainder) {
      throw std::invalid_argument("integrate_stieltjes: remainder tail needs cell_remainder");
    }
    // The tail expansions improve with the starting cell; move it out until
    // they fit in a fifth of the budget.
    constexpr double kMaxAnalyticStart = 1 << 14;
    Estimate<T> tail;
    while (true) {
      tail = detail::sawtooth_tail(z, start, power);
      if (d.tail.model == TailModel::kSawtoothRemainder) {
        const auto cells = cell_sum_tail<T>(d.cell_remainder, kernel, start, 0.4 * budget);
        tail.value += cells.value;
        tail.discretization_error += cells.discretization_error;
        tail.truncation_error += cells.truncation_error;
        tail.intervals_used += cells.intervals_used;
      }
      if (tail.truncation_error <= 0.1 * budget || start >= kMaxAnalyticStart) break;
      start *= 2.0;
    }
    const auto edges = core_edges(d, start);
    Estimate<T> out = adaptive_impl(integrand, std::span<const double>(edges), 0.5 * budget,
                                    request.max_intervals);
    out.value += tail.value;
    out.discretization_error += tail.discretization_error;
    out.truncation_error += tail.truncation_error;
    out.intervals_used += tail.intervals_used;
    out.s_max = start;
    out.budget_met = out.total_error() <= budget;
    return out;
  }

  const auto edges = core_edges(d, start);
  Estimate<T> out =
      adaptive_impl(integrand, std::span<const double>(edges), 0.5 * budget, request.max_intervals);
  out.s_max = start;

  const std::function<T(double)>& remainder = integrand;
  // Octave doubling until one octave contributes less than budget / 10.
  constexpr double kMaxTailStart = 1 << 24;
  double lower = start;
  double octave_tol = 0.05 * budget;
  bool stopped = false;
  while (!stopped) {
    const double upper = 2.0 * lower;
    std::vector<double> octave_edges;
    if (d.unit_breakpoints_beyond) {
      octave_edges = integer_edges(lower, upper);
    } else {
      for (int i = 0; i <= 16; ++i) octave_edges.push_back(lower + (upper - lower) * i / 16.0);
    }
    const auto part = adaptive_impl(remainder, std::span<const double>(octave_edges), octave_tol,
                                    request.max_intervals);
    out.value += part.value;
    out.discretization_error += part.discretization_error;
    out.intervals_used += part.intervals_used;
    out.s_max = upper;
    const double contribution = magnitude(part.value);
    if (contribution < 0.1 * budget) {
      out.truncation_error += contribution;
      stopped = true;
    } else if (upper >= kMaxTailStart) {
      out.truncation_error += contribution;
      stopped = true;
    }
    lower = upper;
    octave_tol *= 0.5;
  }
  out.budget_met = out.total_error() <= budget;
  return out;
}

}  // namespace

QuadratureEstimate adaptive_integrate(const std::function<double(double)>& f,
                                      std::span<const double> edges, double abs_tol,
                                      std::size_t max_intervals) {
  return adaptive_impl(f, edges, abs_tol, max_intervals);
}

ComplexEstimate adaptive_integrate(const std::function<cplx(double)>& f,
                                   std::span<const double> edges, double abs_tol,
                                   std::size_t max_intervals) {
  return adaptive_impl(f, edges, abs_tol, max_intervals);
}

QuadratureEstimate integrate_stieltjes(const IntegrationRequest& request, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("integrate_stieltjes: x must be finite and > 0 (the cut is excluded)");
  }
  return integrate_impl<double>(request, x);
}

ComplexEstimate integrate_stieltjes(const IntegrationRequest& request, const CutPlanePoint& z) {
  return integrate_impl<cplx>(request, z.value());
}

QuadratureEstimate phi_integral_closed_form(double x, int intervals, SeriesTail tail) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("phi_integral_closed_form: x must be finite and > 0");
  }
  if (intervals < 0) throw std::invalid_argument("phi_integral_closed_form: intervals must be >= 0");

  using specfun::detail::log1p_minus;
  const double u = 1.0 / x;
  CompensatedSum sum;
  double magnitude_sum = 0.0;
  // -1 + (x + 1) log(1 + 1/x)
  const double prefix = std::log1p(u) + log1p_minus(u) / u;
  sum.add(prefix);
  magnitude_sum += std::abs(prefix);
  for (int k = 1; k <= intervals; ++k) {
    // (1 + k/x) L1 - (k/x) L2 = L1 + (k/x) log(1 - x / ((x+k)(k+1)))
    const double kd = k;
    const double l1 = std::log1p(1.0 / (x + kd));
    const double term = l1 + (kd / x) * std::log1p(-x / ((x + kd) * (kd + 1.0)));
    sum.add(term);
    magnitude_sum += l1;
  }

  QuadratureEstimate out;
  out.intervals_used = static_cast<std::size_t>(intervals) + 1;
  out.s_max = intervals + 1.0;
  out.discretization_error = 4 * kEps * magnitude_sum;
  if (tail == SeriesTail::kNone) {
    // Each omitted term is at most 1/(2k^2); sum_{k>K} 1/k^2 < 1/K.
    out.value = sum.value();
    out.truncation_error = intervals == 0 ? 0.5 * 1.6449340668482264 : 0.5 / intervals;
    return out;
  }
  const auto rest = detail::sawtooth_tail(x, intervals + 1.0, 1);
  sum.add(rest.value);
  out.value = sum.value();
  out.truncation_error = rest.truncation_error;
  return out;
}

}  // namespace stieltjes::quad
