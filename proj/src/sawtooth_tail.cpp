#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stieltjes/quadrature.hpp"

namespace stieltjes::quad::detail {
namespace {

double magnitude(double v) { return std::abs(v); }
double magnitude(cplx v) { return std::abs(v); }

cplx log1p_generic(cplx u) { return specfun::detail::log1p(u); }
double log1p_generic(double u) { return std::log1p(u); }

// (m)_n, the rising factorial.
double rising(int m, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= (m + i);
  return r;
}

double factorial(int n) { return rising(1, n); }

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// int_S^inf ds / (s (s + z)^m)
template <class T>
T mean_integral(T z, double start, int power) {
  const T w = z / start;
  if (magnitude(w) <= 0.5) {
    // S^{-m} sum_j binom(-m, j) w^j / (m + j)
    T sum = 0.0;
    T w_pow = 1.0;
    double coeff = 1.0;
    for (int j = 0; j < 200; ++j) {
      const T term = coeff * w_pow / static_cast<double>(power + j);
      sum += term;
      if (j > 0 && magnitude(term) <= 1e-18 * magnitude(sum)) break;
      coeff *= -static_cast<double>(power + j) / (j + 1);
      w_pow *= w;
    }
    return sum * std::pow(start, -power);
  }
  // |z| comparable to S or larger: partial fractions upward from m = 1.
  T integral = log1p_generic(w) / z;
  for (int m = 2; m <= power; ++m) {
    integral = (integral - std::pow(start + z, static_cast<double>(1 - m)) / static_cast<double>(m - 1)) / z;
  }
  return integral;
}

// j-th derivative of g(s) = s^{-1} (s + z)^{-m} at s = S.
template <class T>
T g_derivative(T z, double start, int power, int order) {
  T sum = 0.0;
  for (int i = 0; i <= order; ++i) {
    const int rest = order - i;
    const double left = ((i % 2 == 0) ? 1.0 : -1.0) * factorial(i) * std::pow(start, -1 - i);
    const T right = ((rest % 2 == 0) ? 1.0 : -1.0) * rising(power, rest) *
                    std::pow(start + z, static_cast<double>(-power - rest));
    sum += binomial(order, i) * left * right;
  }
  return sum;
}

template <class T>
Estimate<T> sawtooth_tail_impl(T z, double start, int power) {
  if (!(start >= 1.0) || start != std::floor(start)) {
    throw std::invalid_argument("sawtooth_tail: start must be an integer >= 1");
  }
  if (power < 1) throw std::invalid_argument("sawtooth_tail: power must be >= 1");

  // B_{2j} / (2j)! for j = 1..4.
  constexpr std::array<double, 4> kBernoulli = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                                -1.0 / 1209600.0};
  T sawtooth = 0.0;
  for (int j = 0; j < 3; ++j) {
    sawtooth -= kBernoulli[j] * g_derivative(z, start, power, 2 * j);
  }
  const T next = kBernoulli[3] * g_derivative(z, start, power, 6);

  Estimate<T> out;
  out.value = 0.5 * mean_integral(z, start, power) + sawtooth;
  out.truncation_error =
      magnitude(next) + 8 * std::numeric_limits<double>::epsilon() * magnitude(out.value);
  out.s_max = start;
  return out;
}

}  // namespace

QuadratureEstimate sawtooth_tail(double x, double start, int power) {
  return sawtooth_tail_impl(x, start, power);
}

ComplexEstimate sawtooth_tail(cplx z, double start, int power) {
  return sawtooth_tail_impl(z, start, power);
}

}  // namespace stieltjes::quad::detail
