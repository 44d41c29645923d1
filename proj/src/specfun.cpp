#include "stieltjes/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <type_traits>

namespace stieltjes {

CutPlanePoint::CutPlanePoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw DomainError("CutPlanePoint: non-finite coordinate");
  }
  if (on_cut(re, im)) {
    throw DomainError("CutPlanePoint: point lies on the cut (-inf, 0]");
  }
}

namespace specfun {
namespace {

// zeta(k) - 1 for k = 2..41, from mpmath at 40 digits, rounded to 21.
constexpr std::array<double, 40> kZetaMinusOne = {
    0.644934066848226436472,    0.2020569031595942854,
    0.082323233711138191516,    0.0369277551433699263314,
    0.0173430619844491397145,   0.0083492773819228268398,
    0.00407735619794433937869,  0.00200839282608221441785,
    0.000994575127818085337146, 0.000494188604119464558702,
    0.000246086553308048298638, 0.000122713347578489146752,
    0.0000612481350587048292585, 0.0000305882363070204935517,
    0.0000152822594086518717326, 0.0000076371976378997622736,
    0.00000381729326499983985646, 0.00000190821271655393892566,
    9.53962033872796113152e-7,  4.76932986787806463117e-7,
    2.38450502727732990004e-7,  1.19219925965311073068e-7,
    5.96081890512594796124e-8,  2.98035035146522801861e-8,
    1.49015548283650412347e-8,  7.45071178983542949198e-9,
    3.72533402478845705482e-9,  1.8626597235130490064e-9,
    9.31327432419668182872e-10, 4.65662906503378407299e-10,
    2.328311833676505492e-10,   1.16415501727005197759e-10,
    5.82077208790270088924e-11, 2.91038504449709968693e-11,
    1.45519218910419842359e-11, 7.27595983505748101452e-12,
    3.63797954737865119024e-12, 1.81898965030706594758e-12,
    9.09494784026388928253e-13, 4.5474737830421540268e-13,
};

// B_{2k} / (2k (2k-1)), k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

constexpr double kStirlingThreshold = 10.0;
constexpr double kReflectionThreshold = -50.0;
constexpr double kLog2 = 0.69314718055994530941723212145817657;

// sum_{k>=2} (-1)^k (zeta(k) - 1) eps^k / k, Horner in eps, divided by eps^2.
template <class T>
T zeta_series(T eps) {
  T p = 0.0;
  for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
    const double k = static_cast<double>(i + 2);
    const double c = ((i % 2 == 0) ? 1.0 : -1.0) * kZetaMinusOne[i] / k;
    p = p * eps + c;
  }
  return p;
}

template <class T>
T stirling_sum(T w) {
  const T t = 1.0 / (w * w);
  T p = 0.0;
  for (std::size_t i = kStirling.size(); i-- > 0;) p = p * t + kStirling[i];
  return p / w;
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0");
  }
}

// f^{(n)}(t) for f(t) = log(1 + 1/t) - 1/t.
double digamma_term_derivative(int n, double t) {
  double fact_nm1 = 1.0;
  for (int i = 2; i < n; ++i) fact_nm1 *= i;
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n-1}
  const double logs = sign * fact_nm1 * (std::pow(t + 1.0, -n) - std::pow(t, -n));
  return logs + sign * fact_nm1 * n * std::pow(t, -n - 1);
}

}  // namespace

namespace detail {

cplx log1p(cplx u) {
  const double re = u.real();
  const double im = u.imag();
  const double mod_arg = 2.0 * re + re * re + im * im;  // |1+u|^2 - 1
  return {0.5 * std::log1p(mod_arg), std::atan2(im, 1.0 + re)};
}

template <class T>
T log1p_minus_impl(T u) {
  if (std::abs(u) < 0.25) {
    // -u^2/2 + u^3/3 - ... ; 40 terms reach 4^-40 relative to u^2.
    T p = 0.0;
    for (int j = 41; j >= 2; --j) p = p * (-u) + 1.0 / j;
    return -u * u * p;
  }
  if constexpr (std::is_same_v<T, double>) {
    return std::log1p(u) - u;
  } else {
    return log1p(u) - u;
  }
}

double log1p_minus(double u) { return log1p_minus_impl(u); }
cplx log1p_minus(cplx u) { return log1p_minus_impl(u); }

double log_gamma_1p(double eps) {
  return -log1p_minus(eps) - kEulerGamma * eps + eps * eps * zeta_series(eps);
}

cplx log_gamma_1p(cplx eps) {
  return -log1p_minus(eps) - kEulerGamma * eps + eps * eps * zeta_series(eps);
}

double stirling_remainder(double x) { return stirling_sum(x); }

cplx stirling_remainder(cplx w) { return stirling_sum(w); }

cplx log_gamma_recurrence(cplx z) {
  // Shift right until Stirling applies; each z + k stays in the upper
  // half-plane, so summing principal logs never crosses a cut.
  int n = 0;
  if (z.real() < 1.0) n = static_cast<int>(std::ceil(1.0 - z.real()));
  while (std::abs(z + static_cast<double>(n)) < kStirlingThreshold) ++n;
  const cplx w = z + static_cast<double>(n);
  cplx result = (w - 0.5) * std::log(w) - w + kHalfLog2Pi + stirling_sum(w);
  for (int k = 0; k < n; ++k) result -= std::log(z + static_cast<double>(k));
  return result;
}

cplx log_gamma_reflection(cplx z) {
  // log Gamma(z) = log pi - L(z) - log Gamma(1 - z), where
  // L(z) = -i pi z + Log(1 - e^{2 pi i z}) + i pi/2 - log 2 is the branch of
  // log sin(pi z) continuous on Im z > 0 and real on (0, 1).
  const double a = z.real();
  const double b = z.imag();
  const double frac = a - std::nearbyint(a);
  const double decay = std::exp(-2.0 * kPi * b);
  const cplx q(decay * std::cos(2.0 * kPi * frac), decay * std::sin(2.0 * kPi * frac));
  const cplx log_sin = cplx(kPi * b - kLog2, 0.5 * kPi - kPi * a) + log1p(-q);
  const cplx lg_one_minus = std::conj(log_gamma_recurrence(cplx(1.0 - a, b)));
  return kLogPi - log_sin - lg_one_minus;
}

}  // namespace detail

double log_gamma_pos(double x) {
  require_positive(x, "log_gamma_pos");
  if (x < 0.5) return detail::log_gamma_1p(x) - std::log(x);
  if (x < 1.5) return detail::log_gamma_1p(x - 1.0);
  if (x < 2.5) {
    const double eps = x - 2.0;
    return std::log1p(eps) + detail::log_gamma_1p(eps);
  }
  if (x < kStirlingThreshold) {
    double product = 1.0;
    double y = x;
    while (y >= 2.5) {
      y -= 1.0;
      product *= y;
    }
    return std::log(product) + log_gamma_pos(y);
  }
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_sum(x);
}

cplx log_gamma_cut(const CutPlanePoint& point) {
  if (point.im() == 0.0) return {log_gamma_pos(point.re()), 0.0};
  if (point.im() < 0.0) return std::conj(log_gamma_cut(point.conj()));

  const cplx z = point.value();
  if (std::abs(z - 1.0) <= 0.5) return detail::log_gamma_1p(z - 1.0);
  if (std::abs(z - 2.0) <= 0.5) {
    const cplx eps = z - 2.0;
    return detail::log1p(eps) + detail::log_gamma_1p(eps);
  }
  if (z.real() < kReflectionThreshold) return detail::log_gamma_reflection(z);
  return detail::log_gamma_recurrence(z);
}

double digamma(double x) {
  require_positive(x, "digamma");
  constexpr double kTailStart = 40.0;
  double sum = 0.0;
  double t = x;
  for (int k = 1; t < kTailStart; ++k) {
    sum += detail::log1p_minus(1.0 / t);
    t = x + k;
  }
  // Euler-Maclaurin for sum_{k>=0} f(t + k), f(t) = log(1 + 1/t) - 1/t:
  // int_t^inf f = -(log1p(u) + (log1p(u) - u)/u) with u = 1/t.
  const double u = 1.0 / t;
  const double integral = -(std::log1p(u) + detail::log1p_minus(u) / u);
  const double tail = integral + 0.5 * detail::log1p_minus(u) -
                      digamma_term_derivative(1, t) / 12.0 +
                      digamma_term_derivative(3, t) / 720.0 -
                      digamma_term_derivative(5, t) / 30240.0;
  return std::log(x) + sum + tail;
}

double abs_sin_pi(double s) {
  const double r = s - std::nearbyint(s);
  return std::abs(std::sin(kPi * r));
}

double log_abs_gamma_one_minus(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw DomainError("log_abs_gamma_one_minus: s must be finite and >= 0");
  }
  if (s < 0.5) return detail::log_gamma_1p(-s);
  if (s < 1.0) return log_gamma_pos(1.0 - s);
  if (s == std::nearbyint(s)) {
    throw DomainError("log_abs_gamma_one_minus: pole of Gamma(1 - s) at integer s");
  }
  return kLogPi - std::log(abs_sin_pi(s)) - log_gamma_pos(s);
}

}  // namespace specfun
}  // namespace stieltjes
