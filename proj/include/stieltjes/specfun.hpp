// Special-function kernel: log-gamma on (0, inf) and on the cut plane
// C \ (-inf, 0], digamma by its logarithmic series, and log|Gamma(1 - s)|.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace stieltjes {

using cplx = std::complex<double>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Euler's constant, 0.5772156649015328606065120900824024310422...
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kLogPi = 1.14472988584940017414342735135305871;
inline constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;

/// A point of the cut plane C \ (-inf, 0]. Construction rejects points on
/// the cut, so holding one is proof of membership.
class CutPlanePoint {
 public:
  CutPlanePoint(double re, double im);
  explicit CutPlanePoint(cplx z) : CutPlanePoint(z.real(), z.imag()) {}

  double re() const { return re_; }
  double im() const { return im_; }
  cplx value() const { return {re_, im_}; }
  CutPlanePoint conj() const { return CutPlanePoint(re_, -im_); }

  static bool on_cut(double re, double im) { return im == 0.0 && !(re > 0.0); }

 private:
  double re_;
  double im_;
};

namespace specfun {

/// log Gamma(x) for x > 0. Relative error below 1e-14 on [1e-3, 1e6] away
/// from the zeros at 1 and 2, where the error is absolute at the 1e-16 level.
double log_gamma_pos(double x);

/// Branch of log Gamma(z) holomorphic on the cut plane and real on (0, inf).
/// This is not Log(Gamma(z)): the imaginary part is tracked continuously and
/// grows without bound along the negative axis.
cplx log_gamma_cut(const CutPlanePoint& z);

/// psi(x) = log x + sum_{k>=0} [log(1 + 1/(x+k)) - 1/(x+k)], summed directly
/// up to x+k >= 40 and closed with an Euler-Maclaurin tail.
double digamma(double x);

/// log|Gamma(1 - s)| for s >= 0, s not an integer.
double log_abs_gamma_one_minus(double s);

/// |sin(pi s)| from s reduced to [-1/2, 1/2] around the nearest integer.
double abs_sin_pi(double s);

namespace detail {

/// log Gamma(1 + eps) for |eps| <= 1/2 from the Taylor series in zeta(k) - 1.
double log_gamma_1p(double eps);
cplx log_gamma_1p(cplx eps);

/// Stirling remainder R(x) with log Gamma(x) = (x - 1/2) log x - x
/// + log(2 pi)/2 + R(x). Valid for x >= 10 (real) or |w| >= 10, Re w >= 0.
double stirling_remainder(double x);
cplx stirling_remainder(cplx w);

/// log(1 + u) - u without cancellation for small |u|.
double log1p_minus(double u);
cplx log1p_minus(cplx u);
cplx log1p(cplx u);

/// The two complex routes, exposed so tests can compare them where both are
/// valid. Both require Im z > 0.
cplx log_gamma_recurrence(cplx z);
cplx log_gamma_reflection(cplx z);

}  // namespace detail
}  // namespace specfun
}  // namespace stieltjes
