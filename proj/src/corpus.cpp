#include <cmath>

#include "stieltjes/analysis.hpp"

namespace stieltjes::analysis {
namespace {

// log Gamma(1 + w) on the cut plane; w must satisfy 1 + w in the cut plane.
cplx log_gamma_1p_cut(cplx w) {
  if (std::abs(w) <= 0.5) return specfun::detail::log_gamma_1p(w);
  return specfun::log_gamma_cut(CutPlanePoint(1.0 + w));
}

// Log(1 + w) / w.
cplx log1p_over(cplx w) {
  if (w == 0.0) return 1.0;
  return specfun::detail::log1p(w) / w;
}

// Branch pieces shared by the members, all real on (0, inf).
struct Pieces {
  cplx log_z;         // Log z
  cplx gamma_x;       // log Gamma(1 + z) / z
  cplx gamma_inv;     // z log Gamma(1 + 1/z)
  cplx power_x;       // z Log(1 + 1/z)
  cplx power_inv;     // Log(1 + z) / z
};

Pieces pieces(const CutPlanePoint& p) {
  const cplx z = p.value();
  const cplx u = 1.0 / z;
  Pieces out;
  out.log_z = std::log(z);
  out.gamma_x = log_gamma_1p_cut(z) / z;
  out.gamma_inv = log_gamma_1p_cut(u) * z;
  out.power_x = log1p_over(u);
  out.power_inv = log1p_over(z);
  if (p.im() == 0.0) {
    out.log_z.imag(0.0);
    out.gamma_x.imag(0.0);
    out.gamma_inv.imag(0.0);
    out.power_x.imag(0.0);
    out.power_inv.imag(0.0);
  }
  return out;
}

CorpusMember member(std::string name, std::string formula, cplx (*combine)(const Pieces&)) {
  CorpusMember m;
  m.name = std::move(name);
  m.formula = std::move(formula);
  m.log_f = [combine](const CutPlanePoint& z) { return combine(pieces(z)); };
  m.f = [combine](const CutPlanePoint& z) { return std::exp(combine(pieces(z))); };
  return m;
}

}  // namespace

RealSampler on_real_axis(const ComplexSampler& f) {
  return [f](double x) { return f(CutPlanePoint(x, 0.0)).real(); };
}

std::vector<CorpusMember> remark_corpus() {
  std::vector<CorpusMember> corpus;
  corpus.push_back(member("inv_gamma_root_power", "1/(Gamma(1+x)^(1/x) (1+1/x)^x)",
                          [](const Pieces& p) { return -p.gamma_x - p.power_x; }));
  corpus.push_back(member("gamma_inv_power", "Gamma(1+1/x)^x (1+x)^(1/x)",
                          [](const Pieces& p) { return p.gamma_inv + p.power_inv; }));
  corpus.push_back(member("inv_x_gamma_inv_power", "1/(x Gamma(1+1/x)^x (1+x)^(1/x))",
                          [](const Pieces& p) { return -p.log_z - p.gamma_inv - p.power_inv; }));
  corpus.push_back(member("gamma_root_over_x", "Gamma(1+x)^(1/x)/x",
                          [](const Pieces& p) { return p.gamma_x - p.log_z; }));
  corpus.push_back(member("inv_gamma_root", "1/Gamma(1+x)^(1/x)",
                          [](const Pieces& p) { return -p.gamma_x; }));
  corpus.push_back(member("inv_x_gamma_inv", "1/(x Gamma(1+1/x)^x)",
                          [](const Pieces& p) { return -p.log_z - p.gamma_inv; }));
  return corpus;
}

}  // namespace stieltjes::analysis
