#include "nlb/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nlb {

std::string KernelSpec::name() const {
  return mode == KernelMode::paper_exact ? "paper" : "spectral";
}

KernelSpec KernelSpec::from_name(const std::string& name) {
  if (name == "paper" || name == "paper_exact") return KernelSpec::paper_exact();
  if (name == "spectral" || name == "spectrally_consistent") return KernelSpec::spectral();
  throw std::invalid_argument("unknown kernel mode '" + name + "' (expected paper|spectral)");
}

double periodic_kernel(double z, const KernelSpec& spec) {
  const double s = std::sin(0.5 * z);
  if (s == 0.0) throw std::domain_error("periodic_kernel: z = 0 mod 2pi");
  return spec.c1 / (4.0 * s * s);
}

double regularized_kernel(double z, double delta, const KernelSpec& spec) {
  if (delta <= 0.0) throw std::invalid_argument("regularized_kernel: delta must be > 0");
  return spec.c1 / (delta * delta + z * z);
}

double regularized_symbol(double xi, double delta) {
  const double a = delta * std::fabs(xi);
  // (1/delta)(1 - e^{-a}) = |xi| * (1 - e^{-a})/a; expm1 keeps small-a accuracy.
  if (a == 0.0) return 0.0;
  return -std::expm1(-a) / delta;
}

double w_kernel(double ux, double uy, double z, const KernelSpec& spec) {
  if (ux <= 0.0 || uy <= 0.0)
    throw std::domain_error("w_kernel: requires ux > 0 and uy > 0");
  const double hm = 2.0 * ux * uy / (ux + uy);
  return hm * periodic_kernel(z, spec);
}

EllipticityBound ellipticity_of(const Field& u) {
  const auto ex = extrema(u);
  if (ex.min <= 0.0) throw std::domain_error("ellipticity_of: field must be positive");
  return EllipticityBound{std::max(ex.max, 1.0 / ex.min)};
}

namespace {
std::mutex g_quad_mu;
std::map<std::pair<int, int>, QuadKernel>& quad_cache() {
  static std::map<std::pair<int, int>, QuadKernel> c;
  return c;
}
}  // namespace

const QuadKernel& quad_kernel_for(const Grid& grid, const KernelSpec& spec) {
  const std::pair<int, int> key{grid.n, static_cast<int>(spec.mode)};
  std::lock_guard<std::mutex> lk(g_quad_mu);
  auto& c = quad_cache();
  auto it = c.find(key);
  if (it != c.end()) return it->second;

  QuadKernel qk;
  qk.row.assign(grid.n, 0.0);
  double w = 0.0;
  for (int d = 1; d < grid.n; ++d) {
    const double s = std::sin(0.5 * d * grid.mesh);
    qk.row[d] = spec.c1 / (4.0 * s * s);
    w += qk.row[d];
  }
  qk.weight_sum = grid.mesh * w;
  return c.emplace(key, std::move(qk)).first->second;
}

}  // namespace nlb
