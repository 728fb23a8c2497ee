#include "nlb/operators.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "fft_engine.hpp"
#include "nlb/kernels.hpp"
#include "parallel.hpp"

namespace nlb {

namespace {

/// Applies a real multiplier m(k), k = 0..n/2, in Fourier space.
template <typename MultFn>
Field apply_multiplier(const Field& f, MultFn&& mult) {
  const int n = f.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  eng->forward(f.values.data(), bins.data());
  for (int k = 0; k <= n / 2; ++k) bins[k] *= mult(k);
  std::vector<double> out(n);
  eng->inverse(bins.data(), out.data());
  return detail::wrap_field(f.grid, std::move(out));
}

}  // namespace

Field halflap_spectral(const Field& f) {
  return apply_multiplier(f, [](int k) { return static_cast<double>(k); });
}

Field halflap_delta(const Field& f, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("halflap_delta: delta must be > 0");
  return apply_multiplier(
      f, [delta](int k) { return regularized_symbol(static_cast<double>(k), delta); });
}

Field grad_spectral(const Field& f) {
  const int n = f.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  eng->forward(f.values.data(), bins.data());
  for (int k = 0; k < n / 2; ++k)
    bins[k] = std::complex<double>(0.0, static_cast<double>(k)) * bins[k];
  bins[n / 2] = 0.0;  // the odd Nyquist mode has no real-valued derivative
  std::vector<double> out(n);
  eng->inverse(bins.data(), out.data());
  return detail::wrap_field(f.grid, std::move(out));
}

Field pv_apply(const Field& f, const Field& g, const KernelSpec& spec) {
  if (!same_grid(f, g)) throw std::invalid_argument("pv_apply: fields on different grids");
  const auto& qk = quad_kernel_for(*f.grid, spec);
  const int n = f.grid->n;
  const double delta = f.grid->mesh;
  const double* fv = f.values.data();
  const double* gv = g.values.data();
  const double* row = qk.row.data();
  std::vector<double> out(n);
  detail::parallel_over(n, [&](int i) {
    const double fi = fv[i];
    // Offset-ascending Kahan sum: deterministic, and the same term sequence
    // for every output node, which makes grid shifts exactly equivariant.
    double sum = 0.0, comp = 0.0;
    for (int d = 1; d < n; ++d) {
      int j = i + d;
      if (j >= n) j -= n;
      const double term = row[d] * (fv[j] - fi) * gv[j];
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    out[i] = delta * sum;
  });
  return detail::wrap_field(f.grid, std::move(out));
}

double h_half_seminorm_sq(const Field& f) {
  const int n = f.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  eng->forward(f.values.data(), bins.data());
  double s = 0.0;
  for (int k = 1; k < n / 2; ++k) s += 2.0 * k * std::norm(bins[k]);
  s += (n / 2) * std::norm(bins[n / 2]);  // k = -n/2 appears once
  return kTwoPi * s;
}

double analytic_norm(const Field& f, double rho) {
  if (rho < 0.0) throw std::invalid_argument("analytic_norm: rho must be >= 0");
  const int n = f.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  eng->forward(f.values.data(), bins.data());
  double s = std::abs(bins[0]);
  for (int k = 1; k < n / 2; ++k) s += 2.0 * std::exp(k * rho) * std::abs(bins[k]);
  s += std::exp((n / 2) * rho) * std::abs(bins[n / 2]);
  return s;
}

SeminormReport seminorm_report(const Field& f, std::span<const double> rhos) {
  SeminormReport rep;
  rep.h_half_sq = h_half_seminorm_sq(f);
  for (double rho : rhos) rep.analytic[rho] = analytic_norm(f, rho);
  return rep;
}

}  // namespace nlb
