#include "nlb/dynamics.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "fft_engine.hpp"
#include "nlb/operators.hpp"
#include "parallel.hpp"

namespace nlb {

std::string form_name(EquationForm form) {
  switch (form) {
    case EquationForm::u_quadrature: return "u_quadrature";
    case EquationForm::u_spectral: return "u_spectral";
    case EquationForm::w_symmetrized: return "w";
    case EquationForm::v_fluctuation: return "v";
    case EquationForm::frozen: return "frozen";
  }
  return "u_spectral";
}

EquationForm form_from_name(const std::string& name) {
  if (name == "u_quadrature") return EquationForm::u_quadrature;
  if (name == "u_spectral") return EquationForm::u_spectral;
  if (name == "w" || name == "w_symmetrized") return EquationForm::w_symmetrized;
  if (name == "v" || name == "v_fluctuation") return EquationForm::v_fluctuation;
  if (name == "frozen") return EquationForm::frozen;
  throw std::invalid_argument("unknown form '" + name +
                              "' (expected u_quadrature|u_spectral|w|v|frozen)");
}

Field rhs_u_quadrature(const Field& u, const KernelSpec& spec) {
  return pv_apply(u, u, spec);
}

namespace {

// Nonlinearity N(f) = f |grad|f - |grad|(f^2) evaluated through 3/2-rule
// padded grids. Both products are formed exactly on the fine grid and
// truncated back to |k| < n/2, so <f, N(f)> vanishes identically: the
// retained product modes are alias-free and |grad| is self-adjoint on them.
// Caller holds the engine mutex. Outputs: bins_n = N's half spectrum,
// bins_d = |k| f's half spectrum (both with zeroed Nyquist).
void nonlinear_bins(detail::FftEngine& eng, const double* f,
                    std::complex<double>* bins_n, std::complex<double>* bins_d) {
  const int n = eng.n();
  const int m = eng.fine_n();
  auto& bu = eng.bins_c;
  eng.forward(f, bu.data());
  bu[n / 2] = 0.0;  // spectral path carries modes |k| < n/2
  for (int k = 0; k <= n / 2; ++k) bins_d[k] = static_cast<double>(k) * bu[k];

  double* uf = eng.fine_a.data();
  double* df = eng.fine_b.data();
  eng.to_fine(bu.data(), uf);
  eng.to_fine(bins_d, df);
  for (int j = 0; j < m; ++j) {
    const double uj = uf[j];
    df[j] = uj * df[j];  // f * |grad|f on the fine grid
    uf[j] = uj * uj;     // f^2
  }
  eng.from_fine(df, bins_n);
  eng.from_fine(uf, bu.data());
  for (int k = 0; k < n / 2; ++k) bins_n[k] -= static_cast<double>(k) * bu[k];
  bins_n[n / 2] = 0.0;
}

}  // namespace

Field rhs_u_spectral(const Field& u) {
  const int n = u.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  nonlinear_bins(*eng, u.values.data(), eng->bins_a.data(), eng->bins_b.data());
  std::vector<double> out(n);
  eng->inverse(eng->bins_a.data(), out.data());
  return detail::wrap_field(u.grid, std::move(out));
}

Field rhs_w(const Field& w, const KernelSpec& spec) {
  const int n = w.grid->n;
  for (double v : w.values)
    if (v <= 0.0) throw std::domain_error("rhs_w: w must be strictly positive");
  const auto& qk = quad_kernel_for(*w.grid, spec);
  const double delta = w.grid->mesh;
  const double* wv = w.values.data();
  const double* row = qk.row.data();

  std::vector<double> s(n);  // u = sqrt(w) feeds the harmonic-mean weight
  for (int i = 0; i < n; ++i) s[i] = std::sqrt(wv[i]);

  std::vector<double> out(n);
  detail::parallel_over(n, [&](int i) {
    const double wi = wv[i];
    const double si = s[i];
    double sum = 0.0, comp = 0.0;
    for (int d = 1; d < n; ++d) {
      int j = i + d;
      if (j >= n) j -= n;
      const double hm = 2.0 * si * s[j] / (si + s[j]);
      const double term = row[d] * hm * (wv[j] - wi);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    out[i] = delta * sum;
  });
  return detail::wrap_field(w.grid, std::move(out));
}

double mu_rate(const Field& v) { return h_half_seminorm_sq(v) / kTwoPi; }

namespace {

void require_zero_mean(const Field& v, const char* who) {
  if (std::fabs(mean_value(v)) > 1e-10)
    throw std::invalid_argument(std::string(who) + ": field must have zero mean");
}

}  // namespace

Field rhs_v_fluctuation(const Field& v, double mu) {
  require_zero_mean(v, "rhs_v_fluctuation");
  const int n = v.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  nonlinear_bins(*eng, v.values.data(), eng->bins_a.data(), eng->bins_b.data());
  std::vector<double> nl(n), habs(n);
  eng->inverse(eng->bins_a.data(), nl.data());
  eng->inverse(eng->bins_b.data(), habs.data());
  std::vector<double> out(n);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    out[j] = nl[j] - mu * habs[j];
    acc += out[j];
  }
  const double mean = acc / n;
  for (double& o : out) o -= mean;
  return detail::wrap_field(v.grid, std::move(out));
}

Field rhs_frozen(const Field& v) {
  const int n = v.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  nonlinear_bins(*eng, v.values.data(), eng->bins_a.data(), eng->bins_b.data());
  std::vector<double> out(n);
  eng->inverse(eng->bins_a.data(), out.data());
  double acc = 0.0;
  for (double o : out) acc += o;
  const double mean = acc / n;
  for (double& o : out) o -= mean;
  return detail::wrap_field(v.grid, std::move(out));
}

FemSystem fem_assemble(const GridPtr& grid) {
  if (!grid) throw std::invalid_argument("fem_assemble: null grid");
  FemSystem sys;
  sys.grid = grid;
  const double h = grid->mesh / 6.0;
  sys.mass_stencil = {h, 4.0 * h, h};
  sys.mass_eigs.resize(grid->n);
  for (int k = 0; k < grid->n; ++k)
    sys.mass_eigs[k] = h * (4.0 + 2.0 * std::cos(kTwoPi * k / grid->n));
  return sys;
}

Field fem_rhs(const FemSystem& sys, const Field& U, const KernelSpec& spec) {
  if (!U.grid || U.grid->n != sys.grid->n)
    throw std::invalid_argument("fem_rhs: field grid does not match the system");
  const int n = sys.grid->n;
  // Collocated load: J = delta * quadrature RHS, then the circulant mass
  // solve is a per-mode division by the DFT eigenvalues of A.
  Field q = rhs_u_quadrature(U, spec);
  const double delta = sys.grid->mesh;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  eng->forward(q.values.data(), bins.data());
  for (int k = 0; k <= n / 2; ++k) bins[k] *= delta / sys.mass_eigs[k];
  std::vector<double> out(n);
  eng->inverse(bins.data(), out.data());
  return detail::wrap_field(U.grid, std::move(out));
}

double fem_energy(const FemSystem& sys, const Field& U) {
  const int n = sys.grid->n;
  const double* u = U.values.data();
  double diag = 0.0, off = 0.0;
  for (int i = 0; i < n; ++i) {
    diag += u[i] * u[i];
    off += u[i] * u[(i + 1 == n) ? 0 : i + 1];
  }
  const double h = sys.grid->mesh / 6.0;
  return h * (4.0 * diag + 2.0 * off);
}

}  // namespace nlb
