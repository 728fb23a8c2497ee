#include "nlb/spectral.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "fft_engine.hpp"

namespace nlb {

// The grid starts at x_0 = -pi while the FFT indexes from zero, so the
// mathematical coefficient uhat(k) = (1/n) sum f e^{-ik x_i} carries the basis
// phase e^{ik pi} = (-1)^k relative to the raw FFT bin.

Spectrum dft(const Field& f) {
  const int n = f.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  eng->forward(f.values.data(), bins.data());

  Spectrum s;
  s.grid = f.grid;
  s.coeffs.assign(n, {0.0, 0.0});
  for (int k = -n / 2; k < n / 2; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const std::complex<double> raw = (k >= 0) ? bins[k] : std::conj(bins[-k]);
    s.coeffs[k + n / 2] = sign * raw;
  }
  return s;
}

Field idft(const Spectrum& s) {
  const int n = s.n();
  if (n == 0) throw std::invalid_argument("idft: empty spectrum");
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  // Fold k and -k into the half spectrum, undoing the basis phase. The
  // Nyquist coefficient lives at k = -n/2 only.
  for (int k = 0; k <= n / 2; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const std::complex<double> c = (k < n / 2) ? s.coeffs[k + n / 2] : s.coeffs[0];
    bins[k] = sign * c;
  }
  std::vector<double> out(n);
  eng->inverse(bins.data(), out.data());
  return detail::wrap_field(s.grid, std::move(out));
}

std::vector<double> mode_magnitudes(const Field& f) {
  const int n = f.grid->n;
  auto eng = detail::engine_for(n);
  std::lock_guard<std::mutex> lk(eng->mutex());
  auto& bins = eng->bins_a;
  eng->forward(f.values.data(), bins.data());
  std::vector<double> mags(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) mags[k] = std::abs(bins[k]);
  return mags;
}

double spectral_tail_ratio(const Field& f, int kmin) {
  const auto mags = mode_magnitudes(f);
  const int n = f.grid->n;
  double total = mags[0] + mags[n / 2];
  double tail = (kmin < n / 2) ? mags[n / 2] : 0.0;
  for (int k = 1; k < n / 2; ++k) {
    total += 2.0 * mags[k];
    if (k > kmin) tail += 2.0 * mags[k];
  }
  if (total == 0.0) return 0.0;
  return tail / total;
}

}  // namespace nlb
