#pragma once

#include <complex>
#include <vector>

#include "nlb/grid.hpp"

namespace nlb {

/// Fourier coefficients of a real field under the convention
///   uhat(k) = (1/n) * sum_i f(x_i) e^{-i k x_i},  k = -n/2 .. n/2-1,
/// so uhat(k) approximates the Fourier coefficient (1/2pi) int u e^{-ikx} dx.
struct Spectrum {
  GridPtr grid;
  std::vector<std::complex<double>> coeffs;  ///< index j holds k = j - n/2

  int n() const { return grid ? grid->n : 0; }
  /// Coefficient at wavenumber k in [-n/2, n/2).
  std::complex<double> at(int k) const { return coeffs[k + n() / 2]; }
};

Spectrum dft(const Field& f);
Field idft(const Spectrum& s);

/// |uhat(k)| for k = 0..n/2 (half spectrum of a real field).
std::vector<double> mode_magnitudes(const Field& f);

/// sum_{|k| > kmin} |uhat| / sum_k |uhat|; the blow-up guard watches this.
double spectral_tail_ratio(const Field& f, int kmin);

}  // namespace nlb
