#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace nlb::detail {

/// FFTW workspace for one grid size n, together with the 3n/2-point partner
/// grid used for de-aliased quadratic products. Plans use FFTW_ESTIMATE so the
/// chosen algorithm (and hence rounding) is identical across runs.
///
/// Not internally synchronized: callers hold mutex() for the duration of a
/// transform sequence.
class FftEngine {
 public:
  explicit FftEngine(int n);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  int n() const { return n_; }
  int fine_n() const { return m_; }
  std::mutex& mutex() { return mu_; }

  /// Half spectrum of a real field, normalized: bins[k] = uhat(k), k = 0..n/2
  /// (bins has n/2+1 entries; the FFT index convention, no basis phase).
  void forward(const double* in, std::complex<double>* bins);

  /// Synthesis f_j = sum_k uhat(k) e^{2 pi i jk/n} from the half spectrum.
  void inverse(const std::complex<double>* bins, double* out);

  /// Evaluates modes 0..n/2-1 on the fine (3n/2) grid; the Nyquist bin is
  /// ignored (the de-aliased product space carries |k| < n/2 only).
  void to_fine(const std::complex<double>* bins, double* fine);

  /// Projects a fine-grid signal onto bins 0..n/2-1; the Nyquist bin is zeroed.
  /// Together with to_fine this realizes the exact 3/2-rule product.
  void from_fine(const double* fine, std::complex<double>* bins);

  // Scratch owned by the engine so hot loops avoid reallocation. Valid while
  // the mutex is held.
  std::vector<std::complex<double>> bins_a, bins_b, bins_c;
  std::vector<double> fine_a, fine_b;

 private:
  int n_, m_;
  std::mutex mu_;
  double* rbuf_n_ = nullptr;
  double* rbuf_m_ = nullptr;
  fftw_complex* cbuf_n_ = nullptr;
  fftw_complex* cbuf_m_ = nullptr;
  fftw_plan fwd_n_{}, inv_n_{}, fwd_m_{}, inv_m_{};
};

/// Process-wide engine cache keyed by n.
std::shared_ptr<FftEngine> engine_for(int n);

}  // namespace nlb::detail
