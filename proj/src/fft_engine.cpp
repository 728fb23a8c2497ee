#include "fft_engine.hpp"

#include <cstring>
#include <map>
#include <stdexcept>

namespace nlb::detail {

namespace {
std::mutex g_cache_mu;
std::map<int, std::shared_ptr<FftEngine>>& cache() {
  static std::map<int, std::shared_ptr<FftEngine>> c;
  return c;
}
// FFTW plan creation is not thread-safe; serialize it.
std::mutex g_plan_mu;
}  // namespace

FftEngine::FftEngine(int n) : n_(n), m_(3 * n / 2) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("FftEngine: n must be even and >= 4");
  rbuf_n_ = fftw_alloc_real(n_);
  rbuf_m_ = fftw_alloc_real(m_);
  cbuf_n_ = fftw_alloc_complex(n_ / 2 + 1);
  cbuf_m_ = fftw_alloc_complex(m_ / 2 + 1);
  {
    std::lock_guard<std::mutex> lk(g_plan_mu);
    fwd_n_ = fftw_plan_dft_r2c_1d(n_, rbuf_n_, cbuf_n_, FFTW_ESTIMATE);
    inv_n_ = fftw_plan_dft_c2r_1d(n_, cbuf_n_, rbuf_n_, FFTW_ESTIMATE);
    fwd_m_ = fftw_plan_dft_r2c_1d(m_, rbuf_m_, cbuf_m_, FFTW_ESTIMATE);
    inv_m_ = fftw_plan_dft_c2r_1d(m_, cbuf_m_, rbuf_m_, FFTW_ESTIMATE);
  }
  bins_a.resize(n_ / 2 + 1);
  bins_b.resize(n_ / 2 + 1);
  bins_c.resize(n_ / 2 + 1);
  fine_a.resize(m_);
  fine_b.resize(m_);
}

FftEngine::~FftEngine() {
  std::lock_guard<std::mutex> lk(g_plan_mu);
  fftw_destroy_plan(fwd_n_);
  fftw_destroy_plan(inv_n_);
  fftw_destroy_plan(fwd_m_);
  fftw_destroy_plan(inv_m_);
  fftw_free(rbuf_n_);
  fftw_free(rbuf_m_);
  fftw_free(cbuf_n_);
  fftw_free(cbuf_m_);
}

void FftEngine::forward(const double* in, std::complex<double>* bins) {
  std::memcpy(rbuf_n_, in, sizeof(double) * n_);
  fftw_execute(fwd_n_);
  const double inv_n = 1.0 / n_;
  for (int k = 0; k <= n_ / 2; ++k)
    bins[k] = std::complex<double>(cbuf_n_[k][0], cbuf_n_[k][1]) * inv_n;
}

void FftEngine::inverse(const std::complex<double>* bins, double* out) {
  for (int k = 0; k <= n_ / 2; ++k) {
    cbuf_n_[k][0] = bins[k].real();
    cbuf_n_[k][1] = bins[k].imag();
  }
  fftw_execute(inv_n_);
  std::memcpy(out, rbuf_n_, sizeof(double) * n_);
}

void FftEngine::to_fine(const std::complex<double>* bins, double* fine) {
  std::memset(cbuf_m_, 0, sizeof(fftw_complex) * (m_ / 2 + 1));
  for (int k = 0; k < n_ / 2; ++k) {
    cbuf_m_[k][0] = bins[k].real();
    cbuf_m_[k][1] = bins[k].imag();
  }
  fftw_execute(inv_m_);
  std::memcpy(fine, rbuf_m_, sizeof(double) * m_);
}

void FftEngine::from_fine(const double* fine, std::complex<double>* bins) {
  std::memcpy(rbuf_m_, fine, sizeof(double) * m_);
  fftw_execute(fwd_m_);
  const double inv_m = 1.0 / m_;
  for (int k = 0; k < n_ / 2; ++k)
    bins[k] = std::complex<double>(cbuf_m_[k][0], cbuf_m_[k][1]) * inv_m;
  bins[n_ / 2] = 0.0;
}

std::shared_ptr<FftEngine> engine_for(int n) {
  std::lock_guard<std::mutex> lk(g_cache_mu);
  auto& c = cache();
  auto it = c.find(n);
  if (it != c.end()) return it->second;
  auto eng = std::make_shared<FftEngine>(n);
  c.emplace(n, eng);
  return eng;
}

}  // namespace nlb::detail
