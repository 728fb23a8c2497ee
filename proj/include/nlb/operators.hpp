#pragma once

#include <map>
#include <span>

#include "nlb/grid.hpp"
#include "nlb/kernels.hpp"

namespace nlb {

/// |grad| f: Fourier multiplier |k|. Annihilates constants.
Field halflap_spectral(const Field& f);

/// Regularized half-Laplacian: multiplier (1/delta)(1 - e^{-delta |k|}).
/// Converges to halflap_spectral as delta -> 0. Throws for delta <= 0.
Field halflap_delta(const Field& f, double delta);

/// Spectral derivative ik, with the Nyquist mode zeroed.
Field grad_spectral(const Field& f);

/// Principal-value quadrature with diagonal exclusion:
///   out(x_i) = delta * sum_{j != i} Kper(x_j - x_i) (f_j - f_i) g_j.
/// The inner sum runs in offset-ascending order with compensated summation,
/// so results are bit-reproducible and translation-equivariant.
Field pv_apply(const Field& f, const Field& g, const KernelSpec& spec);

/// ||f||^2_{Hdot 1/2} = 2 pi sum_k |k| |uhat(k)|^2. Zero iff f is constant.
double h_half_seminorm_sq(const Field& f);

/// |f|_rho = sum_k e^{|k| rho} |uhat(k)|. At rho = 0 this is the l1 norm of
/// the spectrum. Throws for rho < 0.
double analytic_norm(const Field& f, double rho);

struct SeminormReport {
  double h_half_sq = 0.0;
  std::map<double, double> analytic;  ///< rho -> |f|_rho
};

SeminormReport seminorm_report(const Field& f, std::span<const double> rhos);

}  // namespace nlb
