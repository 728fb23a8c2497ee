#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nlb/grid.hpp"
#include "nlb/kernels.hpp"

namespace nlb {

struct Trajectory;  // defined in trajectory.hpp

/// Which quantities a DiagnosticsRecord carries beyond the fixed set.
struct DiagnosticsConfig {
  std::vector<double> lp_ps = {2.0, 4.0};        ///< monitored L^p norms
  std::vector<double> analytic_rhos = {0.0, 0.25};  ///< monitored |u|_rho radii
  std::vector<double> hp_ps = {4.0};             ///< higher-power balance exponents (p > 2)
  KernelSpec spec;                               ///< kernel for the (HP) double sum
};

/// One time-slice of every monitored quantity.
struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;     ///< ||u||_{L^2}
  double momentum = 0.0;   ///< delta * sum u_i
  double m = 0.0;          ///< min u
  double M = 0.0;          ///< max u
  double A = 0.0;          ///< M - m
  double h_half_sq = 0.0;  ///< ||u||^2_{Hdot 1/2}
  double grad_inf = 0.0;   ///< |grad u|_inf
  double bkm_acc = 0.0;    ///< int_0^t |grad u|_inf ds (trapezoid on records)
  std::map<double, double> lp;       ///< p -> ||u||_p
  std::map<double, double> analytic; ///< rho -> |u|_rho
  std::map<double, double> hp_acc;   ///< p -> (p/2) int_0^t flux_p ds
};

/// Computes all monitored quantities at time t, extending the accumulators
/// from prev. prev_state (the field behind prev) enables the trapezoid rule
/// for the (HP) accumulator; without it that accumulator falls back to a
/// left-endpoint rectangle.
DiagnosticsRecord record(const Field& u, double t, const DiagnosticsRecord* prev,
                         const DiagnosticsConfig& cfg = {},
                         const Field* prev_state = nullptr);

/// The (HP) dissipation double sum at one instant:
///   delta^2 sum_{i != j} u_i u_j (|u_j|^{p-2} - |u_i|^{p-2}) (u_j - u_i) K_ij.
/// Nonnegative for positive fields.
double hp_flux(const Field& u, double p, const KernelSpec& spec);

/// Max over consecutive record pairs of
///   | delta momentum - bridging * trapezoid(h_half_sq) |.
double momentum_law_residual(const Trajectory& traj);

struct DecayFit {
  double rate = 0.0;       ///< fitted exponent (slope of log quantity vs t)
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

enum class DecayQuantity { amplitude, grad_inf };

/// Least-squares fit of log A(t) (or log |grad u|_inf) over [t_lo, t_hi].
/// Negative t_lo/t_hi select the default window: the last half of the run.
/// Records with values below 1e-13 are excluded (log of numerical zero);
/// fewer than three usable points is an error.
DecayFit fit_decay(const Trajectory& traj, double t_lo = -1.0, double t_hi = -1.0,
                   DecayQuantity quantity = DecayQuantity::amplitude);

/// Max over records of | ||u(t)||_p^p + (p/2) int_0^t flux_p ds - ||u_0||_p^p |,
/// with the flux recomputed from stored states and trapezoided in time.
double hp_balance(const Trajectory& traj, double p);

struct SpectrumRow {
  double t = 0.0;
  int k = 0;
  double abs_uhat = 0.0;
};

/// Spectrum slices at the records nearest the requested times.
std::vector<SpectrumRow> spectrum_slices(const Trajectory& traj,
                                         const std::vector<double>& times);

struct RadiusSample {
  double t = 0.0;
  double rho_star = 0.0;
  bool finite = true;  ///< false marks the +inf radius of a constant state
};

/// Analyticity radius per record: minus the least-squares slope of log|uhat(k)|
/// vs k over modes with |uhat(k)| > 1e-13.
std::vector<RadiusSample> analyticity_radius(const Trajectory& traj);

}  // namespace nlb
