#pragma once

#include <string>

#include "nlb/grid.hpp"

namespace nlb {

/// Normalization of the convolution kernel c_1/|z|^2.
///
/// paper_exact uses c_1 = 1, so the periodic kernel is exactly
/// 1/(4 sin^2(z/2)) and the quadrature scheme reads off verbatim.
/// spectrally_consistent uses c_1 = 1/pi, which makes the quadrature
/// operator agree with the Fourier multiplier |k| (the lattice identity
/// sum_j 1/(z+2pi j)^2 = 1/(4 sin^2(z/2)) supplies the bridge). The two
/// evolutions differ only by a factor pi on the time axis.
enum class KernelMode { paper_exact, spectrally_consistent };

struct KernelSpec {
  static constexpr int dimension = 1;
  KernelMode mode = KernelMode::spectrally_consistent;
  double c1 = 1.0 / kPi;

  KernelSpec() = default;
  explicit KernelSpec(KernelMode m)
      : mode(m), c1(m == KernelMode::paper_exact ? 1.0 : 1.0 / kPi) {}

  static KernelSpec paper_exact() { return KernelSpec(KernelMode::paper_exact); }
  static KernelSpec spectral() { return KernelSpec(KernelMode::spectrally_consistent); }

  /// pi * c1: ratio of this mode's evolution speed to the pure-symbol
  /// (|k|-multiplier) evolution. 1 in spectrally_consistent mode, pi in
  /// paper_exact mode. Also the bridge constant in the momentum-law check.
  double bridging() const { return kPi * c1; }

  std::string name() const;
  static KernelSpec from_name(const std::string& name);  // "paper" | "spectral"
};

/// c1 / (4 sin^2(z/2)). Throws for z = 0 mod 2pi.
double periodic_kernel(double z, const KernelSpec& spec);

/// c1 / (delta^2 + z^2), finite at z = 0. Throws for delta <= 0.
double regularized_kernel(double z, double delta, const KernelSpec& spec);

/// Symbol of the regularized operator: (1/delta)(1 - e^{-delta |xi|}).
double regularized_symbol(double xi, double delta);

/// Harmonic-mean weight times the periodic kernel:
///   2 ux uy / (ux + uy) * periodic_kernel(z).
/// Throws for nonpositive ux or uy.
double w_kernel(double ux, double uy, double z, const KernelSpec& spec);

struct EllipticityBound {
  double lambda = 1.0;  ///< Lambda >= 1
};

/// Lambda = max(max u, max 1/u) for a strictly positive field.
EllipticityBound ellipticity_of(const Field& u);

/// Precomputed kernel row for the O(n^2) quadrature: row[d] = c1 * Kper(d*delta)
/// for d = 1..n-1 (row[0] unused), plus the total weight W = delta * sum row[d].
struct QuadKernel {
  std::vector<double> row;
  double weight_sum = 0.0;
};

/// Cached per (n, mode); the reference stays valid for the process lifetime.
const QuadKernel& quad_kernel_for(const Grid& grid, const KernelSpec& spec);

}  // namespace nlb
