#pragma once

#include <array>

#include "nlb/grid.hpp"
#include "nlb/kernels.hpp"

namespace nlb {

/// The five formulations of the evolution.
///  - u_quadrature: direct singular-integral quadrature of the u equation
///  - u_spectral:   pseudospectral u |grad|u - |grad|(u^2) with 3/2-rule products
///  - w_symmetrized: w = u^2 with the harmonic-mean elliptic kernel (needs u > 0)
///  - v_fluctuation: zero-mean fluctuation v with the running mean mu(t) as
///    companion scalar state
///  - frozen: the momentum-conserving twin (mean feedback removed)
enum class EquationForm { u_quadrature, u_spectral, w_symmetrized, v_fluctuation, frozen };

std::string form_name(EquationForm form);
EquationForm form_from_name(const std::string& name);

/// Quadrature right-hand side, out_i = delta sum_{j!=i} Kper (u_j - u_i) u_j.
/// Equals pv_apply(u, u, spec).
Field rhs_u_quadrature(const Field& u, const KernelSpec& spec);

/// Pseudospectral right-hand side u |grad|u - |grad|(u^2); both quadratic
/// products are de-aliased by 3/2-rule zero padding, which keeps the discrete
/// energy identity <u, rhs(u)> = 0 exact.
Field rhs_u_spectral(const Field& u);

/// Symmetrized evolution of w = u^2. Throws if w is not strictly positive.
Field rhs_w(const Field& w, const KernelSpec& spec);

/// Fluctuation equation: -mu |grad|v + v|grad|v - |grad|(v^2) minus its mean.
/// Requires mean(v) = 0 within 1e-10. The companion mean obeys mu' = mu_rate(v).
Field rhs_v_fluctuation(const Field& v, double mu);

/// (1/2pi) ||v||^2_{Hdot 1/2}: growth rate of the running mean.
double mu_rate(const Field& v);

/// Frozen model: v|grad|v - |grad|(v^2) minus its spatial mean. The discrete
/// mean of the output is exactly zero.
Field rhs_frozen(const Field& v);

/// P1 finite-element system A U' = J(U,U) on the periodic grid. A is the
/// circulant mass matrix with stencil (delta/6)[1 4 1]; its DFT eigenvalues
/// make the solve a per-mode division.
struct FemSystem {
  GridPtr grid;
  std::array<double, 3> mass_stencil{};  ///< (delta/6) * {1, 4, 1}
  std::vector<double> mass_eigs;         ///< (delta/6)(4 + 2 cos(2 pi k / n)), k = 0..n-1
};

FemSystem fem_assemble(const GridPtr& grid);

/// A^{-1} J(U,U) with the collocated load J = delta * rhs_u_quadrature(U); the
/// mass solve divides DFT coefficients by mass_eigs.
Field fem_rhs(const FemSystem& sys, const Field& U, const KernelSpec& spec);

/// Discrete FEM energy  U^T A U  (the P1 interpolant's L^2 norm squared).
double fem_energy(const FemSystem& sys, const Field& U);

}  // namespace nlb
