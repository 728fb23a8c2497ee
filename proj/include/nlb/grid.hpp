#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace nlb {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform periodic mesh of the torus [-pi, pi). Immutable after creation.
struct Grid {
  int n = 0;                  ///< number of nodes (even, >= 4)
  double mesh = 0.0;          ///< delta = 2*pi/n
  std::vector<double> nodes;  ///< x_i = -pi + i*delta, i = 0..n-1
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds the uniform grid. Throws std::invalid_argument for odd or n < 4.
GridPtr make_grid(int n);

/// Real nodal values of u (or w, or v) at one time instant.
struct Field {
  GridPtr grid;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
};

/// Wraps values on a grid; rejects mismatched length and non-finite entries.
Field make_field(GridPtr grid, std::vector<double> values);
Field constant_field(GridPtr grid, double value);
Field sample_field(GridPtr grid, const std::function<double(double)>& f);

bool same_grid(const Field& a, const Field& b);
bool all_finite(const Field& f);

/// Rectangle-rule L^p norm, (delta * sum |f_i|^p)^(1/p); max norm for p = inf.
/// Throws for p < 1.
double lp_norm(const Field& f, double p);

struct Extrema {
  double min = 0.0;
  double max = 0.0;
  double amplitude = 0.0;  ///< max - min
};
Extrema extrema(const Field& f);

double momentum(const Field& f);    ///< delta * sum u_i, the discrete integral
double mean_value(const Field& f);  ///< momentum / (2*pi)
double max_abs(const Field& f);

namespace detail {
/// Internal constructor that skips the finiteness check (integrator hot path).
Field wrap_field(GridPtr grid, std::vector<double> values);
}  // namespace detail

}  // namespace nlb
