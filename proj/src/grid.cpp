#include "nlb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlb {

GridPtr make_grid(int n) {
  if (n < 4) throw std::invalid_argument("make_grid: n must be >= 4");
  if (n % 2 != 0) throw std::invalid_argument("make_grid: n must be even");
  auto g = std::make_shared<Grid>();
  g->n = n;
  g->mesh = kTwoPi / n;
  g->nodes.resize(n);
  for (int i = 0; i < n; ++i) g->nodes[i] = -kPi + i * g->mesh;
  return g;
}

Field make_field(GridPtr grid, std::vector<double> values) {
  if (!grid) throw std::invalid_argument("make_field: null grid");
  if (static_cast<int>(values.size()) != grid->n)
    throw std::invalid_argument("make_field: length(values) != grid.n");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("make_field: non-finite value");
  return Field{std::move(grid), std::move(values)};
}

Field detail::wrap_field(GridPtr grid, std::vector<double> values) {
  return Field{std::move(grid), std::move(values)};
}

Field constant_field(GridPtr grid, double value) {
  if (!grid) throw std::invalid_argument("constant_field: null grid");
  return make_field(grid, std::vector<double>(grid->n, value));
}

Field sample_field(GridPtr grid, const std::function<double(double)>& f) {
  if (!grid) throw std::invalid_argument("sample_field: null grid");
  std::vector<double> v(grid->n);
  for (int i = 0; i < grid->n; ++i) v[i] = f(grid->nodes[i]);
  return make_field(std::move(grid), std::move(v));
}

bool same_grid(const Field& a, const Field& b) {
  return a.grid == b.grid || (a.grid && b.grid && a.grid->n == b.grid->n);
}

bool all_finite(const Field& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) return false;
  return true;
}

double lp_norm(const Field& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) return max_abs(f);
  const double delta = f.grid->mesh;
  double s = 0.0;
  if (p == 2.0) {
    for (double v : f.values) s += v * v;
  } else {
    for (double v : f.values) s += std::pow(std::fabs(v), p);
  }
  return std::pow(delta * s, 1.0 / p);
}

Extrema extrema(const Field& f) {
  auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
  return Extrema{*lo, *hi, *hi - *lo};
}

double momentum(const Field& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return f.grid->mesh * s;
}

double mean_value(const Field& f) { return momentum(f) / kTwoPi; }

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace nlb
