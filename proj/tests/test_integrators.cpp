#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nlb/integrators.hpp"
#include "nlb/operators.hpp"
#include "nlb/presets.hpp"
#include "test_util.hpp"

using namespace nlb;
using nlb::test::dist_inf;

namespace {

double energy_drift(const Trajectory& traj) {
  const double e0 = traj.records.front().energy;
  double d = 0.0;
  for (const auto& r : traj.records) d = std::max(d, std::fabs(r.energy - e0));
  return d / e0;
}

}  // namespace

TEST_CASE("CFL time step") {
  auto g = make_grid(256);
  const KernelSpec paper = KernelSpec::paper_exact();

  SUBCASE("zero field returns tau_max") {
    CHECK(cfl_timestep(constant_field(g, 0.0), paper, 0.5, 1e-2) == 1e-2);
  }
  SUBCASE("doubling the amplitude halves the step") {
    Field u = sample_field(g, [](double x) { return 2.0 + std::sin(x); });
    std::vector<double> d(u.values);
    for (double& v : d) v *= 2.0;
    Field u2 = make_field(g, std::move(d));
    CHECK(cfl_timestep(u, paper, 0.5) ==
          doctest::Approx(2.0 * cfl_timestep(u2, paper, 0.5)).epsilon(1e-14));
  }
  SUBCASE("frozen regression value for the smooth positive scenario") {
    Field u = scenario_field("figA_smooth", g);
    const double tau = cfl_timestep(u, paper, 0.5);
    // Independent oracle: W = delta (n^2 - 1)/12 by the cotangent-sum identity.
    const double W = g->mesh * (256.0 * 256.0 - 1.0) / 12.0;
    CHECK(tau == doctest::Approx(0.5 * g->mesh / (max_abs(u) * W)).epsilon(1e-14));
    CHECK(tau == doctest::Approx(2.8114388197879978e-05).epsilon(1e-12));
  }
}

TEST_CASE("single steps") {
  const KernelSpec paper = KernelSpec::paper_exact();

  SUBCASE("constants are fixed points for any step size") {
    auto g = make_grid(32);
    Field c = constant_field(g, 3.0);
    for (double tau : {1e-4, 0.1, 2.0}) {
      Field out = step(c, tau, EquationForm::u_spectral, paper, Scheme::rk4);
      CHECK(dist_inf(out, c) < 1e-13);
    }
  }

  SUBCASE("one explicit Euler step of the four-node example") {
    auto g = make_grid(4);
    Field u = make_field(g, {1.0, 2.0, 1.0, 2.0});
    const double tau = 0.01;
    Field out = step(u, tau, EquationForm::u_quadrature, paper, Scheme::euler);
    CHECK(out.values[0] == doctest::Approx(1.0 + tau * kPi).epsilon(1e-14));
    CHECK(out.values[1] == doctest::Approx(2.0 - tau * kPi / 2).epsilon(1e-14));
    CHECK(out.values[2] == doctest::Approx(1.0 + tau * kPi).epsilon(1e-14));
    CHECK(out.values[3] == doctest::Approx(2.0 - tau * kPi / 2).epsilon(1e-14));
  }

  SUBCASE("rk4 reproduces the linearized decay of a small perturbation") {
    // Around the constant background 1 the mode-1 perturbation obeys
    // a'(t) = -a(t), so a(T) = eps e^{-T}; the rk4 defect scales like tau^4.
    auto g = make_grid(32);
    const double eps = 1e-5, T = 1.0;
    const KernelSpec sc = KernelSpec::spectral();
    Field u0 = sample_field(g, [eps](double x) { return 1.0 + eps * std::sin(x); });
    double prev_err = 0.0;
    for (double tau : {0.1, 0.05, 0.025}) {
      Field u = u0;
      const int steps = static_cast<int>(std::round(T / tau));
      for (int k = 0; k < steps; ++k)
        u = step(u, tau, EquationForm::u_spectral, sc, Scheme::rk4);
      Spectrum s = dft(u);
      const double amp = 2.0 * std::abs(s.at(1));
      const double err = std::fabs(amp - eps * std::exp(-T));
      if (prev_err > 0.0) {
        const double ratio = prev_err / err;
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
      }
      prev_err = err;
    }
  }
}

TEST_CASE("evolve reaches t_end and keeps constants constant") {
  auto g = make_grid(64);
  StepControl ctrl;
  ctrl.t_end = 10.0;
  ctrl.record_every = 500;
  Trajectory traj = evolve(constant_field(g, 2.0), ctrl, EquationForm::u_spectral,
                           KernelSpec::spectral());
  CHECK(traj.status == RunStatus::completed);
  CHECK(traj.times.back() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(dist_inf(traj.states.back(), constant_field(g, 2.0)) < 1e-12);
}

TEST_CASE("identical configuration gives a bit-identical trajectory") {
  auto g = make_grid(64);
  Field u0 = scenario_field("figA_smooth", g);
  StepControl ctrl;
  ctrl.t_end = 0.5;
  ctrl.record_every = 40;
  const KernelSpec sc = KernelSpec::spectral();
  Trajectory a = evolve(u0, ctrl, EquationForm::u_spectral, sc);
  Trajectory b = evolve(u0, ctrl, EquationForm::u_spectral, sc);
  REQUIRE(a.states.size() == b.states.size());
  for (size_t k = 0; k < a.states.size(); ++k) {
    CHECK(std::memcmp(a.states[k].values.data(), b.states[k].values.data(),
                      sizeof(double) * a.states[k].size()) == 0);
    CHECK(a.times[k] == b.times[k]);
  }
}

TEST_CASE("energy drift scales with the scheme order") {
  auto g = make_grid(64);
  Field u0 = scenario_field("figA_smooth", g);
  const KernelSpec sc = KernelSpec::spectral();

  auto drift_at = [&](Scheme scheme, double tau) {
    StepControl ctrl;
    ctrl.scheme = scheme;
    ctrl.tau = tau;
    ctrl.t_end = 0.5;
    ctrl.record_every = 1 << 30;
    return energy_drift(evolve(u0, ctrl, EquationForm::u_spectral, sc));
  };

  SUBCASE("euler drift halves when tau halves") {
    double prev = 0.0;
    for (double tau : {2e-3, 1e-3, 5e-4}) {
      const double d = drift_at(Scheme::euler, tau);
      if (prev > 0.0) CHECK(prev / d == doctest::Approx(2.0).epsilon(0.15));
      prev = d;
    }
  }
  SUBCASE("rk4 drift shrinks sixteen-fold when tau halves") {
    double prev = 0.0;
    for (double tau : {2e-3, 1e-3, 5e-4}) {
      const double d = drift_at(Scheme::rk4, tau);
      if (prev > 0.0) {
        CHECK(prev / d > 11.0);
        CHECK(prev / d < 21.0);
      }
      prev = d;
    }
  }
}

TEST_CASE("time reversal: negate, evolve, negate recovers the state") {
  auto g = make_grid(64);
  Field u0 = scenario_field("figA_smooth", g);
  const KernelSpec sc = KernelSpec::spectral();
  const double t0 = 0.1, tau = 2.5e-4;

  StepControl fwd;
  fwd.t_end = t0;
  fwd.tau = tau;
  fwd.record_every = 1 << 30;
  Field mid = evolve(u0, fwd, EquationForm::u_spectral, sc).states.back();

  StepControl fine = fwd;
  fine.tau = tau / 4.0;
  Field ref = evolve(u0, fine, EquationForm::u_spectral, sc).states.back();
  const double one_way = std::max(dist_inf(mid, ref), 1e-15);

  std::vector<double> neg(mid.values);
  for (double& v : neg) v = -v;
  Field back = evolve(make_field(g, std::move(neg)), fwd, EquationForm::u_spectral, sc)
                   .states.back();
  for (double& v : back.values) v = -v;
  CHECK(dist_inf(back, u0) <= 100.0 * one_way);
}

TEST_CASE("rescaled data traverses the same trajectory at half the time") {
  auto g = make_grid(64);
  Field u0 = scenario_field("figA_smooth", g);
  const KernelSpec sc = KernelSpec::spectral();
  StepControl base;
  base.t_end = 0.5;
  base.tau = 1e-3;
  base.record_every = 1 << 30;
  Field a = evolve(u0, base, EquationForm::u_spectral, sc).states.back();

  std::vector<double> dv(u0.values);
  for (double& v : dv) v *= 2.0;
  StepControl half = base;
  half.t_end = 0.25;
  half.tau = 5e-4;
  Field b = evolve(make_field(g, std::move(dv)), half, EquationForm::u_spectral, sc)
                .states.back();
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(b.values[i] - 2.0 * a.values[i]));
  CHECK(worst <= 1e-14);
}

TEST_CASE("maximum decreases and minimum increases along a positive run") {
  auto g = make_grid(64);
  Field u0 = scenario_field("figA_smooth", g);
  StepControl ctrl;
  ctrl.t_end = 2.0;
  ctrl.record_every = 32;
  Trajectory traj = evolve(u0, ctrl, EquationForm::u_spectral, KernelSpec::spectral());
  const double tol =
      10.0 * traj.meta.tau_max_used * traj.meta.tau_max_used * max_abs(u0);
  for (size_t k = 0; k + 1 < traj.records.size(); ++k) {
    CHECK(traj.records[k + 1].M <= traj.records[k].M + tol);
    CHECK(traj.records[k + 1].m >= traj.records[k].m - tol);
  }
}

TEST_CASE("blow-up guard trips on negative data and keeps a finite tail state") {
  auto g = make_grid(128);
  Field u0 = scenario_field("figD_negative", g);
  StepControl ctrl;
  ctrl.t_end = 4.0;
  ctrl.record_every = 16;
  Trajectory traj = evolve(u0, ctrl, EquationForm::u_spectral, KernelSpec::spectral());
  CHECK(traj.status == RunStatus::blowup_detected);
  CHECK(!traj.trip_reason.empty());
  CHECK(traj.trip_time > 0.0);
  CHECK(traj.times.back() < 4.0);
  CHECK(all_finite(traj.states.back()));
  REQUIRE(traj.records.size() >= 2);
  for (size_t k = 0; k + 1 < traj.records.size(); ++k)
    CHECK(traj.records[k + 1].bkm_acc >= traj.records[k].bkm_acc);
}

TEST_CASE("step budget aborts the run") {
  auto g = make_grid(64);
  Field u0 = scenario_field("figA_smooth", g);
  StepControl ctrl;
  ctrl.t_end = 10.0;
  ctrl.max_steps = 10;
  Trajectory traj = evolve(u0, ctrl, EquationForm::u_spectral, KernelSpec::spectral());
  CHECK(traj.status == RunStatus::aborted);
  CHECK(traj.trip_reason == "max_steps");
}

TEST_CASE("the w form rejects sign-changing initial data") {
  auto g = make_grid(64);
  Field u0 = sample_field(g, [](double x) { return std::sin(x); });
  StepControl ctrl;
  ctrl.t_end = 1.0;
  CHECK_THROWS_AS(evolve(u0, ctrl, EquationForm::w_symmetrized, KernelSpec::spectral()),
                  std::domain_error);
}
