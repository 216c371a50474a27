#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "friclab/errors.hpp"
#include "friclab/formfactor.hpp"

using namespace friclab;

namespace {
constexpr double kPi = 3.14159265358979323846;

FormFactorModel gaussian_model(double mu) {
  FormFactorModel m = FormFactorModel::gaussian_default();
  m.mu = mu;
  return m;
}
}  // namespace

TEST_CASE("profiles: value, decay and derivative") {
  RadialProfile g = RadialProfile::gaussian(1.0, 1.0);
  CHECK(g(0.0) == 1.0);
  CHECK(g(1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  // Finite-difference oracle for the derivative at a few radii.
  for (double s : {0.2, 0.9, 2.3}) {
    const double h = 1e-6;
    const double fd = (g(s + h) - g(s - h)) / (2 * h);
    CHECK(g.derivative(s) == doctest::Approx(fd).epsilon(1e-8));
  }

  RadialProfile b = RadialProfile::compact_bump(2.0, 3.0);
  CHECK(b(0.0) == 3.0);
  CHECK(b(2.0) == 0.0);
  CHECK(b(2.5) == 0.0);
  CHECK(b(1.0) > 0.0);
  for (double s : {0.5, 1.2, 1.8}) {
    const double h = 1e-7;
    const double fd = (b(s + h) - b(s - h)) / (2 * h);
    CHECK(b.derivative(s) == doctest::Approx(fd).epsilon(1e-5));
  }

  // Determinism: identical inputs give bit-identical outputs.
  CHECK(g(1.2345) == g(1.2345));
  CHECK(b(1.2345) == b(1.2345));
}

TEST_CASE("sigma2_hat values and infrared rule") {
  FormFactorModel m = gaussian_model(0.0);

  // k=1: |1|^{mu+1/2} = 1 for any mu -> e^{-1/2}.
  for (double mu : {-0.75, -0.25, 0.0, 1.0}) {
    m.mu = mu;
    CHECK(sigma2_hat(1.0, m) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  }

  m.mu = 0.0;
  CHECK(sigma2_hat(0.0, m) == 0.0);

  // k=2, mu=1/2: 2^1 · e^{-2} (direct arithmetic oracle).
  m.mu = 0.5;
  CHECK(sigma2_hat(2.0, m) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));

  m.mu = -0.75;
  CHECK_THROWS_AS(sigma2_hat(0.0, m), InfraredSingularError);
}

TEST_CASE("sigma2_hat squared identity on random points") {
  FormFactorModel m = gaussian_model(-0.3);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uk(1e-6, 8.0);
  for (int i = 0; i < 1000000; ++i) {
    const double k = uk(rng);
    const double s = sigma2_hat(k, m);
    const double rhs = std::pow(k, 2.0 * m.mu + 1.0) * m.rho2_hat(k) * m.rho2_hat(k);
    CHECK(s * s == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("coupling_h phase, reality and infrared threshold") {
  FormFactorModel m = gaussian_model(0.0);

  // q=0, k=1, xi=0: phase = 1, value rho1(0)·e^{-1/2}.
  Cplx h = coupling_h({0.0}, 1.0, {0.0}, m);
  CHECK(h.real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(h.imag() == 0.0);

  // |h| independent of q (unimodular phase).
  const double mag0 = std::abs(coupling_h({0.0}, 1.3, {0.7}, m));
  const double mag1 = std::abs(coupling_h({17.0}, 1.3, {0.7}, m));
  CHECK(mag0 == doctest::Approx(mag1).epsilon(1e-15));

  // k=1, |xi|=1, q=0, mu=-1/4: e^{-1/2}·e^{-1/2} = e^{-1}.
  m.mu = -0.25;
  CHECK(coupling_h({0.0}, 1.0, {1.0}, m).real() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  // h0 (q=0) is real for all nodes.
  for (double k : {0.3, 1.0, 2.5})
    for (double xi : {-1.0, 0.2, 3.0})
      CHECK(coupling_h({0.0}, k, {xi}, m).imag() == 0.0);

  CHECK_THROWS_AS(coupling_h({0.0}, 0.0, {0.0}, m), InfraredSingularError);
  m.mu = 0.0;
  CHECK(coupling_h({0.0}, 0.0, {0.0}, m).real() == doctest::Approx(1.0));
}

TEST_CASE("coupling_h reflection product is real for radial rho1") {
  FormFactorModel m = gaussian_model(0.3);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double q = u(rng), k = std::abs(u(rng)) + 0.01, xi = u(rng);
    const Cplx prod =
        coupling_h({q}, k, {xi}, m) * std::conj(coupling_h({q}, k, {-xi}, m));
    CHECK(std::abs(prod.imag()) <= 1e-15 * std::abs(prod));
  }
}

TEST_CASE("hat_K: zero at omega=0, paper-faithful negative sign, gaussian oracle") {
  FormFactorModel m = gaussian_model(0.0);
  CHECK(hat_K(0.0, m) == 0.0);

  // d=1 gaussian: K̂(ω) = -√(2π) ω² e^{-ω²}; at ω=1 the magnitude is √(2π)/e.
  const double k1 = hat_K(1.0, m);
  CHECK(k1 < 0.0);
  CHECK(std::abs(k1) ==
        doctest::Approx(std::sqrt(2.0 * kPi) * std::exp(-1.0)).epsilon(1e-14));

  // Super-exponential tail: |K̂(10σ⁻¹)| below 1e-15 of the peak.
  double peak = 0.0;
  for (double w = 0.05; w < 4.0; w += 0.05) peak = std::max(peak, std::abs(hat_K(w, m)));
  CHECK(std::abs(hat_K(10.0, m)) < 1e-15 * peak);
  CHECK(std::abs(hat_K(12.5, m)) < 1e-12 * peak);
}

TEST_CASE("hat_K for d=3 matches the closed gaussian reduction") {
  // d=3: K̂(ω) = -√(2π) ω² · 2π ∫_ω^∞ u e^{-u²} du = -√(2π) π ω² e^{-ω²}.
  FormFactorModel m = gaussian_model(0.0);
  m.d = 3;
  for (double w : {0.3, 1.0, 2.2}) {
    const double oracle = -std::sqrt(2.0 * kPi) * kPi * w * w * std::exp(-w * w);
    CHECK(hat_K(w, m) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("static field psi_q") {
  FormFactorModel m = gaussian_model(0.0);
  // q=0: real for all (k, xi).
  for (double k : {0.2, 1.0, 3.0})
    for (double xi : {-1.5, 0.0, 2.0}) {
      const Cplx v = static_field_psi_q({0.0}, k, {xi}, m);
      CHECK(v.imag() == 0.0);
      CHECK(v.real() <= 0.0);  // -rho1·sigma2/k² with positive profiles
    }
  // Large-k decay.
  CHECK(std::abs(static_field_psi_q({0.0}, 9.0, {0.0}, m)) < 1e-12);
  CHECK_THROWS_AS(static_field_psi_q({0.0}, 0.0, {0.0}, m), InfraredSingularError);
}

TEST_CASE("psi_q weighted L2 norm: power counting in the infrared") {
  // ∫ k²·k·|ψ̂_q|² dk ~ ∫ k^{2μ+1} dk near 0: converges for μ=0, diverges
  // like k_min^{2μ+1} for μ=-3/4 (power-counting oracle).
  auto tail = [](const FormFactorModel& m, double k_min) {
    double acc = 0.0;
    const int n = 4000;
    const double k_max = 0.5;
    for (int i = 0; i < n; ++i) {
      const double k = k_min * std::pow(k_max / k_min, (i + 0.5) / n);
      const double dk = k * (std::pow(k_max / k_min, 1.0 / n) - 1.0);
      const double psi = std::abs(static_field_psi_q({0.0}, k, {0.0}, m));
      acc += dk * k * k * k * psi * psi;
    }
    return acc;
  };
  FormFactorModel reg = gaussian_model(0.0);
  const double r1 = tail(reg, 1e-4), r2 = tail(reg, 1e-6);
  CHECK(r2 / r1 == doctest::Approx(1.0).epsilon(1e-2));  // converged

  FormFactorModel sing = gaussian_model(-0.75);
  const double s1 = tail(sing, 1e-4), s2 = tail(sing, 1e-6);
  // Oracle ∫_{k_min} k^{2μ+1}: ratio (1e-6/1e-4)^{2μ+2-2...} -> k_min^{-1/2} growth: x10.
  CHECK(s2 / s1 == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("classical ground energy E0 against the gamma-function oracle") {
  FormFactorModel m = gaussian_model(0.0);

  m.g = 0.0;
  CHECK(classical_ground_energy_E0(m) == 0.0);

  // mu=0, g=1, d=1 unit gaussians: E0 = -π^{3/2} = -π·√π.
  m.g = 1.0;
  CHECK(classical_ground_energy_E0(m) ==
        doctest::Approx(-std::pow(kPi, 1.5)).epsilon(1e-8));

  // Gamma oracle across mu at 2^10 quadrature nodes.
  for (double mu : {-0.5, -0.25, 0.3, 1.0}) {
    m.mu = mu;
    const double oracle = classical_ground_energy_E0_gaussian_oracle(mu, m.g, m.d);
    CHECK(classical_ground_energy_E0(m, 1024) == doctest::Approx(oracle).epsilon(1e-8));
  }

  // Exact g² scaling.
  m.mu = 0.2;
  m.g = 1.0;
  const double e1 = classical_ground_energy_E0(m);
  m.g = 3.0;
  CHECK(classical_ground_energy_E0(m) == doctest::Approx(9.0 * e1).epsilon(1e-13));
  CHECK(e1 < 0.0);
}

TEST_CASE("model validation enforces standing assumptions") {
  FormFactorModel m = gaussian_model(-1.0);
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m.mu = -0.999;
  CHECK_NOTHROW(m.validate());
  m.mass = 0.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
}
