#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "friclab/errors.hpp"
#include "friclab/quadrature.hpp"

using namespace friclab;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
  // Oracle: ∫_0^1 x^5 dx = 1/6, ∫_{-1}^2 x^7 dx = (2^8 - 1)/8.
  Grid1D g3 = gauss_legendre(3, 0.0, 1.0);
  CHECK(g3.integrate([](double x) { return x * x * x * x * x; }) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  Grid1D g4 = gauss_legendre(4, -1.0, 2.0);
  CHECK(g4.integrate([](double x) { return std::pow(x, 7); }) ==
        doctest::Approx((256.0 - 1.0) / 8.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre handles smooth transcendental integrands") {
  // Oracle: ∫_0^π sin = 2.
  Grid1D g = gauss_legendre(32, 0.0, 3.14159265358979323846);
  CHECK(g.integrate([](double x) { return std::sin(x); }) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("geometric panels resolve integrable power singularities") {
  // Oracle: ∫_a^1 x^{-1/2} dx = 2(1 - √a).
  const double a = 1e-8;
  Grid1D g = geometric_panels(a, 1.0, 40, 8);
  const double got = g.integrate([](double x) { return 1.0 / std::sqrt(x); });
  CHECK(got == doctest::Approx(2.0 * (1.0 - std::sqrt(a))).epsilon(1e-12));
}

TEST_CASE("mapped power rule integrates x^alpha exactly across alpha") {
  // Oracle: ∫_0^b x^α dx = b^{α+1}/(α+1).
  for (double alpha : {-0.9, -0.5, 0.0, 0.5, 2.0}) {
    Grid1D g = mapped_power_rule(128, 2.0, alpha);
    const double got = g.integrate([&](double x) { return std::pow(x, alpha); });
    CHECK(got == doctest::Approx(std::pow(2.0, alpha + 1.0) / (alpha + 1.0)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(mapped_power_rule(16, 1.0, -1.0), NonIntegrableError);
}

TEST_CASE("symmetric grids mirror bitwise") {
  Grid1D m = symmetric_midpoint(3.0, 64);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m.nodes[i] == -m.nodes[m.size() - 1 - i]);
    CHECK(m.weights[i] == m.weights[m.size() - 1 - i]);
  }
  Grid1D z = symmetric_with_zero(3.0, 6);
  CHECK(z.size() == 13);
  CHECK(z.nodes[6] == 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(z.nodes[i] == -z.nodes[z.size() - 1 - i]);
}

TEST_CASE("symmetric grids integrate even gaussians to the full-line value") {
  // Oracle: ∫ e^{-x²} dx = √π; tails at 6 are below 1e-15.
  Grid1D m = symmetric_midpoint(6.0, 256);
  CHECK(m.integrate([](double x) { return std::exp(-x * x); }) ==
        doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("refined_integral flags non-convergent quadrature") {
  auto build = [](int n) { return gauss_legendre(n, 0.0, 1.0); };
  // |x - 1/π|^{0.1} converges too slowly for a tight tolerance.
  auto rough = [](double x) { return std::pow(std::abs(x - 0.3183098861837907), 0.1); };
  CHECK_THROWS_AS(refined_integral(build, 8, rough, 1e-12), QuadratureError);
  auto smooth = [](double x) { return std::exp(-x); };
  CHECK(refined_integral(build, 16, smooth, 1e-12) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("fit_line recovers exact linear data") {
  std::vector<double> x = {1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(3.5 * v - 2.0);
  LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
}
