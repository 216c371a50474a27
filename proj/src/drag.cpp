#include "friclab/drag.hpp"

#include <algorithm>
#include <cmath>

#include "friclab/errors.hpp"
#include "friclab/quadrature.hpp"

namespace friclab {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kTwoPi32 = std::pow(2.0 * kPi, 1.5);

// ω-grid for ∫ ω^α-singular integrands truncated at the gaussian tail.
Grid1D omega_rule(const FormFactorModel& model, int n) {
  const double alpha = 2.0 * model.mu + 1.0;
  const double cutoff = model.rho1_hat.cutoff_radius();
  return mapped_power_rule(n, cutoff, alpha);
}
}  // namespace

double drag_magnitude_at(double v, const FormFactorModel& model, int omega_nodes,
                         int eta_nodes) {
  Grid1D grid = omega_rule(model, omega_nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.nodes[i];
    const double s2 = sigma2_hat(v * w, model);
    if (s2 == 0.0) continue;
    acc += grid.weights[i] * s2 * s2 * std::abs(hat_K(w, model, eta_nodes));
  }
  return kTwoPi32 * v * acc;
}

DragResult drag_magnitude(double v, const FormFactorModel& model,
                          const DragQuadrature& quad) {
  if (!(v > 0.0)) throw ConfigError("drag_magnitude: speed must be > 0");
  model.validate();

  DragResult res;
  const double coarse = drag_magnitude_at(v, model, quad.omega_nodes, quad.eta_nodes);
  if (coarse == 0.0) {
    // σ̂₂(vω) underflowed at every quadrature node.
    res.negligible = true;
    return res;
  }
  const double fine = drag_magnitude_at(v, model, 2 * quad.omega_nodes, quad.eta_nodes);
  if (std::abs(fine) < 1e-280) {
    res.negligible = true;
    return res;
  }
  if (std::abs(fine - coarse) > quad.rel_tol * std::abs(fine))
    throw QuadratureError("drag_magnitude at v=" + std::to_string(v));
  res.magnitude = fine;
  return res;
}

double gamma_alpha(const FormFactorModel& model, const DragQuadrature& quad) {
  const double alpha = 2.0 * model.mu + 1.0;
  if (!(alpha > -1.0)) throw NonIntegrableError("gamma_alpha needs 2mu+1 > -1");
  const double r20 = model.rho2_hat(0.0);
  const double c_alpha = r20 * r20;
  auto integrand = [&](double w) {
    return std::pow(w, alpha) * std::abs(hat_K(w, model, quad.eta_nodes));
  };
  auto build = [&](int n) { return omega_rule(model, n); };
  const double integral = refined_integral(build, quad.omega_nodes, integrand, quad.rel_tol);
  return std::abs(kTwoPi32 * c_alpha * integral);
}

double gamma_alpha_gaussian_oracle(double mu) {
  return 2.0 * kPi * kPi * std::tgamma(mu + 2.0);
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points,
                          double window_lo, double window_hi) {
  std::vector<double> lx, ly;
  for (const auto& [v, f] : points) {
    if (v < window_lo || v > window_hi) continue;
    if (!(v > 0.0) || !(f > 0.0))
      throw InsufficientDataError("fit_power_law needs positive (v, f) samples");
    lx.push_back(std::log(v));
    ly.push_back(std::log(f));
  }
  if (lx.size() < 8)
    throw InsufficientDataError("fit_power_law needs >= 8 points inside the window");
  const LineFit fit = fit_line(lx, ly);
  return {fit.slope, std::exp(fit.intercept)};
}

DragCurve build_drag_curve(const FormFactorModel& model, const DragQuadrature& quad,
                           const std::vector<double>& velocities, double window_lo,
                           double window_hi) {
  if (velocities.empty()) throw ConfigError("drag curve needs a nonempty velocity list");
  if (!std::is_sorted(velocities.begin(), velocities.end()) ||
      velocities.front() <= 0.0)
    throw ConfigError("drag curve velocities must be positive and increasing");
  if (window_lo < velocities.front() || window_hi > velocities.back())
    throw ConfigError("fit window must lie inside the velocity range");

  DragCurve curve;
  curve.velocities = velocities;
  curve.magnitudes.resize(velocities.size());
  curve.mu = model.mu;
  curve.window_lo = window_lo;
  curve.window_hi = window_hi;
  for (std::size_t i = 0; i < velocities.size(); ++i)
    curve.magnitudes[i] = drag_magnitude(velocities[i], model, quad).magnitude;

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < velocities.size(); ++i)
    pts.emplace_back(velocities[i], curve.magnitudes[i]);
  const PowerLawFit fit = fit_power_law(pts, window_lo, window_hi);
  curve.fit_exponent = fit.exponent;
  curve.fit_coefficient = fit.coefficient;
  return curve;
}

SurrogateSolution::SurrogateSolution(double k_exponent, double v0)
    : k_(k_exponent), v0_(v0) {
  if (!(k_ > 1.0)) throw ConfigError("surrogate exponent must be > 1");
  if (!(v0_ > 0.0)) throw ConfigError("surrogate initial speed must be > 0");
}

double SurrogateSolution::velocity(double t) const {
  return std::pow(std::pow(v0_, 1.0 - k_) + (k_ - 1.0) * t, 1.0 / (1.0 - k_));
}

double SurrogateSolution::displacement(double t) const {
  if (k_ == 2.0) return std::log1p(v0_ * t);
  const double u = std::pow(v0_, 1.0 - k_) + (k_ - 1.0) * t;
  const double p = (2.0 - k_) / (1.0 - k_);
  return (std::pow(v0_, 2.0 - k_) - std::pow(u, p)) / (2.0 - k_);
}

std::optional<double> SurrogateSolution::q_infinity() const {
  if (k_ < 2.0) return std::pow(v0_, 2.0 - k_) / (2.0 - k_);
  return std::nullopt;
}

std::pair<double, double> surrogate_solve(double k_exponent, double v0, double t) {
  if (t < 0.0) throw ConfigError("surrogate_solve needs t >= 0");
  SurrogateSolution sol(k_exponent, v0);
  return {sol.velocity(t), sol.displacement(t)};
}

}  // namespace friclab
