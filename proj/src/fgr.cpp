#include "friclab/fgr.hpp"

#include <algorithm>
#include <cmath>

#include "friclab/errors.hpp"
#include "friclab/quadrature.hpp"

namespace friclab {

namespace {
constexpr double kPi = 3.14159265358979323846;

double support_integrand(double s, double xi_abs, const FormFactorModel& model) {
  // (s)^{2+2μ} ρ̂₁(|ξ|)² ρ̂₂(s)² with s = 2P·ξ - ξ² on the admissible ball.
  const double r1 = model.rho1_hat(xi_abs);
  const double r2 = model.rho2_hat(s);
  return std::pow(s, 2.0 + 2.0 * model.mu) * r1 * r1 * r2 * r2;
}

double c_d1_at(double P, const FormFactorModel& model, int nodes) {
  // Support in d=1 is the interval 0 < ξ < 2P (P > 0). The substitution
  // ξ = P(1-cosθ) regularizes the fractional-power zeros at the endpoints.
  Grid1D g = gauss_legendre(nodes, 0.0, kPi);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double th = g.nodes[i];
    const double xi = P * (1.0 - std::cos(th));
    const double s = xi * (2.0 * P - xi);  // = P² sin²θ
    acc += g.weights[i] * P * std::sin(th) * support_integrand(s, xi, model);
  }
  return 4.0 * kPi * acc;
}

double c_d3_at(double P, const FormFactorModel& model, int outer, int inner) {
  // Spherical coordinates aligned with P; the angular δ variable is
  // eliminated analytically: c = (4π²/P) ∫₀^{2P} r ρ̂₁(r)² J(r(2P-r)) dr with
  // J(S) = ∫₀^S s^{2+2μ} ρ̂₂(s)² ds. Same cosine substitution for r.
  Grid1D rg = gauss_legendre(outer, 0.0, kPi);
  double acc = 0.0;
  for (std::size_t i = 0; i < rg.size(); ++i) {
    const double th = rg.nodes[i];
    const double r = P * (1.0 - std::cos(th));
    const double S = r * (2.0 * P - r);
    if (S <= 0.0) continue;
    Grid1D sg = mapped_power_rule(inner, S, 2.0 + 2.0 * model.mu);
    double J = 0.0;
    for (std::size_t j = 0; j < sg.size(); ++j) {
      const double s = sg.nodes[j];
      const double r2 = model.rho2_hat(s);
      J += sg.weights[j] * std::pow(s, 2.0 + 2.0 * model.mu) * r2 * r2;
    }
    const double r1 = model.rho1_hat(r);
    acc += rg.weights[i] * P * std::sin(th) * r * r1 * r1 * J;
  }
  return 4.0 * kPi * kPi / P * acc;
}
}  // namespace

double c_of_P(double P_norm, const FormFactorModel& model, const FgrQuadrature& quad) {
  model.validate();
  if (P_norm < 0.0) throw ConfigError("c_of_P: |P| must be nonnegative");
  if (P_norm == 0.0) return 0.0;
  if (model.d != 1 && model.d != 3)
    throw ConfigError("c_of_P supports d = 1 and d = 3");

  auto eval = [&](int n) {
    return model.d == 1 ? c_d1_at(P_norm, model, n)
                        : c_d3_at(P_norm, model, n, quad.inner_nodes);
  };
  const double coarse = eval(quad.outer_nodes);
  const double fine = eval(2 * quad.outer_nodes);
  if (std::abs(fine - coarse) > quad.rel_tol * std::max(std::abs(fine), 1e-300))
    throw QuadratureError("c_of_P at |P|=" + std::to_string(P_norm));
  return fine;
}

double c_of_P_vec(const std::vector<double>& P, const FormFactorModel& model,
                  const FgrQuadrature& quad) {
  double n2 = 0.0;
  for (double x : P) n2 += x * x;
  return c_of_P(std::sqrt(n2), model, quad);
}

double c_small_P_exponent(const FormFactorModel& model, const FgrQuadrature& quad) {
  std::vector<double> lx, ly;
  for (int e = 6; e >= 3; --e) {
    const double P = std::pow(2.0, -e);
    lx.push_back(std::log(P));
    ly.push_back(std::log(c_of_P(P, model, quad)));
  }
  return fit_line(lx, ly).slope;
}

namespace {

// ∫₀^{k_max} κ^{2+2μ} ρ̂₂(κ)² / (κ + a - iε) dκ with the pole resolved by
// dyadic panels shrinking toward κ* = -a when it lies inside the range.
Cplx inner_k_integral(double a, double eps, const FormFactorModel& model, int base_nodes) {
  const double k_max = model.rho2_hat.cutoff_radius();
  const double power = 2.0 + 2.0 * model.mu;
  auto f = [&](double k) {
    const double r2 = model.rho2_hat(k);
    return std::pow(k, power) * r2 * r2;
  };
  const double kstar = -a;
  Cplx acc(0.0, 0.0);
  auto add_panel = [&](double lo, double hi, int n) {
    if (!(hi > lo)) return;
    Grid1D g = gauss_legendre(n, lo, hi);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double k = g.nodes[i];
      acc += g.weights[i] * f(k) / Cplx(k + a, -eps);
    }
  };

  if (kstar <= 0.0 || kstar >= k_max) {
    // Pole outside the integration range: smooth complex integrand.
    Grid1D g = mapped_power_rule(base_nodes, k_max, power);
    for (std::size_t i = 0; i < g.size(); ++i)
      acc += g.weights[i] * f(g.nodes[i]) / Cplx(g.nodes[i] + a, -eps);
    return acc;
  }

  // Dyadic refinement toward the pole from both sides, innermost panels a
  // few ε wide so the Lorentzian is fully resolved.
  const double core = 0.5 * eps;
  auto dyadic = [&](double from, double to, bool toward_to) {
    // Integrate (from, to) with panels halving toward the `toward_to` end.
    double span = to - from;
    if (span <= 0.0) return;
    const int max_panels = 48;
    std::vector<double> cuts;
    double len = span;
    while (len > core && static_cast<int>(cuts.size()) < max_panels) {
      len *= 0.5;
      cuts.push_back(len);
    }
    double inner_edge = toward_to ? to : from;
    double outer_edge = toward_to ? from : to;
    double prev = outer_edge;
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      const double next = toward_to ? (to - cuts[c]) : (from + cuts[c]);
      add_panel(std::min(prev, next), std::max(prev, next), 12);
      prev = next;
    }
    add_panel(std::min(prev, inner_edge), std::max(prev, inner_edge), 12);
  };
  dyadic(0.0, kstar, true);
  dyadic(kstar, k_max, false);
  return acc;
}
}  // namespace

Cplx lorentzian_selfenergy(double P_norm, double lambda, double eps,
                           const FormFactorModel& model, const FgrQuadrature& quad) {
  model.validate();
  if (!(eps > 0.0)) throw ConfigError("lorentzian_selfenergy needs eps > 0");
  if (eps < 1e-6)
    throw EpsilonResolutionError("eps=" + std::to_string(eps) +
                                 " below the resolvable floor 1e-6 for the pole panels");
  if (model.d != 1 && model.d != 3)
    throw ConfigError("lorentzian_selfenergy supports d = 1 and d = 3");

  const double xi_cut = quad.xi_range_sigmas * model.rho1_hat.scale();
  Cplx acc(0.0, 0.0);
  if (model.d == 1) {
    Grid1D xg = gauss_legendre(quad.outer_nodes, -xi_cut, xi_cut);
    for (std::size_t j = 0; j < xg.size(); ++j) {
      const double xi = xg.nodes[j];
      const double r1 = model.rho1_hat(std::abs(xi));
      if (r1 == 0.0) continue;
      const double a = (P_norm - xi) * (P_norm - xi) - lambda;
      acc += xg.weights[j] * r1 * r1 * inner_k_integral(a, eps, model, quad.inner_nodes);
    }
  } else {
    Grid1D rg = gauss_legendre(quad.outer_nodes / 2, 0.0, xi_cut);
    Grid1D cg = gauss_legendre(48, -1.0, 1.0);
    for (std::size_t i = 0; i < rg.size(); ++i) {
      const double r = rg.nodes[i];
      const double r1 = model.rho1_hat(r);
      if (r1 == 0.0) continue;
      Cplx angular(0.0, 0.0);
      for (std::size_t j = 0; j < cg.size(); ++j) {
        const double c = cg.nodes[j];
        const double a = P_norm * P_norm - 2.0 * P_norm * r * c + r * r - lambda;
        angular += cg.weights[j] * inner_k_integral(a, eps, model, quad.inner_nodes);
      }
      acc += rg.weights[i] * 2.0 * kPi * r * r * r1 * r1 * angular;
    }
  }
  return 4.0 * kPi * acc;
}

double c_lorentzian(double P_norm, const FormFactorModel& model,
                    const std::vector<double>& eps_ladder, const FgrQuadrature& quad) {
  if (eps_ladder.size() < 2)
    throw ConfigError("c_lorentzian needs an eps ladder with >= 2 entries");
  std::vector<double> eps = eps_ladder;
  std::sort(eps.begin(), eps.end());
  const double e1 = eps[1], e0 = eps[0];
  const double lambda = P_norm * P_norm;
  const double im1 = lorentzian_selfenergy(P_norm, lambda, e1, model, quad).imag();
  const double im0 = lorentzian_selfenergy(P_norm, lambda, e0, model, quad).imag();
  // Linear extrapolation to ε = 0.
  const double extrapolated = im0 - e0 * (im1 - im0) / (e1 - e0);
  return extrapolated / kPi;
}

FgrCurve build_fgr_curve(const FormFactorModel& model, const std::vector<double>& P_samples,
                         const FgrQuadrature& quad) {
  FgrCurve curve;
  curve.P = P_samples;
  curve.mu = model.mu;
  curve.d = model.d;
  curve.method = "delta";
  curve.profile_fingerprint = to_string(model.rho1_hat.kind()) + "/" +
                              to_string(model.rho2_hat.kind());
  curve.c.resize(P_samples.size());
  for (std::size_t i = 0; i < P_samples.size(); ++i)
    curve.c[i] = c_of_P(P_samples[i], model, quad);
  return curve;
}

bool is_unimodal(const std::vector<double>& values) {
  int sign_changes = 0;
  int prev = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    const int s = (d > 0.0) - (d < 0.0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++sign_changes;
    prev = s;
  }
  return sign_changes <= 1;
}

}  // namespace friclab
