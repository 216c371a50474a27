#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "friclab/formfactor.hpp"

namespace friclab {

/// Quadrature controls for the ω-integral of the drag force.
struct DragQuadrature {
  int omega_nodes = 256;    // base resolution; convergence is checked at 2x
  double rel_tol = 1e-6;    // refinement acceptance threshold
  int eta_nodes = 128;      // transverse nodes inside hat_K for d > 1
};

struct DragResult {
  double magnitude = 0.0;   // |f_r(v)|, positive; coupling g² applied by caller
  bool negligible = false;  // σ̂₂ envelope underflowed on the whole ω range
};

/// |f_r(v)| = (2π)^{3/2} v ∫₀^∞ |σ̂₂(vω)|² |K̂(ω)| dω. The returned value is
/// the positive drag magnitude; the force on the particle is -f_r(|v|) v/|v|
/// and carries the caller's overall factor g².
DragResult drag_magnitude(double v, const FormFactorModel& model,
                          const DragQuadrature& quad = {});

/// Single-level evaluation (no convergence enforcement); used by refinement
/// property tests.
double drag_magnitude_at(double v, const FormFactorModel& model, int omega_nodes,
                         int eta_nodes = 128);

/// γ_α = (2π)^{3/2} C_α ∫₀^∞ ω^α |K̂(ω)| dω with α = 2μ+1, C_α = ρ̂₂(0)².
/// This is the small-velocity coefficient: |f_r(v)| → γ_α v^{2(μ+1)}.
double gamma_alpha(const FormFactorModel& model, const DragQuadrature& quad = {});

/// Closed form of γ_α for unit gaussians at d=1: 2π² Γ(μ+2).
double gamma_alpha_gaussian_oracle(double mu);

struct PowerLawFit {
  double exponent = 0.0;
  double coefficient = 0.0;
};

/// Log-log least squares of |f| against v over the points lying inside
/// [window_lo, window_hi]. Needs at least 8 points in the window.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points,
                          double window_lo, double window_hi);

/// Drag curve with its power-law fit (spec key data type).
struct DragCurve {
  std::vector<double> velocities;  // strictly increasing, > 0
  std::vector<double> magnitudes;
  double mu = 0.0;
  double fit_exponent = 0.0;
  double fit_coefficient = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

DragCurve build_drag_curve(const FormFactorModel& model, const DragQuadrature& quad,
                           const std::vector<double>& velocities, double window_lo,
                           double window_hi);

/// Closed-form solution of the reduced friction ODE v̇ = -v^k, v(0)=v0, k>1:
/// v(t) = (v0^{1-k} + (k-1)t)^{1/(1-k)}. Displacement is ∫₀^t v; q_∞ is
/// finite iff k < 2.
class SurrogateSolution {
 public:
  SurrogateSolution(double k_exponent, double v0);

  double velocity(double t) const;
  double displacement(double t) const;
  /// Finite limit of the displacement, or nullopt when unbounded (k >= 2).
  std::optional<double> q_infinity() const;

  double k_exponent() const { return k_; }
  double v0() const { return v0_; }

 private:
  double k_;
  double v0_;
};

/// One-shot evaluation returning (v(t), displacement(t)).
std::pair<double, double> surrogate_solve(double k_exponent, double v0, double t);

}  // namespace friclab
