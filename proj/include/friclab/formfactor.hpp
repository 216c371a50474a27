#pragma once

#include <complex>
#include <string>
#include <vector>

#include "friclab/quadrature.hpp"

namespace friclab {

using Cplx = std::complex<double>;

enum class ProfileKind { gaussian, compact_bump, table };

ProfileKind profile_kind_from_string(const std::string& s);
std::string to_string(ProfileKind k);

/// Radial coupling profile evaluated on momentum-space radii. The gaussian is
/// A·exp(-s²/(2σ²)); the compact bump is A·exp(1 - 1/(1-(s/σ)²)) on [0,σ) and
/// exactly zero outside; tables are linearly interpolated.
class RadialProfile {
 public:
  RadialProfile() = default;
  static RadialProfile gaussian(double sigma, double amplitude = 1.0);
  static RadialProfile compact_bump(double sigma, double amplitude = 1.0);
  static RadialProfile table(std::vector<double> radii, std::vector<double> values);

  double operator()(double s) const;
  /// d/ds of the profile (analytic for gaussian/bump).
  double derivative(double s) const;
  /// Radius beyond which the profile is negligible (exact support edge for
  /// the bump, 12σ for the gaussian).
  double cutoff_radius() const;

  ProfileKind kind() const { return kind_; }
  double scale() const { return sigma_; }
  double amplitude() const { return amp_; }

 private:
  ProfileKind kind_ = ProfileKind::gaussian;
  double sigma_ = 1.0;
  double amp_ = 1.0;
  std::vector<double> table_r_, table_v_;
};

/// Single source of truth for the coupling data: the pair (ρ̂₁, ρ̂₂), the
/// infrared exponent μ, dimensions and constants. Membranes are fixed 3-D and
/// the wave speed is 1 in all shipped experiments.
struct FormFactorModel {
  RadialProfile rho1_hat;
  RadialProfile rho2_hat;
  double mu = 0.0;       // infrared exponent, must be > -1
  int d = 1;             // particle-space dimension
  double mass = 1.0;     // classical particle mass
  double g = 1.0;        // coupling constant

  static constexpr int membrane_dim = 3;
  static constexpr double wave_speed = 1.0;

  /// Throws ConfigError on violated standing assumptions (μ ≤ -1, mass ≤ 0,
  /// d < 1, vanishing ρ̂₂(0)).
  void validate() const;

  static FormFactorModel gaussian_default();
};

/// Surface measure of the unit sphere S^{n-1} in R^n.
double sphere_surface(int n);

/// σ̂₂(k) = |k|^{μ+1/2} ρ̂₂(k). Throws InfraredSingularError at k = 0 when
/// μ < -1/2 (callers must integrate across the singularity instead).
double sigma2_hat(double k, const FormFactorModel& model);

/// h_q(k, ξ) = e^{-i q·ξ} |k|^μ ρ̂₁(|ξ|) ρ̂₂(k). Pointwise evaluation needs
/// k > 0 or μ ≥ 0.
Cplx coupling_h(const std::vector<double>& q, double k, const std::vector<double>& xi,
                const FormFactorModel& model);

/// K̂(ω) = √(2π) ∫_{R^{d-1}} dη [widehat{∂₁ρ₁}(ω,η)]², which is
/// -√(2π) ω² ∫ dη ρ̂₁(√(ω²+|η|²))² ≤ 0. K̂(0) = 0; rapid decay in ω.
/// `eta_nodes` controls the transverse quadrature for d > 1 (two-level
/// refinement is applied; throws QuadratureError when it fails).
double hat_K(double omega, const FormFactorModel& model, int eta_nodes = 128);

/// Static field surrounding a particle at rest at q (unit coupling):
/// ψ̂_q(k, ξ) = -e^{i ξ·q} ρ̂₁(|ξ|) σ̂₂(k) / k². Throws on k = 0.
Cplx static_field_psi_q(const std::vector<double>& q, double k,
                        const std::vector<double>& xi, const FormFactorModel& model);

/// Classical ground energy E₀ = -g² (‖ρ₁‖²/2) · 4π ∫₀^∞ k^{2μ+1} ρ̂₂(k)² dk
/// (radial reduction of the 3-D field integral; ‖ρ₁‖² by Plancherel from
/// ρ̂₁ over R^d). Always ≤ 0 and zero iff g = 0.
double classical_ground_energy_E0(const FormFactorModel& model, int k_nodes = 1024,
                                  double rel_tol = 1e-10);

/// ‖ρ₁‖² = ∫_{R^d} ρ̂₁(|ξ|)² dξ via radial reduction.
double rho1_norm_squared(const FormFactorModel& model, int nodes = 1024);

/// Closed-form E₀ for unit gaussians (σ=1, A=1): -g² π^{d/2+1} Γ(μ+1).
double classical_ground_energy_E0_gaussian_oracle(double mu, double g, int d);

}  // namespace friclab
