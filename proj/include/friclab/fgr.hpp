#pragma once

#include <complex>
#include <string>
#include <vector>

#include "friclab/formfactor.hpp"

namespace friclab {

/// Quadrature controls for the Fermi-Golden-Rule integrals.
struct FgrQuadrature {
  int outer_nodes = 256;    // ξ-radial resolution (two-level checked)
  int inner_nodes = 192;    // s-integral nodes (d = 3 nested reduction)
  double rel_tol = 1e-7;
  double xi_range_sigmas = 12.0;  // Lorentzian route ξ truncation
};

/// Delta-resolved c(P) = 4π ∫_{R^d} (2P·ξ-ξ²)^{2+2μ} ρ̂₁(|ξ|)² ρ̂₂(2P·ξ-ξ²)²
/// 1_{[0,∞)}(2P·ξ-ξ²) dξ; depends on P through |P| only. Supports d ∈ {1,3}.
double c_of_P(double P_norm, const FormFactorModel& model, const FgrQuadrature& quad = {});

/// Vector wrapper (computes |P| and defers to the radial reduction).
double c_of_P_vec(const std::vector<double>& P, const FormFactorModel& model,
                  const FgrQuadrature& quad = {});

/// Fitted log-log slope of c over |P| ∈ {2^-6..2^-3}; the substitution
/// ξ = |P|η gives the exact small-P exponent d + 4 + 4μ.
double c_small_P_exponent(const FormFactorModel& model, const FgrQuadrature& quad = {});

/// Rank-one self-energy ∫ |h₀(k,ξ)|² ((P-ξ)² - λ + |k| - iε)⁻¹ dk dξ
/// (4π radial k-reduction included). Im is ≥ 0 for ε > 0 and converges to
/// π·c(P) at λ = P² as ε ↓ 0. Throws EpsilonResolutionError below the
/// resolvable ε floor.
Cplx lorentzian_selfenergy(double P_norm, double lambda, double eps,
                           const FormFactorModel& model, const FgrQuadrature& quad = {});

/// Lorentzian-route estimate of c(P): linear Richardson extrapolation of
/// Im(selfenergy)/π over the ε ladder (smallest two entries).
double c_lorentzian(double P_norm, const FormFactorModel& model,
                    const std::vector<double>& eps_ladder = {1e-1, 1e-2, 1e-3},
                    const FgrQuadrature& quad = {});

struct FgrCurve {
  std::vector<double> P;  // |P| samples
  std::vector<double> c;  // c values, >= 0, c(0) = 0
  double mu = 0.0;
  int d = 1;
  std::string profile_fingerprint;
  std::string method;  // "delta" or "lorentzian eps=..."
};

FgrCurve build_fgr_curve(const FormFactorModel& model, const std::vector<double>& P_samples,
                         const FgrQuadrature& quad = {});

/// True when the sampled curve has a single interior maximum (discrete
/// unimodality: the forward differences change sign exactly once).
bool is_unimodal(const std::vector<double>& values);

}  // namespace friclab
