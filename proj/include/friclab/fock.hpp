#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "friclab/formfactor.hpp"

namespace friclab {

/// Discretized single-boson space: nodes (k_i, ξ_j) with quadrature weights
/// w = (4πk² Δk)·(Δξ) so that discrete ℓ² pairings approximate the continuum
/// L²(R^{3+d}) inner product (d = 1 here). The ξ grid is uniform, symmetric
/// and contains ξ = 0.
struct SingleBosonGrid {
  std::vector<double> k_nodes, k_weights;
  std::vector<double> xi_nodes, xi_weights;
  double k_min = 0.0;
  double k_max = 0.0;

  std::size_t size() const { return k_nodes.size() * xi_nodes.size(); }
  double k_of(std::size_t n) const { return k_nodes[n / xi_nodes.size()]; }
  double xi_of(std::size_t n) const { return xi_nodes[n % xi_nodes.size()]; }
  double w_of(std::size_t n) const {
    return k_weights[n / xi_nodes.size()] * xi_weights[n % xi_nodes.size()];
  }

  /// Geometric k-grid with `per_octave` nodes per octave of [k_min, k_max]
  /// (nested across k_min halvings) and a uniform ξ-grid of 2*xi_half+1 nodes
  /// including 0.
  static SingleBosonGrid make(double k_min, double k_max, int per_octave,
                              double xi_max, int xi_half);

  /// Discrete single-particle vector of a function f(k, ξ): entries
  /// √w · f(k_n, ξ_n).
  std::vector<Cplx> discretize(const std::function<Cplx(double, double)>& f) const;

  /// Discrete coupling vector h₀ and its ℓ² norm.
  std::vector<Cplx> coupling_vector(const FormFactorModel& model) const;
  /// Radial-translation image (a h₀)(k,ξ) = i ρ̂₁(|ξ|) (1/k) d/dk [k^{μ+1} ρ̂₂(k)].
  std::vector<Cplx> radial_generator_on_coupling(const FormFactorModel& model) const;
};

double vector_norm(const std::vector<Cplx>& v);

/// Occupation basis of the symmetric Fock space over the grid, truncated at
/// total boson number N_max. States are sorted node multisets, enumerated
/// sector by sector in lexicographic order (deterministic).
class FockBasis {
 public:
  FockBasis(std::size_t n_modes, int n_max, std::size_t dimension_cap = 200000);

  std::size_t dimension() const { return offsets_.back(); }
  int n_max() const { return n_max_; }
  std::size_t modes() const { return n_modes_; }
  int sector_of(std::size_t index) const;
  std::size_t sector_begin(int sector) const { return offsets_[sector]; }
  std::size_t sector_end(int sector) const { return offsets_[sector + 1]; }

  /// Occupied node list (sorted, with repetition) of basis state `index`.
  const std::uint32_t* state(std::size_t index, int& bosons) const;
  /// Index of the state obtained by adding one boson at `node`; also returns
  /// the multiplicity of `node` in the *resulting* state (for the √(c+1)
  /// bosonic factor). Returns npos when the result exceeds N_max.
  std::size_t with_boson_added(std::size_t index, std::uint32_t node,
                               int& new_count) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t rank_pair(std::uint32_t a, std::uint32_t b) const;  // a <= b
  std::size_t n_modes_;
  int n_max_;
  std::vector<std::size_t> offsets_;       // sector start indices, size n_max+2
  std::vector<std::uint32_t> flat_;        // concatenated sorted tuples
  std::vector<std::size_t> flat_offsets_;  // per-sector start into flat_
};

using SparseHermitian = Eigen::SparseMatrix<Cplx, Eigen::RowMajor>;

struct FockOperator {
  SparseHermitian matrix;
  std::string label;
  std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Max-norm of M - M† over the stored pattern (Hermiticity diagnostic).
double hermiticity_defect(const FockOperator& op);

/// H(P) = (P - dΓ(ξ))² + dΓ(|k|) + g Φ(h₀) on the truncated basis. The vacuum
/// diagonal entry is exactly P². d = 1 (P scalar).
FockOperator assemble_H(double P, const FormFactorModel& model,
                        const SingleBosonGrid& grid, const FockBasis& basis);

/// dΓ(1) (number operator).
FockOperator assemble_number(const FockBasis& basis);

/// Φ(f) = a*(f) + a(f) for a discrete single-particle vector f.
FockOperator assemble_phi(const std::vector<Cplx>& f, const FockBasis& basis,
                          const std::string& label = "Phi");

/// Rank-one vacuum projection.
FockOperator assemble_vacuum_projector(const FockBasis& basis);

/// a(f) alone (test support for commutation-fidelity checks).
FockOperator assemble_annihilator(const std::vector<Cplx>& f, const FockBasis& basis);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
  double residual = 0.0;  // ‖(H - E)ψ‖
  int iterations = 0;
};

struct EigensolveOptions {
  double tol = 1e-10;          // residual target relative to ‖H‖ estimate
  int max_iterations = 400;    // Krylov dimension cap per start
  std::size_t dense_cutoff = 1200;
  std::uint64_t seed_a = 12345;
  std::uint64_t seed_b = 98765;
};

/// Smallest eigenvalue/vector of a Hermitian operator. Dense below the
/// cutoff; otherwise Lanczos with full reorthogonalization, verified by a
/// second independent start vector (disagreement beyond tolerance fails).
EigenPair lowest_eigenpair(const FockOperator& op, const EigensolveOptions& opts = {});

struct Pt2Result {
  double value = 0.0;   // P² - g² Σ w|h₀|²/((P-ξ)² - P² + |k|), PV part
  int excluded = 0;     // resonant nodes dropped (P ≠ 0 only)
};

/// Second-order perturbation energy on the same discrete grid as assemble_H.
Pt2Result pt2_energy(double P, const FormFactorModel& model, const SingleBosonGrid& grid);

struct SpectralReport {
  double P = 0.0;
  double energy = 0.0;
  double vacuum_overlap = 0.0;
  double mean_boson_number = 0.0;
  double residual = 0.0;
  std::vector<double> sector_weights;
};

SpectralReport make_report(double P, const FockOperator& H, const FockBasis& basis,
                           const EigenPair& pair);

struct FlatnessRow {
  double P = 0.0;
  int level = 0;
  double k_min = 0.0;
  double energy = 0.0;
  double gap = 0.0;  // E(P) - E(0) at this refinement level
};

struct FlatnessOptions {
  double k_min0 = 0.1;
  double k_max = 4.0;
  int per_octave = 3;
  double xi_max0 = 2.0;
  double xi_step = 0.5;
  int levels = 3;
  int n_max = 2;
};

/// E_g^trunc(P) - E_g^trunc(0) per refinement level (k_min halves, ξ-range
/// grows; ξ spacing fixed so the ±P nodes persist exactly).
std::vector<FlatnessRow> flatness_probe(const std::vector<double>& P_list,
                                        const FormFactorModel& model,
                                        const FlatnessOptions& opts);

struct IrProbeRow {
  double mu = 0.0;
  double k_min = 0.0;
  double soft_weight = 0.0;    // one-boson L²(dk) weight at the ξ≈0 cell
  double pt_quadrature = 0.0;  // pull-through oracle restricted to that cell
  double vacuum_weight = 0.0;
  std::vector<double> sector_weights;
};

struct IrProbeOptions {
  double k_max = 4.0;
  int per_octave = 8;
  double xi_max = 3.0;
  int xi_half = 6;
  int n_max = 1;
  double g = 2e-3;
};

/// Infrared ground-state probe at P=0: the ξ≈0 one-boson amplitude norm of
/// the computed ground state for each (μ, k_min), next to the pull-through
/// quadrature oracle.
std::vector<IrProbeRow> ir_ground_state_probe(const std::vector<double>& mu_list,
                                              const std::vector<double>& k_min_list,
                                              FormFactorModel model,
                                              const IrProbeOptions& opts);

/// Fitted log-log slope of the soft weights against k_min for one μ.
double ir_probe_exponent(const std::vector<IrProbeRow>& rows, double mu);

struct MourreReport {
  double a_h0_norm = 0.0;  // discrete ‖a h₀‖
  double c0 = 0.0;         // 1 - 2|g|‖a h₀‖
  double vacuum_shift = 0.0;  // C = 1 - |g|‖a h₀‖
  double min_eigenvalue = 0.0;
  bool inequality_holds = false;
  double margin = 0.0;
};

/// Verifies N - gΦ(i a h₀) + C·Π_Ω ≥ c₀ on the truncation, with the
/// small-coupling constants c₀ = 1 - 2|g|‖ah₀‖ and C = 1 - |g|‖ah₀‖.
/// Throws SmallCouplingError when |g|‖ah₀‖ ≥ 1/2.
MourreReport mourre_check(const FormFactorModel& model, const SingleBosonGrid& grid,
                          int n_max, double g, double tol = 1e-8);

}  // namespace friclab
