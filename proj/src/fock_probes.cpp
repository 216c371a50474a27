#include <cmath>

#include "friclab/errors.hpp"
#include "friclab/fock.hpp"
#include "friclab/quadrature.hpp"

namespace friclab {

std::vector<FlatnessRow> flatness_probe(const std::vector<double>& P_list,
                                        const FormFactorModel& model,
                                        const FlatnessOptions& opts) {
  std::vector<FlatnessRow> rows;
  for (int level = 0; level < opts.levels; ++level) {
    const double k_min = opts.k_min0 / std::pow(2.0, level);
    const double xi_max = opts.xi_max0 + level * 2.0 * opts.xi_step;
    const int xi_half = static_cast<int>(std::llround(xi_max / opts.xi_step));
    SingleBosonGrid grid =
        SingleBosonGrid::make(k_min, opts.k_max, opts.per_octave, xi_max, xi_half);
    FockBasis basis(grid.size(), opts.n_max);

    FockOperator H0 = assemble_H(0.0, model, grid, basis);
    const double E0 = lowest_eigenpair(H0).value;
    for (double P : P_list) {
      FockOperator HP = assemble_H(P, model, grid, basis);
      FlatnessRow row;
      row.P = P;
      row.level = level;
      row.k_min = k_min;
      row.energy = (P == 0.0) ? E0 : lowest_eigenpair(HP).value;
      row.gap = row.energy - E0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<IrProbeRow> ir_ground_state_probe(const std::vector<double>& mu_list,
                                              const std::vector<double>& k_min_list,
                                              FormFactorModel model,
                                              const IrProbeOptions& opts) {
  std::vector<IrProbeRow> rows;
  model.g = opts.g;
  for (double mu : mu_list) {
    model.mu = mu;
    model.validate();
    for (double k_min : k_min_list) {
      SingleBosonGrid grid =
          SingleBosonGrid::make(k_min, opts.k_max, opts.per_octave, opts.xi_max, opts.xi_half);
      FockBasis basis(grid.size(), opts.n_max);
      FockOperator H = assemble_H(0.0, model, grid, basis);
      EigenPair pair = lowest_eigenpair(H);
      // Fix the (arbitrary) global phase so the vacuum component is positive.
      const Cplx v0 = pair.vector(0);
      if (std::abs(v0) < 1e-8)
        throw EigensolverError("vacuum component vanished in IR probe");

      IrProbeRow row;
      row.mu = mu;
      row.k_min = k_min;
      row.vacuum_weight = std::norm(v0);

      // ξ = 0 is the middle node of the symmetric grid.
      const std::size_t nxi = grid.xi_nodes.size();
      const std::size_t j0 = nxi / 2;
      const double u0 = grid.xi_weights[j0];
      double soft = 0.0;
      for (std::size_t i = 0; i < grid.k_nodes.size(); ++i) {
        const std::size_t node = i * nxi + j0;
        const Cplx amp = pair.vector(static_cast<Eigen::Index>(basis.sector_begin(1) + node));
        // |c|²/u restores the L²(dk) measure at the ξ≈0 cell.
        soft += std::norm(amp) / u0;
      }
      row.soft_weight = soft / std::norm(v0);

      // Pull-through oracle on the same ladder: Σ w_k k^{2μ} ρ̂₂² ρ̂₁(0)² g² / (k - E)².
      double pt = 0.0;
      for (std::size_t i = 0; i < grid.k_nodes.size(); ++i) {
        const double k = grid.k_nodes[i];
        const double h = std::pow(k, model.mu) * model.rho1_hat(0.0) * model.rho2_hat(k);
        const double denom = k - pair.value;
        pt += grid.k_weights[i] * h * h / (denom * denom);
      }
      row.pt_quadrature = model.g * model.g * pt;

      row.sector_weights.assign(basis.n_max() + 1, 0.0);
      for (std::size_t s = 0; s < basis.dimension(); ++s)
        row.sector_weights[basis.sector_of(s)] +=
            std::norm(pair.vector(static_cast<Eigen::Index>(s)));
      rows.push_back(row);
    }
  }
  return rows;
}

double ir_probe_exponent(const std::vector<IrProbeRow>& rows, double mu) {
  std::vector<double> lx, ly;
  for (const auto& r : rows) {
    if (r.mu != mu) continue;
    lx.push_back(std::log(r.k_min));
    ly.push_back(std::log(r.soft_weight));
  }
  return fit_line(lx, ly).slope;
}

MourreReport mourre_check(const FormFactorModel& model, const SingleBosonGrid& grid,
                          int n_max, double g, double tol) {
  std::vector<Cplx> ah0 = grid.radial_generator_on_coupling(model);
  MourreReport rep;
  rep.a_h0_norm = vector_norm(ah0);
  if (std::abs(g) * rep.a_h0_norm >= 0.5)
    throw SmallCouplingError("|g|·‖a h₀‖ = " + std::to_string(std::abs(g) * rep.a_h0_norm) +
                             " >= 1/2");
  rep.c0 = 1.0 - 2.0 * std::abs(g) * rep.a_h0_norm;
  rep.vacuum_shift = 1.0 - std::abs(g) * rep.a_h0_norm;

  FockBasis basis(grid.size(), n_max);
  // i·(a h₀): the commutator contribution of the field operator.
  std::vector<Cplx> iah0(ah0.size());
  for (std::size_t n = 0; n < ah0.size(); ++n) iah0[n] = Cplx(0.0, 1.0) * ah0[n];

  FockOperator N = assemble_number(basis);
  FockOperator Phi = assemble_phi(iah0, basis, "Phi(i a h0)");
  FockOperator M;
  M.matrix = N.matrix - g * Phi.matrix;
  M.matrix.coeffRef(0, 0) += rep.vacuum_shift;  // + C·Π_Ω
  M.matrix.makeCompressed();
  M.label = "H' + C Pi_Omega";

  EigenPair pair = lowest_eigenpair(M);
  rep.min_eigenvalue = pair.value;
  rep.margin = pair.value - rep.c0;
  rep.inequality_holds = pair.value >= rep.c0 - tol;
  return rep;
}

}  // namespace friclab
