#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <vector>

#include "friclab/errors.hpp"
#include "friclab/fock.hpp"

namespace friclab {

namespace {
using Triplet = Eigen::Triplet<Cplx>;

SparseHermitian from_triplets(std::size_t dim, std::vector<Triplet>& trips) {
  SparseHermitian m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

// Appends a*(f) acting rightward from every state (and the Hermitian mirror).
void add_phi_triplets(const std::vector<Cplx>& f, const FockBasis& basis,
                      std::vector<Triplet>& trips) {
  const std::size_t dim = basis.dimension();
  for (std::size_t s = 0; s < dim; ++s) {
    for (std::uint32_t n = 0; n < basis.modes(); ++n) {
      if (f[n] == Cplx(0.0, 0.0)) continue;
      int cnt = 0;
      const std::size_t target = basis.with_boson_added(s, n, cnt);
      if (target == FockBasis::npos) continue;
      const Cplx amp = f[n] * std::sqrt(static_cast<double>(cnt));
      trips.emplace_back(static_cast<int>(target), static_cast<int>(s), amp);
      trips.emplace_back(static_cast<int>(s), static_cast<int>(target), std::conj(amp));
    }
  }
}
}  // namespace

double hermiticity_defect(const FockOperator& op) {
  SparseHermitian adj = op.matrix.adjoint();
  SparseHermitian diff = op.matrix - adj;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseHermitian::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

FockOperator assemble_H(double P, const FormFactorModel& model,
                        const SingleBosonGrid& grid, const FockBasis& basis) {
  model.validate();
  const std::size_t dim = basis.dimension();
  std::vector<Triplet> trips;
  trips.reserve(4 * dim);

  for (std::size_t s = 0; s < dim; ++s) {
    int l = 0;
    const std::uint32_t* occ = basis.state(s, l);
    double xi_sum = 0.0, k_sum = 0.0;
    for (int i = 0; i < l; ++i) {
      xi_sum += grid.xi_of(occ[i]);
      k_sum += grid.k_of(occ[i]);
    }
    const double diag = (P - xi_sum) * (P - xi_sum) + k_sum;
    trips.emplace_back(static_cast<int>(s), static_cast<int>(s), Cplx(diag, 0.0));
  }

  if (model.g != 0.0) {
    std::vector<Cplx> h0 = grid.coupling_vector(model);
    for (Cplx& z : h0) z *= model.g;
    add_phi_triplets(h0, basis, trips);
  }

  FockOperator op;
  op.matrix = from_triplets(dim, trips);
  op.label = "H(P=" + std::to_string(P) + ")";
  return op;
}

FockOperator assemble_number(const FockBasis& basis) {
  std::vector<Triplet> trips;
  for (std::size_t s = 0; s < basis.dimension(); ++s)
    trips.emplace_back(static_cast<int>(s), static_cast<int>(s),
                       Cplx(static_cast<double>(basis.sector_of(s)), 0.0));
  FockOperator op;
  op.matrix = from_triplets(basis.dimension(), trips);
  op.label = "N";
  return op;
}

FockOperator assemble_phi(const std::vector<Cplx>& f, const FockBasis& basis,
                          const std::string& label) {
  std::vector<Triplet> trips;
  add_phi_triplets(f, basis, trips);
  FockOperator op;
  op.matrix = from_triplets(basis.dimension(), trips);
  op.label = label;
  return op;
}

FockOperator assemble_vacuum_projector(const FockBasis& basis) {
  std::vector<Triplet> trips;
  trips.emplace_back(0, 0, Cplx(1.0, 0.0));
  FockOperator op;
  op.matrix = from_triplets(basis.dimension(), trips);
  op.label = "Pi_Omega";
  return op;
}

FockOperator assemble_annihilator(const std::vector<Cplx>& f, const FockBasis& basis) {
  // a(f): ⟨s∖n| a(f) |s⟩ = conj(f_n) √(count_n(s)).
  std::vector<Triplet> trips;
  for (std::size_t s = 0; s < basis.dimension(); ++s) {
    for (std::uint32_t n = 0; n < basis.modes(); ++n) {
      if (f[n] == Cplx(0.0, 0.0)) continue;
      int cnt = 0;
      const std::size_t target = basis.with_boson_added(s, n, cnt);
      if (target == FockBasis::npos) continue;
      trips.emplace_back(static_cast<int>(s), static_cast<int>(target),
                         std::conj(f[n]) * std::sqrt(static_cast<double>(cnt)));
    }
  }
  FockOperator op;
  op.matrix = from_triplets(basis.dimension(), trips);
  op.label = "a(f)";
  return op;
}

namespace {

double operator_scale(const SparseHermitian& m) {
  // Row-sum bound on ‖H‖.
  double best = 1e-300;
  for (int r = 0; r < m.outerSize(); ++r) {
    double row = 0.0;
    for (SparseHermitian::InnerIterator it(m, r); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

EigenPair lanczos_lowest(const SparseHermitian& H, double tol, int max_iter,
                         std::uint64_t seed) {
  const Eigen::Index dim = H.rows();
  max_iter = static_cast<int>(std::min<Eigen::Index>(max_iter, dim));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double scale = operator_scale(H);
  Eigen::MatrixXcd Q(dim, max_iter);
  for (Eigen::Index i = 0; i < dim; ++i) Q(i, 0) = Cplx(gauss(rng), gauss(rng));
  Q.col(0).normalize();
  Eigen::VectorXd alpha(max_iter), beta(max_iter);

  EigenPair best;
  auto ritz_pair = [&](int m, bool with_vector) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(alpha.head(m), beta.head(m - 1),
                              with_vector ? Eigen::ComputeEigenvectors
                                          : Eigen::EigenvaluesOnly);
    best.value = es.eigenvalues()(0);
    if (with_vector) {
      Eigen::VectorXcd y = Q.leftCols(m) * es.eigenvectors().col(0).cast<Cplx>();
      y.normalize();
      best.vector = y;
      best.residual = (H * y - best.value * y).norm();
    }
  };

  int m = 0;
  double prev_ritz = 1e300;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXcd w = H * Q.col(it);
    alpha(it) = std::real(Q.col(it).dot(w));
    w -= alpha(it) * Q.col(it);
    if (it > 0) w -= beta(it - 1) * Q.col(it - 1);
    // Two passes of full reorthogonalization against the stored basis.
    auto Qm = Q.leftCols(it + 1);
    w -= Qm * (Qm.adjoint() * w).eval();
    w -= Qm * (Qm.adjoint() * w).eval();
    m = it + 1;
    best.iterations = m;

    ritz_pair(m, false);
    const bool stagnated = std::abs(best.value - prev_ritz) < 0.05 * tol * scale;
    prev_ritz = best.value;
    const double b = w.norm();
    const bool breakdown = b < 1e-14 * scale;
    if (stagnated || breakdown || m % 25 == 0 || it + 1 == max_iter) {
      ritz_pair(m, true);
      if (best.residual <= tol * scale || breakdown) return best;
    }
    if (it + 1 < max_iter) {
      beta(it) = b;
      Q.col(it + 1) = w / b;
    }
  }
  if (best.vector.size() == 0) ritz_pair(m, true);
  return best;
}

}  // namespace

EigenPair lowest_eigenpair(const FockOperator& op, const EigensolveOptions& opts) {
  const std::size_t dim = op.dimension();
  if (dim == 0) throw ConfigError("lowest_eigenpair on empty operator");

  if (dim <= opts.dense_cutoff) {
    Eigen::MatrixXcd dense(op.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    if (es.info() != Eigen::Success)
      throw EigensolverError("dense Hermitian solve failed for " + op.label);
    EigenPair pair;
    pair.value = es.eigenvalues()(0);
    pair.vector = es.eigenvectors().col(0);
    pair.residual = (op.matrix * pair.vector - pair.value * pair.vector).norm();
    pair.iterations = static_cast<int>(dim);
    return pair;
  }

  const double scale = operator_scale(op.matrix);
  EigenPair a = lanczos_lowest(op.matrix, opts.tol, opts.max_iterations, opts.seed_a);
  EigenPair b = lanczos_lowest(op.matrix, opts.tol, opts.max_iterations, opts.seed_b);
  const double agree_tol = std::max(20.0 * opts.tol * scale, 1e-12);
  if (std::abs(a.value - b.value) > agree_tol)
    throw EigensolverError("independent Lanczos starts disagree on " + op.label + ": " +
                           std::to_string(a.value) + " vs " + std::to_string(b.value));
  EigenPair& best = (a.residual <= b.residual) ? a : b;
  if (best.residual > 100.0 * opts.tol * scale)
    throw EigensolverError("Lanczos did not converge on " + op.label + " (residual " +
                           std::to_string(best.residual) + ")");
  return best;
}

Pt2Result pt2_energy(double P, const FormFactorModel& model, const SingleBosonGrid& grid) {
  Pt2Result res;
  double sum = 0.0;
  const double floor = 1e-12 * (1.0 + P * P + grid.k_max);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double xi = grid.xi_of(n), k = grid.k_of(n);
    const double denom = (P - xi) * (P - xi) - P * P + k;
    const double h = std::pow(k, model.mu) * model.rho1_hat(std::abs(xi)) * model.rho2_hat(k);
    if (std::abs(denom) < floor) {
      ++res.excluded;
      continue;
    }
    sum += grid.w_of(n) * h * h / denom;
  }
  res.value = P * P - model.g * model.g * sum;
  return res;
}

SpectralReport make_report(double P, const FockOperator& H, const FockBasis& basis,
                           const EigenPair& pair) {
  SpectralReport rep;
  rep.P = P;
  rep.energy = pair.value;
  rep.residual = pair.residual;
  rep.vacuum_overlap = std::abs(pair.vector(0));
  rep.sector_weights.assign(basis.n_max() + 1, 0.0);
  double nsum = 0.0;
  for (std::size_t s = 0; s < basis.dimension(); ++s) {
    const int l = basis.sector_of(s);
    const double w = std::norm(pair.vector(static_cast<Eigen::Index>(s)));
    rep.sector_weights[l] += w;
    nsum += l * w;
  }
  rep.mean_boson_number = nsum;
  (void)H;
  return rep;
}

}  // namespace friclab
