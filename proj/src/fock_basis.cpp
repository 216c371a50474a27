#include <algorithm>
#include <cmath>

#include "friclab/errors.hpp"
#include "friclab/fock.hpp"
#include "friclab/quadrature.hpp"

namespace friclab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SingleBosonGrid SingleBosonGrid::make(double k_min, double k_max, int per_octave,
                                      double xi_max, int xi_half) {
  if (!(k_min > 0.0) || !(k_max > k_min))
    throw ConfigError("SingleBosonGrid: need 0 < k_min < k_max");
  SingleBosonGrid g;
  g.k_min = k_min;
  g.k_max = k_max;

  // Nested geometric ladder k_max·2^{-j/per_octave} down to k_min; cell
  // widths from the midpoints give the radial Δk.
  std::vector<double> nodes;
  const double ratio = std::pow(2.0, -1.0 / per_octave);
  for (double k = k_max; k >= k_min * (1.0 - 1e-12); k *= ratio) nodes.push_back(k);
  std::reverse(nodes.begin(), nodes.end());
  const std::size_t nk = nodes.size();
  if (nk < 2) throw ConfigError("SingleBosonGrid: k ladder has fewer than 2 nodes");
  g.k_nodes = nodes;
  g.k_weights.resize(nk);
  for (std::size_t i = 0; i < nk; ++i) {
    const double lo = (i == 0) ? k_min : 0.5 * (nodes[i - 1] + nodes[i]);
    const double hi = (i + 1 == nk) ? k_max : 0.5 * (nodes[i] + nodes[i + 1]);
    g.k_weights[i] = 4.0 * kPi * nodes[i] * nodes[i] * (hi - lo);
  }

  Grid1D xg = symmetric_with_zero(xi_max, xi_half);
  g.xi_nodes = xg.nodes;
  g.xi_weights = xg.weights;
  return g;
}

std::vector<Cplx> SingleBosonGrid::discretize(
    const std::function<Cplx(double, double)>& f) const {
  std::vector<Cplx> v(size());
  for (std::size_t n = 0; n < size(); ++n)
    v[n] = std::sqrt(w_of(n)) * f(k_of(n), xi_of(n));
  return v;
}

std::vector<Cplx> SingleBosonGrid::coupling_vector(const FormFactorModel& model) const {
  return discretize([&](double k, double xi) {
    return Cplx(std::pow(k, model.mu) * model.rho1_hat(std::abs(xi)) * model.rho2_hat(k),
                0.0);
  });
}

std::vector<Cplx> SingleBosonGrid::radial_generator_on_coupling(
    const FormFactorModel& model) const {
  // (a h₀)(k,ξ) = i ρ̂₁(|ξ|) (1/k) d/dk [k^{μ+1} ρ̂₂(k)]
  //             = i ρ̂₁(|ξ|) [(μ+1) k^{μ-1} ρ̂₂(k) + k^μ ρ̂₂'(k)].
  return discretize([&](double k, double xi) {
    const double radial = (model.mu + 1.0) * std::pow(k, model.mu - 1.0) * model.rho2_hat(k) +
                          std::pow(k, model.mu) * model.rho2_hat.derivative(k);
    return Cplx(0.0, model.rho1_hat(std::abs(xi)) * radial);
  });
}

double vector_norm(const std::vector<Cplx>& v) {
  double s = 0.0;
  for (const Cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

FockBasis::FockBasis(std::size_t n_modes, int n_max, std::size_t dimension_cap)
    : n_modes_(n_modes), n_max_(n_max) {
  if (n_max < 1) throw ConfigError("FockBasis: N_max must be >= 1");
  // Dimension per sector: C(B + l - 1, l).
  offsets_.assign(1, 0);
  std::vector<std::size_t> sector_dim(n_max + 1, 1);
  for (int l = 0; l <= n_max; ++l) {
    double dim = 1.0;
    for (int j = 0; j < l; ++j) dim = dim * double(n_modes + j) / double(j + 1);
    sector_dim[l] = static_cast<std::size_t>(std::llround(dim));
    offsets_.push_back(offsets_.back() + sector_dim[l]);
    if (offsets_.back() > dimension_cap)
      throw DimensionCapError("basis dimension " + std::to_string(offsets_.back()) +
                              " over cap " + std::to_string(dimension_cap));
  }

  flat_offsets_.assign(n_max + 1, 0);
  std::size_t total = 0;
  for (int l = 0; l <= n_max; ++l) {
    flat_offsets_[l] = total;
    total += sector_dim[l] * static_cast<std::size_t>(l);
  }
  flat_.resize(total);

  // Lexicographic enumeration of non-decreasing tuples per sector.
  for (int l = 1; l <= n_max; ++l) {
    std::vector<std::uint32_t> tuple(l, 0);
    std::size_t pos = flat_offsets_[l];
    while (true) {
      std::copy(tuple.begin(), tuple.end(), flat_.begin() + pos);
      pos += l;
      int i = l - 1;
      while (i >= 0 && tuple[i] == n_modes_ - 1) --i;
      if (i < 0) break;
      const std::uint32_t next = tuple[i] + 1;
      for (int j = i; j < l; ++j) tuple[j] = next;
    }
  }
}

int FockBasis::sector_of(std::size_t index) const {
  for (int l = 0; l <= n_max_; ++l)
    if (index < offsets_[l + 1]) return l;
  throw ConfigError("basis index out of range");
}

const std::uint32_t* FockBasis::state(std::size_t index, int& bosons) const {
  bosons = sector_of(index);
  if (bosons == 0) return nullptr;
  const std::size_t rank = index - offsets_[bosons];
  return flat_.data() + flat_offsets_[bosons] + rank * bosons;
}

std::size_t FockBasis::rank_pair(std::uint32_t a, std::uint32_t b) const {
  // Rank of the pair (a, b), a <= b, in lexicographic order over
  // non-decreasing pairs: Σ_{i<a} (B - i) + (b - a).
  const std::size_t B = n_modes_;
  return static_cast<std::size_t>(a) * B - (static_cast<std::size_t>(a) * (a - 1)) / 2 +
         (b - a);
}

std::size_t FockBasis::with_boson_added(std::size_t index, std::uint32_t node,
                                        int& new_count) const {
  int l;
  const std::uint32_t* occ = state(index, l);
  if (l + 1 > n_max_) return npos;
  new_count = 1;
  for (int i = 0; i < l; ++i)
    if (occ[i] == node) ++new_count;

  if (l == 0) return offsets_[1] + node;
  if (l == 1) {
    const std::uint32_t a = std::min(occ[0], node), b = std::max(occ[0], node);
    return offsets_[2] + rank_pair(a, b);
  }
  // Generic path (sectors >= 3): rank the sorted tuple combinatorially.
  std::vector<std::uint32_t> t(occ, occ + l);
  t.push_back(node);
  std::sort(t.begin(), t.end());
  // Rank of a non-decreasing tuple in lexicographic order.
  std::size_t rank = 0;
  std::uint32_t lo = 0;
  const int L = l + 1;
  for (int pos = 0; pos < L; ++pos) {
    for (std::uint32_t v = lo; v < t[pos]; ++v) {
      // count tuples with prefix t[0..pos-1], value v at pos, free tail:
      // C((B - v) + (L-pos-1) - 1, L-pos-1)
      const std::size_t m = n_modes_ - v;
      const int r = L - pos - 1;
      double c = 1.0;
      for (int j = 0; j < r; ++j) c = c * double(m + j) / double(j + 1);
      rank += static_cast<std::size_t>(std::llround(c));
    }
    lo = t[pos];
  }
  return offsets_[L] + rank;
}

}  // namespace friclab
