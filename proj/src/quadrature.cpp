#include "friclab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

#include "friclab/errors.hpp"

namespace friclab {

const Grid1D& gauss_legendre_reference(int n) {
  static std::map<int, Grid1D> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw ConfigError("gauss_legendre: order must be >= 1");

  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
  // 2 * (first eigenvector component)^2.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Grid1D g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    g.weights[i] = 2.0 * v0 * v0;
  }
  return cache.emplace(n, std::move(g)).first->second;
}

Grid1D gauss_legendre(int n, double a, double b) {
  const Grid1D& ref = gauss_legendre_reference(n);
  Grid1D g;
  g.nodes.resize(ref.size());
  g.weights.resize(ref.size());
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    g.nodes[i] = mid + half * ref.nodes[i];
    g.weights[i] = half * ref.weights[i];
  }
  return g;
}

Grid1D geometric_panels(double a, double b, int n_panels, int per_panel) {
  if (!(a > 0.0) || !(b > a)) throw ConfigError("geometric_panels: need 0 < a < b");
  Grid1D g;
  const double r = std::pow(b / a, 1.0 / n_panels);
  double lo = a;
  for (int p = 0; p < n_panels; ++p) {
    const double hi = (p + 1 == n_panels) ? b : lo * r;
    Grid1D panel = gauss_legendre(per_panel, lo, hi);
    g.nodes.insert(g.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    g.weights.insert(g.weights.end(), panel.weights.begin(), panel.weights.end());
    lo = hi;
  }
  return g;
}

Grid1D mapped_power_rule(int n, double b, double alpha) {
  if (alpha <= -1.0) throw NonIntegrableError("endpoint exponent <= -1");
  // x = t^m; the mapped integrand behaves like t^{m(alpha+1)-1} at 0.
  int m = static_cast<int>(std::ceil(2.0 / (alpha + 1.0)));
  if (m < 2) m = 2;
  if (m > 8) m = 8;
  Grid1D t = gauss_legendre(n, 0.0, std::pow(b, 1.0 / m));
  Grid1D g;
  g.nodes.resize(t.size());
  g.weights.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ti = t.nodes[i];
    g.nodes[i] = std::pow(ti, m);
    g.weights[i] = t.weights[i] * m * std::pow(ti, m - 1);
  }
  return g;
}

Grid1D symmetric_midpoint(double xmax, int n) {
  Grid1D g;
  const double h = 2.0 * xmax / n;
  g.nodes.resize(n);
  g.weights.assign(n, h);
  for (int i = 0; i < n; ++i) g.nodes[i] = -xmax + (i + 0.5) * h;
  // Enforce exact mirror symmetry in floating point.
  for (int i = 0; i < n / 2; ++i) g.nodes[n - 1 - i] = -g.nodes[i];
  return g;
}

Grid1D symmetric_with_zero(double xmax, int half) {
  Grid1D g;
  const double h = xmax / half;
  g.nodes.resize(2 * half + 1);
  g.weights.assign(2 * half + 1, h);
  for (int j = -half; j <= half; ++j) g.nodes[j + half] = j * h;
  for (int j = 1; j <= half; ++j) g.nodes[half - j] = -g.nodes[half + j];
  return g;
}

double refined_integral(const std::function<Grid1D(int)>& build, int n,
                        const std::function<double(double)>& f, double rel_tol,
                        double abs_floor) {
  const double coarse = build(n).integrate(f);
  const double fine = build(2 * n).integrate(f);
  const double scale = std::max(std::abs(fine), abs_floor);
  if (std::abs(fine - coarse) > rel_tol * scale)
    throw QuadratureError("refinement residual " + std::to_string(std::abs(fine - coarse)) +
                          " above tolerance at " + std::to_string(2 * n) + " nodes");
  return fine;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InsufficientDataError("fit_line needs >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InsufficientDataError("degenerate abscissae in fit_line");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace friclab
