#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace friclab {

/// One-dimensional node/weight set. Weights are plain quadrature weights for
/// the coordinate measure; geometric factors (4πk² etc.) are applied by the
/// consumer that owns the reduction.
struct Grid1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Gauss-Legendre rule on [-1,1] (Golub-Welsch; cached per order).
const Grid1D& gauss_legendre_reference(int n);

/// Gauss-Legendre rule mapped to [a,b].
Grid1D gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre over geometric panels of [a,b], a > 0.
/// Panels accumulate toward a, which resolves integrable power-law behaviour
/// at the lower edge without ever evaluating at it.
Grid1D geometric_panels(double a, double b, int n_panels, int per_panel);

/// Rule for ∫_0^b f with an integrable algebraic singularity f ~ x^alpha at 0
/// (alpha > -1): substitutes x = t^m with m chosen so the mapped integrand is
/// at least linearly vanishing at t = 0.
Grid1D mapped_power_rule(int n, double b, double alpha);

/// Symmetric midpoint grid on [-xmax, xmax] with n cells (no node at 0 when n
/// is even). Mirror symmetry is exact: node[i] == -node[n-1-i].
Grid1D symmetric_midpoint(double xmax, int n);

/// Uniform grid j*h, j = -half..half (2*half+1 nodes, includes 0), weight h.
Grid1D symmetric_with_zero(double xmax, int half);

/// Integrates with one refinement doubling and enforces |I2-I1| <= tol*|I2|
/// (absolute fallback near zero). Throws QuadratureError otherwise.
/// `build(n)` must produce the rule at resolution n.
double refined_integral(const std::function<Grid1D(int)>& build, int n,
                        const std::function<double(double)>& f, double rel_tol,
                        double abs_floor = 1e-300);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Unweighted least-squares line y = slope*x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace friclab
