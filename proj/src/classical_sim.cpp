#include "friclab/classical_sim.hpp"

#include <cmath>
#include <cstdio>

#include "friclab/errors.hpp"
#include "friclab/quadrature.hpp"

namespace friclab {

namespace {
constexpr double kPi = 3.14159265358979323846;
using Cd = std::complex<double>;
}  // namespace

ModeGrid ModeGrid::make(double k_min, double k_max, int k_count, double xi_max,
                        int xi_count, int k_panels) {
  if (!(k_min > 0.0)) throw ConfigError("ModeGrid: k_min must be > 0");
  if (!(k_max > k_min)) throw ConfigError("ModeGrid: k_max must exceed k_min");
  if (xi_count % 2 != 0) throw ConfigError("ModeGrid: xi_count must be even");
  ModeGrid g;
  g.k_min = k_min;
  g.k_max = k_max;
  g.xi_max = xi_max;
  int per_panel = std::max(2, k_count / std::max(1, k_panels));
  int panels = std::max(1, k_count / per_panel);
  Grid1D kg = geometric_panels(k_min, k_max, panels, per_panel);
  g.k_nodes = kg.nodes;
  g.k_weights.resize(kg.size());
  for (std::size_t i = 0; i < kg.size(); ++i)
    g.k_weights[i] = 4.0 * kPi * kg.nodes[i] * kg.nodes[i] * kg.weights[i];
  Grid1D xg = symmetric_midpoint(xi_max, xi_count);
  g.xi_nodes = xg.nodes;
  g.xi_weights = xg.weights;
  return g;
}

ModeGrid ModeGrid::make_uniform_k(double k_min, double k_max, int k_count, double xi_max,
                                  int xi_count) {
  if (!(k_min > 0.0) || !(k_max > k_min)) throw ConfigError("ModeGrid: need 0 < k_min < k_max");
  if (xi_count % 2 != 0) throw ConfigError("ModeGrid: xi_count must be even");
  ModeGrid g;
  g.k_min = k_min;
  g.k_max = k_max;
  g.xi_max = xi_max;
  const double h = (k_max - k_min) / k_count;
  g.k_nodes.resize(k_count);
  g.k_weights.resize(k_count);
  for (int i = 0; i < k_count; ++i) {
    const double k = k_min + (i + 0.5) * h;
    g.k_nodes[i] = k;
    g.k_weights[i] = 4.0 * kPi * k * k * h;
  }
  Grid1D xg = symmetric_midpoint(xi_max, xi_count);
  g.xi_nodes = xg.nodes;
  g.xi_weights = xg.weights;
  return g;
}

MembraneSimulator::MembraneSimulator(const FormFactorModel& model, ModeGrid grid)
    : model_(model), grid_(std::move(grid)) {
  model_.validate();
  if (model_.d != 1)
    throw ConfigError("MembraneSimulator runs the d=1 dynamics only");
  const std::size_t nk = grid_.k_nodes.size(), nx = grid_.xi_nodes.size();
  const std::size_t n = nk * nx;
  omega_.resize(n);
  xi_.resize(n);
  w_.resize(n);
  lambda_.resize(n);
  wlx_.resize(n);
  for (std::size_t i = 0; i < nk; ++i) {
    const double k = grid_.k_nodes[i];
    const double s2 = sigma2_hat(k, model_);
    for (std::size_t j = 0; j < nx; ++j) {
      const std::size_t m = i * nx + j;
      omega_[m] = FormFactorModel::wave_speed * k;
      xi_[m] = grid_.xi_nodes[j];
      w_[m] = grid_.k_weights[i] * grid_.xi_weights[j];
      lambda_[m] = model_.rho1_hat(std::abs(xi_[m])) * s2 / std::sqrt(2.0 * k);
      wlx_[m] = w_[m] * lambda_[m] * xi_[m];
    }
  }
}

ClassicalState MembraneSimulator::initial_state(double q0, double p0) const {
  ClassicalState s;
  s.q = q0;
  s.p = p0;
  s.beta.assign(omega_.size(), Cd(0.0, 0.0));
  return s;
}

ClassicalState MembraneSimulator::equilibrium_state(double q0, double p0) const {
  // Discrete stationary point: α_n = -g λ_n e^{-i ξ_n q} / ω_n, which is the
  // sampled static field scaled by the coupling. At t=0, β = α.
  ClassicalState s = initial_state(q0, p0);
  for (std::size_t n = 0; n < omega_.size(); ++n) {
    const double mag = -model_.g * lambda_[n] / omega_[n];
    s.beta[n] = std::polar(mag, -xi_[n] * q0);
  }
  return s;
}

void MembraneSimulator::add_boosted_packet(ClassicalState& state, double p_field) const {
  if (p_field == 0.0) return;
  // Smooth packet centered at (k₀, ξ₀) with sign(ξ₀) = sign(p_field); scaled
  // so Σ w ξ |β|² equals p_field exactly in the discretized bookkeeping.
  const double k0 = 0.5 * (grid_.k_min + grid_.k_max) * 0.2 + grid_.k_min;
  const double x0 = (p_field > 0.0 ? 0.5 : -0.5) * grid_.xi_max;
  std::vector<double> f(omega_.size());
  double carried = 0.0;
  for (std::size_t n = 0; n < omega_.size(); ++n) {
    const double dk = (omega_[n] - k0) / (0.3 * k0 + 0.1);
    const double dx = (xi_[n] - x0) / (0.15 * grid_.xi_max);
    f[n] = std::exp(-dk * dk - dx * dx);
    carried += w_[n] * xi_[n] * f[n] * f[n];
  }
  if (std::abs(carried) <= 0.0) throw NumericsError("boosted packet carries no momentum");
  const double scale = std::sqrt(std::abs(p_field / carried));
  for (std::size_t n = 0; n < omega_.size(); ++n) state.beta[n] += scale * f[n];
}

void MembraneSimulator::kick(ClassicalState& s, double h) const {
  // Exact flow of the interaction Hamiltonian with q frozen: β shifts by the
  // linear response, p kicks by -∂_q H_int. On the mirror-symmetric ξ grid
  // this sub-flow conserves total momentum to roundoff.
  const std::size_t nk = grid_.k_nodes.size(), nx = grid_.xi_nodes.size();
  const double g = model_.g;
  std::vector<Cd> pk(nk), px(nx);
  for (std::size_t i = 0; i < nk; ++i)
    pk[i] = std::polar(1.0, -omega_[i * nx] * s.t);  // e^{-iωt}
  for (std::size_t j = 0; j < nx; ++j)
    px[j] = std::polar(1.0, grid_.xi_nodes[j] * s.q);  // e^{+iξq}
  double force_acc = 0.0;
  for (std::size_t i = 0; i < nk; ++i) {
    const Cd rot = pk[i];
    for (std::size_t j = 0; j < nx; ++j) {
      const std::size_t n = i * nx + j;
      const Cd c = rot * px[j];  // e^{i(ξq - ωt)}
      force_acc += wlx_[n] * std::imag(c * s.beta[n]);
      // β += -i g λ h · e^{iωt} e^{-iξq} = -i g λ h · conj(c)
      s.beta[n] += Cd(0.0, -g * lambda_[n] * h) * std::conj(c);
    }
  }
  s.p += 2.0 * g * force_acc * h;
}

ClassicalState MembraneSimulator::step_strang(const ClassicalState& s0, double dt) const {
  if (!(dt > 0.0)) throw ConfigError("step_strang: dt must be > 0");
  ClassicalState s = s0;
  kick(s, 0.5 * dt);
  s.q += s.p * dt / model_.mass;  // free flight; β untouched (exact rotation)
  s.t += dt;
  kick(s, 0.5 * dt);
  return s;
}

double MembraneSimulator::field_energy(const ClassicalState& s) const {
  double e = 0.0;
  for (std::size_t n = 0; n < omega_.size(); ++n)
    e += w_[n] * omega_[n] * std::norm(s.beta[n]);
  return e;
}

double MembraneSimulator::interaction_energy(const ClassicalState& s) const {
  const std::size_t nk = grid_.k_nodes.size(), nx = grid_.xi_nodes.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < nk; ++i) {
    const Cd rot = std::polar(1.0, -omega_[i * nx] * s.t);
    for (std::size_t j = 0; j < nx; ++j) {
      const std::size_t n = i * nx + j;
      const Cd c = rot * std::polar(1.0, xi_[n] * s.q);
      acc += w_[n] * lambda_[n] * std::real(c * s.beta[n]);
    }
  }
  return 2.0 * model_.g * acc;
}

double MembraneSimulator::total_energy(const ClassicalState& s) const {
  return 0.5 * s.p * s.p / model_.mass + field_energy(s) + interaction_energy(s);
}

double MembraneSimulator::total_momentum(const ClassicalState& s) const {
  double pf = 0.0;
  for (std::size_t n = 0; n < omega_.size(); ++n)
    pf += w_[n] * xi_[n] * std::norm(s.beta[n]);
  return s.p + pf;
}

double MembraneSimulator::force(const ClassicalState& s) const {
  const std::size_t nk = grid_.k_nodes.size(), nx = grid_.xi_nodes.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < nk; ++i) {
    const Cd rot = std::polar(1.0, -omega_[i * nx] * s.t);
    for (std::size_t j = 0; j < nx; ++j) {
      const std::size_t n = i * nx + j;
      const Cd c = rot * std::polar(1.0, xi_[n] * s.q);
      acc += wlx_[n] * std::imag(c * s.beta[n]);
    }
  }
  return 2.0 * model_.g * acc;
}

double MembraneSimulator::reality_defect(const ClassicalState& s) const {
  // Reconstruct the position-space field on a handful of x samples,
  // ψ(x) ∝ Σ w e^{iξx} ψ̂(k,ξ) with ψ̂ = (α(k,ξ) + conj(α(k,-ξ)))/√(2ω),
  // and report the imaginary residue relative to the real amplitude.
  const std::size_t nk = grid_.k_nodes.size(), nx = grid_.xi_nodes.size();
  const double xs[] = {0.0, 0.37, -1.2, 2.5};
  double worst_im = 0.0, real_scale = 0.0;
  for (double x : xs) {
    Cd z(0.0, 0.0);
    for (std::size_t i = 0; i < nk; ++i) {
      const Cd rot = std::polar(1.0, -omega_[i * nx] * s.t);
      for (std::size_t j = 0; j < nx; ++j) {
        const std::size_t n = i * nx + j;
        const std::size_t nm = i * nx + (nx - 1 - j);  // ξ → -ξ on the same k row
        const Cd psi_hat =
            (rot * s.beta[n] + std::conj(rot * s.beta[nm])) / std::sqrt(2.0 * omega_[n]);
        z += w_[n] * std::polar(1.0, xi_[n] * x) * psi_hat;
      }
    }
    worst_im = std::max(worst_im, std::abs(z.imag()));
    real_scale = std::max(real_scale, std::abs(z.real()));
  }
  return worst_im / std::max(real_scale, 1e-300);
}

void MembraneSimulator::check_finite(const ClassicalState& s) const {
  if (!std::isfinite(s.q) || !std::isfinite(s.p))
    throw BlowUpError("particle coordinates non-finite at t=" + std::to_string(s.t));
  for (std::size_t n = 0; n < s.beta.size(); ++n) {
    if (!std::isfinite(s.beta[n].real()) || !std::isfinite(s.beta[n].imag()))
      throw BlowUpError("amplitude non-finite at node " + std::to_string(n) +
                        ", t=" + std::to_string(s.t));
  }
}

TrajectoryRecord MembraneSimulator::run(const ClassicalState& start, const RunSpec& spec) const {
  if (!(spec.dt > 0.0) || !(spec.T > 0.0) || spec.sample_stride < 1)
    throw ConfigError("invalid run spec (dt, T, sample_stride)");
  TrajectoryRecord rec;
  char buf[256];
  std::snprintf(buf, sizeof buf, "mu=%.17g g=%.17g m=%.17g modes=%zux%zu dt=%.17g T=%.17g",
                model_.mu, model_.g, model_.mass, grid_.k_nodes.size(),
                grid_.xi_nodes.size(), spec.dt, spec.T);
  rec.fingerprint = buf;

  ClassicalState s = start;
  const long steps = static_cast<long>(std::llround(spec.T / spec.dt));
  auto sample = [&](const ClassicalState& st) {
    check_finite(st);
    rec.t.push_back(st.t);
    rec.q.push_back(st.q);
    rec.p.push_back(st.p);
    rec.energy.push_back(total_energy(st));
    rec.momentum.push_back(total_momentum(st));
    rec.field_energy.push_back(field_energy(st));
  };
  sample(s);
  for (long step = 1; step <= steps; ++step) {
    s = step_strang(s, spec.dt);
    if (step % spec.sample_stride == 0 || step == steps) sample(s);
  }
  return rec;
}

ClampResult MembraneSimulator::measure_drag_clamped(double v, double T, double dt,
                                                    double settle_tol) const {
  if (v == 0.0) throw ConfigError("clamped drag needs v != 0");
  if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("clamped drag needs T, dt > 0");

  // Field modes under forced q(t) = v t obey β̇_n = -i g λ_n e^{iΔ_n t} with
  // Δ_n = ω_n - ξ_n v; each step applies the exact increment.
  const std::size_t n = omega_.size();
  const double g = model_.g;
  std::vector<Cd> beta(n, Cd(0, 0)), r(n, Cd(1, 0)), u(n), G(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double delta = omega_[m] - xi_[m] * v;
    u[m] = std::polar(1.0, delta * dt);
    if (std::abs(delta) * dt < 1e-8) {
      G[m] = Cd(0.0, -g * lambda_[m] * dt);
    } else {
      // ∫_0^dt e^{iΔs} ds = (e^{iΔdt} - 1)/(iΔ)
      G[m] = Cd(0.0, -g * lambda_[m]) * (u[m] - 1.0) / Cd(0.0, delta);
    }
  }

  const long steps = static_cast<long>(std::llround(T / dt));
  const long half = steps / 2;
  const long quarter3 = (3 * steps) / 4;
  double hann_sum = 0.0, hann_wsum = 0.0;
  double w1_sum = 0.0, w1_wsum = 0.0, w2_sum = 0.0, w2_wsum = 0.0;

  for (long step = 1; step <= steps; ++step) {
    for (std::size_t m = 0; m < n; ++m) {
      beta[m] += G[m] * r[m];
      r[m] *= u[m];
    }
    if (step >= half) {
      // F(t) = 2g Σ w λ ξ Im(e^{-iΔt} β)
      double f = 0.0;
      for (std::size_t m = 0; m < n; ++m)
        f += wlx_[m] * std::imag(std::conj(r[m]) * beta[m]);
      f *= 2.0 * g;
      const double phase = kPi * double(step - half) / double(steps - half);
      const double hann = std::sin(phase) * std::sin(phase);
      hann_sum += hann * f;
      hann_wsum += hann;
      if (step < quarter3) {
        const double ph = kPi * double(step - half) / double(quarter3 - half);
        const double h1 = std::sin(ph) * std::sin(ph);
        w1_sum += h1 * f;
        w1_wsum += h1;
      } else {
        const double ph = kPi * double(step - quarter3) / double(steps - quarter3);
        const double h2 = std::sin(ph) * std::sin(ph);
        w2_sum += h2 * f;
        w2_wsum += h2;
      }
    }
  }

  ClampResult res;
  res.mean_force = hann_sum / hann_wsum;
  res.first_half_mean = w1_sum / w1_wsum;
  res.second_half_mean = w2_sum / w2_wsum;
  const double scale = std::max(std::abs(res.second_half_mean), 1e-300);
  if (std::abs(res.first_half_mean - res.second_half_mean) > settle_tol * scale)
    throw NotSettledError("window averages differ by more than " +
                          std::to_string(settle_tol) + " relative");
  return res;
}

}  // namespace friclab
