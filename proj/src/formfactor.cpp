#include "friclab/formfactor.hpp"

#include <algorithm>
#include <cmath>

#include "friclab/errors.hpp"

namespace friclab {

namespace {
constexpr double kPi = 3.14159265358979323846;

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot_of(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
}  // namespace

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "gaussian") return ProfileKind::gaussian;
  if (s == "compact-bump" || s == "bump") return ProfileKind::compact_bump;
  if (s == "table") return ProfileKind::table;
  throw ConfigError("unknown profile kind '" + s + "'");
}

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::compact_bump: return "compact-bump";
    case ProfileKind::table: return "table";
  }
  return "?";
}

RadialProfile RadialProfile::gaussian(double sigma, double amplitude) {
  if (!(sigma > 0.0)) throw ConfigError("profile scale must be > 0");
  RadialProfile p;
  p.kind_ = ProfileKind::gaussian;
  p.sigma_ = sigma;
  p.amp_ = amplitude;
  return p;
}

RadialProfile RadialProfile::compact_bump(double sigma, double amplitude) {
  if (!(sigma > 0.0)) throw ConfigError("profile scale must be > 0");
  RadialProfile p;
  p.kind_ = ProfileKind::compact_bump;
  p.sigma_ = sigma;
  p.amp_ = amplitude;
  return p;
}

RadialProfile RadialProfile::table(std::vector<double> radii, std::vector<double> values) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw ConfigError("table profile needs >= 2 matched samples");
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw ConfigError("table profile radii must be sorted");
  RadialProfile p;
  p.kind_ = ProfileKind::table;
  p.sigma_ = radii.back();
  p.amp_ = values.front();
  p.table_r_ = std::move(radii);
  p.table_v_ = std::move(values);
  return p;
}

double RadialProfile::operator()(double s) const {
  switch (kind_) {
    case ProfileKind::gaussian:
      return amp_ * std::exp(-s * s / (2.0 * sigma_ * sigma_));
    case ProfileKind::compact_bump: {
      const double u = s / sigma_;
      if (u >= 1.0) return 0.0;
      return amp_ * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    case ProfileKind::table: {
      if (s <= table_r_.front()) return table_v_.front();
      if (s >= table_r_.back()) return 0.0;
      auto it = std::upper_bound(table_r_.begin(), table_r_.end(), s);
      const std::size_t i = static_cast<std::size_t>(it - table_r_.begin()) - 1;
      const double t = (s - table_r_[i]) / (table_r_[i + 1] - table_r_[i]);
      return table_v_[i] + t * (table_v_[i + 1] - table_v_[i]);
    }
  }
  return 0.0;
}

double RadialProfile::derivative(double s) const {
  switch (kind_) {
    case ProfileKind::gaussian:
      return -(s / (sigma_ * sigma_)) * (*this)(s);
    case ProfileKind::compact_bump: {
      const double u = s / sigma_;
      if (u >= 1.0) return 0.0;
      const double om = 1.0 - u * u;
      return (*this)(s) * (-2.0 * u / (om * om)) / sigma_;
    }
    case ProfileKind::table: {
      if (s <= table_r_.front() || s >= table_r_.back()) return 0.0;
      auto it = std::upper_bound(table_r_.begin(), table_r_.end(), s);
      const std::size_t i = static_cast<std::size_t>(it - table_r_.begin()) - 1;
      return (table_v_[i + 1] - table_v_[i]) / (table_r_[i + 1] - table_r_[i]);
    }
  }
  return 0.0;
}

double RadialProfile::cutoff_radius() const {
  switch (kind_) {
    case ProfileKind::gaussian: return 12.0 * sigma_;
    case ProfileKind::compact_bump: return sigma_;
    case ProfileKind::table: return table_r_.back();
  }
  return 12.0 * sigma_;
}

void FormFactorModel::validate() const {
  if (!(mu > -1.0)) throw ConfigError("standing assumption violated: mu must be > -1");
  if (!(mass > 0.0)) throw ConfigError("particle mass must be > 0");
  if (d < 1 || d > 3) throw ConfigError("particle-space dimension d must be 1, 2 or 3");
  if (rho2_hat(0.0) == 0.0) throw ConfigError("rho2_hat(0) must be nonzero");
}

FormFactorModel FormFactorModel::gaussian_default() {
  FormFactorModel m;
  m.rho1_hat = RadialProfile::gaussian(1.0);
  m.rho2_hat = RadialProfile::gaussian(1.0);
  return m;
}

double sphere_surface(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
  }
}

double sigma2_hat(double k, const FormFactorModel& model) {
  if (k < 0.0) throw ConfigError("sigma2_hat: radius must be nonnegative");
  const double e = model.mu + 0.5;
  if (k == 0.0) {
    if (e > 0.0) return 0.0;
    if (e == 0.0) return model.rho2_hat(0.0);
    throw InfraredSingularError("sigma2_hat at k=0 with mu < -1/2");
  }
  return std::pow(k, e) * model.rho2_hat(k);
}

Cplx coupling_h(const std::vector<double>& q, double k, const std::vector<double>& xi,
                const FormFactorModel& model) {
  double kpow;
  if (k == 0.0) {
    if (model.mu > 0.0) kpow = 0.0;
    else if (model.mu == 0.0) kpow = 1.0;
    else throw InfraredSingularError("coupling_h at k=0 with mu < 0");
  } else {
    kpow = std::pow(k, model.mu);
  }
  const double phase = -dot_of(q, xi);
  const double mag = kpow * model.rho1_hat(norm_of(xi)) * model.rho2_hat(k);
  return std::polar(mag, phase);
}

double hat_K(double omega, const FormFactorModel& model, int eta_nodes) {
  if (omega < 0.0) throw ConfigError("hat_K: frequency must be nonnegative");
  const double sqrt2pi = std::sqrt(2.0 * kPi);
  if (model.d == 1) {
    const double r = model.rho1_hat(omega);
    return -sqrt2pi * omega * omega * r * r;
  }
  // Transverse reduction: S_{d-2} ∫_0^∞ η^{d-2} ρ̂₁(√(ω²+η²))² dη.
  const double cutoff = model.rho1_hat.cutoff_radius();
  if (omega >= cutoff) return 0.0;
  const double surf = sphere_surface(model.d - 1);
  auto integrand = [&](double eta) {
    const double r = model.rho1_hat(std::sqrt(omega * omega + eta * eta));
    return std::pow(eta, model.d - 2) * r * r;
  };
  auto build = [&](int n) { return gauss_legendre(n, 0.0, cutoff); };
  const double inner = refined_integral(build, eta_nodes, integrand, 1e-10, 1e-280);
  return -sqrt2pi * omega * omega * surf * inner;
}

Cplx static_field_psi_q(const std::vector<double>& q, double k,
                        const std::vector<double>& xi, const FormFactorModel& model) {
  if (!(k > 0.0)) throw InfraredSingularError("static_field_psi_q needs k > 0");
  const double mag = -model.rho1_hat(norm_of(xi)) * sigma2_hat(k, model) / (k * k);
  return std::polar(1.0, dot_of(xi, q)) * mag;
}

double rho1_norm_squared(const FormFactorModel& model, int nodes) {
  const double cutoff = model.rho1_hat.cutoff_radius();
  const double surf = sphere_surface(model.d);
  auto integrand = [&](double s) {
    const double r = model.rho1_hat(s);
    return std::pow(s, model.d - 1) * r * r;
  };
  auto build = [&](int n) { return gauss_legendre(n, 0.0, cutoff); };
  return surf * refined_integral(build, nodes, integrand, 1e-10);
}

double classical_ground_energy_E0(const FormFactorModel& model, int k_nodes, double rel_tol) {
  model.validate();
  if (model.g == 0.0) return 0.0;
  const double cutoff = model.rho2_hat.cutoff_radius();
  const double alpha = 2.0 * model.mu + 1.0;
  auto integrand = [&](double k) {
    const double r = model.rho2_hat(k);
    return std::pow(k, alpha) * r * r;
  };
  auto build = [&](int n) { return mapped_power_rule(n, cutoff, alpha); };
  const double radial = refined_integral(build, k_nodes, integrand, rel_tol);
  const double norm1 = rho1_norm_squared(model);
  return -model.g * model.g * 0.5 * norm1 * 4.0 * kPi * radial;
}

double classical_ground_energy_E0_gaussian_oracle(double mu, double g, int d) {
  return -g * g * std::pow(kPi, 0.5 * d + 1.0) * std::tgamma(mu + 1.0);
}

}  // namespace friclab
