#include "friclab/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "friclab/classical_sim.hpp"
#include "friclab/drag.hpp"
#include "friclab/errors.hpp"
#include "friclab/fgr.hpp"
#include "friclab/fock.hpp"
#include "friclab/io.hpp"
#include "friclab/parallel.hpp"

namespace friclab::cli {

namespace {

constexpr const char* kVersion = "friclab 0.1.0";

const std::vector<std::string> kSchema = {
    // model
    "model.profile1", "model.sigma1", "model.amp1", "model.profile2", "model.sigma2",
    "model.amp2", "model.mu", "model.g", "model.d", "model.mass",
    // drag
    "drag.mu_list", "drag.v_min", "drag.v_max", "drag.v_count", "drag.window_lo",
    "drag.window_hi", "drag.omega_nodes",
    // sim
    "sim.k_min", "sim.k_max", "sim.k_nodes", "sim.xi_max", "sim.xi_nodes", "sim.dt",
    "sim.T", "sim.sample_stride", "sim.q0", "sim.p0", "sim.start",
    // clamp
    "clamp.v", "clamp.T", "clamp.dt", "clamp.settle_tol", "clamp.k_min", "clamp.k_max",
    "clamp.k_nodes", "clamp.xi_max", "clamp.xi_nodes",
    // fgr
    "fgr.mu_list", "fgr.p_min", "fgr.p_max", "fgr.p_count", "fgr.lorentzian",
    "fgr.eps_list", "fgr.outer_nodes", "fgr.inner_nodes",
    // spectrum
    "spectrum.P_list", "spectrum.k_min", "spectrum.k_max", "spectrum.per_octave",
    "spectrum.xi_max", "spectrum.xi_half", "spectrum.nmax", "spectrum.g_list",
    "spectrum.run_flatness", "spectrum.run_ir", "spectrum.run_mourre",
    "spectrum.ir_mu_list", "spectrum.ir_kmin_list", "spectrum.ir_g",
    "spectrum.mourre_mu", "spectrum.mourre_g", "spectrum.dump_operator",
    // output
    "output.dir",
};

RadialProfile profile_from(const Config& cfg, const std::string& which) {
  const std::string kind = cfg.get_string("model.profile" + which, "gaussian");
  const double sigma = cfg.get_double("model.sigma" + which, 1.0);
  const double amp = cfg.get_double("model.amp" + which, 1.0);
  switch (profile_kind_from_string(kind)) {
    case ProfileKind::gaussian: return RadialProfile::gaussian(sigma, amp);
    case ProfileKind::compact_bump: return RadialProfile::compact_bump(sigma, amp);
    case ProfileKind::table:
      throw ConfigError("table profiles are not configurable from the CLI");
  }
  return RadialProfile::gaussian(sigma, amp);
}

FormFactorModel model_from(const Config& cfg) {
  FormFactorModel m;
  m.rho1_hat = profile_from(cfg, "1");
  m.rho2_hat = profile_from(cfg, "2");
  m.mu = cfg.get_double("model.mu", 0.0);
  m.g = cfg.get_double("model.g", 0.3);
  m.d = cfg.get_int("model.d", 1);
  m.mass = cfg.get_double("model.mass", 1.0);
  m.validate();
  return m;
}

struct OutputContext {
  std::filesystem::path dir;
  RunManifest manifest;
  std::vector<std::string> files;

  OutputContext(const Config& cfg, const std::string& out_override)
      : dir(out_override.empty() ? cfg.get_string("output.dir", "out") : out_override),
        manifest(kVersion, cfg.render()) {
    std::filesystem::create_directories(dir);
  }
  std::string path(const std::string& name) { return (dir / name).string(); }
  void record(const std::string& p) {
    manifest.record_file(p);
    files.push_back(p);
  }
  void finalize(double wall_seconds) {
    manifest.set_wall_seconds(wall_seconds);
    manifest.write((dir / "manifest.txt").string());
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    std::cout << "wrote " << (dir / "manifest.txt").string() << "\n";
  }
};

std::vector<double> geometric_ladder(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = lo * std::pow(hi / lo, count == 1 ? 0.0 : double(i) / (count - 1));
  return v;
}

int cmd_drag(const Config& cfg, OutputContext& out) {
  const std::vector<double> mu_list = cfg.get_double_list("drag.mu_list", {-0.5, -0.25, 0.0, 0.5});
  if (mu_list.empty()) throw ConfigError("drag.mu_list must not be empty");
  const double v_min = cfg.get_double("drag.v_min", 1e-4);
  const double v_max = cfg.get_double("drag.v_max", 2.0);
  const int v_count = cfg.get_int("drag.v_count", 48);
  const double wlo = cfg.get_double("drag.window_lo", 1e-3);
  const double whi = cfg.get_double("drag.window_hi", 1e-2);
  DragQuadrature quad;
  quad.omega_nodes = cfg.get_int("drag.omega_nodes", 256);

  FormFactorModel base = model_from(cfg);
  const std::vector<double> velocities = geometric_ladder(v_min, v_max, v_count);

  std::vector<DragCurve> curves(mu_list.size());
  std::vector<double> gammas(mu_list.size());
  parallel_for(mu_list.size(), [&](std::size_t i) {
    FormFactorModel m = base;
    m.mu = mu_list[i];
    m.validate();
    curves[i] = build_drag_curve(m, quad, velocities, wlo, whi);
    gammas[i] = gamma_alpha(m, quad);
  });

  CsvWriter curve_csv({"v", "f_r", "mu"});
  SvgChart chart("drag magnitude |f_r(v)|", "v", "|f_r|", true, true);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const DragCurve& c = curves[i];
    for (std::size_t j = 0; j < c.velocities.size(); ++j)
      curve_csv.add_row(std::vector<double>{c.velocities[j], c.magnitudes[j], c.mu});
    chart.add_series("mu=" + format_double(c.mu), c.velocities, c.magnitudes);
  }
  curve_csv.write(out.path("drag_curve.csv"));
  out.record(out.path("drag_curve.csv"));
  chart.write(out.path("drag_curve.svg"));
  out.record(out.path("drag_curve.svg"));

  CsvWriter fit_csv({"mu", "fit_exponent", "expected_exponent", "fit_coefficient",
                     "gamma_alpha", "window_lo", "window_hi"});
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const DragCurve& c = curves[i];
    fit_csv.add_row(std::vector<double>{c.mu, c.fit_exponent, 2.0 * (c.mu + 1.0),
                                        c.fit_coefficient, gammas[i], c.window_lo,
                                        c.window_hi});
  }
  fit_csv.write(out.path("drag_fits.csv"));
  out.record(out.path("drag_fits.csv"));
  return 0;
}

int cmd_simulate(const Config& cfg, OutputContext& out) {
  FormFactorModel model = model_from(cfg);
  const double dt = cfg.get_double("sim.dt", 1e-3);
  const double T = cfg.get_double("sim.T", 20.0);
  if (!(dt > 0.0)) throw ConfigError("sim.dt must be > 0");
  if (!(T > 0.0)) throw ConfigError("sim.T must be > 0");

  ModeGrid grid = ModeGrid::make(cfg.get_double("sim.k_min", 1e-3),
                                 cfg.get_double("sim.k_max", 6.0),
                                 cfg.get_int("sim.k_nodes", 48),
                                 cfg.get_double("sim.xi_max", 6.0),
                                 cfg.get_int("sim.xi_nodes", 64));
  MembraneSimulator sim(model, grid);

  const std::string start = cfg.get_string("sim.start", "equilibrium");
  ClassicalState s0;
  if (start == "vacuum")
    s0 = sim.initial_state(cfg.get_double("sim.q0", 0.0), cfg.get_double("sim.p0", 0.4));
  else if (start == "equilibrium")
    s0 = sim.equilibrium_state(cfg.get_double("sim.q0", 0.0), cfg.get_double("sim.p0", 0.4));
  else
    throw ConfigError("sim.start must be 'vacuum' or 'equilibrium'");

  RunSpec spec;
  spec.dt = dt;
  spec.T = T;
  spec.sample_stride = cfg.get_int("sim.sample_stride", 100);
  TrajectoryRecord rec = sim.run(s0, spec);

  CsvWriter traj({"t", "q", "p", "E", "P_tot", "E_field"});
  for (std::size_t i = 0; i < rec.t.size(); ++i)
    traj.add_row(std::vector<double>{rec.t[i], rec.q[i], rec.p[i], rec.energy[i],
                                     rec.momentum[i], rec.field_energy[i]});
  traj.write(out.path("trajectory.csv"));
  out.record(out.path("trajectory.csv"));

  double e_drift = 0.0, p_drift = 0.0;
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    e_drift = std::max(e_drift, std::abs(rec.energy[i] - rec.energy[0]));
    p_drift = std::max(p_drift, std::abs(rec.momentum[i] - rec.momentum[0]));
  }
  const double scale = std::max(std::abs(rec.energy[0]), 1e-30);
  CsvWriter cons({"energy_drift_abs", "energy_drift_rel", "momentum_drift_abs",
                  "initial_energy", "fingerprint"});
  cons.add_row(std::vector<std::string>{format_double(e_drift),
                                        format_double(e_drift / scale),
                                        format_double(p_drift),
                                        format_double(rec.energy[0]),
                                        rec.fingerprint});
  cons.write(out.path("conservation.csv"));
  out.record(out.path("conservation.csv"));

  std::vector<double> absp(rec.p.size());
  for (std::size_t i = 0; i < rec.p.size(); ++i) absp[i] = std::abs(rec.p[i]);
  SvgChart chart("trajectory", "t", "value");
  chart.add_series("|p|(t)", rec.t, absp);
  chart.add_series("q(t)", rec.t, rec.q);
  chart.write(out.path("trajectory.svg"));
  out.record(out.path("trajectory.svg"));
  return 0;
}

int cmd_clamp(const Config& cfg, OutputContext& out) {
  FormFactorModel model = model_from(cfg);
  const double v = cfg.get_double("clamp.v", 0.3);
  const double T = cfg.get_double("clamp.T", 150.0);
  const double dt = cfg.get_double("clamp.dt", 0.05);
  ModeGrid grid = ModeGrid::make_uniform_k(cfg.get_double("clamp.k_min", 2e-4),
                                           cfg.get_double("clamp.k_max", 4.0),
                                           cfg.get_int("clamp.k_nodes", 1400),
                                           cfg.get_double("clamp.xi_max", 6.0),
                                           cfg.get_int("clamp.xi_nodes", 128));
  MembraneSimulator sim(model, grid);
  ClampResult res = sim.measure_drag_clamped(v, T, dt, cfg.get_double("clamp.settle_tol", 0.05));

  const double fr = drag_magnitude(std::abs(v), model).magnitude;
  const double predicted = -model.g * model.g * fr * (v > 0 ? 1.0 : -1.0);
  const double rel_err = std::abs(res.mean_force - predicted) / std::abs(predicted);

  CsvWriter csv({"v", "measured_force", "predicted_force", "rel_err", "window1", "window2"});
  csv.add_row(std::vector<double>{v, res.mean_force, predicted, rel_err,
                                  res.first_half_mean, res.second_half_mean});
  csv.write(out.path("clamp.csv"));
  out.record(out.path("clamp.csv"));
  return 0;
}

int cmd_fgr(const Config& cfg, OutputContext& out) {
  const std::vector<double> mu_list =
      cfg.get_double_list("fgr.mu_list", {-0.25, 0.0, 0.5, 1.0});
  if (mu_list.empty()) throw ConfigError("fgr.mu_list must not be empty");
  const double p_min = cfg.get_double("fgr.p_min", 0.0);
  const double p_max = cfg.get_double("fgr.p_max", 6.0);
  const int p_count = cfg.get_int("fgr.p_count", 33);
  FgrQuadrature quad;
  quad.outer_nodes = cfg.get_int("fgr.outer_nodes", 256);
  quad.inner_nodes = cfg.get_int("fgr.inner_nodes", 192);

  std::vector<double> P(p_count);
  for (int i = 0; i < p_count; ++i)
    P[i] = p_min + (p_max - p_min) * double(i) / (p_count - 1);

  FormFactorModel base = model_from(cfg);
  std::vector<FgrCurve> curves(mu_list.size());
  parallel_for(mu_list.size(), [&](std::size_t i) {
    FormFactorModel m = base;
    m.mu = mu_list[i];
    m.validate();
    curves[i] = build_fgr_curve(m, P, quad);
  });

  CsvWriter csv({"P", "c", "mu", "d", "method"});
  SvgChart chart("Fermi Golden Rule c(|P|)", "|P|", "c");
  for (const auto& c : curves) {
    for (std::size_t j = 0; j < c.P.size(); ++j)
      csv.add_row(std::vector<std::string>{format_double(c.P[j]), format_double(c.c[j]),
                                           format_double(c.mu), std::to_string(c.d),
                                           c.method});
    chart.add_series("mu=" + format_double(c.mu), c.P, c.c);
  }

  if (cfg.get_bool("fgr.lorentzian", false)) {
    const std::vector<double> eps = cfg.get_double_list("fgr.eps_list", {1e-1, 1e-2, 1e-3});
    for (const auto& c : curves) {
      FormFactorModel m = base;
      m.mu = c.mu;
      std::vector<double> cl(c.P.size(), 0.0);
      parallel_for(c.P.size(), [&](std::size_t j) {
        if (c.P[j] > 0.0) cl[j] = c_lorentzian(c.P[j], m, eps, quad);
      });
      for (std::size_t j = 0; j < c.P.size(); ++j)
        csv.add_row(std::vector<std::string>{format_double(c.P[j]), format_double(cl[j]),
                                             format_double(c.mu), std::to_string(m.d),
                                             "lorentzian"});
    }
  }
  csv.write(out.path("fgr_curve.csv"));
  out.record(out.path("fgr_curve.csv"));
  chart.write(out.path("fgr_curve.svg"));
  out.record(out.path("fgr_curve.svg"));

  CsvWriter fits({"mu", "d", "small_p_slope", "predicted_slope", "peak_P", "c_max"});
  for (const auto& c : curves) {
    FormFactorModel m = base;
    m.mu = c.mu;
    const double slope = c_small_P_exponent(m, quad);
    std::size_t arg = 0;
    for (std::size_t j = 0; j < c.c.size(); ++j)
      if (c.c[j] > c.c[arg]) arg = j;
    fits.add_row(std::vector<double>{c.mu, double(m.d), slope, m.d + 4.0 + 4.0 * c.mu,
                                     c.P[arg], c.c[arg]});
  }
  fits.write(out.path("fgr_fits.csv"));
  out.record(out.path("fgr_fits.csv"));
  return 0;
}

int cmd_spectrum(const Config& cfg, OutputContext& out) {
  FormFactorModel model = model_from(cfg);
  const double k_min = cfg.get_double("spectrum.k_min", 0.02);
  const double k_max = cfg.get_double("spectrum.k_max", 4.0);
  const int per_octave = cfg.get_int("spectrum.per_octave", 2);
  const double xi_max = cfg.get_double("spectrum.xi_max", 3.0);
  const int xi_half = cfg.get_int("spectrum.xi_half", 6);
  const int nmax = cfg.get_int("spectrum.nmax", 2);

  SingleBosonGrid grid = SingleBosonGrid::make(k_min, k_max, per_octave, xi_max, xi_half);
  FockBasis basis(grid.size(), nmax);

  const std::vector<double> P_list = cfg.get_double_list("spectrum.P_list", {0.0, 0.5, 1.0});
  CsvWriter spec_csv({"P", "E", "E2_pt", "vacuum_overlap", "mean_N", "residual",
                      "pt_excluded_nodes"});
  for (double P : P_list) {
    FockOperator H = assemble_H(P, model, grid, basis);
    EigenPair pair = lowest_eigenpair(H);
    SpectralReport rep = make_report(P, H, basis, pair);
    Pt2Result pt2 = pt2_energy(P, model, grid);
    spec_csv.add_row(std::vector<double>{P, rep.energy, pt2.value, rep.vacuum_overlap,
                                         rep.mean_boson_number, rep.residual,
                                         double(pt2.excluded)});
    if (P == P_list.front() && cfg.get_bool("spectrum.dump_operator", false)) {
      std::string dump = "# row col re im\n";
      for (int r = 0; r < H.matrix.outerSize(); ++r)
        for (SparseHermitian::InnerIterator it(H.matrix, r); it; ++it)
          dump += std::to_string(it.row()) + " " + std::to_string(it.col()) + " " +
                  format_double(it.value().real()) + " " +
                  format_double(it.value().imag()) + "\n";
      write_file(out.path("operator_H.txt"), dump);
      out.record(out.path("operator_H.txt"));
    }
  }
  spec_csv.write(out.path("spectrum.csv"));
  out.record(out.path("spectrum.csv"));

  // PT2 comparison ladder at P = 0 (g-quartic remainder).
  const std::vector<double> g_list =
      cfg.get_double_list("spectrum.g_list", {0.05, 0.1, 0.2, 0.4});
  CsvWriter pt_csv({"g", "E_trunc", "E2", "abs_diff"});
  std::vector<double> lg, ld;
  for (double g : g_list) {
    FormFactorModel m = model;
    m.g = g;
    FockOperator H = assemble_H(0.0, m, grid, basis);
    const double E = lowest_eigenpair(H).value;
    const double E2 = pt2_energy(0.0, m, grid).value;
    pt_csv.add_row(std::vector<double>{g, E, E2, std::abs(E - E2)});
    if (std::abs(E - E2) > 0.0) {
      lg.push_back(std::log(g));
      ld.push_back(std::log(std::abs(E - E2)));
    }
  }
  pt_csv.write(out.path("pt2_ladder.csv"));
  out.record(out.path("pt2_ladder.csv"));
  CsvWriter pt_fit({"g4_slope"});
  pt_fit.add_row(std::vector<double>{lg.size() >= 2 ? fit_line(lg, ld).slope : 0.0});
  pt_fit.write(out.path("pt2_fit.csv"));
  out.record(out.path("pt2_fit.csv"));

  if (cfg.get_bool("spectrum.run_flatness", true)) {
    FlatnessOptions fo;
    fo.k_min0 = 0.1;
    fo.k_max = k_max;
    fo.n_max = nmax;
    std::vector<double> probes;
    for (double P : P_list)
      if (P != 0.0) probes.push_back(P);
    if (probes.empty()) probes = {0.5, 1.0};
    auto rows = flatness_probe(probes, model, fo);
    CsvWriter flat({"P", "level", "k_min", "E", "gap"});
    for (const auto& r : rows)
      flat.add_row(std::vector<double>{r.P, double(r.level), r.k_min, r.energy, r.gap});
    flat.write(out.path("flatness.csv"));
    out.record(out.path("flatness.csv"));
  }

  if (cfg.get_bool("spectrum.run_ir", true)) {
    IrProbeOptions io;
    io.g = cfg.get_double("spectrum.ir_g", 2e-3);
    const std::vector<double> mus =
        cfg.get_double_list("spectrum.ir_mu_list", {-0.75, -0.5, 0.0});
    const std::vector<double> kmins = cfg.get_double_list(
        "spectrum.ir_kmin_list", {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4});
    auto rows = ir_ground_state_probe(mus, kmins, model, io);
    CsvWriter ir({"mu", "k_min", "soft_weight", "pt_quadrature", "vacuum_weight"});
    for (const auto& r : rows)
      ir.add_row(std::vector<double>{r.mu, r.k_min, r.soft_weight, r.pt_quadrature,
                                     r.vacuum_weight});
    ir.write(out.path("ir_probe.csv"));
    out.record(out.path("ir_probe.csv"));

    CsvWriter irfit({"mu", "fitted_exponent", "expected_exponent", "log_r_squared"});
    for (double mu : mus) {
      std::vector<double> x, y;
      for (const auto& r : rows)
        if (r.mu == mu) {
          x.push_back(std::log(1.0 / r.k_min));
          y.push_back(r.soft_weight);
        }
      const double expo = ir_probe_exponent(rows, mu);
      const LineFit lin = fit_line(x, y);  // S vs ln(1/k_min), the μ=-1/2 diagnostic
      irfit.add_row(std::vector<double>{mu, expo, std::min(2.0 * mu + 1.0, 0.0),
                                        lin.r_squared});
    }
    irfit.write(out.path("ir_fits.csv"));
    out.record(out.path("ir_fits.csv"));
  }

  if (cfg.get_bool("spectrum.run_mourre", true)) {
    FormFactorModel m = model;
    m.mu = cfg.get_double("spectrum.mourre_mu", 1.0);
    const double g = cfg.get_double("spectrum.mourre_g", 0.1);
    MourreReport rep = mourre_check(m, grid, nmax, g);
    CsvWriter mc({"mu", "g", "a_h0_norm", "c0", "vacuum_shift", "min_eig", "margin",
                  "inequality_holds"});
    mc.add_row(std::vector<double>{m.mu, g, rep.a_h0_norm, rep.c0, rep.vacuum_shift,
                                   rep.min_eigenvalue, rep.margin,
                                   rep.inequality_holds ? 1.0 : 0.0});
    mc.write(out.path("mourre.csv"));
    out.record(out.path("mourre.csv"));
  }
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Numerical laboratory for a Hamiltonian friction model: classical drag "
               "kernels, symplectic particle-membrane dynamics, and fixed-momentum "
               "Fock-space spectral probes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Experiment config file (sectioned key=value)");
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--set", overrides, "Override a key, e.g. --set model.mu=0.5");

  auto* drag = app.add_subcommand("drag", "Drag curve and power-law fit per mu");
  auto* simulate = app.add_subcommand("simulate", "Trajectory run with conservation report");
  auto* clamp = app.add_subcommand("clamp", "Clamped-velocity drag vs kernel prediction");
  auto* fgr = app.add_subcommand("fgr", "Fermi-Golden-Rule curves c(|P|) per mu");
  auto* spectrum = app.add_subcommand("spectrum", "Fock-space eigenvalues and probes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help / --version
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Config cfg = config_path.empty() ? Config() : Config::parse_file(config_path);
    for (const auto& ov : overrides) cfg.apply_override(ov);
    cfg.enforce_schema(kSchema);
    OutputContext out(cfg, out_dir);

    int rc = 0;
    if (drag->parsed()) rc = cmd_drag(cfg, out);
    else if (simulate->parsed()) rc = cmd_simulate(cfg, out);
    else if (clamp->parsed()) rc = cmd_clamp(cfg, out);
    else if (fgr->parsed()) rc = cmd_fgr(cfg, out);
    else if (spectrum->parsed()) rc = cmd_spectrum(cfg, out);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.finalize(wall);
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NumericsError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace friclab::cli
