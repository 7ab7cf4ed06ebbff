#include "cli/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "flowlab/axisym.hpp"
#include "flowlab/blowup.hpp"
#include "flowlab/field_ops.hpp"
#include "flowlab/io.hpp"
#include "flowlab/kernels.hpp"
#include "flowlab/mild.hpp"
#include "flowlab/parabolic.hpp"

namespace flowlab {
namespace cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

std::string config_comment(const Config& cfg) {
  std::string out;
  for (const auto& line : cfg.resolved_lines()) out += "# config: " + line + "\n";
  return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

struct Emitter {
  const Config& cfg;
  RunOutcome& outcome;

  void write(const std::string& name, const std::string& body) {
    fs::create_directories(cfg.get_str("out_dir"));
    std::string path = join_path(cfg.get_str("out_dir"), name);
    io::save_text(path, body);
    outcome.artifacts.push_back(path);
  }
};

ordered_json json_vec(const std::vector<Real>& v) {
  ordered_json j = ordered_json::array();
  for (Real x : v) j.push_back(x);
  return j;
}

// ---------------------------------------------------------------- mild ----

VectorField build_datum(const Config& cfg, const std::string& name) {
  const int dim = cfg.schema().find("dim") ? int(cfg.get_int("dim")) : 2;
  const int N = int(cfg.get_int("N"));
  TorusGrid g(dim, N);
  if (name == "taylor-green") return mild::taylor_green(g);
  if (name == "square-wave") return mild::square_wave(g);
  if (name == "random-shell")
    return mild::random_shell(g, cfg.get_real("kmin"), cfg.get_real("kmax"),
                              cfg.get_seed());
  throw ConfigError("unknown datum `" + name + "`");
}

ordered_json smoothing_block(const mild::Trajectory& traj) {
  ordered_json j;
  for (int l = 0; l <= 1; ++l)
    for (int k = 0; k <= 2; ++k) {
      char key[16];
      std::snprintf(key, sizeof(key), "k%d_l%d", k, l);
      j[key] = mild::smoothing_diagnostic(traj, k, l);
    }
  return j;
}

RunOutcome run_mild(const Config& cfg, bool taylor_green_oracle) {
  const std::string datum_name =
      taylor_green_oracle ? "taylor-green" : cfg.get_str("datum");
  VectorField u0 = build_datum(cfg, datum_name);
  mild::PicardResult res =
      mild::picard_solve(u0, cfg.get_real("T"), cfg.get_real("dt"),
                         cfg.get_real("tol"), int(cfg.get_int("max_iter")));

  RunOutcome out;
  out.report["scenario"] = cfg.schema().scenario;
  out.report["config"] = cfg.resolved_json();
  ordered_json& r = out.report["result"];
  r["converged"] = res.converged;
  r["iterations"] = res.iterations;
  r["increments"] = json_vec(res.increments);
  r["ratios"] = json_vec(res.ratios);
  r["defect"] = res.defect;
  r["datum_projection_change"] = res.datum_projection_change;
  r["divergence_sup"] = res.divergence_sup;
  r["snapshots"] = res.traj.count();
  r["dt"] = res.traj.dt;
  r["t_end"] = res.traj.t_end();
  r["scheme"] = res.traj.scheme;
  r["smoothing"] = smoothing_block(res.traj);

  if (taylor_green_oracle) {
    const TorusGrid& g = res.traj.grid();
    VectorField tg = mild::taylor_green(g);
    Real sup_err = 0, vort_err = 0;
    for (const VectorField& snap : res.traj.snaps) {
      const Real decay = std::exp(-2.0 * snap.time);
      VectorField exact = scaled(tg, decay);
      exact.time = snap.time;
      sup_err = std::max(sup_err, sup_norm(sub(snap, exact)));
      vort_err = std::max(
          vort_err, std::abs(sup_norm(curl2d(snap)) - 2.0 * decay));
    }
    r["sup_error"] = sup_err;
    r["vorticity_sup_error"] = vort_err;
  }

  Emitter em{cfg, out};
  for (const std::string& name : split(cfg.get_str("emit"), ',')) {
    if (ends_with(name, ".csv")) {
      std::ostringstream os;
      os << config_comment(cfg);
      io::write_trajectory_csv(os, res.traj);
      em.write(name, os.str());
    } else if (ends_with(name, ".json")) {
      em.write(name, dump_json17(out.report));
    } else {
      throw ConfigError("emit entry `" + name + "` has no known artifact type");
    }
  }
  return out;
}

// -------------------------------------------------------------- kernels ----

RunOutcome run_kernel_table(const Config& cfg) {
  kernels::KernelKind kind =
      kernels::kernel_kind_from_name(cfg.get_str("kind"));
  const int n = int(cfg.get_int("n"));
  double lo, hi;
  int count;
  if (std::sscanf(cfg.get_str("scales").c_str(), "%lf:%lf:%d", &lo, &hi,
                  &count) != 3)
    throw ConfigError("key `scales` expects lo:hi:count, got `" +
                      cfg.get_str("scales") + "`");
  kernels::DecayFit fit =
      kernels::verify_decay(kind, n, kernels::log_scales(lo, hi, count));

  RunOutcome out;
  out.report["scenario"] = cfg.schema().scenario;
  out.report["config"] = cfg.resolved_json();
  ordered_json& r = out.report["result"];
  r["kind"] = kernels::kernel_kind_name(kind);
  r["n"] = n;
  r["slope"] = fit.slope;
  r["expected_slope"] = -kernels::decay_exponent(kind, n);
  r["fit_residual"] = fit.residual;
  r["rows"] = int(fit.rows.size());

  Emitter em{cfg, out};
  for (const std::string& name : split(cfg.get_str("emit"), ',')) {
    if (ends_with(name, ".csv")) {
      std::string body = config_comment(cfg);
      body += "scale,max_abs,bound_ratio,near_singular\n";
      for (const auto& row : fit.rows)
        body += io::real17(row.scale) + "," + io::real17(row.max_abs) + "," +
                io::real17(row.bound_ratio) + "," +
                (row.near_singular ? "1" : "0") + "\n";
      em.write(name, body);
    } else if (ends_with(name, ".json")) {
      em.write(name, dump_json17(out.report));
    } else {
      throw ConfigError("emit entry `" + name + "` has no known artifact type");
    }
  }
  return out;
}

// -------------------------------------------------------------- harnack ----

std::vector<VecXr> parse_points(const std::string& text, int dim) {
  std::vector<VecXr> out;
  for (const std::string& chunk : split(text, ';')) {
    auto coords = split(chunk, ',');
    if (int(coords.size()) != dim)
      throw ConfigError("probe point `" + chunk + "` needs " +
                        std::to_string(dim) + " coordinates");
    VecXr x(dim);
    for (int d = 0; d < dim; ++d) x[d] = std::strtod(coords[d].c_str(), nullptr);
    out.push_back(x);
  }
  return out;
}

RunOutcome run_harnack(const Config& cfg) {
  const int dim = int(cfg.get_int("dim"));
  if (dim != 1 && dim != 2)
    throw ConfigError("harnack-probe: dim must be 1 or 2");
  const Real T = cfg.get_real("T");

  parabolic::ParabolicProblem p;
  p.dim = dim;
  p.lo = VecXr::Constant(dim, cfg.get_real("lo"));
  p.hi = VecXr::Constant(dim, cfg.get_real("hi"));
  p.T = T;
  const std::string datum = cfg.get_str("datum");
  if (datum == "zero") {
    p.u0 = [](const VecXr&) { return 0.0; };
    p.bc = [](const VecXr&, Real) { return 1.0; };
  } else if (datum == "constant") {
    p.u0 = [](const VecXr&) { return 1.0; };
    p.bc = [](const VecXr&, Real) { return 1.0; };
  } else if (datum == "bump") {
    const VecXr lo = p.lo, hi = p.hi;
    p.u0 = [lo, hi, dim](const VecXr& x) {
      Real v = 1;
      for (int d = 0; d < dim; ++d) {
        Real xi = (2 * x[d] - lo[d] - hi[d]) / (hi[d] - lo[d]);
        Real c = std::cos(0.5 * kPi * xi);
        v *= c * c;
      }
      return v;
    };
    p.bc = [](const VecXr&, Real) { return 0.0; };
  } else {
    throw ConfigError("harnack-probe: datum must be zero, bump, or constant");
  }

  parabolic::HarnackProbe probe;
  probe.K = parse_points(cfg.get_str("K"), dim);
  probe.omega_lo = VecXr::Constant(dim, cfg.get_real("omega_lo"));
  probe.omega_hi = VecXr::Constant(dim, cfg.get_real("omega_hi"));
  probe.tau = cfg.get_real("tau");
  probe.deltas = cfg.get_real_list("deltas");
  probe.include_own = cfg.get_bool("include_own");
  const std::string windows = cfg.get_str("windows");
  if (windows == "auto") {
    probe.windows = parabolic::default_windows(T);
  } else if (windows != "none") {
    for (const std::string& item : split(windows, ',')) {
      char* end = nullptr;
      Real theta = std::strtod(item.c_str(), &end);
      if (end == item.c_str())
        throw ConfigError("key `windows` expects auto, none, or a real list");
      probe.windows.push_back(theta);
    }
  }

  parabolic::HarnackTable table = parabolic::harnack_stability_probe(
      p, probe, int(cfg.get_int("nx")), cfg.get_real("dt"));

  RunOutcome out;
  out.report["scenario"] = cfg.schema().scenario;
  out.report["config"] = cfg.resolved_json();
  ordered_json& r = out.report["result"];
  r["rows"] = ordered_json::array();
  for (const auto& row : table.rows)
    r["rows"].push_back({{"delta", row.delta},
                         {"eps", row.eps},
                         {"qualifying", row.qualifying}});
  r["members"] = ordered_json::array();
  for (const auto& mem : table.members)
    r["members"].push_back({{"label", mem.label},
                            {"peak_at_T", mem.peak_at_T},
                            {"interior_min", mem.interior_min},
                            {"global_sup", mem.global_sup}});

  Emitter em{cfg, out};
  for (const std::string& name : split(cfg.get_str("emit"), ',')) {
    if (ends_with(name, ".csv")) {
      std::string body = config_comment(cfg);
      body += "delta,eps,qualifying\n";
      for (const auto& row : table.rows)
        body += io::real17(row.delta) + "," + io::real17(row.eps) + "," +
                std::to_string(row.qualifying) + "\n";
      em.write(name, body);
    } else if (ends_with(name, ".json")) {
      em.write(name, dump_json17(out.report));
    } else {
      throw ConfigError("emit entry `" + name + "` has no known artifact type");
    }
  }
  return out;
}

// --------------------------------------------------------------- axisym ----

void zero_outer_rows(AxisymScalarField& s) {
  s.data.row(s.grid.nr - 1).setZero();
  s.data.col(0).setZero();
  s.data.col(s.grid.nz - 1).setZero();
}

std::string axisym_csv(const AxisymScalarField& s, const std::string& field) {
  const AxisymGrid& g = s.grid;
  std::string body = "# axigrid: nr=" + std::to_string(g.nr) +
                     ", nz=" + std::to_string(g.nz) +
                     ", r_max=" + io::real17(g.r_max) +
                     ", z_min=" + io::real17(g.z_min) +
                     ", z_max=" + io::real17(g.z_max) +
                     ", t=" + io::real17(s.time) + ", field=" + field + "\n";
  body += "i,j,value\n";
  for (Index j = 0; j < g.nz; ++j)
    for (Index i = 0; i < g.nr; ++i)
      body += std::to_string(i) + "," + std::to_string(j) + "," +
              io::real17(s.data(i, j)) + "\n";
  return body;
}

RunOutcome run_axisym(const Config& cfg) {
  AxisymGrid g(int(cfg.get_int("nr")), int(cfg.get_int("nz")),
               cfg.get_real("r_max"), cfg.get_real("z_min"),
               cfg.get_real("z_max"));
  const Real A = cfg.get_real("amplitude");
  const Real w = cfg.get_real("width");
  if (!(w > 0)) throw ConfigError("axisym-run: width must be positive");

  AxisymScalarField f(g), eta(g);
  const std::string datum = cfg.get_str("datum");
  auto fill = [&](AxisymScalarField& s, auto&& fn) {
    for (Index j = 0; j < g.nz; ++j)
      for (Index i = 0; i < g.nr; ++i) s.data(i, j) = fn(g.r(i), g.z(j));
  };
  if (datum == "swirl-bump") {
    fill(f, [&](Real r, Real z) {
      return A * r * r * std::exp(-(r * r + z * z) / (w * w));
    });
    zero_outer_rows(f);
  } else if (datum == "eta-bump") {
    fill(eta, [&](Real r, Real z) {
      return A * std::exp(-(r * r + z * z) / (w * w));
    });
    zero_outer_rows(eta);
  } else if (datum == "rigid-rotation") {
    fill(f, [&](Real r, Real) { return A * r * r; });
  } else {
    throw ConfigError(
        "axisym-run: datum must be swirl-bump, eta-bump, or rigid-rotation");
  }

  const Real dt = cfg.get_real("dt");
  const int steps = int(cfg.get_int("steps"));
  if (steps < 1) throw ConfigError("axisym-run: steps must be >= 1");

  axisym::SwirlState state = axisym::make_state(f, eta, 0.0);
  axisym::MonitorReport monitors = axisym::liouville_monitors({state});
  Real theta_resid = 0, max_cfl = 0;
  std::vector<axisym::SwirlState> ring{state};
  for (int s = 0; s < steps; ++s) {
    max_cfl = std::max(max_cfl, axisym::advective_cfl(state, dt));
    axisym::SwirlState next = axisym::axisym_step(state, dt);
    auto rep = axisym::liouville_monitors({state, next});
    monitors.rows.push_back(rep.rows[1]);
    monitors.sup_f_monotone = monitors.sup_f_monotone && rep.sup_f_monotone;
    monitors.sup_eta_monotone =
        monitors.sup_eta_monotone && rep.sup_eta_monotone;
    ring.push_back(next);
    if (ring.size() > 3) ring.erase(ring.begin());
    if (ring.size() == 3)
      theta_resid =
          std::max(theta_resid, axisym::theta_momentum_residual(ring));
    state = std::move(next);
  }
  axisym::MeridionalFlow flow = axisym::meridional_from_eta(state.eta);

  RunOutcome out;
  out.report["scenario"] = cfg.schema().scenario;
  out.report["config"] = cfg.resolved_json();
  ordered_json& r = out.report["result"];
  r["steps"] = steps;
  r["t_end"] = state.time;
  r["sup_f_monotone"] = monitors.sup_f_monotone;
  r["sup_eta_monotone"] = monitors.sup_eta_monotone;
  r["boundary_margin"] = monitors.boundary_margin;
  r["max_advective_cfl"] = max_cfl;
  r["theta_momentum_residual"] = theta_resid;
  r["continuity_residual"] = axisym::continuity_residual(flow);
  const auto& last = monitors.rows.back();
  r["final"] = {{"sup_f", last.sup_f},
                {"inf_f", last.inf_f},
                {"sup_eta", last.sup_eta},
                {"sup_rho_u", last.sup_rho_u}};

  Emitter em{cfg, out};
  for (const std::string& name : split(cfg.get_str("emit"), ',')) {
    if (ends_with(name, "/")) {
      fs::create_directories(join_path(cfg.get_str("out_dir"), name));
      em.write(name + "f.csv", config_comment(cfg) + axisym_csv(state.f, "f"));
      em.write(name + "eta.csv",
               config_comment(cfg) + axisym_csv(state.eta, "eta"));
      em.write(name + "psi.csv",
               config_comment(cfg) + axisym_csv(state.psi, "psi"));
    } else if (ends_with(name, ".csv")) {
      std::string body = config_comment(cfg);
      body += "t,sup_f,inf_f,sup_eta,sup_rho_u,cfl\n";
      for (const auto& row : monitors.rows)
        body += io::real17(row.t) + "," + io::real17(row.sup_f) + "," +
                io::real17(row.inf_f) + "," + io::real17(row.sup_eta) + "," +
                io::real17(row.sup_rho_u) + "," + io::real17(row.cfl) + "\n";
      em.write(name, body);
    } else if (ends_with(name, ".json")) {
      em.write(name, dump_json17(out.report));
    } else {
      throw ConfigError("emit entry `" + name + "` has no known artifact type");
    }
  }
  return out;
}

// --------------------------------------------------------------- blowup ----

RunOutcome run_blowup(const Config& cfg) {
  const std::string traj_path = cfg.get_str("traj");
  const std::string trace_path = cfg.get_str("trace");
  const Real T = cfg.get_real("T");
  const int window = int(cfg.get_int("window"));

  blowup::BlowupTrace trace;
  ordered_json monitors_json;
  if (!traj_path.empty()) {
    std::istringstream is(io::load_text(traj_path));
    mild::Trajectory traj = io::read_trajectory_csv(is);
    trace = blowup::trace_from(traj);
    blowup::ScaleMonitorReport mon =
        blowup::scale_invariant_monitors(traj, T);
    monitors_json["applicable"] = mon.applicable;
    if (mon.applicable) {
      monitors_json["sup_rho_u"] = mon.sup_rho_u;
      monitors_json["lpq_55"] = mon.lpq_55;
      monitors_json["rows"] = int(mon.rows.size());
    }
  } else if (!trace_path.empty()) {
    std::istringstream is(io::load_text(trace_path));
    trace = io::read_trace_csv(is);
    monitors_json["applicable"] = false;
  } else {
    throw ConfigError("blowup-analyze: set traj= or trace=");
  }

  blowup::Classification cls = blowup::classify(trace, T, window);

  RunOutcome out;
  out.report["scenario"] = cfg.schema().scenario;
  out.report["config"] = cfg.resolved_json();
  out.report["type"] = blowup::type_name(cls.type);
  out.report["C_fit"] = cls.c_fit;
  out.report["leray_rate_inf"] = cls.leray_inf;
  out.report["window"] = cls.window_used;
  out.report["slope"] = cls.slope;
  out.report["fit_residual"] = cls.fit_residual;
  out.report["monitors"] = monitors_json;

  Emitter em{cfg, out};
  for (const std::string& name : split(cfg.get_str("emit"), ',')) {
    if (ends_with(name, ".json")) {
      em.write(name, dump_json17(out.report));
    } else if (ends_with(name, ".csv")) {
      std::ostringstream os;
      os << config_comment(cfg);
      io::write_trace_csv(os, trace);
      em.write(name, os.str());
    } else {
      throw ConfigError("emit entry `" + name + "` has no known artifact type");
    }
  }
  return out;
}

}  // namespace

RunOutcome run_scenario(const Config& cfg, bool quiet) {
  const std::string& name = cfg.schema().scenario;
  RunOutcome out;
  if (name == "taylor-green")
    out = run_mild(cfg, true);
  else if (name == "mild-solve")
    out = run_mild(cfg, false);
  else if (name == "kernel-table")
    out = run_kernel_table(cfg);
  else if (name == "harnack-probe")
    out = run_harnack(cfg);
  else if (name == "axisym-run")
    out = run_axisym(cfg);
  else if (name == "blowup-analyze")
    out = run_blowup(cfg);
  else
    throw ConfigError("unknown scenario `" + name + "`");

  if (!quiet) {
    std::string msg = name + ": wrote";
    for (size_t i = 0; i < out.artifacts.size(); ++i)
      msg += (i ? ", " : " ") + out.artifacts[i];
    std::puts(msg.c_str());
  }
  return out;
}

}  // namespace cli
}  // namespace flowlab
