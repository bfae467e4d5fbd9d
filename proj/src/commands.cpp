#include "algebromech/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "algebromech/finite_difference.hpp"

namespace algebromech::cli {

namespace {

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string join(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

class ReportWriter {
public:
  void put(const std::string& key, const std::string& value) { out_ << key << " = " << value << "\n"; }
  void put(const std::string& key, double value) { put(key, format_double(value)); }
  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void drift(const std::string& prefix, const DriftStats& d) {
    put(prefix + ".initial", d.initial);
    put(prefix + ".drift_max", d.max_abs);
    put(prefix + ".drift_mean", d.mean_abs);
    put(prefix + ".drift_rel_max", d.max_rel);
  }

  void diagnostics(const std::string& prefix, const DiagnosticsReport& r) {
    drift(prefix + "energy", r.energy);
    put(prefix + "apath_residual_max", r.apath_residual_max);
    put(prefix + "elp_residual_max", r.elp_residual_max);
    if (r.constraint_residual_max) put(prefix + "constraint_residual_max", *r.constraint_residual_max);
    for (const DriftStats& d : r.invariants) drift(prefix + "invariant." + d.name, d);
  }

  std::string str() const { return out_.str(); }

private:
  std::ostringstream out_;
};

void header(ReportWriter& w, const RunConfig& config, const catalog::SystemBundle& system) {
  w.put("system", config.system);
  for (const auto& [key, value] : system.params) w.put("params." + key, value);
  w.put("formulation", std::string(to_string(config.formulation)));
  w.put("method", std::string(to_string(config.method)));
  w.put("t_final", config.t_final);
  w.put("dt_requested", config.dt);
  w.put("seed", std::to_string(config.seed));
}

State initial_state(const RunConfig& config, const catalog::SystemBundle& system) {
  State s = system.default_state;
  if (config.q) s.q = to_vector(*config.q);
  if (config.xi) s.xi = to_vector(*config.xi);
  return s;
}

PontryaginState initial_pontryagin(const RunConfig& config, const catalog::SystemBundle& system) {
  const State s = initial_state(config, system);
  PontryaginState out{s.t, s.q, config.v ? to_vector(*config.v) : s.xi, Vector()};
  out.p = config.p ? to_vector(*config.p) : legendre(*system.lagrangian, out.q, out.v);
  return out;
}

std::string csv_header(Eigen::Index n, Eigen::Index m, bool hp) {
  std::string h = "t";
  for (Eigen::Index i = 0; i < n; ++i) h += ",q_" + std::to_string(i);
  for (Eigen::Index i = 0; i < m; ++i) h += ",xi_" + std::to_string(i);
  h += ",energy,apath_residual";
  if (hp) {
    for (Eigen::Index i = 0; i < m; ++i) h += ",v_" + std::to_string(i);
    for (Eigen::Index i = 0; i < m; ++i) h += ",p_" + std::to_string(i);
    h += ",constraint_residual";
  }
  return h + "\n";
}

void csv_values(std::string& row, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) row += "," + format_double(v[i]);
}

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ChartExitError& e) {
    log << "chart exit: " << e.what() << "\n";
    return kChartExit;
  } catch (const InputError& e) {
    log << "input error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    log << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "i/o error: " << e.what() << "\n";
    return kConfigError;
  }
}

double check_fd_step() { return fd::step_overridden() ? fd::relative_step() : 1e-5; }

}  // namespace

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", tmp, std::make_error_code(std::errc::io_error));
    out << content;
    out.flush();
    if (!out) throw std::filesystem::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
  }
  std::filesystem::rename(tmp, path);
}

int cmd_run(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const catalog::SystemBundle system = catalog::build(config.system, config.params);
    const LagrangianModel& lagrangian = *system.lagrangian;
    const AlgebroidModel& algebroid = *system.algebroid;
    const bool hp = config.formulation == Formulation::hp;

    Trajectory traj;
    std::optional<PontryaginTrajectory> hp_traj;
    DiagnosticsReport diag;
    if (hp) {
      hp_traj = hp_integrate(lagrangian, initial_pontryagin(config, system), config.t_final, config.dt, config.method);
      traj = as_state_trajectory(*hp_traj);
      diag = diagnostics(lagrangian, *hp_traj, system.invariants);
    } else {
      traj = integrate(lagrangian, initial_state(config, system), config.t_final, config.dt, config.method);
      diag = diagnostics(lagrangian, traj, system.invariants);
    }

    const std::vector<double> apath = apath_residual_per_node(algebroid, traj);
    std::string csv = csv_header(algebroid.base_dim(), algebroid.fiber_dim(), hp);
    for (std::size_t k = 0; k < traj.nodes.size(); ++k) {
      const State& s = traj.nodes[k];
      std::string row = format_double(s.t);
      csv_values(row, s.q);
      csv_values(row, s.xi);
      row += "," + format_double(energy(lagrangian, s.q, s.xi)) + "," + format_double(apath[k]);
      if (hp) {
        csv_values(row, hp_traj->nodes[k].v);
        csv_values(row, hp_traj->nodes[k].p);
        row += "," + format_double(hp_traj->constraint_residual[k]);
      }
      csv += row + "\n";
    }

    ReportWriter w;
    w.comment("algebromech run report");
    header(w, config, system);
    w.put("dt", traj.info.dt);
    w.put("steps", std::to_string(traj.nodes.size() - 1));
    w.diagnostics("", diag);
    w.put("final.t", traj.nodes.back().t);
    w.put("final.q", join(traj.nodes.back().q));
    w.put("final.xi", join(traj.nodes.back().xi));
    if (hp) w.put("final.p", join(hp_traj->nodes.back().p));

    write_atomically(config.trajectory_path, csv);
    write_atomically(config.report_path, w.str());
    log << "wrote " << config.trajectory_path << " (" << traj.nodes.size() << " rows) and " << config.report_path << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_compare(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    if (!config.compare) throw ConfigError(0, "", "compare needs a [compare] section");
    const CompareSection& cmp = *config.compare;
    ReportWriter w;
    w.comment("algebromech comparison report");
    w.put("kind", std::string(to_string(cmp.kind)));
    w.put("tolerance", cmp.tolerance);
    double deviation = 0.0;

    if (cmp.kind == CompareKind::routh) {
      const catalog::SystemBundle system = catalog::build(config.system, config.params);
      header(w, config, system);
      const State s0 = initial_state(config, system);
      const Vector momentum = cmp.momentum ? to_vector(*cmp.momentum)
                                           : Vector(legendre(*system.lagrangian, s0.q, s0.xi).head(cmp.n_cyclic));
      const RouthReport r = routh_compare(system.lagrangian, cmp.n_cyclic, momentum, s0, config.t_final, config.dt,
                                          config.method);
      deviation = r.y_deviation;
      w.put("n_cyclic", std::to_string(cmp.n_cyclic));
      w.put("momentum", join(momentum));
      w.put("max_deviation", r.y_deviation);
      w.put("y_dot_deviation", r.y_dot_deviation);
      w.put("momentum_drift", r.momentum_drift);
      w.put("x_drift", r.x_drift);
      if (r.constraint_near_singular) w.put("open_question", "momentum constraint Hessian near-singular");
      w.diagnostics("full.", r.full_diagnostics);
      w.diagnostics("reduced.", r.reduced_diagnostics);
    } else {
      const catalog::MorphismBundle mb = catalog::build_morphism(cmp.morphism, config.params, config.system);
      header(w, config, mb.source);
      w.put("morphism", cmp.morphism);
      w.put("target", mb.target.name);
      CompareOptions options;
      options.method = config.method;
      options.seed = config.seed;
      options.tolerance = cmp.tolerance;
      options.source_hooks = mb.source.invariants;
      options.target_hooks = mb.target.invariants;
      const ComparisonReport r =
          cmp.kind == CompareKind::reduce
              ? reduce_compare(*mb.source.lagrangian, *mb.target.lagrangian, mb.morphism, initial_state(config, mb.source),
                               config.t_final, config.dt, options)
              : hp_reduce_compare(*mb.source.lagrangian, *mb.target.lagrangian, mb.morphism,
                                  initial_pontryagin(config, mb.source), config.t_final, config.dt, options);
      deviation = r.max_deviation;
      w.put("max_deviation", r.max_deviation);
      w.put("invariance_discrepancy", r.invariance_discrepancy);
      w.put("anchor_compat", r.anchor_compat);
      w.put("bracket_compatibility_suspect", r.bracket_compatibility_suspect ? "true" : "false");
      for (std::size_t i = 0; i < r.warnings.size(); ++i) w.put("warning." + std::to_string(i), r.warnings[i]);
      w.diagnostics("source.", r.source);
      w.diagnostics("target.", r.target);
    }
    const bool pass = deviation <= cmp.tolerance;
    w.put("status", pass ? "pass" : "tolerance_exceeded");
    write_atomically(config.report_path, w.str());
    log << "max deviation " << sci(deviation) << " (tolerance " << sci(cmp.tolerance) << "): "
        << (pass ? "pass" : "FAIL") << "\n";
    return static_cast<int>(pass ? kOk : kToleranceExceeded);
  });
}

int check_system(const catalog::SystemBundle& system, std::uint64_t seed, int samples, std::ostream& out) {
  if (samples < 1) throw InputError("check: --samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double fd_step = check_fd_step();
  const bool analytic = system.algebroid->has_analytic_jacobians();
  const double identity_threshold = analytic ? 1e-12 : 10.0 * fd_step * fd_step;

  StructureResiduals worst;
  GradientConsistency grad;
  for (int s = 0; s < samples; ++s) {
    Vector q = system.samples.q_lower;
    Vector xi = system.samples.xi_lower;
    for (Eigen::Index i = 0; i < q.size(); ++i) q[i] += u(rng) * (system.samples.q_upper[i] - system.samples.q_lower[i]);
    for (Eigen::Index i = 0; i < xi.size(); ++i) xi[i] += u(rng) * (system.samples.xi_upper[i] - system.samples.xi_lower[i]);
    const StructureResiduals r = check_structure_identities(*system.algebroid, q, fd_step);
    worst.antisymmetry = std::max(worst.antisymmetry, r.antisymmetry);
    worst.anchor_compat = std::max(worst.anchor_compat, r.anchor_compat);
    worst.jacobi = std::max(worst.jacobi, r.jacobi);
    const GradientConsistency g = check_gradients(*system.lagrangian, q, xi);
    grad.grad_q_error = std::max(grad.grad_q_error, g.grad_q_error);
    grad.grad_xi_error = std::max(grad.grad_xi_error, g.grad_xi_error);
    grad.hessian_asymmetry = std::max(grad.hessian_asymmetry, g.hessian_asymmetry);
  }

  struct Row {
    const char* name;
    double value;
    double threshold;
  };
  const Row rows[] = {
      {"antisymmetry", worst.antisymmetry, identity_threshold},
      {"anchor_compat", worst.anchor_compat, identity_threshold},
      {"jacobi", worst.jacobi, identity_threshold},
      {"grad_q_consistency", grad.grad_q_error, 1e-5},
      {"grad_xi_consistency", grad.grad_xi_error, 1e-5},
      {"hessian_symmetry", grad.hessian_asymmetry, 1e-12},
  };
  out << "system " << system.name << ": " << samples << " samples, seed " << seed << ", fd_step " << sci(fd_step)
      << (analytic ? ", analytic algebroid derivatives" : ", finite-difference algebroid derivatives") << "\n";
  char line[128];
  std::snprintf(line, sizeof line, "%-22s %12s %12s  %s\n", "identity", "max_residual", "threshold", "status");
  out << line;
  bool pass = true;
  for (const Row& row : rows) {
    const bool ok = row.value <= row.threshold;
    pass = pass && ok;
    std::snprintf(line, sizeof line, "%-22s %12s %12s  %s\n", row.name, sci(row.value).c_str(), sci(row.threshold).c_str(),
                  ok ? "pass" : "FAIL");
    out << line;
  }
  out << (pass ? "all identities hold\n" : "identity check failed\n");
  return pass ? kOk : kToleranceExceeded;
}

int cmd_check(const std::string& system, const catalog::Params& params, std::uint64_t seed, int samples,
              std::ostream& out) {
  return guarded(out, [&] { return check_system(catalog::build(system, params), seed, samples, out); });
}

int cmd_list(std::ostream& out) {
  out << "systems:\n";
  for (const catalog::Entry& e : catalog::list()) {
    out << "  " << e.name;
    for (const auto& [key, value] : e.defaults) out << " " << key << "=" << format_double(value);
    out << "\n      " << e.doc << "\n";
  }
  out << "morphisms:\n";
  for (const catalog::Entry& e : catalog::list_morphisms()) out << "  " << e.name << "\n      " << e.doc << "\n";
  return kOk;
}

int run_config_file(const std::filesystem::path& path, bool compare, std::ostream& log) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    log << "config error: cannot read " << path.string() << "\n";
    return kConfigError;
  }
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig config;
  const int parsed = guarded(log, [&] {
    config = parse_config(text.str());
    return static_cast<int>(kOk);
  });
  if (parsed != kOk) return parsed;
  return compare ? cmd_compare(config, log) : cmd_run(config, log);
}

}  // namespace algebromech::cli
