#include "algebromech/diagnostics.hpp"

#include <limits>

#include "algebromech/errors.hpp"

namespace algebromech {

ElpResidual elp_residual(const LagrangianModel& lagrangian, const Trajectory& traj) {
  const std::size_t count = traj.nodes.size();
  if (count < 3) throw InputError("elp_residual: trajectory needs at least 3 nodes");
  const AlgebroidModel& algebroid = lagrangian.algebroid();

  std::vector<Vector> momenta;
  momenta.reserve(count);
  for (const State& s : traj.nodes) momenta.push_back(lagrangian.gradient_xi(s.q, s.xi));

  ElpResidual out;
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const State& s = traj.nodes[k];
    const double span = traj.nodes[k + 1].t - traj.nodes[k - 1].t;
    const Matrix rho = algebroid.anchor(s.q);
    Vector r = -algebroid.structure(s.q).contract(s.xi, momenta[k]) - (momenta[k + 1] - momenta[k - 1]) / span;
    if (s.q.size() > 0) r += rho.transpose() * lagrangian.gradient_q(s.q, s.xi);
    out.max_equation = std::max(out.max_equation, max_abs(r));
    out.equation.push_back(std::move(r));

    const Vector q_dot = (traj.nodes[k + 1].q - traj.nodes[k - 1].q) / span;
    const double a = max_abs(Vector(q_dot - rho * s.xi));
    out.max_apath = std::max(out.max_apath, a);
    out.apath.push_back(a);
  }
  return out;
}

std::vector<double> apath_residual_per_node(const AlgebroidModel& algebroid, const Trajectory& traj) {
  const std::size_t count = traj.nodes.size();
  std::vector<double> out(count, 0.0);
  if (count < 3 || algebroid.base_dim() == 0) return out;
  const double dt = traj.info.dt;
  for (std::size_t k = 0; k < count; ++k) {
    Vector q_dot;
    if (k == 0) {
      q_dot = (-3.0 * traj.nodes[0].q + 4.0 * traj.nodes[1].q - traj.nodes[2].q) / (2.0 * dt);
    } else if (k + 1 == count) {
      q_dot = (3.0 * traj.nodes[k].q - 4.0 * traj.nodes[k - 1].q + traj.nodes[k - 2].q) / (2.0 * dt);
    } else {
      q_dot = (traj.nodes[k + 1].q - traj.nodes[k - 1].q) / (traj.nodes[k + 1].t - traj.nodes[k - 1].t);
    }
    out[k] = max_abs(Vector(q_dot - algebroid.anchor(traj.nodes[k].q) * traj.nodes[k].xi));
  }
  return out;
}

DriftStats drift_stats(std::string name, const std::vector<double>& values) {
  DriftStats d;
  d.name = std::move(name);
  if (values.empty()) return d;
  d.initial = values.front();
  double sum = 0.0;
  for (double v : values) {
    const double delta = std::abs(v - d.initial);
    d.max_abs = std::max(d.max_abs, delta);
    sum += delta;
  }
  d.mean_abs = sum / static_cast<double>(values.size());
  d.max_rel = d.max_abs / std::max(std::abs(d.initial), std::numeric_limits<double>::min());
  return d;
}

DiagnosticsReport diagnostics(const LagrangianModel& lagrangian, const Trajectory& traj,
                              const std::vector<InvariantHook>& hooks) {
  DiagnosticsReport report;
  std::vector<double> energies;
  energies.reserve(traj.nodes.size());
  for (const State& s : traj.nodes) energies.push_back(energy(lagrangian, s.q, s.xi));
  report.energy = drift_stats("energy", energies);

  if (traj.nodes.size() >= 3) {
    const ElpResidual r = elp_residual(lagrangian, traj);
    report.elp_residual_max = r.max_equation;
    report.apath_residual_max = r.max_apath;
  }
  for (const InvariantHook& hook : hooks) {
    std::vector<double> values;
    values.reserve(traj.nodes.size());
    for (const State& s : traj.nodes) values.push_back(hook.fn(s.q, s.xi));
    report.invariants.push_back(drift_stats(hook.name, values));
  }
  return report;
}

Trajectory as_state_trajectory(const PontryaginTrajectory& traj) {
  Trajectory out;
  out.info = traj.info;
  out.nodes.reserve(traj.nodes.size());
  for (const PontryaginState& s : traj.nodes) out.nodes.push_back({s.t, s.q, s.v});
  return out;
}

DiagnosticsReport diagnostics(const LagrangianModel& lagrangian, const PontryaginTrajectory& traj,
                              const std::vector<InvariantHook>& hooks) {
  DiagnosticsReport report = diagnostics(lagrangian, as_state_trajectory(traj), hooks);
  double worst = 0.0;
  for (double r : traj.constraint_residual) worst = std::max(worst, r);
  report.constraint_residual_max = worst;
  return report;
}

}  // namespace algebromech
