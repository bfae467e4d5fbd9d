#include "algebromech/diagnostics.hpp"
#include "algebromech/errors.hpp"
#include "algebromech/finite_difference.hpp"

namespace algebromech {

namespace {

Vector b_dot_at(const VariationField& field, double t) {
  if (field.b_dot) return field.b_dot(t);
  const double h = fd::relative_step() * std::max(1.0, std::abs(t));
  return (field.b(t + h) - field.b(t - h)) / (2.0 * h);
}

}  // namespace

AdmissibleVariation admissible_variation(const AlgebroidModel& algebroid, const Trajectory& traj,
                                         const VariationField& field) {
  if (traj.nodes.empty()) throw InputError("admissible_variation: empty trajectory");
  if (!field.b) throw InputError("admissible_variation: variation field b is required");
  const double t0 = traj.nodes.front().t;
  const double t1 = traj.nodes.back().t;
  if (max_abs(field.b(t0)) > kVariationEndpointTolerance || max_abs(field.b(t1)) > kVariationEndpointTolerance)
    throw InputError("admissible_variation: b must vanish at both trajectory endpoints");

  AdmissibleVariation out;
  out.dq.reserve(traj.nodes.size());
  out.dxi.reserve(traj.nodes.size());
  for (const State& s : traj.nodes) {
    const Vector b = field.b(s.t);
    if (b.size() != algebroid.fiber_dim()) throw InputError("admissible_variation: b has wrong length");
    out.dq.push_back(algebroid.anchor(s.q) * b);
    out.dxi.push_back(b_dot_at(field, s.t) - algebroid.structure(s.q).bracket(b, s.xi));
  }
  return out;
}

double action_stationarity(const LagrangianModel& lagrangian, const Trajectory& traj, const VariationField& field) {
  const AdmissibleVariation var = admissible_variation(lagrangian.algebroid(), traj, field);
  const std::size_t count = traj.nodes.size();
  if (count < 2) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const State& s = traj.nodes[k];
    double integrand = lagrangian.gradient_xi(s.q, s.xi).dot(var.dxi[k]);
    if (s.q.size() > 0) integrand += lagrangian.gradient_q(s.q, s.xi).dot(var.dq[k]);
    const double left = k > 0 ? s.t - traj.nodes[k - 1].t : 0.0;
    const double right = k + 1 < count ? traj.nodes[k + 1].t - s.t : 0.0;
    total += 0.5 * (left + right) * integrand;
  }
  return total;
}

double stationarity_tolerance(const Trajectory& traj, const VariationField& field) {
  double b_max = 0.0;
  double b_dot_max = 0.0;
  for (const State& s : traj.nodes) {
    b_max = std::max(b_max, max_abs(field.b(s.t)));
    b_dot_max = std::max(b_dot_max, max_abs(b_dot_at(field, s.t)));
  }
  const double dt = traj.info.dt;
  return 100.0 * dt * dt * (b_max + b_dot_max);
}

}  // namespace algebromech
