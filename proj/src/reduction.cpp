#include "algebromech/reduction.hpp"

#include <future>
#include <random>
#include <sstream>

#include "algebromech/errors.hpp"
#include "algebromech/finite_difference.hpp"

namespace algebromech {

Vector AlgebroidMorphism::map_base(const Vector& q) const {
  Vector out = base_map(q);
  if (out.size() != target->base_dim()) throw InputError("morphism '" + label + "': base map has wrong output length");
  return out;
}

Matrix AlgebroidMorphism::jacobian(const Vector& q) const {
  if (base_jacobian) return base_jacobian(q);
  Matrix jac = fd::jacobian(base_map, q, fd::step_for(q, fd::relative_step()));
  if (q.size() == 0) jac.resize(target->base_dim(), 0);
  return jac;
}

Matrix AlgebroidMorphism::fiber(const Vector& q) const {
  Matrix phi = fiber_map(q);
  if (phi.rows() != target->fiber_dim() || phi.cols() != source->fiber_dim())
    throw InputError("morphism '" + label + "': fiber map has wrong shape");
  return phi;
}

AlgebroidMorphism identity_morphism(const AlgebroidPtr& algebroid) {
  const int n = algebroid->base_dim();
  const int m = algebroid->fiber_dim();
  return {"identity(" + algebroid->label() + ")",
          algebroid,
          algebroid,
          [](const Vector& q) { return q; },
          [n](const Vector&) { return Matrix(Matrix::Identity(n, n)); },
          [m](const Vector&) { return Matrix(Matrix::Identity(m, m)); },
          true};
}

MorphismResiduals check_morphism(const AlgebroidMorphism& mor, const std::vector<Vector>& samples) {
  MorphismResiduals out;
  if (mor.fiberwise_invertible) out.max_condition = 1.0;
  for (const Vector& q : samples) {
    const Vector q_target = mor.map_base(q);
    const Matrix lhs = mor.target->anchor(q_target) * mor.fiber(q);
    const Matrix rhs = mor.jacobian(q) * mor.source->anchor(q);
    out.anchor_compat = std::max(out.anchor_compat, max_abs(Matrix(lhs - rhs)));
    if (mor.fiberwise_invertible) {
      const Matrix phi = mor.fiber(q);
      const double cond = phi.rows() == phi.cols() ? condition_number(phi) : std::numeric_limits<double>::infinity();
      out.max_condition = std::max(*out.max_condition, cond);
      if (!(cond < kRegularityThreshold)) out.invertible_ok = false;
    }
  }
  return out;
}

double check_invariance(const LagrangianModel& source, const LagrangianModel& target, const AlgebroidMorphism& mor,
                        const std::vector<std::pair<Vector, Vector>>& samples) {
  double worst = 0.0;
  for (const auto& [q, xi] : samples)
    worst = std::max(worst, std::abs(source.value(q, xi) - target.value(mor.map_base(q), mor.fiber(q) * xi)));
  return worst;
}

Trajectory push_trajectory(const AlgebroidMorphism& mor, const Trajectory& traj) {
  Trajectory out;
  out.info = traj.info;
  out.info.system = mor.label + "*" + traj.info.system;
  out.nodes.reserve(traj.nodes.size());
  for (const State& s : traj.nodes) out.nodes.push_back({s.t, mor.map_base(s.q), mor.fiber(s.q) * s.xi});
  return out;
}

PontryaginTrajectory push_pontryagin(const AlgebroidMorphism& mor, const PontryaginTrajectory& traj) {
  if (!mor.fiberwise_invertible) throw MorphismError("morphism '" + mor.label + "' is not fiberwise invertible");
  PontryaginTrajectory out;
  out.info = traj.info;
  out.info.system = mor.label + "*" + traj.info.system;
  out.constraint_residual = traj.constraint_residual;
  out.nodes.reserve(traj.nodes.size());
  for (const PontryaginState& s : traj.nodes) {
    const Matrix phi = mor.fiber(s.q);
    if (phi.rows() != phi.cols() || !(condition_number(phi) < kRegularityThreshold)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "morphism '" << mor.label << "': fiber map is singular at t=" << s.t;
      throw MorphismError(msg.str());
    }
    const Vector p_target = phi.transpose().partialPivLu().solve(s.p);
    out.nodes.push_back({s.t, mor.map_base(s.q), phi * s.v, p_target});
  }
  return out;
}

namespace {

std::vector<std::pair<Vector, Vector>> sample_around(const Vector& q0, const Vector& xi0, const CompareOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> u(-options.sample_radius, options.sample_radius);
  std::vector<std::pair<Vector, Vector>> samples;
  for (int s = 0; s < options.invariance_samples; ++s) {
    Vector q = q0;
    Vector xi = xi0;
    for (Eigen::Index i = 0; i < q.size(); ++i) q[i] += u(rng);
    for (Eigen::Index i = 0; i < xi.size(); ++i) xi[i] += u(rng);
    samples.emplace_back(std::move(q), std::move(xi));
  }
  return samples;
}

void check_dims(const LagrangianModel& source, const LagrangianModel& target, const AlgebroidMorphism& mor) {
  if (mor.source->base_dim() != source.algebroid().base_dim() || mor.source->fiber_dim() != source.algebroid().fiber_dim() ||
      mor.target->base_dim() != target.algebroid().base_dim() || mor.target->fiber_dim() != target.algebroid().fiber_dim())
    throw InputError("morphism '" + mor.label + "' does not match the source/target Lagrangians");
}

void screen_morphism(ComparisonReport& report, const LagrangianModel& source, const LagrangianModel& target,
                     const AlgebroidMorphism& mor, const Vector& q0, const Vector& xi0, const CompareOptions& options) {
  const auto samples = sample_around(q0, xi0, options);
  report.invariance_discrepancy = check_invariance(source, target, mor, samples);
  if (report.invariance_discrepancy > kInvarianceWarnThreshold) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "Lagrangian invariance discrepancy " << std::scientific << report.invariance_discrepancy
        << " exceeds 1e-8; the flows need not correspond";
    report.warnings.push_back(msg.str());
  }
  std::vector<Vector> qs;
  for (const auto& [q, xi] : samples) qs.push_back(q);
  report.anchor_compat = check_morphism(mor, qs).anchor_compat;
  if (report.anchor_compat > 1e-8) report.warnings.push_back("morphism does not intertwine the anchors");
}

void flag_suspect(ComparisonReport& report, const CompareOptions& options) {
  if (options.tolerance && report.max_deviation > *options.tolerance && report.anchor_compat <= 1e-8 &&
      report.invariance_discrepancy <= kInvarianceWarnThreshold) {
    report.bracket_compatibility_suspect = true;
    report.warnings.push_back("anchor check passed but the flows disagree: bracket compatibility suspect");
  }
}

}  // namespace

ComparisonReport reduce_compare(const LagrangianModel& source, const LagrangianModel& target,
                                const AlgebroidMorphism& mor, const State& s0, double t_final, double dt,
                                const CompareOptions& options) {
  check_dims(source, target, mor);
  ComparisonReport report;
  screen_morphism(report, source, target, mor, s0.q, s0.xi, options);

  const State s0_target{s0.t, mor.map_base(s0.q), mor.fiber(s0.q) * s0.xi};
  auto source_run = std::async(std::launch::async, [&] { return integrate(source, s0, t_final, dt, options.method); });
  const Trajectory target_traj = integrate(target, s0_target, t_final, dt, options.method);
  const Trajectory source_traj = source_run.get();

  const Trajectory pushed = push_trajectory(mor, source_traj);
  for (std::size_t k = 0; k < pushed.nodes.size(); ++k) {
    const double dq = (pushed.nodes[k].q - target_traj.nodes[k].q).squaredNorm();
    const double dxi = (pushed.nodes[k].xi - target_traj.nodes[k].xi).squaredNorm();
    report.max_deviation = std::max(report.max_deviation, std::sqrt(dq + dxi));
  }
  report.source = diagnostics(source, source_traj, options.source_hooks);
  report.target = diagnostics(target, target_traj, options.target_hooks);
  flag_suspect(report, options);
  return report;
}

ComparisonReport hp_reduce_compare(const LagrangianModel& source, const LagrangianModel& target,
                                   const AlgebroidMorphism& mor, const PontryaginState& s0, double t_final, double dt,
                                   const CompareOptions& options) {
  check_dims(source, target, mor);
  if (!mor.fiberwise_invertible) throw MorphismError("hp_reduce_compare: morphism '" + mor.label + "' is not fiberwise invertible");
  ComparisonReport report;
  screen_morphism(report, source, target, mor, s0.q, s0.v, options);

  const Matrix phi0 = mor.fiber(s0.q);
  if (!(condition_number(phi0) < kRegularityThreshold)) throw MorphismError("hp_reduce_compare: singular fiber map at s0");
  const PontryaginState s0_target{s0.t, mor.map_base(s0.q), phi0 * s0.v, phi0.transpose().partialPivLu().solve(s0.p)};

  auto source_run = std::async(std::launch::async, [&] { return hp_integrate(source, s0, t_final, dt, options.method); });
  const PontryaginTrajectory target_traj = hp_integrate(target, s0_target, t_final, dt, options.method);
  const PontryaginTrajectory source_traj = source_run.get();

  const PontryaginTrajectory pushed = push_pontryagin(mor, source_traj);
  for (std::size_t k = 0; k < pushed.nodes.size(); ++k) {
    const auto& a = pushed.nodes[k];
    const auto& b = target_traj.nodes[k];
    const double d = (a.q - b.q).squaredNorm() + (a.v - b.v).squaredNorm() + (a.p - b.p).squaredNorm();
    report.max_deviation = std::max(report.max_deviation, std::sqrt(d));
  }
  report.source = diagnostics(source, source_traj, options.source_hooks);
  report.target = diagnostics(target, target_traj, options.target_hooks);
  flag_suspect(report, options);
  return report;
}

RouthReport routh_compare(const std::shared_ptr<const LagrangianModel>& full, int n_cyclic, const Vector& momentum,
                          const State& s0_full, double t_final, double dt, Method method) {
  if (!full) throw InputError("routh_compare: full Lagrangian is required");
  full->require_dims(s0_full.q, s0_full.xi);
  const int k = n_cyclic;
  const int m = full->algebroid().base_dim() - k;
  if (momentum.size() != k) throw InputError("routh_compare: momentum must have length n_cyclic");
  const Vector p0 = full->gradient_xi(s0_full.q, s0_full.xi).head(k);
  if (max_abs(Vector(p0 - momentum)) > kRouthMomentumMatchTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "routh_compare: initial state has momentum [" << p0.transpose() << "], expected [" << momentum.transpose()
        << "]";
    throw InputError(msg.str());
  }

  const LagrangianModel routhian = make_routhian({full, k, momentum, s0_full.xi.head(k)});

  Vector q0(k + m);
  q0 << momentum, s0_full.q.tail(m);
  const State s0_reduced{s0_full.t, q0, s0_full.xi.tail(m)};

  RouthReport report;
  auto full_run = std::async(std::launch::async, [&] { return integrate(*full, s0_full, t_final, dt, method); });
  report.reduced = integrate(routhian, s0_reduced, t_final, dt, method);
  report.full = full_run.get();

  for (std::size_t n = 0; n < report.full.nodes.size(); ++n) {
    const State& a = report.full.nodes[n];
    const State& b = report.reduced.nodes[n];
    report.y_deviation = std::max(report.y_deviation, (a.q.tail(m) - b.q.tail(m)).norm());
    report.y_dot_deviation = std::max(report.y_dot_deviation, (a.xi.tail(m) - b.xi).norm());
    report.momentum_drift = std::max(report.momentum_drift, max_abs(Vector(full->gradient_xi(a.q, a.xi).head(k) - momentum)));
    report.x_drift = std::max(report.x_drift, max_abs(Vector(b.q.head(k) - momentum)));
    const Matrix block = full->hessian_xi_xi(a.q, a.xi).topLeftCorner(k, k);
    if (!(condition_number(block) <= 1e8)) report.constraint_near_singular = true;
  }
  report.full_diagnostics = diagnostics(*full, report.full);
  report.reduced_diagnostics = diagnostics(routhian, report.reduced);
  return report;
}

}  // namespace algebromech
