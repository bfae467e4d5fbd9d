#include <sstream>

#include "algebromech/dynamics.hpp"
#include "algebromech/errors.hpp"

namespace algebromech {

Vector recover_velocity(const LagrangianModel& lagrangian, const Vector& q, const Vector& p, const Vector& guess) {
  lagrangian.require_dims(q, guess);
  if (p.size() != guess.size()) throw InputError("recover_velocity: momentum has wrong length");
  Vector v = guess;
  const double tol = lagrangian.newton_tolerance(p);
  for (int iter = 0; iter <= kNewtonMaxIterations; ++iter) {
    const Vector residual = lagrangian.gradient_xi(q, v) - p;
    if (max_abs(residual) <= tol) return v;
    if (iter == kNewtonMaxIterations) break;
    const MassMatrix mass = mass_matrix(lagrangian, q, v);
    v -= mass.matrix.partialPivLu().solve(residual);
    if (!v.allFinite()) break;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "recover_velocity: Legendre constraint did not converge at q=[" << q.transpose() << "], p=[" << p.transpose()
      << "]";
  throw SolveError(msg.str());
}

HpRate hp_rhs(const LagrangianModel& lagrangian, const Vector& q, const Vector& p, const Vector& v_guess) {
  const AlgebroidModel& algebroid = lagrangian.algebroid();
  HpRate rate;
  rate.v = recover_velocity(lagrangian, q, p, v_guess);
  const Matrix rho = algebroid.anchor(q);
  rate.q_dot = rho * rate.v;
  rate.p_dot = rho.transpose() * lagrangian.gradient_q(q, rate.v) - algebroid.structure(q).contract(rate.v, p);
  return rate;
}

PontryaginTrajectory hp_integrate(const LagrangianModel& lagrangian, const PontryaginState& s0, double t_final,
                                  double dt, Method method) {
  const AlgebroidModel& algebroid = lagrangian.algebroid();
  lagrangian.require_dims(s0.q, s0.v);
  if (s0.p.size() != s0.v.size()) throw InputError("hp_integrate: p has wrong length");
  const UniformGrid grid = make_grid(s0.t, t_final, dt);
  const Eigen::Index n = algebroid.base_dim();
  const Eigen::Index m = algebroid.fiber_dim();

  // Warm start owned by this run.
  Vector warm = s0.v;
  const OdeRhs f = [&](double, const Vector& y) {
    const HpRate r = hp_rhs(lagrangian, y.head(n), y.tail(m), warm);
    warm = r.v;
    Vector out(n + m);
    out << r.q_dot, r.p_dot;
    return out;
  };

  PontryaginTrajectory traj;
  traj.info = {lagrangian.label(), method, grid.dt};
  traj.nodes.reserve(static_cast<std::size_t>(grid.steps + 1));
  auto record = [&](double t, const Vector& q, const Vector& p) {
    warm = recover_velocity(lagrangian, q, p, warm);
    traj.nodes.push_back({t, q, warm, p});
    traj.constraint_residual.push_back(max_abs(Vector(p - lagrangian.gradient_xi(q, warm))));
    if (!algebroid.inside_chart(q)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "HP trajectory left the chart box of '" << algebroid.label() << "' (t=" << t << ")";
      throw ChartExitError(msg.str(), t);
    }
  };
  record(grid.t0, s0.q, s0.p);

  Vector y(n + m);
  y << s0.q, s0.p;
  for (long k = 0; k < grid.steps; ++k) {
    y = step(method, f, grid.time(k), y, grid.dt);
    if (!y.allFinite()) throw RegularityError("hp_integrate: state became non-finite");
    record(grid.time(k + 1), y.head(n), y.tail(m));
  }
  return traj;
}

}  // namespace algebromech
