#include "algebromech/dynamics.hpp"

#include <sstream>

#include "algebromech/errors.hpp"

namespace algebromech {

namespace {

std::string at_time(double t) {
  std::ostringstream s;
  s.precision(17);
  s << " (t=" << t << ")";
  return s.str();
}

void require_finite(const Vector& v, const char* what, double t) {
  if (!v.allFinite()) throw RegularityError(std::string(what) + " became non-finite" + at_time(t));
}

}  // namespace

StateRate elp_rhs(const LagrangianModel& lagrangian, const State& s) {
  const AlgebroidModel& algebroid = lagrangian.algebroid();
  lagrangian.require_dims(s.q, s.xi);
  const Matrix rho = algebroid.anchor(s.q);
  const StructureTensor c = algebroid.structure(s.q);
  const MassMatrix mass = mass_matrix(lagrangian, s.q, s.xi);

  StateRate rate;
  rate.q_dot = rho * s.xi;
  const Vector p = lagrangian.gradient_xi(s.q, s.xi);
  Vector force = rho.transpose() * lagrangian.gradient_q(s.q, s.xi) - c.contract(s.xi, p);
  if (s.q.size() > 0) force -= lagrangian.hessian_xi_q(s.q, s.xi) * rate.q_dot;
  rate.xi_dot = mass.matrix.partialPivLu().solve(force);
  if (!rate.xi_dot.allFinite()) throw RegularityError("elp_rhs: singular mass matrix solve" + at_time(s.t));
  return rate;
}

Trajectory integrate(const LagrangianModel& lagrangian, const State& s0, double t_final, double dt, Method method) {
  const AlgebroidModel& algebroid = lagrangian.algebroid();
  lagrangian.require_dims(s0.q, s0.xi);
  const UniformGrid grid = make_grid(s0.t, t_final, dt);
  const Eigen::Index n = algebroid.base_dim();
  const Eigen::Index m = algebroid.fiber_dim();

  const OdeRhs f = [&](double t, const Vector& y) {
    const StateRate r = elp_rhs(lagrangian, State{t, y.head(n), y.tail(m)});
    Vector out(n + m);
    out << r.q_dot, r.xi_dot;
    return out;
  };

  Trajectory traj;
  traj.info = {lagrangian.label(), method, grid.dt};
  traj.nodes.reserve(static_cast<std::size_t>(grid.steps + 1));
  traj.nodes.push_back({grid.t0, s0.q, s0.xi});
  if (!algebroid.inside_chart(s0.q)) throw ChartExitError("initial state lies outside the chart box", grid.t0);

  Vector y(n + m);
  y << s0.q, s0.xi;
  for (long k = 0; k < grid.steps; ++k) {
    const double t = grid.time(k);
    try {
      y = step(method, f, t, y, grid.dt);
    } catch (const RegularityError& e) {
      throw RegularityError(std::string(e.what()) + at_time(t));
    } catch (const SolveError& e) {
      throw SolveError(std::string(e.what()) + at_time(t));
    }
    const double t_next = grid.time(k + 1);
    require_finite(y, "state", t_next);
    traj.nodes.push_back({t_next, y.head(n), y.tail(m)});
    if (!algebroid.inside_chart(traj.nodes.back().q))
      throw ChartExitError("trajectory left the chart box of '" + algebroid.label() + "'" + at_time(t_next), t_next);
  }
  return traj;
}

}  // namespace algebromech
