#pragma once

#include <string>
#include <vector>

#include "algebromech/lagrangian.hpp"
#include "algebromech/time_stepping.hpp"
#include "algebromech/types.hpp"

namespace algebromech {

/// A point a = xi^I e_I(q) of an A-path at time t.
struct State {
  double t = 0.0;
  Vector q;
  Vector xi;
};

/// A point (a, v, p) of a Hamilton-Pontryagin path. Along solutions a = v.
struct PontryaginState {
  double t = 0.0;
  Vector q;
  Vector v;
  Vector p;
};

struct StateRate {
  Vector q_dot;
  Vector xi_dot;
};

struct TrajectoryInfo {
  std::string system;
  Method method = Method::rk4;
  double dt = 0.0;
};

struct Trajectory {
  TrajectoryInfo info;
  std::vector<State> nodes;
};

struct PontryaginTrajectory {
  TrajectoryInfo info;
  std::vector<PontryaginState> nodes;
  std::vector<double> constraint_residual;  // |p - dL/dv|_inf per node
};

/// Euler-Lagrange-Poincare vector field in the locally trivial connection:
///
///   q_dot = rho(q) xi
///   M xi_dot = F - H q_dot,  F_I = rho^i_I dL/dq^i - C^K_{IJ} xi^J dL/dxi^K
///
/// with M = d2L/dxi dxi and H = d2L/dxi dq. Throws RegularityError when M is
/// singular or badly conditioned.
StateRate elp_rhs(const LagrangianModel& lagrangian, const State& s);

/// Integrates the ELP flow on a uniform grid. The run aborts with
/// ChartExitError if q leaves the algebroid's chart box.
Trajectory integrate(const LagrangianModel& lagrangian, const State& s0, double t_final, double dt,
                     Method method = Method::rk4);

// Hamilton-Pontryagin ---------------------------------------------------------

/// Solves dL/dv(q, v) = p for v by Newton from `guess`.
Vector recover_velocity(const LagrangianModel& lagrangian, const Vector& q, const Vector& p, const Vector& guess);

struct HpRate {
  Vector q_dot;
  Vector p_dot;
  Vector v;
};

/// Implicit ELP equations reduced to an ODE in (q, p): v from the Legendre
/// constraint, then q_dot = rho v and p_dot_I = rho^i_I dL/dq^i - C^K_{IJ} v^J p_K.
HpRate hp_rhs(const LagrangianModel& lagrangian, const Vector& q, const Vector& p, const Vector& v_guess);

/// Integrates the (q, p) system; v is recovered and stored at every node. The
/// initial v serves only as the first Newton guess.
PontryaginTrajectory hp_integrate(const LagrangianModel& lagrangian, const PontryaginState& s0, double t_final,
                                  double dt, Method method = Method::rk4);

}  // namespace algebromech
