#include "algebromech/lagrangian.hpp"

#include <sstream>

#include "algebromech/errors.hpp"

namespace algebromech {

namespace {

Vector join(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace

CyclicVelocity solve_cyclic_velocity(const LagrangianModel& full, int n_cyclic, const Vector& x, const Vector& y,
                                     const Vector& y_dot, const Vector& guess) {
  const Vector q = join(Vector::Zero(n_cyclic), y);
  Vector xi = join(guess, y_dot);
  const double tol = std::max(kRouthTolerance * std::max(1.0, max_abs(x)), full.newton_tolerance(x));

  CyclicVelocity out;
  for (int iter = 0; iter <= kRouthMaxIterations; ++iter) {
    const Vector residual = full.gradient_xi(q, xi).head(n_cyclic) - x;
    if (max_abs(residual) <= tol) {
      out.theta_dot = xi.head(n_cyclic);
      out.iterations = iter;
      return out;
    }
    if (iter == kRouthMaxIterations) break;
    const Matrix block = full.hessian_xi_xi(q, xi).topLeftCorner(n_cyclic, n_cyclic);
    out.constraint_condition = condition_number(block);
    if (!(out.constraint_condition <= kRegularityThreshold))
      throw RegularityError("routhian: momentum constraint d2L/dthetadot2 is singular");
    xi.head(n_cyclic) -= block.partialPivLu().solve(residual);
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "routhian: momentum constraint did not converge in " << kRouthMaxIterations << " iterations at y=["
      << y.transpose() << "]";
  throw SolveError(msg.str());
}

double cyclicity_residual(const LagrangianModel& full, int n_cyclic,
                          const std::vector<std::pair<Vector, Vector>>& samples) {
  double worst = 0.0;
  for (const auto& [q, xi] : samples) worst = std::max(worst, max_abs(Vector(full.gradient_q(q, xi).head(n_cyclic))));
  return worst;
}

LagrangianModel make_routhian(const RouthianInput& input) {
  if (!input.full_lagrangian) throw InputError("make_routhian: full Lagrangian is required");
  const LagrangianModel& full = *input.full_lagrangian;
  const int k = input.n_cyclic;
  const int n_full = full.algebroid().base_dim();
  const int m = n_full - k;
  if (k < 1 || m < 1) throw InputError("make_routhian: need 1 <= n_cyclic < configuration dimension");
  if (full.algebroid().fiber_dim() != n_full) throw InputError("make_routhian: full Lagrangian must live on a tangent bundle");
  if (input.momentum.size() != k || input.theta_dot_guess.size() != k)
    throw InputError("make_routhian: momentum and theta_dot_guess must have length n_cyclic");

  // Cyclicity probe at a few deterministic points.
  std::vector<std::pair<Vector, Vector>> samples;
  for (int s = 0; s < 4; ++s) {
    Vector q(n_full), xi(n_full);
    for (int i = 0; i < n_full; ++i) {
      q[i] = 0.7 + 0.31 * s - 0.17 * i;
      xi[i] = 0.4 - 0.23 * s + 0.11 * i;
    }
    samples.emplace_back(q, xi);
  }
  if (cyclicity_residual(full, k, samples) > 1e-10)
    throw InputError("make_routhian: Lagrangian depends on the cyclic coordinates");

  auto shared_full = input.full_lagrangian;
  const Vector guess = input.theta_dot_guess;

  // Base coordinates are (x, y); the fiber is ydot.
  auto solve = [shared_full, k, m, guess](const Vector& q, const Vector& y_dot) {
    return solve_cyclic_velocity(*shared_full, k, q.head(k), q.tail(m), y_dot, guess).theta_dot;
  };

  LagrangianModel::Definition def;
  def.label = "routhian(" + full.label() + ")";
  def.value = [shared_full, k, m, solve](const Vector& q, const Vector& y_dot) {
    const Vector theta_dot = solve(q, y_dot);
    const Vector full_q = join(Vector::Zero(k), q.tail(m));
    return shared_full->value(full_q, join(theta_dot, y_dot)) - q.head(k).dot(theta_dot);
  };
  // Envelope identities: the constraint makes the thetadot-sensitivity terms cancel.
  def.grad_q = [shared_full, k, m, solve](const Vector& q, const Vector& y_dot) {
    const Vector theta_dot = solve(q, y_dot);
    const Vector full_q = join(Vector::Zero(k), q.tail(m));
    const Vector g = shared_full->gradient_q(full_q, join(theta_dot, y_dot));
    return join(-theta_dot, g.tail(m));
  };
  def.grad_xi = [shared_full, k, m, solve](const Vector& q, const Vector& y_dot) {
    const Vector theta_dot = solve(q, y_dot);
    const Vector full_q = join(Vector::Zero(k), q.tail(m));
    return Vector(shared_full->gradient_xi(full_q, join(theta_dot, y_dot)).tail(m));
  };
  return LagrangianModel(vertical_bundle(k, m), std::move(def));
}

}  // namespace algebromech
