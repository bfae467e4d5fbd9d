#include "algebromech/time_stepping.hpp"

#include <cmath>
#include <sstream>

#include "algebromech/errors.hpp"
#include "algebromech/finite_difference.hpp"

namespace algebromech {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::rk4: return "rk4";
    case Method::implicit_midpoint: return "implicit_midpoint";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::rk4;
  if (name == "implicit_midpoint") return Method::implicit_midpoint;
  throw InputError("unknown integration method '" + std::string(name) + "' (expected rk4 or implicit_midpoint)");
}

UniformGrid make_grid(double t0, double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("time step dt must be positive and finite");
  if (!(t_final > t0)) throw InputError("t_final must exceed the initial time");
  const double span = t_final - t0;
  long steps = std::lround(span / dt);
  if (std::abs(static_cast<double>(steps) * dt - span) > 1e-9 * span) steps = static_cast<long>(std::ceil(span / dt));
  steps = std::max(steps, 1L);
  return {t0, t_final, span / static_cast<double>(steps), steps};
}

Vector rk4_step(const OdeRhs& f, double t, const Vector& y, double h) {
  const Vector k1 = f(t, y);
  const Vector k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const Vector k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const Vector k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vector implicit_midpoint_step(const OdeRhs& f, double t, const Vector& y, double h) {
  const double tm = t + 0.5 * h;
  Vector y1 = y + h * f(t, y);
  const Eigen::Index dim = y.size();
  for (int iter = 0; iter < kNewtonMaxIterations; ++iter) {
    const Vector mid = 0.5 * (y + y1);
    const Vector g = y1 - y - h * f(tm, mid);
    const double scale = std::max(1.0, max_abs(y1));
    if (max_abs(g) <= kNewtonTolerance * scale) return y1;
    const Matrix df = fd::jacobian([&](const Vector& z) { return f(tm, z); }, mid, fd::step_for(mid, fd::relative_step()));
    const Matrix jac = Matrix::Identity(dim, dim) - 0.5 * h * df;
    const Vector delta = jac.partialPivLu().solve(g);
    y1 -= delta;
    if (max_abs(delta) <= 1e-3 * kNewtonTolerance * scale) return y1;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "implicit midpoint: Newton did not converge in " << kNewtonMaxIterations << " iterations at t=" << t;
  throw SolveError(msg.str());
}

Vector step(Method method, const OdeRhs& f, double t, const Vector& y, double h) {
  return method == Method::rk4 ? rk4_step(f, t, y, h) : implicit_midpoint_step(f, t, y, h);
}

}  // namespace algebromech
