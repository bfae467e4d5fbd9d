#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "algebromech/types.hpp"

namespace algebromech {

enum class Method { rk4, implicit_midpoint };

std::string_view to_string(Method method);
/// Throws InputError for an unknown name.
Method parse_method(std::string_view name);

/// Uniform time grid t_k = t0 + k * dt, k = 0..steps, ending exactly at t_final.
///
/// When the span is not a whole multiple of the requested step the step count
/// is rounded up and dt shrinks so the last node lands on t_final.
struct UniformGrid {
  double t0 = 0.0;
  double t_final = 0.0;
  double dt = 0.0;
  long steps = 0;

  double time(long k) const { return k == steps ? t_final : t0 + static_cast<double>(k) * dt; }
};

UniformGrid make_grid(double t0, double t_final, double dt);

using OdeRhs = std::function<Vector(double, const Vector&)>;

inline constexpr int kNewtonMaxIterations = 50;
inline constexpr double kNewtonTolerance = 1e-12;

/// Classical four-stage Runge-Kutta step.
Vector rk4_step(const OdeRhs& f, double t, const Vector& y, double h);

/// Implicit midpoint step y1 = y0 + h f(t + h/2, (y0 + y1)/2), solved by Newton
/// with a finite-difference Jacobian. Throws SolveError on non-convergence.
Vector implicit_midpoint_step(const OdeRhs& f, double t, const Vector& y, double h);

Vector step(Method method, const OdeRhs& f, double t, const Vector& y, double h);

}  // namespace algebromech
