#pragma once

#include <functional>

#include "algebromech/types.hpp"

namespace algebromech::fd {

/// Relative step factor used by every finite-difference fallback.
///
/// Defaults to 1e-6; the `ALGEBROMECH_FD_STEP` environment variable overrides
/// it process-wide (read once).
double relative_step();

/// Relative step for second differences of values, relative_step()^(2/3)
/// (1e-4 by default), which balances truncation and roundoff for f''.
double second_relative_step();

/// True when `ALGEBROMECH_FD_STEP` set a valid override.
bool step_overridden();

/// Absolute central-difference step for a point with the given sup-norm.
inline double step_for(const Vector& x, double relative) {
  return relative * std::max(1.0, max_abs(x));
}

/// Central-difference gradient of a scalar function.
Vector gradient(const std::function<double(const Vector&)>& f, const Vector& x, double step);

/// Central-difference Jacobian (rows = outputs, cols = inputs).
Matrix jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double step);

/// Symmetric second-difference Hessian of a scalar function.
Matrix hessian(const std::function<double(const Vector&)>& f, const Vector& x, double step);

/// Mixed second differences d2f/dx^i dy^j of f(x, y) (rows = x, cols = y).
Matrix mixed_hessian(const std::function<double(const Vector&, const Vector&)>& f, const Vector& x, const Vector& y,
                     double step_x, double step_y);

}  // namespace algebromech::fd
