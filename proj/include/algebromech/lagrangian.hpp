#pragma once

#include <functional>
#include <memory>
#include <string>

#include "algebromech/algebroid.hpp"
#include "algebromech/time_stepping.hpp"
#include "algebromech/types.hpp"

namespace algebromech {

/// A Lagrangian L(q, xi) on the fibers of an algebroid.
///
/// Only the value is required. Every missing derivative falls back to central
/// differences: gradients from the value, Hessians from the analytic gradient
/// when there is one and from second differences of the value otherwise.
inline constexpr double kFdNewtonTolerance = 1e-9;

class LagrangianModel {
public:
  using ScalarFn = std::function<double(const Vector&, const Vector&)>;
  using VectorFn = std::function<Vector(const Vector&, const Vector&)>;
  using MatrixFn = std::function<Matrix(const Vector&, const Vector&)>;

  struct Definition {
    std::string label;
    ScalarFn value;
    VectorFn grad_q = {};      // dL/dq^i
    VectorFn grad_xi = {};     // dL/dxi^I
    MatrixFn hess_xi_xi = {};  // d2L/dxi^I dxi^J, m x m
    MatrixFn hess_xi_q = {};   // d2L/dxi^I dq^j, m x n
  };

  LagrangianModel(AlgebroidPtr algebroid, Definition def);

  const AlgebroidModel& algebroid() const { return *algebroid_; }
  const AlgebroidPtr& algebroid_ptr() const { return algebroid_; }
  const std::string& label() const { return def_.label; }

  double value(const Vector& q, const Vector& xi) const;
  Vector gradient_q(const Vector& q, const Vector& xi) const;
  Vector gradient_xi(const Vector& q, const Vector& xi) const;
  Matrix hessian_xi_xi(const Vector& q, const Vector& xi) const;
  Matrix hessian_xi_q(const Vector& q, const Vector& xi) const;

  bool has_analytic_gradients() const { return def_.grad_q && def_.grad_xi; }
  bool has_analytic_hessians() const { return def_.hess_xi_xi && def_.hess_xi_q; }

  void require_dims(const Vector& q, const Vector& xi) const;

  /// Residual tolerance for Newton solves of dL/dxi = target. Difference
  /// quotients carry ~1e-10 roundoff, so the tolerance is looser without an
  /// analytic dL/dxi.
  double newton_tolerance(const Vector& target) const;

private:
  AlgebroidPtr algebroid_;
  Definition def_;
};

/// Fiber derivative p = dL/dxi.
Vector legendre(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi);

/// E_L = <dL/dxi, xi> - L.
double energy(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi);

struct MassMatrix {
  Matrix matrix;
  double condition = 1.0;  // sigma_max / sigma_min (infinity when singular)
};

inline constexpr double kRegularityThreshold = 1e12;

/// d2L/dxi dxi with a 2-norm condition estimate. Throws RegularityError when the
/// condition exceeds `threshold`.
MassMatrix mass_matrix(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi,
                       double threshold = kRegularityThreshold);

/// Condition number estimate of a square matrix via singular values.
double condition_number(const Matrix& m);

struct GradientConsistency {
  double grad_q_error = 0.0;   // max |g - g_fd| / max(1, |g|)
  double grad_xi_error = 0.0;
  double hessian_asymmetry = 0.0;
};

/// Compares the model's gradients with central differences of its value.
GradientConsistency check_gradients(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi);

// Routh reduction ------------------------------------------------------------

/// Inputs for the classical Routhian. The full Lagrangian lives on
/// tangent_bundle(n_cyclic + m) with positions (theta, y) and must not depend
/// on theta.
struct RouthianInput {
  std::shared_ptr<const LagrangianModel> full_lagrangian;
  int n_cyclic = 1;
  Vector momentum;         // x_sigma
  Vector theta_dot_guess;  // Newton start
};

struct CyclicVelocity {
  Vector theta_dot;
  int iterations = 0;
  double constraint_condition = 1.0;
};

inline constexpr int kRouthMaxIterations = 50;
inline constexpr double kRouthTolerance = 1e-12;

/// Solves x = dL/dthetadot(thetadot, y, ydot) for thetadot by Newton from `guess`.
/// Throws SolveError on non-convergence, RegularityError on a singular block.
CyclicVelocity solve_cyclic_velocity(const LagrangianModel& full, int n_cyclic, const Vector& x, const Vector& y,
                                     const Vector& y_dot, const Vector& guess);

/// max |dL/dtheta| over the given (q, xi) samples.
double cyclicity_residual(const LagrangianModel& full, int n_cyclic, const std::vector<std::pair<Vector, Vector>>& samples);

/// R(x, y, ydot) = [L - x.thetadot] at x = dL/dthetadot, as a Lagrangian on
/// vertical_bundle(n_cyclic, m) with base coordinates (x, y) and fiber ydot.
LagrangianModel make_routhian(const RouthianInput& input);

}  // namespace algebromech
