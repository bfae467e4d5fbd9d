#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algebromech/dynamics.hpp"

namespace algebromech {

// Residuals ------------------------------------------------------------------

struct ElpResidual {
  std::vector<Vector> equation;  // interior nodes 1..N-1
  std::vector<double> apath;     // |q_dot_fd - rho xi|_inf at interior nodes
  double max_equation = 0.0;
  double max_apath = 0.0;
};

/// Residual of the ELP equations along a sampled trajectory. Time derivatives
/// are second-order central differences; the end nodes are excluded.
ElpResidual elp_residual(const LagrangianModel& lagrangian, const Trajectory& traj);

/// A-path residual at every node; one-sided second-order stencils at the ends.
std::vector<double> apath_residual_per_node(const AlgebroidModel& algebroid, const Trajectory& traj);

// Variations -----------------------------------------------------------------

/// Path b(t) generating an admissible variation; must vanish at both ends.
struct VariationField {
  std::function<Vector(double)> b;
  std::function<Vector(double)> b_dot;  // optional; central differences otherwise
};

struct AdmissibleVariation {
  std::vector<Vector> dq;   // rho(q) b
  std::vector<Vector> dxi;  // b_dot - C^K_{IJ} xi^J b^I
};

inline constexpr double kVariationEndpointTolerance = 1e-14;

/// Evaluates the variation generated by `b` at every node of `traj`.
/// Throws InputError when b does not vanish at the trajectory endpoints.
AdmissibleVariation admissible_variation(const AlgebroidModel& algebroid, const Trajectory& traj,
                                         const VariationField& b);

/// Trapezoid estimate of dS = integral <dL/dq, dq> + <dL/dxi, dxi> dt.
double action_stationarity(const LagrangianModel& lagrangian, const Trajectory& traj, const VariationField& b);

/// Error budget 100 dt^2 (|b|_inf + |b_dot|_inf) sampled on the grid.
double stationarity_tolerance(const Trajectory& traj, const VariationField& b);

// Reports --------------------------------------------------------------------

/// Scalar conserved quantity evaluated at (q, xi).
struct InvariantHook {
  std::string name;
  std::function<double(const Vector&, const Vector&)> fn;
};

struct DriftStats {
  std::string name;
  double initial = 0.0;
  double max_abs = 0.0;   // max |f(t) - f(t0)|
  double mean_abs = 0.0;
  double max_rel = 0.0;   // max_abs / max(|f(t0)|, tiny)
};

struct DiagnosticsReport {
  DriftStats energy;
  double apath_residual_max = 0.0;
  double elp_residual_max = 0.0;
  std::optional<double> constraint_residual_max;
  std::vector<DriftStats> invariants;
};

DriftStats drift_stats(std::string name, const std::vector<double>& values);

DiagnosticsReport diagnostics(const LagrangianModel& lagrangian, const Trajectory& traj,
                              const std::vector<InvariantHook>& hooks = {});

/// Diagnostics of an HP run, evaluated on its (q, v) projection.
DiagnosticsReport diagnostics(const LagrangianModel& lagrangian, const PontryaginTrajectory& traj,
                              const std::vector<InvariantHook>& hooks = {});

/// Projects an HP trajectory to the A-path (q, v).
Trajectory as_state_trajectory(const PontryaginTrajectory& traj);

}  // namespace algebromech
