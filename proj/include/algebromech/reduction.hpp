#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algebromech/diagnostics.hpp"
#include "algebromech/dynamics.hpp"

namespace algebromech {

/// Lie algebroid morphism A -> A' in coordinates: base map phi with Jacobian
/// and a fiberwise linear map Phi(q) (m' x m).
struct AlgebroidMorphism {
  std::string label;
  AlgebroidPtr source;
  AlgebroidPtr target;
  std::function<Vector(const Vector&)> base_map;
  std::function<Matrix(const Vector&)> base_jacobian;  // optional; central differences otherwise
  std::function<Matrix(const Vector&)> fiber_map;
  bool fiberwise_invertible = false;

  Vector map_base(const Vector& q) const;
  Matrix jacobian(const Vector& q) const;
  Matrix fiber(const Vector& q) const;
};

/// Identity morphism of an algebroid.
AlgebroidMorphism identity_morphism(const AlgebroidPtr& algebroid);

struct MorphismResiduals {
  double anchor_compat = 0.0;  // max |rho'(phi) Phi - Dphi rho|
  std::optional<double> max_condition;  // only for fiberwise-invertible morphisms
  bool invertible_ok = true;
};

/// Anchor-intertwining residual over the samples. A necessary condition only:
/// bracket compatibility is certified behaviourally by reduce_compare.
MorphismResiduals check_morphism(const AlgebroidMorphism& mor, const std::vector<Vector>& samples);

/// max |L(q, xi) - l(phi(q), Phi(q) xi)| over the samples.
double check_invariance(const LagrangianModel& source, const LagrangianModel& target, const AlgebroidMorphism& mor,
                        const std::vector<std::pair<Vector, Vector>>& samples);

/// Node-wise (phi(q), Phi(q) xi); timestamps preserved.
Trajectory push_trajectory(const AlgebroidMorphism& mor, const Trajectory& traj);

/// Node-wise (phi(q), Phi v, Phi^{-T} p). Throws MorphismError when Phi(q) is
/// singular or the morphism is not flagged fiberwise invertible.
PontryaginTrajectory push_pontryagin(const AlgebroidMorphism& mor, const PontryaginTrajectory& traj);

struct CompareOptions {
  Method method = Method::rk4;
  std::uint64_t seed = 0;
  int invariance_samples = 20;
  double sample_radius = 0.1;  // samples are drawn in a box of this half-width around s0
  std::optional<double> tolerance;
  std::vector<InvariantHook> source_hooks;
  std::vector<InvariantHook> target_hooks;
};

struct ComparisonReport {
  double max_deviation = 0.0;  // max over nodes of the Euclidean target-space distance
  double invariance_discrepancy = 0.0;
  double anchor_compat = 0.0;
  DiagnosticsReport source;
  DiagnosticsReport target;
  std::vector<std::string> warnings;
  /// Anchor check passed but the flows disagree beyond tolerance.
  bool bracket_compatibility_suspect = false;
};

inline constexpr double kInvarianceWarnThreshold = 1e-8;

/// Integrates L from s0 and l from its image and compares the pushed-forward
/// source run with the target run.
ComparisonReport reduce_compare(const LagrangianModel& source, const LagrangianModel& target,
                                const AlgebroidMorphism& mor, const State& s0, double t_final, double dt,
                                const CompareOptions& options = {});

/// As reduce_compare for Hamilton-Pontryagin runs; deviation is measured in
/// (q, v, p) on the target. Requires mor.fiberwise_invertible.
ComparisonReport hp_reduce_compare(const LagrangianModel& source, const LagrangianModel& target,
                                   const AlgebroidMorphism& mor, const PontryaginState& s0, double t_final, double dt,
                                   const CompareOptions& options = {});

struct RouthReport {
  double y_deviation = 0.0;      // max |y_full - y_routh|
  double y_dot_deviation = 0.0;  // max |ydot_full - ydot_routh|
  double momentum_drift = 0.0;   // max |dL/dthetadot - x| along the full flow
  double x_drift = 0.0;          // max |x(t) - x| along the Routhian flow
  bool constraint_near_singular = false;
  Trajectory full;
  Trajectory reduced;
  DiagnosticsReport full_diagnostics;
  DiagnosticsReport reduced_diagnostics;
};

inline constexpr double kRouthMomentumMatchTolerance = 1e-10;

/// Integrates the full Euler-Lagrange flow and the vertical flow of the
/// Routhian at momentum x and compares the shape trajectories. Throws
/// InputError when dL/dthetadot(s0) differs from x by more than 1e-10.
RouthReport routh_compare(const std::shared_ptr<const LagrangianModel>& full, int n_cyclic, const Vector& momentum,
                          const State& s0_full, double t_final, double dt, Method method = Method::rk4);

}  // namespace algebromech
