#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "algebromech/diagnostics.hpp"
#include "algebromech/dynamics.hpp"
#include "algebromech/lagrangian.hpp"
#include "algebromech/reduction.hpp"

namespace algebromech::catalog {

using Params = std::map<std::string, double>;

/// Box from which self-tests and `check` draw sample points.
struct SampleBox {
  Vector q_lower, q_upper;
  Vector xi_lower, xi_upper;
};

struct SystemBundle {
  std::string name;
  Params params;  // defaults merged with overrides
  AlgebroidPtr algebroid;
  std::shared_ptr<const LagrangianModel> lagrangian;
  State default_state;
  std::vector<InvariantHook> invariants;
  SampleBox samples;
};

struct Entry {
  std::string name;
  std::string doc;
  Params defaults;
};

/// Systems in a stable order.
const std::vector<Entry>& list();
/// Morphisms in a stable order (plus the generic "identity").
const std::vector<Entry>& list_morphisms();

/// Builds a catalog system and runs its construction self-test. Unknown
/// names, unknown parameter keys, or invalid values raise InputError.
SystemBundle build(const std::string& name, const Params& params = {});

struct MorphismBundle {
  std::string name;
  SystemBundle source;
  SystemBundle target;
  AlgebroidMorphism morphism;
};

/// Builds a morphism with its source and target systems. For "identity" the
/// source system is `identity_system`.
MorphismBundle build_morphism(const std::string& name, const Params& params = {},
                              const std::string& identity_system = "");

/// Routhian input for a system whose first `n_cyclic` coordinates are cyclic;
/// the Newton guess is taken from the default state.
RouthianInput routhian_input(const SystemBundle& system, int n_cyclic, const Vector& momentum);

// Rigid-body angle chart --------------------------------------------------------
//
// Angles q = (phi, theta, psi) with R(q) = Rz(phi) Ry(theta) Rz(psi). The body
// angular velocity is omega = K(q) q_dot with hat(omega) = R^T dR/dt; K is
// invertible for sin(theta) != 0, and the chart box keeps theta inside
// [0.05, pi - 0.05].

Matrix zyz_rotation(const Vector& angles);
Matrix zyz_kinematic_matrix(const Vector& angles);
/// Element j is dK/dq^j.
std::vector<Matrix> zyz_kinematic_matrix_derivative(const Vector& angles);

inline constexpr double kChartThetaMargin = 0.05;

}  // namespace algebromech::catalog
