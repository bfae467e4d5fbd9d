#pragma once

// Lie algebroids in a single global coordinate chart.
//
// A model is given by its anchor rho^i_I(q) (an n x m matrix) and structure
// functions C^K_{IJ}(q) (see StructureTensor for the index order). The
// defining axioms reduce, in coordinates, to three pointwise identities:
//
//   antisymmetry    C^K_{IJ} + C^K_{JI} = 0
//   anchor compat.  rho^j_I d_j rho^i_J - rho^j_J d_j rho^i_I - rho^i_K C^K_{IJ} = 0
//   Jacobi          sum_cyc(I,J,K) [ rho^i_I d_i C^N_{JK} + C^N_{IM} C^M_{JK} ] = 0
//
// The second is rho([e_I, e_J]) = [rho(e_I), rho(e_J)] expanded in the frame;
// the third is the Jacobi identity for [e_I, [e_J, e_K]] after applying the
// Leibniz rule [e_I, f e_M] = rho(e_I)(f) e_M + f [e_I, e_M].

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algebromech/types.hpp"

namespace algebromech {

/// Axis-aligned box in chart coordinates outside which a model is not valid.
struct ChartBox {
  Vector lower;
  Vector upper;

  bool contains(const Vector& q) const;
};

class AlgebroidModel {
public:
  using AnchorFn = std::function<Matrix(const Vector&)>;
  using StructureFn = std::function<StructureTensor(const Vector&)>;
  /// Element j is d(rho)/dq^j, an n x m matrix.
  using AnchorJacobianFn = std::function<std::vector<Matrix>(const Vector&)>;
  /// Element i is dC/dq^i.
  using StructureJacobianFn = std::function<std::vector<StructureTensor>(const Vector&)>;

  struct Definition {
    std::string label;
    int base_dim = 0;
    int fiber_dim = 1;
    AnchorFn anchor;
    StructureFn structure;
    AnchorJacobianFn anchor_jacobian = {};        // optional
    StructureJacobianFn structure_jacobian = {};  // optional
    std::optional<ChartBox> chart = std::nullopt;
    double fd_relative_step = 0.0;  // 0 selects fd::relative_step()
  };

  explicit AlgebroidModel(Definition def);

  const std::string& label() const { return def_.label; }
  int base_dim() const { return def_.base_dim; }
  int fiber_dim() const { return def_.fiber_dim; }
  const std::optional<ChartBox>& chart() const { return def_.chart; }
  bool has_analytic_jacobians() const {
    return static_cast<bool>(def_.anchor_jacobian) && static_cast<bool>(def_.structure_jacobian);
  }

  Matrix anchor(const Vector& q) const;
  StructureTensor structure(const Vector& q) const;

  /// d(rho)/dq^j for each j; analytic when available, else central differences
  /// with `step` (or the model default when `step` is empty).
  std::vector<Matrix> anchor_derivative(const Vector& q, std::optional<double> step = {}) const;
  std::vector<StructureTensor> structure_derivative(const Vector& q, std::optional<double> step = {}) const;

  bool inside_chart(const Vector& q) const { return !def_.chart || def_.chart->contains(q); }

  double default_step(const Vector& q) const;

private:
  void require_base_point(const Vector& q) const;

  Definition def_;
};

using AlgebroidPtr = std::shared_ptr<const AlgebroidModel>;

struct StructureResiduals {
  double antisymmetry = 0.0;
  double anchor_compat = 0.0;
  double jacobi = 0.0;

  double max() const { return std::max({antisymmetry, anchor_compat, jacobi}); }
};

/// Max-norm residuals of the three algebroid identities at q. `fd_step` is the
/// absolute step used for any derivative the model does not supply.
StructureResiduals check_structure_identities(const AlgebroidModel& model, const Vector& q, double fd_step);

/// Antisymmetry and Jacobi residuals of a constant structure tensor.
StructureResiduals check_lie_algebra(const StructureTensor& c);

// Builders -----------------------------------------------------------------

/// TQ over R^n: identity anchor, commuting coordinate frame.
AlgebroidPtr tangent_bundle(int n);

/// A Lie algebra as an algebroid over a point. Throws ConstructionError when
/// `c` violates antisymmetry or Jacobi beyond 1e-12.
AlgebroidPtr lie_algebra(const StructureTensor& c, std::string label = "lie_algebra");

/// Vertical bundle of R^k x R^m -> R^k with frame e_i = d/dy^i. Base
/// coordinates are (x^1..x^k, y^1..y^m).
AlgebroidPtr vertical_bundle(int k, int m);

/// Connection form omega^A_i(x) on a trivial principal bundle: a d x n matrix.
using ConnectionFn = std::function<Matrix(const Vector&)>;
/// Element j is d(omega)/dx^j.
using ConnectionJacobianFn = std::function<std::vector<Matrix>(const Vector&)>;

/// Atiyah algebroid of a trivial principal bundle, split by a principal
/// connection. Frame: e_i = (d/dx^i, 0) for i < n, then e_A = (0, eps_A).
///
///   [e_i, e_j] = -Rt^A_{ij} e_A,  Rt^A_{ij} = d_i w^A_j - d_j w^A_i - c^A_{BC} w^B_i w^C_j
///   [e_i, e_A] = -c^B_{CA} w^C_i e_B
///   [e_A, e_B] = c^C_{AB} e_C
///
/// which is the split bracket ([X,Y], D_X eta - D_Y xi + [xi, eta] - Rt(X,Y))
/// with the adjoint-bundle derivative D = d - ad(w) and its curvature
/// Rt = dw - [w, w]. For an abelian fiber both reduce to the field strength.
AlgebroidPtr atiyah_trivial(int base_dim, const StructureTensor& fiber_algebra, ConnectionFn connection,
                            ConnectionJacobianFn connection_jacobian = {}, std::string label = "atiyah_trivial");

}  // namespace algebromech
