#include "algebromech/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "algebromech/errors.hpp"

namespace algebromech::catalog {

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Vector fill(Eigen::Index n, double x) { return Vector::Constant(n, x); }

const std::vector<Entry> kSystems = {
    {"harmonic_oscillator",
     "Harmonic oscillator on TR: L = xi^2/2 - k q^2/2. The ELP equations on a tangent bundle are the ordinary "
     "Euler-Lagrange equations.",
     {{"k", 1.0}}},
    {"rigid_body",
     "Free rigid body on so(3) with structure constants eps_IJK: l = omega^T I omega / 2. The ELP equations are the "
     "Euler-Poincare (Euler) equations. Hooks: energy, casimir |I omega|^2.",
     {{"I1", 1.0}, {"I2", 2.0}, {"I3", 3.0}}},
    {"rigid_body_chart",
     "Free rigid body on T(SO(3)) in the ZYZ Euler-angle chart: L = (K q_dot)^T I (K q_dot) / 2. Paired with "
     "rigid_body_quotient, the left-trivialization morphism onto so(3). Hooks: energy, casimir.",
     {{"I1", 1.0}, {"I2", 2.0}, {"I3", 3.0}}},
    {"cyclic_oscillator",
     "Oscillator with a cyclic angle on T(T^1 x R): L = (theta_dot^2 + y_dot^2)/2 - y^2/2. Paired with "
     "cyclic_quotient onto the flat abelian Atiyah algebroid. Hooks: energy, p_theta.",
     {}},
    {"cyclic_oscillator_reduced",
     "Reduced cyclic oscillator on the flat abelian Atiyah algebroid over R, coordinates (y; y_dot, v): "
     "l = (v^2 + y_dot^2)/2 - y^2/2. Lagrange-Poincare equations with zero curvature. Hooks: energy, charge.",
     {}},
    {"wong_abelian",
     "Wong's equations for a U(1) bundle over R^2 with connection w = (-B x2/2, B x1/2) (uniform curvature B): "
     "L = |x_dot|^2/2 + v^2/2. The charge v is conserved and x feels the Lorentz force B v J x_dot. Hooks: energy, "
     "charge.",
     {{"B", 1.0}}},
    {"wong_so3",
     "Wong's equations for an SU(2) bundle over R^2 with a non-flat polynomial connection: L = |x_dot|^2/2 + "
     "|v|^2/2. The charge is parallel transported, so |v|^2 is conserved. Property-tested only. Hooks: energy, "
     "charge_norm.",
     {{"B", 1.0}}},
    {"central_force_routh",
     "Planar central force in polar coordinates (theta, r): L = (r_dot^2 + r^2 theta_dot^2)/2 - omega_r^2 r^2/2, "
     "cyclic in theta. Routh reduction at momentum x gives R = r_dot^2/2 - x^2/(2 r^2) - omega_r^2 r^2/2 on the "
     "vertical bundle over (x, r). Hooks: energy, p_theta.",
     {{"omega_r", 1.0}}},
};

const std::vector<Entry> kMorphisms = {
    {"cyclic_quotient",
     "Quotient of cyclic_oscillator by theta translations onto cyclic_oscillator_reduced: (theta, y) -> y, "
     "(theta_dot, y_dot) -> (y_dot, v = theta_dot).",
     {}},
    {"rigid_body_quotient",
     "Left trivialization of rigid_body_chart onto rigid_body: the base collapses to a point and Phi(q) = K(q) maps "
     "angle rates to body angular velocity.",
     {{"I1", 1.0}, {"I2", 2.0}, {"I3", 3.0}}},
    {"identity", "Identity morphism of any catalog system.", {}},
};

Params merge(const std::string& name, const Params& defaults, const Params& overrides) {
  Params out = defaults;
  for (const auto& [key, value] : overrides) {
    if (!defaults.contains(key)) {
      std::ostringstream msg;
      msg << "system '" << name << "' has no parameter '" << key << "'";
      if (!defaults.empty()) {
        msg << " (known:";
        for (const auto& [k, v] : defaults) msg << " " << k;
        msg << ")";
      }
      throw InputError(msg.str());
    }
    if (!std::isfinite(value)) throw InputError("parameter '" + key + "' must be finite");
    out[key] = value;
  }
  return out;
}

const Entry& find_entry(const std::vector<Entry>& entries, const std::string& name, const char* what) {
  for (const Entry& e : entries)
    if (e.name == name) return e;
  std::ostringstream msg;
  msg << "unknown " << what << " '" << name << "' (known:";
  for (const Entry& e : entries) msg << " " << e.name;
  msg << ")";
  throw InputError(msg.str());
}

double positive(const Params& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v > 0.0)) throw InputError("parameter '" + key + "' must be positive");
  return v;
}

InvariantHook energy_hook(const std::shared_ptr<const LagrangianModel>& lagrangian) {
  return {"energy", [lagrangian](const Vector& q, const Vector& xi) { return energy(*lagrangian, q, xi); }};
}

/// Lagrangian 1/2 xi^T M xi - V(q) with constant M, fully analytic.
LagrangianModel quadratic_lagrangian(AlgebroidPtr algebroid, std::string label, Matrix mass,
                                     std::function<double(const Vector&)> potential,
                                     std::function<Vector(const Vector&)> potential_gradient) {
  const int n = algebroid->base_dim();
  LagrangianModel::Definition def;
  def.label = std::move(label);
  def.value = [mass, potential](const Vector& q, const Vector& xi) { return 0.5 * xi.dot(mass * xi) - potential(q); };
  def.grad_q = [potential_gradient](const Vector& q, const Vector&) { return Vector(-potential_gradient(q)); };
  def.grad_xi = [mass](const Vector&, const Vector& xi) { return Vector(mass * xi); };
  def.hess_xi_xi = [mass](const Vector&, const Vector&) { return mass; };
  def.hess_xi_q = [n, m = mass.rows()](const Vector&, const Vector&) { return Matrix(Matrix::Zero(m, n)); };
  return LagrangianModel(std::move(algebroid), std::move(def));
}

void self_test(const SystemBundle& bundle) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const AlgebroidModel& algebroid = *bundle.algebroid;
  const double fd_step = 1e-5;
  const double identity_tol = algebroid.has_analytic_jacobians() ? 1e-12 : 10.0 * fd_step * fd_step;
  for (int s = 0; s < 3; ++s) {
    Vector q = bundle.samples.q_lower;
    Vector xi = bundle.samples.xi_lower;
    for (Eigen::Index i = 0; i < q.size(); ++i) q[i] += u(rng) * (bundle.samples.q_upper[i] - bundle.samples.q_lower[i]);
    for (Eigen::Index i = 0; i < xi.size(); ++i)
      xi[i] += u(rng) * (bundle.samples.xi_upper[i] - bundle.samples.xi_lower[i]);
    const StructureResiduals r = check_structure_identities(algebroid, q, fd_step);
    if (r.max() > identity_tol)
      throw ConstructionError("catalog system '" + bundle.name + "' fails the algebroid identities");
    const GradientConsistency g = check_gradients(*bundle.lagrangian, q, xi);
    if (g.grad_q_error > 1e-5 || g.grad_xi_error > 1e-5 || g.hessian_asymmetry > 1e-12)
      throw ConstructionError("catalog system '" + bundle.name + "' fails the gradient consistency check");
  }
}

SystemBundle build_harmonic(const Params& p) {
  const double k = positive(p, "k");
  SystemBundle b;
  b.algebroid = tangent_bundle(1);
  b.lagrangian = std::make_shared<LagrangianModel>(quadratic_lagrangian(
      b.algebroid, "harmonic_oscillator", Matrix::Identity(1, 1), [k](const Vector& q) { return 0.5 * k * q.squaredNorm(); },
      [k](const Vector& q) { return Vector(k * q); }));
  b.default_state = {0.0, vec({1.0}), vec({0.0})};
  b.invariants = {energy_hook(b.lagrangian)};
  b.samples = {fill(1, -2.0), fill(1, 2.0), fill(1, -2.0), fill(1, 2.0)};
  return b;
}

Matrix inertia(const Params& p) {
  return vec({positive(p, "I1"), positive(p, "I2"), positive(p, "I3")}).asDiagonal();
}

SystemBundle build_rigid_body(const Params& p) {
  const Matrix inertia_matrix = inertia(p);
  SystemBundle b;
  b.algebroid = lie_algebra(so3_structure(), "so(3)");
  b.lagrangian = std::make_shared<LagrangianModel>(quadratic_lagrangian(
      b.algebroid, "rigid_body", inertia_matrix, [](const Vector&) { return 0.0; }, [](const Vector&) { return Vector(0); }));
  b.default_state = {0.0, Vector(0), vec({1.0, 1.0, 1.0})};
  b.invariants = {energy_hook(b.lagrangian), {"casimir", [inertia_matrix](const Vector&, const Vector& xi) {
                                                return (inertia_matrix * xi).squaredNorm();
                                              }}};
  b.samples = {Vector(0), Vector(0), fill(3, -2.0), fill(3, 2.0)};
  return b;
}

AlgebroidPtr rigid_body_chart_algebroid() {
  ChartBox box{vec({-1e3, kChartThetaMargin, -1e3}), vec({1e3, std::numbers::pi - kChartThetaMargin, 1e3})};
  return std::make_shared<AlgebroidModel>(AlgebroidModel::Definition{
      "T(SO(3)) zyz chart", 3, 3, [](const Vector&) { return Matrix(Matrix::Identity(3, 3)); },
      [](const Vector&) { return StructureTensor(3); },
      [](const Vector&) { return std::vector<Matrix>(3, Matrix::Zero(3, 3)); },
      [](const Vector&) { return std::vector<StructureTensor>(3, StructureTensor(3)); }, box});
}

SystemBundle build_rigid_body_chart(const Params& p) {
  const Matrix inertia_matrix = inertia(p);
  SystemBundle b;
  b.algebroid = rigid_body_chart_algebroid();

  LagrangianModel::Definition def;
  def.label = "rigid_body_chart";
  def.value = [inertia_matrix](const Vector& q, const Vector& q_dot) {
    const Vector omega = zyz_kinematic_matrix(q) * q_dot;
    return 0.5 * omega.dot(inertia_matrix * omega);
  };
  def.grad_q = [inertia_matrix](const Vector& q, const Vector& q_dot) {
    const Vector momentum = inertia_matrix * (zyz_kinematic_matrix(q) * q_dot);
    const auto dk = zyz_kinematic_matrix_derivative(q);
    Vector g(3);
    for (int j = 0; j < 3; ++j) g[j] = momentum.dot(dk[j] * q_dot);
    return g;
  };
  def.grad_xi = [inertia_matrix](const Vector& q, const Vector& q_dot) {
    const Matrix k = zyz_kinematic_matrix(q);
    return Vector(k.transpose() * (inertia_matrix * (k * q_dot)));
  };
  def.hess_xi_xi = [inertia_matrix](const Vector& q, const Vector&) {
    const Matrix k = zyz_kinematic_matrix(q);
    return Matrix(k.transpose() * inertia_matrix * k);
  };
  def.hess_xi_q = [inertia_matrix](const Vector& q, const Vector& q_dot) {
    const Matrix k = zyz_kinematic_matrix(q);
    const auto dk = zyz_kinematic_matrix_derivative(q);
    const Vector momentum = inertia_matrix * (k * q_dot);
    Matrix h(3, 3);
    for (int j = 0; j < 3; ++j) h.col(j) = dk[j].transpose() * momentum + k.transpose() * (inertia_matrix * (dk[j] * q_dot));
    return h;
  };
  b.lagrangian = std::make_shared<LagrangianModel>(b.algebroid, std::move(def));

  const Vector q0 = vec({0.0, std::numbers::pi / 2.0, 0.0});
  b.default_state = {0.0, q0, zyz_kinematic_matrix(q0).partialPivLu().solve(vec({1.0, 1.0, 1.0}))};
  b.invariants = {energy_hook(b.lagrangian), {"casimir", [inertia_matrix](const Vector& q, const Vector& q_dot) {
                                                return (inertia_matrix * (zyz_kinematic_matrix(q) * q_dot)).squaredNorm();
                                              }}};
  b.samples = {vec({-1.0, 0.5, -1.0}), vec({1.0, 2.6, 1.0}), fill(3, -1.0), fill(3, 1.0)};
  return b;
}

std::shared_ptr<const LagrangianModel> cyclic_lagrangian(AlgebroidPtr algebroid, std::string label, Matrix mass,
                                                         int y_index) {
  return std::make_shared<LagrangianModel>(quadratic_lagrangian(
      std::move(algebroid), std::move(label), std::move(mass),
      [y_index](const Vector& q) { return 0.5 * q[y_index] * q[y_index]; },
      [y_index](const Vector& q) {
        Vector g = Vector::Zero(q.size());
        g[y_index] = q[y_index];
        return g;
      }));
}

SystemBundle build_cyclic(const Params&) {
  SystemBundle b;
  b.algebroid = tangent_bundle(2);
  b.lagrangian = cyclic_lagrangian(b.algebroid, "cyclic_oscillator", Matrix::Identity(2, 2), 1);
  b.default_state = {0.0, vec({0.0, 1.0}), vec({2.0, 0.0})};
  b.invariants = {energy_hook(b.lagrangian), {"p_theta", [](const Vector&, const Vector& xi) { return xi[0]; }}};
  b.samples = {fill(2, -2.0), fill(2, 2.0), fill(2, -2.0), fill(2, 2.0)};
  return b;
}

AlgebroidPtr flat_abelian_atiyah(int base_dim, std::string label) {
  return atiyah_trivial(
      base_dim, StructureTensor(1), [base_dim](const Vector&) { return Matrix(Matrix::Zero(1, base_dim)); },
      [base_dim](const Vector&) { return std::vector<Matrix>(static_cast<std::size_t>(base_dim), Matrix::Zero(1, base_dim)); },
      std::move(label));
}

SystemBundle build_cyclic_reduced(const Params&) {
  SystemBundle b;
  b.algebroid = flat_abelian_atiyah(1, "flat abelian Atiyah algebroid over R");
  b.lagrangian = cyclic_lagrangian(b.algebroid, "cyclic_oscillator_reduced", Matrix::Identity(2, 2), 0);
  b.default_state = {0.0, vec({1.0}), vec({0.0, 2.0})};
  b.invariants = {energy_hook(b.lagrangian), {"charge", [](const Vector&, const Vector& xi) { return xi[1]; }}};
  b.samples = {fill(1, -2.0), fill(1, 2.0), fill(2, -2.0), fill(2, 2.0)};
  return b;
}

SystemBundle build_wong_abelian(const Params& p) {
  const double field = p.at("B");
  SystemBundle b;
  b.algebroid = atiyah_trivial(
      2, StructureTensor(1),
      [field](const Vector& x) {
        Matrix w(1, 2);
        w << -0.5 * field * x[1], 0.5 * field * x[0];
        return w;
      },
      [field](const Vector&) {
        Matrix d1(1, 2), d2(1, 2);
        d1 << 0.0, 0.5 * field;
        d2 << -0.5 * field, 0.0;
        return std::vector<Matrix>{d1, d2};
      },
      "U(1) Atiyah algebroid over R^2");
  b.lagrangian = std::make_shared<LagrangianModel>(quadratic_lagrangian(
      b.algebroid, "wong_abelian", Matrix::Identity(3, 3), [](const Vector&) { return 0.0; },
      [](const Vector&) { return Vector(Vector::Zero(2)); }));
  b.default_state = {0.0, vec({0.0, 0.0}), vec({1.0, 0.0, 1.0})};
  b.invariants = {energy_hook(b.lagrangian), {"charge", [](const Vector&, const Vector& xi) { return xi[2]; }}};
  b.samples = {fill(2, -2.0), fill(2, 2.0), fill(3, -2.0), fill(3, 2.0)};
  return b;
}

SystemBundle build_wong_so3(const Params& p) {
  const double field = p.at("B");
  SystemBundle b;
  b.algebroid = atiyah_trivial(
      2, so3_structure(),
      [field](const Vector& x) {
        Matrix w = Matrix::Zero(3, 2);
        w(0, 0) = 0.3 * x[0] * x[1];
        w(2, 0) = -0.5 * field * x[1];
        w(2, 1) = 0.5 * field * x[0];
        return w;
      },
      [field](const Vector& x) {
        Matrix d1 = Matrix::Zero(3, 2), d2 = Matrix::Zero(3, 2);
        d1(0, 0) = 0.3 * x[1];
        d1(2, 1) = 0.5 * field;
        d2(0, 0) = 0.3 * x[0];
        d2(2, 0) = -0.5 * field;
        return std::vector<Matrix>{d1, d2};
      },
      "SU(2) Atiyah algebroid over R^2");
  b.lagrangian = std::make_shared<LagrangianModel>(quadratic_lagrangian(
      b.algebroid, "wong_so3", Matrix::Identity(5, 5), [](const Vector&) { return 0.0; },
      [](const Vector&) { return Vector(Vector::Zero(2)); }));
  b.default_state = {0.0, vec({0.1, 0.2}), vec({1.0, 0.0, 0.3, 0.2, 1.0})};
  b.invariants = {energy_hook(b.lagrangian),
                  {"charge_norm", [](const Vector&, const Vector& xi) { return xi.tail(3).squaredNorm(); }}};
  b.samples = {fill(2, -1.0), fill(2, 1.0), fill(5, -1.0), fill(5, 1.0)};
  return b;
}

SystemBundle build_central_force(const Params& p) {
  const double w2 = std::pow(positive(p, "omega_r"), 2);
  SystemBundle b;
  b.algebroid = std::make_shared<AlgebroidModel>(AlgebroidModel::Definition{
      "T(T^1 x R+) polar chart", 2, 2, [](const Vector&) { return Matrix(Matrix::Identity(2, 2)); },
      [](const Vector&) { return StructureTensor(2); },
      [](const Vector&) { return std::vector<Matrix>(2, Matrix::Zero(2, 2)); },
      [](const Vector&) { return std::vector<StructureTensor>(2, StructureTensor(2)); },
      ChartBox{vec({-1e6, 1e-3}), vec({1e6, 1e3})}});

  // Coordinates (theta, r); theta is cyclic.
  LagrangianModel::Definition def;
  def.label = "central_force_routh";
  def.value = [w2](const Vector& q, const Vector& v) {
    const double r = q[1];
    return 0.5 * (v[1] * v[1] + r * r * v[0] * v[0]) - 0.5 * w2 * r * r;
  };
  def.grad_q = [w2](const Vector& q, const Vector& v) { return vec({0.0, q[1] * v[0] * v[0] - w2 * q[1]}); };
  def.grad_xi = [](const Vector& q, const Vector& v) { return vec({q[1] * q[1] * v[0], v[1]}); };
  def.hess_xi_xi = [](const Vector& q, const Vector&) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = q[1] * q[1];
    h(1, 1) = 1.0;
    return h;
  };
  def.hess_xi_q = [](const Vector& q, const Vector& v) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 1) = 2.0 * q[1] * v[0];
    return h;
  };
  b.lagrangian = std::make_shared<LagrangianModel>(b.algebroid, std::move(def));
  const double r0 = 1.2;
  b.default_state = {0.0, vec({0.0, r0}), vec({1.0 / (r0 * r0), 0.0})};
  b.invariants = {energy_hook(b.lagrangian),
                  {"p_theta", [](const Vector& q, const Vector& v) { return q[1] * q[1] * v[0]; }}};
  b.samples = {vec({-3.0, 0.5}), vec({3.0, 2.0}), fill(2, -2.0), fill(2, 2.0)};
  return b;
}

SystemBundle dispatch(const std::string& name, const Params& p) {
  if (name == "harmonic_oscillator") return build_harmonic(p);
  if (name == "rigid_body") return build_rigid_body(p);
  if (name == "rigid_body_chart") return build_rigid_body_chart(p);
  if (name == "cyclic_oscillator") return build_cyclic(p);
  if (name == "cyclic_oscillator_reduced") return build_cyclic_reduced(p);
  if (name == "wong_abelian") return build_wong_abelian(p);
  if (name == "wong_so3") return build_wong_so3(p);
  return build_central_force(p);
}

}  // namespace

const std::vector<Entry>& list() { return kSystems; }
const std::vector<Entry>& list_morphisms() { return kMorphisms; }

SystemBundle build(const std::string& name, const Params& params) {
  const Entry& entry = find_entry(kSystems, name, "system");
  const Params merged = merge(name, entry.defaults, params);
  SystemBundle bundle = dispatch(name, merged);
  bundle.name = name;
  bundle.params = merged;
  self_test(bundle);
  return bundle;
}

MorphismBundle build_morphism(const std::string& name, const Params& params, const std::string& identity_system) {
  find_entry(kMorphisms, name, "morphism");
  if (name == "identity") {
    SystemBundle system = build(identity_system, params);
    AlgebroidMorphism mor = identity_morphism(system.algebroid);
    return {name, system, system, std::move(mor)};
  }
  if (name == "cyclic_quotient") {
    merge(name, {}, params);
    SystemBundle source = build("cyclic_oscillator");
    SystemBundle target = build("cyclic_oscillator_reduced");
    Matrix swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    Matrix dphi(1, 2);
    dphi << 0.0, 1.0;
    AlgebroidMorphism mor{name,
                          source.algebroid,
                          target.algebroid,
                          [](const Vector& q) { return vec({q[1]}); },
                          [dphi](const Vector&) { return dphi; },
                          [swap](const Vector&) { return swap; },
                          true};
    return {name, std::move(source), std::move(target), std::move(mor)};
  }
  // rigid_body_quotient
  SystemBundle source = build("rigid_body_chart", params);
  SystemBundle target = build("rigid_body", params);
  AlgebroidMorphism mor{name,
                        source.algebroid,
                        target.algebroid,
                        [](const Vector&) { return Vector(0); },
                        [](const Vector&) { return Matrix(0, 3); },
                        [](const Vector& q) { return zyz_kinematic_matrix(q); },
                        true};
  return {name, std::move(source), std::move(target), std::move(mor)};
}

RouthianInput routhian_input(const SystemBundle& system, int n_cyclic, const Vector& momentum) {
  return {system.lagrangian, n_cyclic, momentum, system.default_state.xi.head(n_cyclic)};
}

Matrix zyz_rotation(const Vector& angles) {
  using Eigen::AngleAxisd;
  const Eigen::Matrix3d r = (AngleAxisd(angles[0], Eigen::Vector3d::UnitZ()) *
                             AngleAxisd(angles[1], Eigen::Vector3d::UnitY()) *
                             AngleAxisd(angles[2], Eigen::Vector3d::UnitZ()))
                                .toRotationMatrix();
  return r;
}

Matrix zyz_kinematic_matrix(const Vector& angles) {
  const double st = std::sin(angles[1]), ct = std::cos(angles[1]);
  const double sp = std::sin(angles[2]), cp = std::cos(angles[2]);
  Matrix k(3, 3);
  k << -st * cp, sp, 0.0,
        st * sp, cp, 0.0,
        ct, 0.0, 1.0;
  return k;
}

std::vector<Matrix> zyz_kinematic_matrix_derivative(const Vector& angles) {
  const double st = std::sin(angles[1]), ct = std::cos(angles[1]);
  const double sp = std::sin(angles[2]), cp = std::cos(angles[2]);
  Matrix d_theta(3, 3), d_psi(3, 3);
  d_theta << -ct * cp, 0.0, 0.0,
              ct * sp, 0.0, 0.0,
             -st, 0.0, 0.0;
  d_psi << st * sp, cp, 0.0,
           st * cp, -sp, 0.0,
           0.0, 0.0, 0.0;
  return {Matrix::Zero(3, 3), d_theta, d_psi};
}

}  // namespace algebromech::catalog
