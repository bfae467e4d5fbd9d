#include <doctest.h>

#include <cmath>

#include "algebromech/errors.hpp"
#include "algebromech/finite_difference.hpp"
#include "algebromech/lagrangian.hpp"
#include "support/random.hpp"

using namespace algebromech;
using test_support::Gen;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

LagrangianModel free_particle(int n) {
  return LagrangianModel(tangent_bundle(n), {"free", [](const Vector&, const Vector& xi) { return 0.5 * xi.squaredNorm(); }});
}

LagrangianModel rigid_body() {
  return LagrangianModel(lie_algebra(so3_structure()),
                         {"rigid", [](const Vector&, const Vector& w) {
                            return 0.5 * (w[0] * w[0] + 2 * w[1] * w[1] + 3 * w[2] * w[2]);
                          }});
}

// (theta, r) polar coordinates with a radial spring of unit stiffness.
std::shared_ptr<const LagrangianModel> central_force(double spring) {
  return std::make_shared<LagrangianModel>(
      tangent_bundle(2), LagrangianModel::Definition{"central", [spring](const Vector& q, const Vector& v) {
                                                       const double r = q[1];
                                                       return 0.5 * (v[1] * v[1] + r * r * v[0] * v[0]) -
                                                              0.5 * spring * r * r;
                                                     }});
}

}  // namespace

TEST_CASE("legendre") {
  CHECK(max_abs(legendre(free_particle(2), Vector::Zero(2), vec({3, -1})) - vec({3, -1})) <= 1e-9);
  CHECK(max_abs(legendre(rigid_body(), Vector(0), vec({1, 1, 1})) - vec({1, 2, 3})) <= 1e-9);
  const auto polar = central_force(0.0);
  CHECK(max_abs(legendre(*polar, vec({0, 2}), vec({1, 0})) - vec({4, 0})) <= 1e-8);
}

TEST_CASE("legendre uses analytic gradients when supplied") {
  const LagrangianModel l(tangent_bundle(1), {"ho", [](const Vector& q, const Vector& v) {
                                                return 0.5 * v[0] * v[0] - 0.5 * q[0] * q[0];
                                              },
                                              [](const Vector& q, const Vector&) { return Vector(-q); },
                                              [](const Vector&, const Vector& v) { return v; }});
  CHECK(legendre(l, vec({0.3}), vec({-1.25}))[0] == -1.25);
  CHECK(l.gradient_q(vec({0.3}), vec({1}))[0] == -0.3);
}

TEST_CASE("energy") {
  const LagrangianModel ho(tangent_bundle(1), {"ho", [](const Vector& q, const Vector& v) {
                                                 return 0.5 * v[0] * v[0] - 0.5 * q[0] * q[0];
                                               }});
  CHECK(energy(ho, vec({1}), vec({0})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(energy(ho, vec({0.7}), vec({0})) == doctest::Approx(-ho.value(vec({0.7}), vec({0}))).epsilon(1e-12));
  CHECK(energy(rigid_body(), Vector(0), vec({1, 1, 1})) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("mass_matrix") {
  const MassMatrix id = mass_matrix(free_particle(3), Vector::Zero(3), vec({1, 2, 3}));
  CHECK(max_abs(id.matrix - Matrix::Identity(3, 3)) <= 1e-6);
  CHECK(id.condition == doctest::Approx(1.0).epsilon(1e-5));

  const MassMatrix polar = mass_matrix(*central_force(0.0), vec({0, 2}), vec({1, 0}));
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 4.0;
  expected(1, 1) = 1.0;
  CHECK(max_abs(polar.matrix - expected) <= 1e-5);
  CHECK(polar.condition == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(polar.matrix.isApprox(polar.matrix.transpose()));
}

TEST_CASE("linear Lagrangian is degenerate") {
  const LagrangianModel linear(tangent_bundle(1), {"linear", [](const Vector&, const Vector& v) { return v[0]; }});
  CHECK_THROWS_AS(mass_matrix(linear, vec({0}), vec({1})), RegularityError);
  try {
    mass_matrix(linear, vec({0.5}), vec({1}));
  } catch (const RegularityError& e) {
    CHECK(std::string(e.what()).find("q=") != std::string::npos);
  }
}

TEST_CASE("condition_number") {
  CHECK(condition_number(Matrix::Identity(2, 2)) == doctest::Approx(1.0));
  CHECK(std::isinf(condition_number(Matrix::Zero(2, 2))));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1e-3;
  d(1, 1) = 10.0;
  CHECK(condition_number(d) == doctest::Approx(1e4));
}

TEST_CASE("check_gradients catches an inconsistent analytic gradient") {
  const LagrangianModel good(tangent_bundle(2), {"good",
                                                 [](const Vector& q, const Vector& v) { return q[0] * v[1] + v.squaredNorm(); },
                                                 [](const Vector&, const Vector& v) { return vec({v[1], 0.0}); },
                                                 [](const Vector& q, const Vector& v) { return vec({2 * v[0], q[0] + 2 * v[1]}); }});
  const GradientConsistency g = check_gradients(good, vec({0.4, -0.2}), vec({1.0, 0.5}));
  CHECK(g.grad_q_error <= 1e-8);
  CHECK(g.grad_xi_error <= 1e-8);

  const LagrangianModel bad(tangent_bundle(2), {"bad",
                                                [](const Vector& q, const Vector& v) { return q[0] * v[1] + v.squaredNorm(); },
                                                [](const Vector&, const Vector&) { return vec({0.0, 0.0}); },
                                                [](const Vector& q, const Vector& v) { return vec({2 * v[0], q[0] + 2 * v[1]}); }});
  CHECK(check_gradients(bad, vec({0.4, -0.2}), vec({1.0, 0.5})).grad_q_error >= 0.4);
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(free_particle(2).value(Vector::Zero(3), Vector::Zero(2)), InputError);
  CHECK_THROWS_AS(legendre(free_particle(2), Vector::Zero(2), Vector::Zero(1)), InputError);
  CHECK_THROWS_AS(LagrangianModel(tangent_bundle(1), {"empty", {}}), InputError);
}

TEST_CASE("make_routhian: central force at x = 1") {
  const auto full = central_force(1.0);
  const LagrangianModel r = make_routhian({full, 1, vec({1.0}), vec({1.0})});
  CHECK(r.algebroid().base_dim() == 2);
  CHECK(r.algebroid().fiber_dim() == 1);
  Gen gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double radius = gen.uniform(0.5, 2.0);
    const double r_dot = gen.uniform(-1.0, 1.0);
    const double expected = 0.5 * r_dot * r_dot - 1.0 / (2 * radius * radius) - 0.5 * radius * radius;
    CHECK(r.value(vec({1.0, radius}), vec({r_dot})) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("make_routhian: free particle and zero momentum") {
  const auto free = std::make_shared<LagrangianModel>(free_particle(2));
  const LagrangianModel r = make_routhian({free, 1, vec({2.0}), vec({0.0})});
  CHECK(r.value(vec({2.0, 0.3}), vec({0.5})) == doctest::Approx(0.5 * 0.25 - 2.0).epsilon(1e-12));

  const auto full = central_force(1.0);
  const LagrangianModel zero = make_routhian({full, 1, vec({0.0}), vec({0.3})});
  const double y = 1.3, y_dot = -0.4;
  CHECK(zero.value(vec({0.0, y}), vec({y_dot})) ==
        doctest::Approx(full->value(vec({0.0, y}), vec({0.0, y_dot}))).epsilon(1e-12));
}

TEST_CASE("solve_cyclic_velocity") {
  const auto free = std::make_shared<LagrangianModel>(free_particle(2));
  const CyclicVelocity quadratic = solve_cyclic_velocity(*free, 1, vec({2.0}), vec({0.0}), vec({0.0}), vec({0.0}));
  CHECK(quadratic.theta_dot[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(quadratic.iterations <= 2);

  const auto full = central_force(1.0);
  const CyclicVelocity polar = solve_cyclic_velocity(*full, 1, vec({1.0}), vec({1.2}), vec({0.0}), vec({0.5}));
  // Value-only model: the momentum solve stops at the difference-quotient tolerance.
  CHECK(polar.theta_dot[0] == doctest::Approx(1.0 / 1.44).epsilon(1e-8));

  // r = 0 makes dL/dthetadot independent of thetadot.
  CHECK_THROWS_AS(solve_cyclic_velocity(*full, 1, vec({1.0}), vec({0.0}), vec({0.0}), vec({0.5})), RegularityError);
}

TEST_CASE("make_routhian rejects a non-cyclic Lagrangian") {
  const auto coupled = std::make_shared<LagrangianModel>(
      tangent_bundle(2), LagrangianModel::Definition{"coupled", [](const Vector& q, const Vector& v) {
                                                       return 0.5 * v.squaredNorm() - 0.5 * q[0] * q[0];
                                                     }});
  CHECK_THROWS_AS(make_routhian({coupled, 1, vec({1.0}), vec({0.0})}), InputError);
  CHECK(cyclicity_residual(*coupled, 1, {{vec({1.0, 0.0}), vec({0.0, 0.0})}}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Routhian gradients match differences of the constrained value") {
  const auto full = central_force(1.0);
  const LagrangianModel r = make_routhian({full, 1, vec({0.8}), vec({1.0})});
  Gen gen(99);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector q = vec({0.8, gen.uniform(0.6, 1.8)});
    const Vector xi = vec({gen.uniform(-1, 1)});
    const Vector gq = fd::gradient([&](const Vector& z) { return r.value(z, xi); }, q, 1e-5);
    const Vector gx = fd::gradient([&](const Vector& z) { return r.value(q, z); }, xi, 1e-5);
    CHECK(max_abs(r.gradient_q(q, xi) - gq) <= 1e-7);
    CHECK(max_abs(r.gradient_xi(q, xi) - gx) <= 1e-7);
    // dR/dx = -thetadot = -x / r^2 in closed form.
    CHECK(r.gradient_q(q, xi)[0] == doctest::Approx(-0.8 / (q[1] * q[1])).epsilon(1e-8));
  }
}

TEST_CASE("property: Hessian fallbacks are symmetric") {
  Gen gen(7);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = gen.uniform(0.5, 2.0), b = gen.uniform(-0.5, 0.5);
    const LagrangianModel l(tangent_bundle(2), {"poly", [a, b](const Vector& q, const Vector& v) {
                                                  return 0.5 * a * v[0] * v[0] + b * v[0] * v[1] * q[0] + v[1] * v[1] +
                                                         q[1] * v[0] * v[1] * v[1];
                                                }});
    const Vector q = gen.vector(2, -0.5, 0.5), v = gen.vector(2, -1, 1);
    const Matrix h = l.hessian_xi_xi(q, v);
    CHECK(h == h.transpose());
    CHECK(check_gradients(l, q, v).hessian_asymmetry <= 1e-12);
  }
}
