// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "algebromech/catalog.hpp"
#include "algebromech/commands.hpp"
#include "algebromech/diagnostics.hpp"
#include "algebromech/reduction.hpp"

using namespace algebromech;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [violated]");
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Polynomial in z = (q, xi) with exact derivatives; the oracle for criterion 1.
class Polynomial {
public:
  struct Term {
    double coef;
    std::vector<int> powers;
  };

  explicit Polynomial(int vars) : vars_(vars) {}
  void add(Term t) { terms_.push_back(std::move(t)); }

  double value(const Vector& z) const {
    double sum = 0.0;
    for (const Term& t : terms_) sum += t.coef * monomial(t.powers, z, -1, -1);
    return sum;
  }
  double d1(const Vector& z, int i) const {
    double sum = 0.0;
    for (const Term& t : terms_)
      if (t.powers[i] > 0) sum += t.coef * t.powers[i] * monomial(t.powers, z, i, -1);
    return sum;
  }
  double d2(const Vector& z, int i, int j) const {
    double sum = 0.0;
    for (const Term& t : terms_) {
      if (i == j) {
        if (t.powers[i] >= 2) sum += t.coef * t.powers[i] * (t.powers[i] - 1) * monomial(t.powers, z, i, i);
      } else if (t.powers[i] > 0 && t.powers[j] > 0) {
        sum += t.coef * t.powers[i] * t.powers[j] * monomial(t.powers, z, i, j);
      }
    }
    return sum;
  }

private:
  // prod z_k^p_k with the exponents of `a` and `b` lowered by one.
  double monomial(const std::vector<int>& powers, const Vector& z, int a, int b) const {
    double v = 1.0;
    for (int k = 0; k < vars_; ++k) {
      int p = powers[static_cast<std::size_t>(k)] - (k == a) - (k == b);
      for (; p > 0; --p) v *= z[k];
    }
    return v;
  }

  int vars_;
  std::vector<Term> terms_;
};

// Gaussian elimination with partial pivoting, written out for the oracle.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

Outcome criterion_el_oracle() {
  Outcome out;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = trial % 4 + 1;
    const int vars = 2 * n;
    auto poly = std::make_shared<Polynomial>(vars);
    for (int k = 0; k < n; ++k) {
      std::vector<int> p(static_cast<std::size_t>(vars), 0);
      p[static_cast<std::size_t>(n + k)] = 2;
      poly->add({0.5, p});  // kinetic part |xi|^2 / 2
    }
    const int terms = 4 + trial % 5;
    for (int t = 0; t < terms; ++t) {
      std::vector<int> p(static_cast<std::size_t>(vars), 0);
      const int degree = 1 + static_cast<int>(rng() % 4);
      for (int d = 0; d < degree; ++d) ++p[rng() % static_cast<std::size_t>(vars)];
      poly->add({0.1 * u(rng), p});
    }
    auto join = [n](const Vector& q, const Vector& xi) {
      Vector z(2 * n);
      z << q, xi;
      return z;
    };
    LagrangianModel::Definition def;
    def.label = "polynomial";
    def.value = [=](const Vector& q, const Vector& xi) { return poly->value(join(q, xi)); };
    def.grad_q = [=](const Vector& q, const Vector& xi) {
      Vector g(n);
      for (int i = 0; i < n; ++i) g[i] = poly->d1(join(q, xi), i);
      return g;
    };
    def.grad_xi = [=](const Vector& q, const Vector& xi) {
      Vector g(n);
      for (int i = 0; i < n; ++i) g[i] = poly->d1(join(q, xi), n + i);
      return g;
    };
    def.hess_xi_xi = [=](const Vector& q, const Vector& xi) {
      Matrix h(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = poly->d2(join(q, xi), n + i, n + j);
      return h;
    };
    def.hess_xi_q = [=](const Vector& q, const Vector& xi) {
      Matrix h(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = poly->d2(join(q, xi), n + i, j);
      return h;
    };
    const LagrangianModel lagrangian(tangent_bundle(n), def);

    for (int point = 0; point < 5; ++point) {
      Vector q(n), xi(n);
      for (int i = 0; i < n; ++i) {
        q[i] = 0.5 * u(rng);
        xi[i] = 0.5 * u(rng);
      }
      const StateRate rate = elp_rhs(lagrangian, {0.0, q, xi});
      // Ordinary Euler-Lagrange: M q_ddot = dL/dq - H q_dot with q_dot = xi.
      const Vector z = join(q, xi);
      std::vector<std::vector<double>> mass(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
      std::vector<double> rhs(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        double r = poly->d1(z, i);
        for (int j = 0; j < n; ++j) {
          mass[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = poly->d2(z, n + i, n + j);
          r -= poly->d2(z, n + i, j) * xi[j];
        }
        rhs[static_cast<std::size_t>(i)] = r;
      }
      const std::vector<double> q_ddot = solve_dense(mass, rhs);
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(rate.xi_dot[i] - q_ddot[static_cast<std::size_t>(i)]));
        worst = std::max(worst, std::abs(rate.q_dot[i] - xi[i]));
      }
    }
  }
  out.require(worst <= 1e-10, "max |elp - EL| = " + sci(worst) + " <= 1e-10 over 20 Lagrangians x 5 points");
  return out;
}

Outcome criterion_rigid_body() {
  Outcome out;
  const catalog::SystemBundle body = catalog::build("rigid_body", {{"I1", 1}, {"I2", 2}, {"I3", 3}});
  const State s0{0.0, Vector(0), vec({1, 1, 1})};
  const Trajectory run = integrate(*body.lagrangian, s0, 10.0, 1e-3);
  const Trajectory reference = integrate(*body.lagrangian, s0, 10.0, 1e-5);
  const DiagnosticsReport d = diagnostics(*body.lagrangian, run, body.invariants);
  double energy_drift = 0.0, casimir_drift = 0.0;
  for (const DriftStats& s : d.invariants) {
    if (s.name == "energy") energy_drift = s.max_rel;
    if (s.name == "casimir") casimir_drift = s.max_rel;
  }
  double deviation = 0.0;
  for (std::size_t k = 0; k < run.nodes.size(); ++k)
    deviation = std::max(deviation, max_abs(run.nodes[k].xi - reference.nodes[k * 100].xi));
  out.require(energy_drift <= 1e-8, "energy drift " + sci(energy_drift) + " <= 1e-8");
  out.require(casimir_drift <= 1e-8, "|I w|^2 drift " + sci(casimir_drift) + " <= 1e-8");
  out.require(deviation <= 1e-7, "deviation from dt=1e-5 reference " + sci(deviation) + " <= 1e-7");
  return out;
}

double rigid_chart_deviation(double dt) {
  const catalog::MorphismBundle mb = catalog::build_morphism("rigid_body_quotient", {{"I1", 1}, {"I2", 2}, {"I3", 3}});
  return reduce_compare(*mb.source.lagrangian, *mb.target.lagrangian, mb.morphism, mb.source.default_state, 2.0, dt)
      .max_deviation;
}

Outcome criterion_reduction() {
  Outcome out;
  const catalog::MorphismBundle cyclic = catalog::build_morphism("cyclic_quotient");
  const ComparisonReport c = reduce_compare(*cyclic.source.lagrangian, *cyclic.target.lagrangian, cyclic.morphism,
                                            cyclic.source.default_state, 10.0, 1e-3);
  out.require(c.max_deviation <= 1e-6, "cyclic_oscillator deviation " + sci(c.max_deviation) + " <= 1e-6");

  // integrate() aborts with a chart exit if theta leaves the box, so a result means the run stayed inside.
  const double rigid = rigid_chart_deviation(1e-4);
  out.require(rigid <= 1e-5, "rigid_body_chart deviation " + sci(rigid) + " <= 1e-5");

  const double floor = 1e-11;
  const std::vector<double> steps = {0.02, 0.01, 0.005};
  std::vector<double> devs;
  for (double dt : steps) devs.push_back(rigid_chart_deviation(dt));
  std::string ratios;
  bool ok = true;
  for (std::size_t k = 1; k < devs.size(); ++k) {
    const double ratio = devs[k - 1] / devs[k];
    ratios += (k > 1 ? ", " : "") + sci(ratio);
    if (devs[k] > floor && !(ratio >= 8.0 && ratio <= 32.0)) ok = false;
  }
  out.require(ok, "halving ratios " + ratios + " within [8, 32] above the 1e-11 floor");
  return out;
}

Outcome criterion_routh() {
  Outcome out;
  const catalog::SystemBundle cf = catalog::build("central_force_routh");
  const double r0 = 1.2;
  const RouthReport r = routh_compare(cf.lagrangian, 1, vec({1.0}), {0.0, vec({0.0, r0}), vec({1.0 / (r0 * r0), 0.0})}, 10.0, 1e-3);
  out.require(r.y_deviation <= 1e-6, "r0=1.2 y-deviation " + sci(r.y_deviation) + " <= 1e-6");
  out.require(r.momentum_drift <= 1e-10, "momentum drift " + sci(r.momentum_drift) + " <= 1e-10");

  const RouthReport circ = routh_compare(cf.lagrangian, 1, vec({1.0}), {0.0, vec({0.0, 1.0}), vec({1.0, 0.0})}, 10.0, 1e-3);
  double radius_error = circ.y_deviation;
  for (const State& s : circ.full.nodes) radius_error = std::max(radius_error, std::abs(s.q[1] - 1.0));
  for (const State& s : circ.reduced.nodes) radius_error = std::max(radius_error, std::abs(s.q[1] - 1.0));
  out.require(radius_error <= 1e-8, "circular orbit |r - 1| " + sci(radius_error) + " <= 1e-8");
  return out;
}

Outcome criterion_wong() {
  Outcome out;
  const catalog::SystemBundle wong = catalog::build("wong_abelian", {{"B", 1.0}});
  const State s0{0.0, vec({0.0, 0.0}), vec({1.0, 0.0, 1.0})};
  const Trajectory orbit = integrate(*wong.lagrangian, s0, 2.0 * std::numbers::pi, 1e-4);
  const double closure = (orbit.nodes.back().q - s0.q).norm();
  double radius_error = 0.0;
  for (const State& s : orbit.nodes) radius_error = std::max(radius_error, std::abs((s.q - vec({0.0, -1.0})).norm() - 1.0));
  out.require(closure <= 1e-6, "|x(2 pi) - x(0)| " + sci(closure) + " <= 1e-6");
  out.require(radius_error <= 1e-6, "radius error " + sci(radius_error) + " <= 1e-6");

  const Trajectory longer = integrate(*wong.lagrangian, s0, 10.0, 1e-4);
  double charge_drift = 0.0;
  for (const State& s : longer.nodes) charge_drift = std::max(charge_drift, std::abs(s.xi[2] - s0.xi[2]));
  out.require(charge_drift <= 1e-10, "charge drift " + sci(charge_drift) + " <= 1e-10 over t=10");
  return out;
}

Outcome criterion_hamilton_pontryagin() {
  Outcome out;
  double deviation = 0.0, constraint = 0.0;
  for (const char* name : {"harmonic_oscillator", "rigid_body"}) {
    const catalog::SystemBundle sys = catalog::build(name);
    const State s0 = sys.default_state;
    const Trajectory elp = integrate(*sys.lagrangian, s0, 10.0, 1e-3);
    const PontryaginTrajectory hp =
        hp_integrate(*sys.lagrangian, {0.0, s0.q, s0.xi, legendre(*sys.lagrangian, s0.q, s0.xi)}, 10.0, 1e-3);
    for (std::size_t k = 0; k < elp.nodes.size(); ++k) {
      const State& a = elp.nodes[k];
      const PontryaginState& b = hp.nodes[k];
      deviation = std::max(deviation, max_abs(a.q - b.q));
      deviation = std::max(deviation, max_abs(a.xi - b.v));
      deviation = std::max(deviation, max_abs(legendre(*sys.lagrangian, a.q, a.xi) - b.p));
      constraint = std::max(constraint, hp.constraint_residual[k]);
    }
  }
  out.require(deviation <= 1e-8, "HP vs Legendre-mapped ELP " + sci(deviation) + " <= 1e-8");
  out.require(constraint <= 1e-10, "constraint residual " + sci(constraint) + " <= 1e-10 at every node");

  const catalog::MorphismBundle mb = catalog::build_morphism("rigid_body_quotient");
  const State s0 = mb.source.default_state;
  const PontryaginState p0{0.0, s0.q, s0.xi, legendre(*mb.source.lagrangian, s0.q, s0.xi)};
  const ComparisonReport r = hp_reduce_compare(*mb.source.lagrangian, *mb.target.lagrangian, mb.morphism, p0, 2.0, 1e-4);
  out.require(r.max_deviation <= 1e-5, "hp_reduce_compare rigid body " + sci(r.max_deviation) + " <= 1e-5");
  return out;
}

// b(t) = sum_k a_k sin(k pi s), s = (t - t0) / T; vanishes at both ends.
VariationField random_field(std::mt19937_64& rng, int m, double t0, double span) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vector> amplitudes;
  for (int k = 1; k <= 3; ++k) {
    Vector a(m);
    for (int i = 0; i < m; ++i) a[i] = u(rng) / k;
    amplitudes.push_back(a);
  }
  auto b = [=](double t) {
    Vector v = Vector::Zero(m);
    for (std::size_t k = 0; k < amplitudes.size(); ++k)
      v += amplitudes[k] * std::sin(static_cast<double>(k + 1) * std::numbers::pi * (t - t0) / span);
    return v;
  };
  auto b_dot = [=](double t) {
    Vector v = Vector::Zero(m);
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
      const double w = static_cast<double>(k + 1) * std::numbers::pi / span;
      v += amplitudes[k] * w * std::cos(w * (t - t0));
    }
    return v;
  };
  return {b, b_dot};
}

Outcome criterion_stationarity() {
  Outcome out;
  std::mt19937_64 rng(7);
  const double t_final = 1.0, dt = 1e-2;
  double worst_ratio = 0.0;
  double min_bound_ratio = 1e300, max_bound_ratio = 0.0;
  int checks = 0;
  for (const catalog::Entry& entry : catalog::list()) {
    const catalog::SystemBundle sys = catalog::build(entry.name);
    const Trajectory coarse = integrate(*sys.lagrangian, sys.default_state, t_final, dt);
    const Trajectory fine = integrate(*sys.lagrangian, sys.default_state, t_final, dt / 2);
    for (int f = 0; f < 10; ++f) {
      const VariationField b = random_field(rng, sys.algebroid->fiber_dim(), 0.0, t_final);
      for (const Trajectory* traj : {&coarse, &fine}) {
        const double ds = std::abs(action_stationarity(*sys.lagrangian, *traj, b));
        worst_ratio = std::max(worst_ratio, ds / stationarity_tolerance(*traj, b));
        ++checks;
      }
      const double bound_ratio = stationarity_tolerance(coarse, b) / stationarity_tolerance(fine, b);
      min_bound_ratio = std::min(min_bound_ratio, bound_ratio);
      max_bound_ratio = std::max(max_bound_ratio, bound_ratio);
    }
  }
  out.require(worst_ratio <= 1.0, "max |dS| / bound " + sci(worst_ratio) + " <= 1 over " + std::to_string(checks) +
                                      " (system, field, dt) cases");
  out.require(min_bound_ratio >= 3.9 && max_bound_ratio <= 4.1,
              "bound ratio under halving in [" + sci(min_bound_ratio) + ", " + sci(max_bound_ratio) + "] ~ 4");

  const catalog::SystemBundle ho = catalog::build("harmonic_oscillator");
  Trajectory perturbed = integrate(*ho.lagrangian, ho.default_state, t_final, 1e-3);
  for (State& s : perturbed.nodes) s.xi[0] += 0.1 * std::cos(std::numbers::pi * s.t / t_final);
  const VariationField aligned{
      [=](double t) { return vec({std::sin(std::numbers::pi * t / t_final)}); },
      [=](double t) { return vec({std::numbers::pi / t_final * std::cos(std::numbers::pi * t / t_final)}); }};
  const double ds = std::abs(action_stationarity(*ho.lagrangian, perturbed, aligned));
  out.require(ds >= 1e-3, "perturbed non-solution |dS| " + sci(ds) + " >= 1e-3");
  return out;
}

Outcome criterion_structure_identities() {
  Outcome out;
  const double fd_step = 1e-5;
  double analytic_worst = 0.0, fd_worst = 0.0;
  int analytic_models = 0, fd_models = 0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  auto sweep = [&](const AlgebroidModel& model, const Vector& lo, const Vector& hi) {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      Vector q = lo;
      for (Eigen::Index i = 0; i < q.size(); ++i) q[i] += u(rng) * (hi[i] - lo[i]);
      worst = std::max(worst, check_structure_identities(model, q, fd_step).max());
    }
    if (model.has_analytic_jacobians()) {
      analytic_worst = std::max(analytic_worst, worst);
      ++analytic_models;
    } else {
      fd_worst = std::max(fd_worst, worst);
      ++fd_models;
    }
  };
  for (const catalog::Entry& entry : catalog::list()) {
    const catalog::SystemBundle sys = catalog::build(entry.name);
    sweep(*sys.algebroid, sys.samples.q_lower, sys.samples.q_upper);
  }
  // Non-flat so(3) connection with a cubic term.
  const auto so3 = atiyah_trivial(
      2, so3_structure(),
      [](const Vector& x) {
        Matrix w(3, 2);
        w << x[0] * x[1], 0.5 - x[1], x[0] * x[0] * x[1], 0.3 * x[0], -0.5 * x[1], 0.5 * x[0];
        return w;
      },
      [](const Vector& x) {
        Matrix d0(3, 2), d1(3, 2);
        d0 << x[1], 0.0, 2.0 * x[0] * x[1], 0.3, 0.0, 0.5;
        d1 << x[0], -1.0, x[0] * x[0], 0.0, -0.5, 0.0;
        return std::vector<Matrix>{d0, d1};
      });
  sweep(*so3, Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));

  out.require(analytic_worst <= 1e-12, std::to_string(analytic_models) + " analytic models, max residual " +
                                           sci(analytic_worst) + " <= 1e-12");
  out.require(fd_worst <= 10 * fd_step * fd_step,
              std::to_string(fd_models) + " FD models, max residual " + sci(fd_worst) + " <= 1e-9");
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion_determinism() {
  Outcome out;
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "algebromech_acceptance";
  std::filesystem::create_directories(dir);
  bool identical = true;
  std::ostringstream log;
  for (const char* system : {"rigid_body", "wong_so3", "harmonic_oscillator"}) {
    for (cli::Formulation f : {cli::Formulation::elp, cli::Formulation::hp}) {
      cli::RunConfig c;
      c.system = system;
      c.t_final = 2.0;
      c.dt = 1e-3;
      c.seed = 12345;
      c.formulation = f;
      c.trajectory_path = (dir / "run.csv").string();
      c.report_path = (dir / "run.report").string();
      if (cli::cmd_run(c, log) != cli::kOk) identical = false;
      const std::string csv = slurp(c.trajectory_path), report = slurp(c.report_path);
      if (cli::cmd_run(c, log) != cli::kOk) identical = false;
      identical = identical && csv == slurp(c.trajectory_path) && report == slurp(c.report_path) && !csv.empty();
    }
  }
  cli::RunConfig cmp;
  cmp.system = "rigid_body_chart";
  cmp.t_final = 1.0;
  cmp.dt = 1e-3;
  cmp.seed = 99;
  cmp.report_path = (dir / "compare.report").string();
  cmp.trajectory_path = (dir / "compare.csv").string();
  cmp.compare = cli::CompareSection{cli::CompareKind::reduce, "rigid_body_quotient", 1e-5, std::nullopt, 1};
  cli::cmd_compare(cmp, log);
  const std::string first = slurp(cmp.report_path);
  cli::cmd_compare(cmp, log);
  identical = identical && first == slurp(cmp.report_path) && !first.empty();
  std::filesystem::remove_all(dir);
  out.require(identical, "two consecutive runs give byte-identical CSV and reports (6 runs, 1 compare)");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "EL-equivalence oracle", 5.0, criterion_el_oracle},
      {2, "Euler-Poincare rigid body", 10.0, criterion_rigid_body},
      {3, "reduction theorem", 30.0, criterion_reduction},
      {4, "Routh reduction", 10.0, criterion_routh},
      {5, "Wong's equations", 10.0, criterion_wong},
      {6, "Hamilton-Pontryagin equivalence", 20.0, criterion_hamilton_pontryagin},
      {7, "variational stationarity", 10.0, criterion_stationarity},
      {8, "structure identities", 5.0, criterion_structure_identities},
      {9, "determinism", 0.0, criterion_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
    std::string detail = outcome.detail + "; runtime " + timing;
    if (c.budget_s > 0.0) {
      char budget[32];
      std::snprintf(budget, sizeof budget, "%.0fs", c.budget_s);
      const bool in_time = elapsed < c.budget_s;
      detail += std::string(in_time ? " < " : " >= ") + budget + (in_time ? "" : " [violated]");
      outcome.pass = outcome.pass && in_time;
    }
    std::printf("criterion %d (%s): %s: %s\n", c.id, c.name, outcome.pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
