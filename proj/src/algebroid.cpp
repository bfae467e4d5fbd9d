#include "algebromech/algebroid.hpp"

#include <sstream>

#include "algebromech/errors.hpp"
#include "algebromech/finite_difference.hpp"

namespace algebromech {

bool ChartBox::contains(const Vector& q) const {
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (!(q[i] >= lower[i] && q[i] <= upper[i])) return false;
  return true;
}

AlgebroidModel::AlgebroidModel(Definition def) : def_(std::move(def)) {
  if (def_.base_dim < 0) throw InputError("algebroid '" + def_.label + "': base_dim must be >= 0");
  if (def_.fiber_dim < 1) throw InputError("algebroid '" + def_.label + "': fiber_dim must be >= 1");
  if (!def_.anchor || !def_.structure)
    throw InputError("algebroid '" + def_.label + "': anchor and structure functions are required");
  if (def_.chart && (def_.chart->lower.size() != def_.base_dim || def_.chart->upper.size() != def_.base_dim))
    throw InputError("algebroid '" + def_.label + "': chart box has wrong dimension");
}

void AlgebroidModel::require_base_point(const Vector& q) const {
  if (q.size() != def_.base_dim) {
    std::ostringstream msg;
    msg << "algebroid '" << def_.label << "': base point has length " << q.size() << ", expected n=" << def_.base_dim;
    throw InputError(msg.str());
  }
}

double AlgebroidModel::default_step(const Vector& q) const {
  const double rel = def_.fd_relative_step > 0.0 ? def_.fd_relative_step : fd::relative_step();
  return fd::step_for(q, rel);
}

Matrix AlgebroidModel::anchor(const Vector& q) const {
  require_base_point(q);
  Matrix rho = def_.anchor(q);
  if (rho.rows() != def_.base_dim || rho.cols() != def_.fiber_dim)
    throw InputError("algebroid '" + def_.label + "': anchor function returned wrong shape");
  return rho;
}

StructureTensor AlgebroidModel::structure(const Vector& q) const {
  require_base_point(q);
  StructureTensor c = def_.structure(q);
  if (c.dim() != def_.fiber_dim)
    throw InputError("algebroid '" + def_.label + "': structure function returned wrong dimension");
  return c;
}

std::vector<Matrix> AlgebroidModel::anchor_derivative(const Vector& q, std::optional<double> step) const {
  require_base_point(q);
  if (def_.anchor_jacobian) return def_.anchor_jacobian(q);
  const double h = step.value_or(default_step(q));
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(def_.base_dim));
  Vector probe = q;
  for (int j = 0; j < def_.base_dim; ++j) {
    probe[j] = q[j] + h;
    const Matrix plus = def_.anchor(probe);
    probe[j] = q[j] - h;
    const Matrix minus = def_.anchor(probe);
    probe[j] = q[j];
    out.push_back((plus - minus) / (2.0 * h));
  }
  return out;
}

std::vector<StructureTensor> AlgebroidModel::structure_derivative(const Vector& q, std::optional<double> step) const {
  require_base_point(q);
  if (def_.structure_jacobian) return def_.structure_jacobian(q);
  const double h = step.value_or(default_step(q));
  std::vector<StructureTensor> out;
  out.reserve(static_cast<std::size_t>(def_.base_dim));
  Vector probe = q;
  for (int i = 0; i < def_.base_dim; ++i) {
    probe[i] = q[i] + h;
    StructureTensor plus = def_.structure(probe);
    probe[i] = q[i] - h;
    StructureTensor minus = def_.structure(probe);
    probe[i] = q[i];
    minus *= -1.0;
    plus += minus;
    plus *= 1.0 / (2.0 * h);
    out.push_back(std::move(plus));
  }
  return out;
}

StructureResiduals check_structure_identities(const AlgebroidModel& model, const Vector& q, double fd_step) {
  if (!(fd_step > 0.0)) throw InputError("check_structure_identities: fd_step must be positive");
  const int n = model.base_dim();
  const int m = model.fiber_dim();
  const Matrix rho = model.anchor(q);
  const StructureTensor c = model.structure(q);
  const std::vector<Matrix> drho = model.anchor_derivative(q, fd_step);
  const std::vector<StructureTensor> dc = model.structure_derivative(q, fd_step);

  StructureResiduals r;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) r.antisymmetry = std::max(r.antisymmetry, std::abs(c(k, i, j) + c(k, j, i)));

  for (int ii = 0; ii < m; ++ii)
    for (int jj = 0; jj < m; ++jj)
      for (int i = 0; i < n; ++i) {
        double v = 0.0;
        for (int j = 0; j < n; ++j) v += rho(j, ii) * drho[j](i, jj) - rho(j, jj) * drho[j](i, ii);
        for (int k = 0; k < m; ++k) v -= rho(i, k) * c(k, ii, jj);
        r.anchor_compat = std::max(r.anchor_compat, std::abs(v));
      }

  // [e_I, [e_J, e_K]] component along e_N.
  auto nested = [&](int a, int b, int d, int nn) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += rho(i, a) * dc[i](nn, b, d);
    for (int mm = 0; mm < m; ++mm) v += c(nn, a, mm) * c(mm, b, d);
    return v;
  };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int d = 0; d < m; ++d)
        for (int nn = 0; nn < m; ++nn) {
          const double v = nested(a, b, d, nn) + nested(b, d, a, nn) + nested(d, a, b, nn);
          r.jacobi = std::max(r.jacobi, std::abs(v));
        }
  return r;
}

StructureResiduals check_lie_algebra(const StructureTensor& c) {
  AlgebroidModel probe({"probe", 0, c.dim(), [m = c.dim()](const Vector&) { return Matrix(0, m); },
                        [c](const Vector&) { return c; }, [](const Vector&) { return std::vector<Matrix>{}; },
                        [](const Vector&) { return std::vector<StructureTensor>{}; }});
  return check_structure_identities(probe, Vector(0), 1.0);
}

namespace {

AlgebroidModel::AnchorJacobianFn zero_anchor_jacobian(int n, int m) {
  return [n, m](const Vector&) { return std::vector<Matrix>(static_cast<std::size_t>(n), Matrix::Zero(n, m)); };
}

AlgebroidModel::StructureJacobianFn zero_structure_jacobian(int n, int m) {
  return [n, m](const Vector&) { return std::vector<StructureTensor>(static_cast<std::size_t>(n), StructureTensor(m)); };
}

void validate_algebra(const StructureTensor& c, const std::string& label) {
  const StructureResiduals r = check_lie_algebra(c);
  if (r.antisymmetry > 1e-12) throw ConstructionError(label + ": structure constants are not antisymmetric");
  if (r.jacobi > 1e-12) throw ConstructionError(label + ": structure constants violate the Jacobi identity");
}

}  // namespace

AlgebroidPtr tangent_bundle(int n) {
  if (n < 1) throw InputError("tangent_bundle: n must be >= 1");
  return std::make_shared<AlgebroidModel>(AlgebroidModel::Definition{
      "tangent_bundle(" + std::to_string(n) + ")", n, n, [n](const Vector&) { return Matrix::Identity(n, n); },
      [n](const Vector&) { return StructureTensor(n); }, zero_anchor_jacobian(n, n), zero_structure_jacobian(n, n)});
}

AlgebroidPtr lie_algebra(const StructureTensor& c, std::string label) {
  if (c.dim() < 1) throw InputError("lie_algebra: dimension must be >= 1");
  validate_algebra(c, label);
  const int m = c.dim();
  return std::make_shared<AlgebroidModel>(AlgebroidModel::Definition{
      std::move(label), 0, m, [m](const Vector&) { return Matrix(0, m); }, [c](const Vector&) { return c; },
      zero_anchor_jacobian(0, m), zero_structure_jacobian(0, m)});
}

AlgebroidPtr vertical_bundle(int k, int m) {
  if (k < 0 || m < 1) throw InputError("vertical_bundle: need k >= 0 and m >= 1");
  const int n = k + m;
  Matrix rho = Matrix::Zero(n, m);
  rho.bottomRows(m).setIdentity();
  return std::make_shared<AlgebroidModel>(AlgebroidModel::Definition{
      "vertical_bundle(" + std::to_string(k) + "," + std::to_string(m) + ")", n, m,
      [rho](const Vector&) { return rho; }, [m](const Vector&) { return StructureTensor(m); },
      zero_anchor_jacobian(n, m), zero_structure_jacobian(n, m)});
}

AlgebroidPtr atiyah_trivial(int base_dim, const StructureTensor& fiber_algebra, ConnectionFn connection,
                            ConnectionJacobianFn connection_jacobian, std::string label) {
  if (base_dim < 1) throw InputError("atiyah_trivial: base_dim must be >= 1");
  if (!connection) throw InputError("atiyah_trivial: connection form is required");
  const int d = fiber_algebra.dim();
  if (d < 1) throw InputError("atiyah_trivial: fiber algebra dimension must be >= 1");
  validate_algebra(fiber_algebra, label + " fiber algebra");
  const int n = base_dim;
  const int m = n + d;

  Matrix rho = Matrix::Zero(n, m);
  rho.leftCols(n).setIdentity();

  const double rel = fd::relative_step();
  auto omega_derivative = [connection, connection_jacobian, n, rel](const Vector& x) {
    if (connection_jacobian) return connection_jacobian(x);
    const double h = fd::step_for(x, rel);
    std::vector<Matrix> out;
    Vector probe = x;
    for (int j = 0; j < n; ++j) {
      probe[j] = x[j] + h;
      const Matrix plus = connection(probe);
      probe[j] = x[j] - h;
      const Matrix minus = connection(probe);
      probe[j] = x[j];
      out.push_back((plus - minus) / (2.0 * h));
    }
    return out;
  };

  const StructureTensor c = fiber_algebra;
  auto structure = [=](const Vector& x) {
    const Matrix w = connection(x);
    if (w.rows() != d || w.cols() != n) throw InputError("atiyah_trivial: connection form has wrong shape");
    const std::vector<Matrix> dw = omega_derivative(x);
    StructureTensor out(m);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int a = 0; a < d; ++a) {
          double curvature = dw[i](a, j) - dw[j](a, i);
          for (int b = 0; b < d; ++b)
            for (int e = 0; e < d; ++e) curvature -= c(a, b, e) * w(b, i) * w(e, j);
          out(n + a, i, j) = -curvature;
          out(n + a, j, i) = curvature;
        }
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double v = 0.0;
          for (int e = 0; e < d; ++e) v -= c(b, e, a) * w(e, i);
          out(n + b, i, n + a) = v;
          out(n + b, n + a, i) = -v;
        }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) out(n + e, n + a, n + b) = c(e, a, b);
    return out;
  };

  return std::make_shared<AlgebroidModel>(AlgebroidModel::Definition{
      std::move(label), n, m, [rho](const Vector&) { return rho; }, std::move(structure), zero_anchor_jacobian(n, m),
      {}});
}

}  // namespace algebromech
