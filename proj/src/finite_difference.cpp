#include "algebromech/finite_difference.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

namespace algebromech::fd {

namespace {

std::optional<double> read_override() {
  if (const char* env = std::getenv("ALGEBROMECH_FD_STEP")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0 && std::isfinite(v)) return v;
    } catch (const std::exception&) {
      // ignored: invalid values keep the default
    }
  }
  return std::nullopt;
}

const std::optional<double>& override_value() {
  static const std::optional<double> value = read_override();
  return value;
}

}  // namespace

double relative_step() { return override_value().value_or(1e-6); }

double second_relative_step() { return std::pow(relative_step(), 2.0 / 3.0); }

bool step_overridden() { return override_value().has_value(); }

Vector gradient(const std::function<double(const Vector&)>& f, const Vector& x, double step) {
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double fp = f(probe);
    probe[i] = x[i] - step;
    const double fm = f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

Matrix jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double step) {
  Vector probe = x;
  Matrix jac;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const Vector fp = f(probe);
    probe[i] = x[i] - step;
    const Vector fm = f(probe);
    probe[i] = x[i];
    if (i == 0) jac.resize(fp.size(), x.size());
    jac.col(i) = (fp - fm) / (2.0 * step);
  }
  if (x.size() == 0) jac.resize(f(x).size(), 0);
  return jac;
}

Matrix hessian(const std::function<double(const Vector&)>& f, const Vector& x, double step) {
  const Eigen::Index n = x.size();
  Matrix h(n, n);
  Vector probe = x;
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < n; ++i) {
    probe[i] = x[i] + step;
    const double fp = f(probe);
    probe[i] = x[i] - step;
    const double fm = f(probe);
    probe[i] = x[i];
    h(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
    for (Eigen::Index j = 0; j < i; ++j) {
      double acc = 0.0;
      for (const auto& [si, sj] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}) {
        probe[i] = x[i] + si * step;
        probe[j] = x[j] + sj * step;
        acc += si * sj * f(probe);
      }
      probe[i] = x[i];
      probe[j] = x[j];
      h(i, j) = h(j, i) = acc / (4.0 * step * step);
    }
  }
  return h;
}

Matrix mixed_hessian(const std::function<double(const Vector&, const Vector&)>& f, const Vector& x, const Vector& y,
                     double step_x, double step_y) {
  Matrix h(x.size(), y.size());
  Vector px = x, py = y;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      double acc = 0.0;
      for (const auto& [si, sj] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}) {
        px[i] = x[i] + si * step_x;
        py[j] = y[j] + sj * step_y;
        acc += si * sj * f(px, py);
      }
      px[i] = x[i];
      py[j] = y[j];
      h(i, j) = acc / (4.0 * step_x * step_y);
    }
  return h;
}

}  // namespace algebromech::fd
