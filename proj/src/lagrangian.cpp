#include "algebromech/lagrangian.hpp"

#include <limits>
#include <sstream>

#include "algebromech/errors.hpp"
#include "algebromech/finite_difference.hpp"

namespace algebromech {

LagrangianModel::LagrangianModel(AlgebroidPtr algebroid, Definition def)
    : algebroid_(std::move(algebroid)), def_(std::move(def)) {
  if (!algebroid_) throw InputError("lagrangian '" + def_.label + "': algebroid is required");
  if (!def_.value) throw InputError("lagrangian '" + def_.label + "': value function is required");
}

void LagrangianModel::require_dims(const Vector& q, const Vector& xi) const {
  if (q.size() != algebroid_->base_dim() || xi.size() != algebroid_->fiber_dim()) {
    std::ostringstream msg;
    msg << "lagrangian '" << def_.label << "': got (q, xi) of lengths (" << q.size() << ", " << xi.size()
        << "), expected n=" << algebroid_->base_dim() << ", m=" << algebroid_->fiber_dim();
    throw InputError(msg.str());
  }
}

double LagrangianModel::value(const Vector& q, const Vector& xi) const {
  require_dims(q, xi);
  return def_.value(q, xi);
}

Vector LagrangianModel::gradient_q(const Vector& q, const Vector& xi) const {
  require_dims(q, xi);
  if (def_.grad_q) return def_.grad_q(q, xi);
  return fd::gradient([&](const Vector& qq) { return def_.value(qq, xi); }, q,
                      fd::step_for(q, fd::relative_step()));
}

Vector LagrangianModel::gradient_xi(const Vector& q, const Vector& xi) const {
  require_dims(q, xi);
  if (def_.grad_xi) return def_.grad_xi(q, xi);
  return fd::gradient([&](const Vector& xx) { return def_.value(q, xx); }, xi,
                      fd::step_for(xi, fd::relative_step()));
}

Matrix LagrangianModel::hessian_xi_xi(const Vector& q, const Vector& xi) const {
  require_dims(q, xi);
  if (def_.hess_xi_xi) return def_.hess_xi_xi(q, xi);
  if (!def_.grad_xi)
    return fd::hessian([&](const Vector& xx) { return def_.value(q, xx); }, xi,
                       fd::step_for(xi, fd::second_relative_step()));
  Matrix h = fd::jacobian([&](const Vector& xx) { return def_.grad_xi(q, xx); }, xi,
                          fd::step_for(xi, fd::relative_step()));
  return 0.5 * (h + h.transpose());
}

Matrix LagrangianModel::hessian_xi_q(const Vector& q, const Vector& xi) const {
  require_dims(q, xi);
  if (def_.hess_xi_q) return def_.hess_xi_q(q, xi);
  if (q.size() == 0) return Matrix(xi.size(), 0);
  if (!def_.grad_xi)
    return fd::mixed_hessian([&](const Vector& xx, const Vector& qq) { return def_.value(qq, xx); }, xi, q,
                             fd::step_for(xi, fd::second_relative_step()), fd::step_for(q, fd::second_relative_step()));
  return fd::jacobian([&](const Vector& qq) { return def_.grad_xi(qq, xi); }, q, fd::step_for(q, fd::relative_step()));
}

double LagrangianModel::newton_tolerance(const Vector& target) const {
  const double scale = std::max(1.0, max_abs(target));
  return (def_.grad_xi ? kNewtonTolerance : kFdNewtonTolerance) * scale;
}

Vector legendre(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi) {
  return lagrangian.gradient_xi(q, xi);
}

double energy(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi) {
  return legendre(lagrangian, q, xi).dot(xi) - lagrangian.value(q, xi);
}

double condition_number(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  const Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (smax == 0.0 || smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

MassMatrix mass_matrix(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi, double threshold) {
  MassMatrix out;
  out.matrix = lagrangian.hessian_xi_xi(q, xi);
  out.condition = condition_number(out.matrix);
  // A difference-quotient Hessian of a degenerate L is roundoff, not zero.
  if (!lagrangian.has_analytic_hessians() &&
      max_abs(out.matrix) <= 1e-6 * std::max(1.0, std::abs(lagrangian.value(q, xi))))
    out.condition = std::numeric_limits<double>::infinity();
  if (!(out.condition <= threshold)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lagrangian '" << lagrangian.label() << "' is not regular at q=[" << q.transpose() << "], xi=["
        << xi.transpose() << "] (mass matrix condition " << out.condition << ")";
    throw RegularityError(msg.str());
  }
  return out;
}

GradientConsistency check_gradients(const LagrangianModel& lagrangian, const Vector& q, const Vector& xi) {
  const double rel = fd::relative_step();
  const Vector gq = lagrangian.gradient_q(q, xi);
  const Vector gx = lagrangian.gradient_xi(q, xi);
  const Vector gq_fd = fd::gradient([&](const Vector& qq) { return lagrangian.value(qq, xi); }, q, fd::step_for(q, rel));
  const Vector gx_fd = fd::gradient([&](const Vector& xx) { return lagrangian.value(q, xx); }, xi, fd::step_for(xi, rel));

  GradientConsistency out;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    out.grad_q_error = std::max(out.grad_q_error, std::abs(gq[i] - gq_fd[i]) / std::max(1.0, std::abs(gq[i])));
  for (Eigen::Index i = 0; i < xi.size(); ++i)
    out.grad_xi_error = std::max(out.grad_xi_error, std::abs(gx[i] - gx_fd[i]) / std::max(1.0, std::abs(gx[i])));
  const Matrix h = lagrangian.hessian_xi_xi(q, xi);
  out.hessian_asymmetry = max_abs(Matrix(h - h.transpose()));
  return out;
}

}  // namespace algebromech
