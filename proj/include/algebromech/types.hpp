#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace algebromech {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Structure functions C^K_{IJ} of a Lie algebroid frame at one base point.
///
/// Index order is (K, I, J), output index first: `c(k, i, j)` is the
/// coefficient of e_K in [e_I, e_J]. This matches the contraction
/// C^K_{IJ} xi^J p_K appearing in the equations of motion.
class StructureTensor {
public:
  StructureTensor() = default;
  explicit StructureTensor(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }

  double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// Returns F_I = sum_{J,K} C^K_{IJ} xi^J p_K.
  Vector contract(const Vector& xi, const Vector& p) const {
    Vector out = Vector::Zero(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        if (xi[j] == 0.0) continue;
        double acc = 0.0;
        for (int k = 0; k < dim_; ++k) acc += (*this)(k, i, j) * p[k];
        out[i] += acc * xi[j];
      }
    return out;
  }

  /// Returns [a, b]^K = C^K_{IJ} a^I b^J.
  Vector bracket(const Vector& a, const Vector& b) const {
    Vector out = Vector::Zero(dim_);
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out[k] += (*this)(k, i, j) * a[i] * b[j];
    return out;
  }

  StructureTensor& operator+=(const StructureTensor& o) {
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
    return *this;
  }
  StructureTensor& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  bool operator==(const StructureTensor&) const = default;

private:
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * dim_ + i) * dim_ + j;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

/// Levi-Civita structure tensor of so(3): [e_I, e_J] = eps_{IJK} e_K.
inline StructureTensor so3_structure() {
  StructureTensor c(3);
  c(2, 0, 1) = 1.0;
  c(2, 1, 0) = -1.0;
  c(0, 1, 2) = 1.0;
  c(0, 2, 1) = -1.0;
  c(1, 2, 0) = 1.0;
  c(1, 0, 2) = -1.0;
  return c;
}

/// Max-norm of any dense vector or matrix expression; 0 when empty.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

}  // namespace algebromech
