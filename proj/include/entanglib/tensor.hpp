#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace entanglib {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

enum class FieldTag { real, complex_ };

/// Mode dimensions (n_1,...,n_d) with row-major strides.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<std::int64_t> dims);

  int order() const { return static_cast<int>(dims_.size()); }
  std::int64_t dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  const std::vector<std::int64_t>& dims() const { return dims_; }
  std::int64_t size() const { return size_; }

  std::int64_t flat(const std::vector<std::int64_t>& idx) const;
  std::vector<std::int64_t> unflat(std::int64_t f) const;

  bool operator==(const Shape& o) const { return dims_ == o.dims_; }
  bool operator!=(const Shape& o) const { return !(*this == o); }

  bool cubical() const;

  static constexpr std::int64_t kMaxEntries = std::int64_t(1) << 31;

 private:
  std::vector<std::int64_t> dims_;
  std::vector<std::int64_t> strides_;
  std::int64_t size_ = 0;
};

/// Dense d-mode tensor over C^n with flat row-major storage.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(Shape shape, Vec entries);
  static DenseTensor zero(Shape shape);

  const Shape& shape() const { return shape_; }
  int order() const { return shape_.order(); }
  const Vec& entries() const { return entries_; }
  Vec& entries() { return entries_; }

  cplx at(const std::vector<std::int64_t>& idx) const {
    return entries_[shape_.flat(idx)];
  }
  cplx& at(const std::vector<std::int64_t>& idx) {
    return entries_[shape_.flat(idx)];
  }

  double norm() const { return entries_.norm(); }
  bool is_real(double tol = 0.0) const;

  DenseTensor conjugate() const { return DenseTensor(shape_, entries_.conjugate()); }
  DenseTensor& operator*=(cplx s) { entries_ *= s; return *this; }
  DenseTensor operator*(cplx s) const { return DenseTensor(shape_, entries_ * s); }
  DenseTensor operator+(const DenseTensor& o) const;
  DenseTensor operator-(const DenseTensor& o) const;

 private:
  Shape shape_;
  Vec entries_;
};

cplx inner_product(const DenseTensor& x, const DenseTensor& y);

DenseTensor rank_one(const std::vector<Vec>& vectors);

/// Unfold with the given modes as rows; Frobenius norm is preserved.
Mat unfold(const DenseTensor& x, const std::vector<int>& left_modes);

DenseTensor tensor_product(const DenseTensor& x, const DenseTensor& y);

/// Contract mode `mode` against conj(v): result has that mode removed.
DenseTensor contract_mode(const DenseTensor& x, int mode, const Vec& v);

}  // namespace entanglib
