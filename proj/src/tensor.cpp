#include "entanglib/tensor.hpp"

#include <cmath>

namespace entanglib {

Shape::Shape(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("Shape: no modes");
  size_ = 1;
  for (auto n : dims_) {
    if (n < 1) throw std::invalid_argument("Shape: dims must be >= 1");
    if (size_ > kMaxEntries / n)
      throw std::length_error("Shape: entry count exceeds 2^31");
    size_ *= n;
  }
  strides_.assign(dims_.size(), 1);
  for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k)
    strides_[k] = strides_[k + 1] * dims_[k + 1];
}

std::int64_t Shape::flat(const std::vector<std::int64_t>& idx) const {
  if (idx.size() != dims_.size())
    throw std::invalid_argument("Shape::flat: wrong index length");
  std::int64_t f = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dims_[k])
      throw std::out_of_range("Shape::flat: index out of range");
    f += idx[k] * strides_[k];
  }
  return f;
}

std::vector<std::int64_t> Shape::unflat(std::int64_t f) const {
  if (f < 0 || f >= size_) throw std::out_of_range("Shape::unflat");
  std::vector<std::int64_t> idx(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    idx[k] = f / strides_[k];
    f %= strides_[k];
  }
  return idx;
}

bool Shape::cubical() const {
  for (auto n : dims_)
    if (n != dims_[0]) return false;
  return true;
}

DenseTensor::DenseTensor(Shape shape, Vec entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  if (entries_.size() != shape_.size())
    throw std::invalid_argument("DenseTensor: entry count != N(shape)");
  for (Eigen::Index i = 0; i < entries_.size(); ++i)
    if (!std::isfinite(entries_[i].real()) || !std::isfinite(entries_[i].imag()))
      throw std::invalid_argument("DenseTensor: non-finite entry");
}

DenseTensor DenseTensor::zero(Shape shape) {
  Vec e = Vec::Zero(shape.size());
  return DenseTensor(std::move(shape), std::move(e));
}

bool DenseTensor::is_real(double tol) const {
  for (Eigen::Index i = 0; i < entries_.size(); ++i)
    if (std::abs(entries_[i].imag()) > tol) return false;
  return true;
}

DenseTensor DenseTensor::operator+(const DenseTensor& o) const {
  if (shape_ != o.shape_) throw std::invalid_argument("DenseTensor: shape mismatch");
  return DenseTensor(shape_, entries_ + o.entries_);
}

DenseTensor DenseTensor::operator-(const DenseTensor& o) const {
  if (shape_ != o.shape_) throw std::invalid_argument("DenseTensor: shape mismatch");
  return DenseTensor(shape_, entries_ - o.entries_);
}

cplx inner_product(const DenseTensor& x, const DenseTensor& y) {
  if (x.shape() != y.shape())
    throw std::invalid_argument("inner_product: shape mismatch");
  return x.entries().dot(y.entries());  // Eigen dot conjugates the first factor
}

DenseTensor rank_one(const std::vector<Vec>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("rank_one: no factors");
  std::vector<std::int64_t> dims;
  for (const auto& v : vectors) {
    if (v.size() == 0) throw std::invalid_argument("rank_one: empty factor");
    dims.push_back(v.size());
  }
  Shape shape(dims);
  Vec out = vectors[0];
  for (std::size_t j = 1; j < vectors.size(); ++j) {
    Vec next(out.size() * vectors[j].size());
    Eigen::Index p = 0;
    for (Eigen::Index a = 0; a < out.size(); ++a)
      for (Eigen::Index b = 0; b < vectors[j].size(); ++b)
        next[p++] = out[a] * vectors[j][b];
    out.swap(next);
  }
  return DenseTensor(std::move(shape), std::move(out));
}

Mat unfold(const DenseTensor& x, const std::vector<int>& left_modes) {
  const int d = x.order();
  std::vector<bool> is_left(static_cast<std::size_t>(d), false);
  for (int m : left_modes) {
    if (m < 0 || m >= d) throw std::invalid_argument("unfold: bad mode");
    if (is_left[static_cast<std::size_t>(m)])
      throw std::invalid_argument("unfold: repeated mode");
    is_left[static_cast<std::size_t>(m)] = true;
  }
  if (left_modes.empty() || static_cast<int>(left_modes.size()) == d)
    throw std::invalid_argument("unfold: left modes must be a nonempty proper subset");

  std::vector<int> left(left_modes), right;
  for (int k = 0; k < d; ++k)
    if (!is_left[static_cast<std::size_t>(k)]) right.push_back(k);

  std::int64_t rows = 1, cols = 1;
  for (int m : left) rows *= x.shape().dim(m);
  for (int m : right) cols *= x.shape().dim(m);

  Mat out(rows, cols);
  std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
  for (std::int64_t f = 0; f < x.shape().size(); ++f) {
    auto full = x.shape().unflat(f);
    std::int64_t r = 0, c = 0;
    for (int m : left) r = r * x.shape().dim(m) + full[static_cast<std::size_t>(m)];
    for (int m : right) c = c * x.shape().dim(m) + full[static_cast<std::size_t>(m)];
    out(r, c) = x.entries()[f];
  }
  return out;
}

DenseTensor tensor_product(const DenseTensor& x, const DenseTensor& y) {
  std::vector<std::int64_t> dims = x.shape().dims();
  dims.insert(dims.end(), y.shape().dims().begin(), y.shape().dims().end());
  Shape shape(dims);  // throws on capacity overflow
  Vec out(shape.size());
  Eigen::Index p = 0;
  for (Eigen::Index a = 0; a < x.entries().size(); ++a)
    for (Eigen::Index b = 0; b < y.entries().size(); ++b)
      out[p++] = x.entries()[a] * y.entries()[b];
  return DenseTensor(std::move(shape), std::move(out));
}

DenseTensor contract_mode(const DenseTensor& x, int mode, const Vec& v) {
  const int d = x.order();
  if (mode < 0 || mode >= d) throw std::invalid_argument("contract_mode: bad mode");
  if (v.size() != x.shape().dim(mode))
    throw std::invalid_argument("contract_mode: length mismatch");
  if (d == 1) throw std::invalid_argument("contract_mode: cannot contract to scalar");

  std::vector<std::int64_t> dims;
  for (int k = 0; k < d; ++k)
    if (k != mode) dims.push_back(x.shape().dim(k));
  Shape out_shape(dims);
  Vec out = Vec::Zero(out_shape.size());

  std::int64_t inner = 1;
  for (int k = mode + 1; k < d; ++k) inner *= x.shape().dim(k);
  const std::int64_t nk = x.shape().dim(mode);
  const std::int64_t outer = x.shape().size() / (inner * nk);

  Eigen::Index p = 0;
  for (std::int64_t a = 0; a < outer; ++a)
    for (std::int64_t c = 0; c < inner; ++c, ++p) {
      cplx acc = 0.0;
      const std::int64_t base = a * nk * inner + c;
      for (std::int64_t i = 0; i < nk; ++i)
        acc += std::conj(v[i]) * x.entries()[base + i * inner];
      out[p] = acc;
    }
  return DenseTensor(std::move(out_shape), std::move(out));
}

}  // namespace entanglib
