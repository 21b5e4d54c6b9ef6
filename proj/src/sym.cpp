#include "entanglib/sym.hpp"

#include <algorithm>
#include <cmath>

namespace entanglib {

std::uint64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t c = 1;
  for (int i = 1; i <= b; ++i) {
    // c*(a-b+i) is divisible by i at every step
    std::uint64_t num;
    if (__builtin_mul_overflow(c, static_cast<std::uint64_t>(a - b + i), &num))
      throw std::overflow_error("binomial: exceeds 64 bits");
    c = num / static_cast<std::uint64_t>(i);
  }
  return c;
}

std::uint64_t multinomial(const MonomialIndex& j) {
  std::uint64_t c = 1;
  int s = 0;
  for (int jk : j) {
    if (jk < 0) throw std::invalid_argument("multinomial: negative exponent");
    s += jk;
    std::uint64_t bin = binomial(s, jk);
    std::uint64_t out;
    if (__builtin_mul_overflow(c, bin, &out))
      throw std::overflow_error("multinomial: exceeds 64 bits");
    c = out;
  }
  return c;
}

namespace {

void gen_J(int d, int n, MonomialIndex& cur, std::vector<MonomialIndex>& out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur.push_back(k);
    gen_J(d - k, n, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MonomialIndex> enumerate_J(int d, int n) {
  if (d < 1 || n < 1) throw std::invalid_argument("enumerate_J: d,n >= 1");
  std::vector<MonomialIndex> out;
  MonomialIndex cur;
  gen_J(d, n, cur, out);
  return out;
}

SymTensor::SymTensor(int n, int d, FieldTag field)
    : n_(n), d_(d), field_(field), support_(enumerate_J(d, n)) {
  coeffs_ = Vec::Zero(static_cast<Eigen::Index>(support_.size()));
}

SymTensor::SymTensor(int n, int d, Vec coeffs, FieldTag field)
    : n_(n), d_(d), field_(field), support_(enumerate_J(d, n)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<Eigen::Index>(support_.size()))
    throw std::invalid_argument("SymTensor: coefficient count != |J(d,n)|");
  if (field_ == FieldTag::real)
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i].imag() != 0.0)
        throw std::invalid_argument("SymTensor: real field with nonzero imaginary part");
}

int SymTensor::index_of(const MonomialIndex& j) const {
  // support_ is lexicographically descending
  auto it = std::lower_bound(support_.begin(), support_.end(), j,
                             [](const MonomialIndex& a, const MonomialIndex& b) {
                               return a > b;
                             });
  if (it == support_.end() || *it != j)
    throw std::invalid_argument("SymTensor: index not in J(d,n)");
  return static_cast<int>(it - support_.begin());
}

double hilbert_norm(const SymTensor& s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < s.support().size(); ++k) {
    double c = static_cast<double>(multinomial(s.support()[k]));
    acc += c * std::norm(s.coeffs()[static_cast<Eigen::Index>(k)]);
  }
  return std::sqrt(acc);
}

namespace {

MonomialIndex exponent_of(const std::vector<std::int64_t>& idx, int n) {
  MonomialIndex j(static_cast<std::size_t>(n), 0);
  for (auto i : idx) j[static_cast<std::size_t>(i)]++;
  return j;
}

}  // namespace

DenseTensor sym_to_dense(const SymTensor& s) {
  std::vector<std::int64_t> dims(static_cast<std::size_t>(s.d()),
                                 static_cast<std::int64_t>(s.n()));
  Shape shape(dims);
  Vec out(shape.size());
  for (std::int64_t f = 0; f < shape.size(); ++f) {
    auto idx = shape.unflat(f);
    out[f] = s.coeff(exponent_of(idx, s.n()));
  }
  return DenseTensor(std::move(shape), std::move(out));
}

SymTensor symmetrize(const DenseTensor& x, FieldTag field) {
  if (!x.shape().cubical())
    throw std::invalid_argument("symmetrize: tensor is not cubical");
  const int n = static_cast<int>(x.shape().dim(0));
  const int d = x.order();
  SymTensor s(n, d, FieldTag::complex_);
  std::vector<cplx> sums(s.support().size(), cplx(0, 0));
  for (std::int64_t f = 0; f < x.shape().size(); ++f) {
    auto idx = x.shape().unflat(f);
    MonomialIndex j = exponent_of(idx, n);
    sums[static_cast<std::size_t>(s.index_of(j))] += x.entries()[f];
  }
  Vec coeffs(static_cast<Eigen::Index>(sums.size()));
  for (std::size_t k = 0; k < sums.size(); ++k)
    coeffs[static_cast<Eigen::Index>(k)] =
        sums[k] / static_cast<double>(multinomial(s.support()[k]));
  return SymTensor(n, d, std::move(coeffs), field);
}

cplx eval_poly(const SymTensor& s, const Vec& x) {
  if (x.size() != s.n()) throw std::invalid_argument("eval_poly: wrong length");
  cplx acc = 0.0;
  for (std::size_t k = 0; k < s.support().size(); ++k) {
    const auto& j = s.support()[k];
    cplx mono = 1.0;
    for (int v = 0; v < s.n(); ++v)
      for (int t = 0; t < j[static_cast<std::size_t>(v)]; ++t) mono *= x[v];
    acc += static_cast<double>(multinomial(j)) *
           s.coeffs()[static_cast<Eigen::Index>(k)] * mono;
  }
  return acc;
}

Vec overlap_poly_coeffs(const SymTensor& s) {
  Vec a(s.coeffs().size());
  for (std::size_t k = 0; k < s.support().size(); ++k)
    a[static_cast<Eigen::Index>(k)] =
        static_cast<double>(multinomial(s.support()[k])) *
        std::conj(s.coeffs()[static_cast<Eigen::Index>(k)]);
  return a;
}

Vec to_orthonormal_coords(const SymTensor& s) {
  Vec v(s.coeffs().size());
  for (std::size_t k = 0; k < s.support().size(); ++k)
    v[static_cast<Eigen::Index>(k)] =
        std::sqrt(static_cast<double>(multinomial(s.support()[k]))) *
        s.coeffs()[static_cast<Eigen::Index>(k)];
  return v;
}

SymTensor from_orthonormal_coords(int n, int d, const Vec& coords, FieldTag field) {
  SymTensor s(n, d, field);
  if (coords.size() != s.coeffs().size())
    throw std::invalid_argument("from_orthonormal_coords: wrong length");
  Vec c(coords.size());
  for (std::size_t k = 0; k < s.support().size(); ++k)
    c[static_cast<Eigen::Index>(k)] =
        coords[static_cast<Eigen::Index>(k)] /
        std::sqrt(static_cast<double>(multinomial(s.support()[k])));
  return SymTensor(n, d, std::move(c), field);
}

BiSymTensor::BiSymTensor(int n, int d, bool hermitian_flag)
    : n_(n), d_(d), hermitian_(hermitian_flag), support_(enumerate_J(d, n)) {
  const auto sz = static_cast<Eigen::Index>(support_.size());
  coeffs_ = Mat::Zero(sz, sz);
}

BiSymTensor::BiSymTensor(int n, int d, Mat coeffs, bool hermitian_flag)
    : n_(n), d_(d), hermitian_(hermitian_flag), support_(enumerate_J(d, n)),
      coeffs_(std::move(coeffs)) {
  const auto sz = static_cast<Eigen::Index>(support_.size());
  if (coeffs_.rows() != sz || coeffs_.cols() != sz)
    throw std::invalid_argument("BiSymTensor: coefficient matrix size != |J|^2");
  if (hermitian_) {
    double scale = std::max(1.0, coeffs_.norm());
    if ((coeffs_ - coeffs_.adjoint()).norm() > 1e-12 * scale)
      throw std::invalid_argument("BiSymTensor: hermitian_flag but f_{l,j} != conj(f_{j,l})");
  }
}

cplx bisym_eval(const BiSymTensor& b, const Vec& x, const Vec& y) {
  if (x.size() != b.n() || y.size() != b.n())
    throw std::invalid_argument("bisym_eval: wrong length");
  const auto& J = b.support();
  const auto sz = static_cast<Eigen::Index>(J.size());
  Vec xm(sz), ym(sz);
  for (Eigen::Index k = 0; k < sz; ++k) {
    cplx mx = 1.0, my = 1.0;
    for (int v = 0; v < b.n(); ++v)
      for (int t = 0; t < J[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)]; ++t) {
        mx *= x[v];
        my *= y[v];
      }
    double c = static_cast<double>(multinomial(J[static_cast<std::size_t>(k)]));
    xm[k] = c * mx;
    ym[k] = my;
  }
  cplx acc = 0.0;
  for (Eigen::Index a = 0; a < sz; ++a) {
    cplx row = 0.0;
    for (Eigen::Index c2 = 0; c2 < sz; ++c2)
      row += b.coeffs()(a, c2) * ym[c2] *
             static_cast<double>(multinomial(J[static_cast<std::size_t>(c2)]));
    acc += xm[a] * row;
  }
  return acc;
}

}  // namespace entanglib
