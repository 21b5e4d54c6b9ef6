#pragma once

#include <cstdint>
#include <vector>

#include "entanglib/tensor.hpp"

namespace entanglib {

/// Exponent vector (j_1,...,j_n), sum = d.
using MonomialIndex = std::vector<int>;

/// c(j) = d!/(j_1!...j_n!), exact, via incremental binomial products.
std::uint64_t multinomial(const MonomialIndex& j);

/// All of J(d,n) in lexicographically descending exponent order.
std::vector<MonomialIndex> enumerate_J(int d, int n);

std::uint64_t binomial(int a, int b);

/// Symmetric tensor in S^d F^n stored as polynomial coefficients f_j
/// (unweighted convention: f(x) = sum_j c(j) f_j x^j).
class SymTensor {
 public:
  SymTensor(int n, int d, FieldTag field = FieldTag::complex_);
  SymTensor(int n, int d, Vec coeffs, FieldTag field = FieldTag::complex_);

  int n() const { return n_; }
  int d() const { return d_; }
  FieldTag field() const { return field_; }
  const std::vector<MonomialIndex>& support() const { return support_; }
  const Vec& coeffs() const { return coeffs_; }
  Vec& coeffs() { return coeffs_; }

  int index_of(const MonomialIndex& j) const;
  cplx coeff(const MonomialIndex& j) const { return coeffs_[index_of(j)]; }
  void set_coeff(const MonomialIndex& j, cplx v) { coeffs_[index_of(j)] = v; }

 private:
  int n_, d_;
  FieldTag field_;
  std::vector<MonomialIndex> support_;
  Vec coeffs_;
};

double hilbert_norm(const SymTensor& s);

DenseTensor sym_to_dense(const SymTensor& s);

/// Orbit-average of a cubical dense tensor; fixed point on symmetric input.
SymTensor symmetrize(const DenseTensor& x, FieldTag field = FieldTag::complex_);

/// f(x) = sum_j c(j) f_j x^j.
cplx eval_poly(const SymTensor& s, const Vec& x);

/// Coefficients a_j = c(j) conj(f_j) of the holomorphic polynomial q with
/// q(x) = conj(<x^{(x)d}, S>); |q(x)| is the spectral objective.
Vec overlap_poly_coeffs(const SymTensor& s);

/// Dicke (orthonormal) coordinates sqrt(c(j)) f_j and back.
Vec to_orthonormal_coords(const SymTensor& s);
SymTensor from_orthonormal_coords(int n, int d, const Vec& coords, FieldTag field = FieldTag::complex_);

/// Bi-symmetric tensor in S^d F^n (x) S^d F^n as coefficients f_{j,l};
/// with hermitian_flag it represents an element of BH_{n^{(x)d}}.
class BiSymTensor {
 public:
  BiSymTensor(int n, int d, bool hermitian_flag = false);
  BiSymTensor(int n, int d, Mat coeffs, bool hermitian_flag = false);

  int n() const { return n_; }
  int d() const { return d_; }
  bool hermitian_flag() const { return hermitian_; }
  const std::vector<MonomialIndex>& support() const { return support_; }
  const Mat& coeffs() const { return coeffs_; }
  Mat& coeffs() { return coeffs_; }

 private:
  int n_, d_;
  bool hermitian_;
  std::vector<MonomialIndex> support_;
  Mat coeffs_;  // indexed by (rank of j, rank of l)
};

/// f(x,y) = sum_{j,l} c(j) c(l) f_{j,l} x^j y^l.
cplx bisym_eval(const BiSymTensor& b, const Vec& x, const Vec& y);

}  // namespace entanglib
