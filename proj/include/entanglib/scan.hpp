#pragma once

#include <cstdint>

#include "entanglib/covering.hpp"
#include "entanglib/tensor.hpp"

namespace entanglib {

struct ScanBest {
  double value = 0.0;        // best normalized objective
  std::int64_t index = -1;   // raw odometer index of the best lattice point
  std::int64_t visited = 0;  // lattice points actually evaluated
};

enum class ScanObjective { modulus, real_part };

/// max over C_C(m,n) of |q(z)| / ||z||^d for holomorphic
/// q(z) = sum_j a_j z^j, a over J(d,n) in enumerate_J order.
/// The grid is quotiented by z -> iz, under which both objectives are
/// orbit-equivalent (for real_part and odd d the orbit max is max(|Re|,|Im|)).
ScanBest scan_complex_sym(const Vec& coeffs, int n, int d, std::int64_t m,
                          ScanObjective obj, std::int64_t budget, int threads);

/// max over C(m,n) of |q(x)| / ||x||^d, real lattice, sign-quotiented.
ScanBest scan_real_sym(const RVec& coeffs, int n, int d, std::int64_t m,
                       std::int64_t budget, int threads);

/// max over C_C(m,n) of |sum_{a,b} W(a,b) z^{j_a} conj(z)^{j_b}| / ||z||^{2d}
/// for Hermitian W (the weighted bi-Hermitian form).
ScanBest scan_hermitian_form(const Mat& weighted, int n, int d, std::int64_t m,
                             std::int64_t budget, int threads);

/// max over x in C_C(m,n1) of lambda_absmax(K(x)) / ||x||^2 where
/// K(x)_{j,l} = sum_{i,i'} conj(x_i) H((i,j),(i',l)) x_{i'} for Hermitian H
/// acting on C^{n1 x n2}. Used for product-state forms on bipartite systems.
ScanBest scan_bipartite_eigmax(const Mat& h, int n1, int n2, std::int64_t m,
                               std::int64_t budget, int threads);

/// max over v in C_C(m, dim(mode)) of sigma_1 of the tensor contracted at
/// `mode` against conj(v), unfolded with `row_mode` as rows.
ScanBest scan_contraction_sigma(const DenseTensor& t, int mode, int row_mode,
                                std::int64_t m, std::int64_t budget, int threads);

/// Point evaluators matching the scans (for witnesses and tests).
double eval_complex_sym(const Vec& coeffs, int d, const Vec& z, ScanObjective obj);
double eval_real_sym(const RVec& coeffs, int d, const RVec& x);
double eval_hermitian_form(const Mat& weighted, int d, const Vec& z);

}  // namespace entanglib
