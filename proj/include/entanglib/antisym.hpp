#pragma once

#include "entanglib/hermitian.hpp"
#include "entanglib/tensor.hpp"

namespace entanglib {

/// Antisymmetric tensor in A^d F^n, stored densely.
class WedgeTensor {
 public:
  WedgeTensor(int n, int d, DenseTensor dense);

  int n() const { return n_; }
  int d() const { return d_; }
  const DenseTensor& dense() const { return dense_; }
  double norm() const { return dense_.norm(); }

 private:
  int n_, d_;
  DenseTensor dense_;
};

/// x_1 ^ ... ^ x_d = (1/sqrt(d!)) sum_sigma sign(sigma) (x)_j x_{sigma(j)}.
/// Zero tensor when the inputs are linearly dependent or d > n.
WedgeTensor wedge(const std::vector<Vec>& vectors);

/// Orthogonal projection of a cubical tensor onto A^d F^n.
WedgeTensor antisymmetrize(const DenseTensor& x);

/// Slater rank for d = 2: rank of the unfolded skew matrix, halved.
int slater_rank_d2(const WedgeTensor& f, double tol = 1e-10);

/// Pure density of the unit wedge of an orthonormal set; structure biskew.
DensityTensor wedge_pure_density(const std::vector<Vec>& vectors);

/// Plumbing: Gram-Schmidt orthonormalization (throws on dependent input).
std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors);

}  // namespace entanglib
