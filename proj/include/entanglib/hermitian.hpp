#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "entanglib/sym.hpp"
#include "entanglib/tensor.hpp"

namespace entanglib {

enum class Structure { general, bisymmetric, biskew, realsymmetric };

const char* structure_name(Structure s);

struct SpectralDecomposition {
  RVec eigenvalues;  // descending
  Mat eigenvectors;  // columns, orthonormal, as vectors in C^n
};

/// Eigensystem of a self-adjoint matrix by cyclic Jacobi sweeps.
/// Off-diagonal mass is driven below 1e-13 * ||M||.
SpectralDecomposition jacobi_hermitian(const Mat& m);

/// Self-adjoint operator on C^n stored as its N(n) x N(n) matrix.
class HermitianTensor {
 public:
  HermitianTensor(Shape shape, Mat matrix, Structure structure = Structure::general);

  const Shape& shape() const { return shape_; }
  int order() const { return shape_.order(); }
  const Mat& matrix() const { return matrix_; }
  Structure structure() const { return structure_; }

  const SpectralDecomposition& spectral_decomposition() const;

  HermitianTensor conjugate() const {
    return HermitianTensor(shape_, matrix_.conjugate(), structure_);
  }

 private:
  struct DecompCache {
    std::once_flag once;
    std::optional<SpectralDecomposition> value;
  };

  Shape shape_;
  Mat matrix_;
  Structure structure_;
  std::shared_ptr<DecompCache> decomp_ = std::make_shared<DecompCache>();
};

double trace(const HermitianTensor& b);
HermitianTensor partial_trace(const HermitianTensor& b, int mode);
HermitianTensor partial_transpose(const HermitianTensor& b, int mode);

bool is_psd(const HermitianTensor& b, double tol);

class DensityTensor {
 public:
  explicit DensityTensor(HermitianTensor base);
  const HermitianTensor& base() const { return base_; }
  const Shape& shape() const { return base_.shape(); }

 private:
  HermitianTensor base_;
};

DensityTensor make_density(const HermitianTensor& b);
DensityTensor pure_density(const DenseTensor& x);

/// Orthogonal projector onto S^d C^n inside C^{n^{(x)d}}.
HermitianTensor identity_on_sym(int n, int d);

Structure classify_structure(const HermitianTensor& b, double tol = 1e-10);

/// <X, B X> for a dense X in C^n.
cplx apply_form(const HermitianTensor& b, const DenseTensor& x);

/// Coefficients f_{j,l} of the Hermitian polynomial of a bi-symmetric tensor.
BiSymTensor bisym_coefficients(const HermitianTensor& b);

/// Inverse of bisym_coefficients.
HermitianTensor bisym_from_coefficients(const BiSymTensor& c);

}  // namespace entanglib
