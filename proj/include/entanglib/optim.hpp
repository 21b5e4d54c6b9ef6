#pragma once

#include <cstdint>
#include <optional>

#include "entanglib/covering.hpp"
#include "entanglib/hermitian.hpp"
#include "entanglib/lp.hpp"
#include "entanglib/scan.hpp"
#include "entanglib/sym.hpp"

namespace entanglib {

/// Certified bracket [lower, upper] for a norm. Upper bounds come from the
/// grid covering factor (or an exact matrix identity); polish only ever
/// raises the lower end.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<Vec> witness;  // vector(s) reproducing the lower bound
  double epsilon_used = 0.0;
  std::int64_t m_used = 0;
  bool certified = true;
};

enum class TargetKind { symmetric_complex, symmetric_real, bihermitian, product_states };

struct DecompositionTerm {
  double weight = 0.0;
  int sign = 1;
  std::vector<Vec> vectors;  // one vector except in the product regime
};

struct Decomposition {
  TargetKind kind = TargetKind::symmetric_complex;
  std::vector<DecompositionTerm> terms;
  double total_weight() const;
};

struct OptimOptions {
  double epsilon = 0.3;
  std::int64_t m_override = 0;  // 0 = derive from epsilon via choose_m
  std::int64_t budget = kDefaultGridBudget;
  int threads = 1;
  int polish_iters = 500;
  bool full_grid_lp = false;
  std::uint64_t seed = 0;
};

// ---- grid brackets ---------------------------------------------------------

NormEstimate spectral_norm_grid(const SymTensor& t, std::int64_t m,
                                const OptimOptions& opts = {});

NormEstimate spectral_norm_grid_pair(const BiSymTensor& t, std::int64_t m,
                                     const OptimOptions& opts = {});

/// b-spectral bracket of a bi-symmetric Hermitian tensor.
NormEstimate spectral_norm_grid_bisym(const HermitianTensor& b, std::int64_t m,
                                      const OptimOptions& opts = {});

// ---- local polish ----------------------------------------------------------

/// Shifted symmetric power iteration; monotone, returns the best iterate.
std::pair<double, Vec> spectral_polish(const SymTensor& t, const Vec& start,
                                       int max_iters = 500);

/// Alternating updates over the modes of a product state.
std::pair<double, std::vector<Vec>> product_polish(const DenseTensor& t,
                                                   std::vector<Vec> start,
                                                   int max_iters = 500);

/// Polish of |<x^d, B x^d>| for bi-symmetric Hermitian B.
std::pair<double, Vec> bisym_polish(const HermitianTensor& b, const Vec& start,
                                    int max_iters = 500);

/// Polish of |<X, B X>| over product states X for Hermitian B.
std::pair<double, std::vector<Vec>> hermitian_product_polish(
    const HermitianTensor& b, std::vector<Vec> start, int max_iters = 500);

// ---- end-to-end spectral estimates ----------------------------------------

NormEstimate spectral_norm(const SymTensor& t, const OptimOptions& opts = {});
NormEstimate spectral_norm_bisym(const HermitianTensor& b, const OptimOptions& opts = {});

/// Dense tensors: multistart product polish for the lower bound, a
/// mode-contraction grid with exact matrix maximization for the upper.
NormEstimate spectral_norm_dense(const DenseTensor& t, std::int64_t m,
                                 const OptimOptions& opts = {});

/// ||.||_spec of a Hermitian tensor: product polish below, lambda_max above.
NormEstimate spec_norm_hermitian(const HermitianTensor& b, const OptimOptions& opts = {});

// ---- nuclear norms ---------------------------------------------------------

struct NuclearResult {
  NormEstimate estimate;
  Decomposition decomposition;
  Vec dual_coeffs;  // symmetric regimes: dual polynomial coefficients
  Mat dual_matrix;  // hermitian/product regimes: dual functional as a matrix
};

NuclearResult nuclear_norm_grid(const SymTensor& t, std::int64_t m,
                                const OptimOptions& opts = {});

NuclearResult nuclear_norm_grid_bisym(const HermitianTensor& b, std::int64_t m,
                                      const OptimOptions& opts = {});

NuclearResult nuclear_norm(const SymTensor& t, const OptimOptions& opts = {});

/// Nuclear norm of a Hermitian tensor over product-state rank-one densities
/// (bipartite shapes only; pricing over a grid on the first factor).
NuclearResult nuclear_norm_product(const HermitianTensor& b, std::int64_t m,
                                   const OptimOptions& opts = {});

// ---- d = 2 oracle ----------------------------------------------------------

struct MatrixNorms {
  double spectral = 0.0;
  double nuclear = 0.0;
  RVec singular_values;
  Mat u, v;  // T = u diag(s) v^H
};

/// Exact spectral/nuclear values of a matrix via its singular values.
MatrixNorms matrix_norms(const DenseTensor& t);
MatrixNorms matrix_norms(const Mat& a);

/// Weighted coefficient matrix of the form <z^d, B z^d> for grid scans.
Mat bspec_weighted_form(const HermitianTensor& b);

/// Reconstruction residual of a decomposition against its target coefficients.
double reconstruction_residual(const Decomposition& dec, const SymTensor& target);
double reconstruction_residual(const Decomposition& dec, const HermitianTensor& target);

}  // namespace entanglib
