#pragma once

#include <optional>
#include <string>

#include "entanglib/optim.hpp"

namespace entanglib {

enum class SepStatus { separable, entangled, inconclusive };

const char* sep_status_name(SepStatus s);

struct PptReport {
  std::vector<bool> mode_ok;
  bool all_ok = true;
  double worst_eigenvalue = 0.0;
};

struct SeparabilityVerdict {
  SepStatus status = SepStatus::inconclusive;
  double nuclear_lower = 0.0;
  double nuclear_upper = 0.0;
  double margin = 0.0;  // distance of the decisive bracket end from 1
  Decomposition certificate;  // populated for separable verdicts
  Mat witness;                // dual functional for entangled verdicts
  PptReport ppt;
  std::string note;
};

PptReport ppt_check(const DensityTensor& r, double tol = 1e-10);

/// Strong separability of a bi-symmetric density via the b-nuclear bracket.
SeparabilityVerdict strong_separability_bisym(const DensityTensor& r,
                                              const OptimOptions& opts = {});

/// Separability via the product-state nuclear norm (bipartite shapes).
SeparabilityVerdict separability_via_nuclear(const DensityTensor& r,
                                             const OptimOptions& opts = {});

/// Real strong separability of a fully symmetric real density.
SeparabilityVerdict real_strong_separability_sym(const DensityTensor& r,
                                                 const OptimOptions& opts = {});

/// Sanity invariant: the certified spectral upper bracket sits above 1/N(n).
bool spec_floor_check(const DensityTensor& r, const OptimOptions& opts = {});

/// View a fully symmetric real Hermitian tensor as an element of S^{2d} R^n.
SymTensor realsym_to_symtensor(const HermitianTensor& b);

}  // namespace entanglib
