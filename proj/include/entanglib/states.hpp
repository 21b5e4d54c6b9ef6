#pragma once

#include <optional>
#include <string>

#include "entanglib/hermitian.hpp"
#include "entanglib/sym.hpp"

namespace entanglib {

/// Named tensor with its published norm values carried as oracle metadata.
struct NamedState {
  std::string label;
  std::optional<SymTensor> symmetric;  // present when the state is symmetric
  DenseTensor dense;                   // always present
  std::optional<double> known_spectral;
  std::optional<double> known_nuclear;
  std::string provenance;
  bool unit_norm = true;  // false for gadget tensors (cliques)
};

NamedState w_state();
NamedState t_lambda(int d, cplx lambda);
NamedState m4_state();
NamedState dicke_state(int d, int k);
NamedState max4_candidate();
NamedState bipartite_max_entangled(int m, int n);

/// Real symmetric degree-4p tensor coding (sum_{ij} a_ij x_i^2 x_j^2)^p.
/// Pass kappa > 0 to attach the Motzkin-Straus value (1 - 1/kappa)^p.
NamedState clique_tensor(const RMat& adjacency, int power, double kappa = 0.0);

/// The bi-symmetric density built from a graph; PSD with trace one.
DensityTensor clique_density(const RMat& adjacency);

/// Oracle value of ||clique_density||_bspec given the clique number.
double clique_density_bspec(int n, double kappa);

/// E[x^{(x)2d}] over the uniform sphere measure in R^n.
HermitianTensor isotropic_moment_tensor(int n, int d);

/// Monte-Carlo estimate of a single moment entry (validation oracle).
double sphere_moment_mc(const MonomialIndex& exponents, std::int64_t samples,
                        std::uint64_t seed);

/// Exact even sphere moment from the double-factorial product formula.
double sphere_moment_exact(const MonomialIndex& exponents);

std::vector<std::string> state_labels();
NamedState make_state(const std::string& label);

/// The exact three-term decomposition of the W state; weights sum to 3/2.
std::vector<std::pair<cplx, Vec>> w_state_zeta_decomposition();

}  // namespace entanglib
