#include "entanglib/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "entanglib/states.hpp"

namespace entanglib {

namespace {

void require_unit(double norm) {
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("state must be normalized to 1 (got norm " +
                                std::to_string(norm) + ")");
}

Bracket gme_from_spectral(const Bracket& spec) {
  auto dist = [](double s) { return std::sqrt(2.0 * std::max(0.0, 1.0 - s)); };
  // decreasing transform: endpoints swap
  return {dist(std::min(1.0, spec.upper)), dist(std::max(0.0, spec.lower))};
}

Bracket log_from_spectral(const Bracket& spec) {
  return {-2.0 * std::log(spec.upper), -2.0 * std::log(std::max(1e-300, spec.lower))};
}

Bracket energy_from_nuclear(const Bracket& nuc) {
  return {2.0 * std::log(std::max(1e-300, nuc.lower)), 2.0 * std::log(nuc.upper)};
}

}  // namespace

EntanglementReport gme(const SymTensor& state, const OptimOptions& opts) {
  EntanglementReport rep;
  rep.state_norm = hilbert_norm(state);
  require_unit(rep.state_norm);

  NormEstimate spec = spectral_norm(state, opts);
  rep.spectral = {spec.lower, spec.upper};
  NuclearResult nuc = nuclear_norm(state, opts);
  rep.nuclear = {nuc.estimate.lower, nuc.estimate.upper};

  rep.gme = gme_from_spectral(rep.spectral);
  rep.log_spec = log_from_spectral(rep.spectral);
  rep.nuclear_energy = energy_from_nuclear(rep.nuclear);
  return rep;
}

EntanglementReport gme(const DenseTensor& state, const OptimOptions& opts) {
  EntanglementReport rep;
  rep.state_norm = state.norm();
  require_unit(rep.state_norm);

  // symmetric states route through the Banach restriction
  if (state.shape().cubical()) {
    SymTensor s = symmetrize(state);
    if ((sym_to_dense(s).entries() - state.entries()).norm() < 1e-12)
      return gme(s, opts);
  }

  const std::int64_t m = opts.m_override > 0 ? opts.m_override : 6;
  NormEstimate spec = spectral_norm_dense(state, m, opts);
  rep.spectral = {spec.lower, spec.upper};

  // nuclear bracket for a general dense state:
  //   lower: max(Euclidean, 1/spectral_upper, best unfolding nuclear)
  //   upper: entrywise l1 (an explicit basis rank-one decomposition)
  double lower = std::max(1.0, 1.0 / spec.upper);
  for (int k = 0; k < state.order(); ++k)
    lower = std::max(lower, matrix_norms(unfold(state, {k})).nuclear);
  double l1 = 0.0;
  for (Eigen::Index i = 0; i < state.entries().size(); ++i)
    l1 += std::abs(state.entries()[i]);
  rep.nuclear = {lower, l1};

  rep.gme = gme_from_spectral(rep.spectral);
  rep.log_spec = log_from_spectral(rep.spectral);
  rep.nuclear_energy = energy_from_nuclear(rep.nuclear);
  return rep;
}

Bracket nuclear_energy(const SymTensor& state, const OptimOptions& opts) {
  require_unit(hilbert_norm(state));
  NuclearResult nuc = nuclear_norm(state, opts);
  return energy_from_nuclear({nuc.estimate.lower, nuc.estimate.upper});
}

double alpha_lower_bound(const Shape& shape, FieldTag field) {
  const int d = shape.order();
  if (d < 2) throw std::invalid_argument("alpha_lower_bound: d >= 2");
  std::vector<std::int64_t> dims = shape.dims();
  std::sort(dims.begin(), dims.end());
  double prod = 1.0;
  for (int k = 0; k + 1 < d; ++k) prod *= static_cast<double>(dims[static_cast<std::size_t>(k)]);
  double bound = 1.0 / std::sqrt(prod);
  if (field == FieldTag::complex_ && d >= 3) {
    bool qubits = true;
    for (auto n : dims)
      if (n != 2) qubits = false;
    if (qubits)
      bound = std::max(bound,
                       (2.0 / 3.0) * std::pow(2.0, -0.5 * static_cast<double>(d - 3)));
  }
  return bound;
}

std::pair<double, double> symmetric_alpha_bounds(int n, int d, const OptimOptions& opts) {
  if (n < 2 || d < 2) throw std::invalid_argument("symmetric_alpha_bounds: n,d >= 2");
  const double lower = 1.0 / std::sqrt(static_cast<double>(binomial(n + d - 1, d)));
  double upper = 1.0;
  if (n == 2) {
    std::vector<NamedState> candidates;
    if (d == 3) candidates.push_back(w_state());
    if (d == 4) candidates.push_back(max4_candidate());
    candidates.push_back(t_lambda(d, 1.0));
    for (const auto& st : candidates) {
      if (!st.symmetric) continue;
      NormEstimate est = spectral_norm(*st.symmetric, opts);
      upper = std::min(upper, est.upper);
    }
  }
  return {lower, upper};
}

}  // namespace entanglib
