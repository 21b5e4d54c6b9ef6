#pragma once

#include <optional>

#include "entanglib/optim.hpp"

namespace entanglib {

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double v, double slack = 0.0) const {
    return v >= lower - slack && v <= upper + slack;
  }
};

/// GME, logarithmic spectral entanglement and nuclear energy of a pure state,
/// all obtained as monotone transforms of certified norm brackets.
struct EntanglementReport {
  Bracket gme;
  Bracket log_spec;
  Bracket nuclear_energy;
  Bracket spectral;
  Bracket nuclear;
  double state_norm = 0.0;
};

EntanglementReport gme(const SymTensor& state, const OptimOptions& opts = {});
EntanglementReport gme(const DenseTensor& state, const OptimOptions& opts = {});

Bracket nuclear_energy(const SymTensor& state, const OptimOptions& opts = {});

/// Best closed-form lower bound on alpha_inf for the shape and field.
double alpha_lower_bound(const Shape& shape, FieldTag field);

/// [C(n+d-1,d)^{-1/2}, best library upper] for symmetric states.
std::pair<double, double> symmetric_alpha_bounds(int n, int d,
                                                 const OptimOptions& opts = {});

}  // namespace entanglib
