#pragma once

#include <cstdint>
#include <functional>

#include "entanglib/tensor.hpp"

namespace entanglib {

/// Regimes of the grid-certified brackets; each fixes the covering
/// threshold t in the bound 1/(1 - t/m).
enum class Regime { symmetric, pair, bihermitian, product_states };

/// Threshold t for a regime: d, 2d, 2d*C(n+d-1,d)^{3/2}, 2d.
double regime_threshold(Regime regime, int d, int n);

/// Smallest m with 1/(1 - t/m) <= 1 + epsilon.
std::int64_t choose_m(double epsilon, int d, Regime regime, int n = 2);

/// The 1/m-covering C(m,n) of the unit sphere: normalized nonzero points of
/// the integer lattice {h/(nm)}^n, h in [-nm, nm]. Complex grids are real
/// grids in dimension 2n with interleaved (re, im) coordinates.
class CoveringGrid {
 public:
  CoveringGrid(std::int64_t m, int ambient_dim, FieldTag field);

  std::int64_t m() const { return m_; }
  int ambient_dim() const { return ambient_; }
  FieldTag field() const { return field_; }
  int real_dim() const { return real_dim_; }
  std::int64_t half_width() const { return k_; }  // lattice coordinate bound nm

  /// Raw nonzero lattice point count (2nm+1)^n - 1.
  std::int64_t count() const { return count_; }
  /// Count including the zero point; raw index space is [0, count_raw()).
  std::int64_t count_raw() const { return count_ + 1; }

  /// Lattice coordinates (h_1,...,h_n) of a raw index (odometer order).
  std::vector<std::int64_t> lattice_point(std::int64_t index) const;
  /// Normalized grid point; the zero index is rejected.
  RVec real_point(std::int64_t index) const;
  /// Complex form of real_point (field must be complex).
  Vec complex_point(std::int64_t index) const;

  static Vec to_complex(const RVec& interleaved);

 private:
  std::int64_t m_;
  int ambient_;
  FieldTag field_;
  int real_dim_;
  std::int64_t k_;
  std::int64_t count_;
};

/// Max over `samples` random unit vectors of the distance to the nearest
/// grid point, located by rounding to the h-lattice and probing neighbors.
double covering_radius_check(const CoveringGrid& grid, int samples,
                             std::uint64_t seed = 0);

/// Default enumeration budget (points) for grid scans.
inline constexpr std::int64_t kDefaultGridBudget = 100000000;

void check_budget(std::int64_t points, std::int64_t budget);

}  // namespace entanglib
