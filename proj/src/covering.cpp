#include "entanglib/covering.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "entanglib/sym.hpp"

namespace entanglib {

double regime_threshold(Regime regime, int d, int n) {
  switch (regime) {
    case Regime::symmetric:
      return static_cast<double>(d);
    case Regime::pair:
    case Regime::product_states:
      return 2.0 * d;
    case Regime::bihermitian: {
      double bin = static_cast<double>(binomial(n + d - 1, d));
      return 2.0 * d * std::pow(bin, 1.5);
    }
  }
  return static_cast<double>(d);
}

std::int64_t choose_m(double epsilon, int d, Regime regime, int n) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("choose_m: epsilon must be in (0,1)");
  const double t = regime_threshold(regime, d, n);
  auto m = static_cast<std::int64_t>(std::ceil(t * (1.0 + epsilon) / epsilon - 1e-9));
  while ((1.0 - t / static_cast<double>(m)) * (1.0 + epsilon) < 1.0 - 1e-12) ++m;
  return m;
}

CoveringGrid::CoveringGrid(std::int64_t m, int ambient_dim, FieldTag field)
    : m_(m), ambient_(ambient_dim), field_(field) {
  if (m < 1 || ambient_dim < 1) throw std::invalid_argument("CoveringGrid: m,n >= 1");
  real_dim_ = field == FieldTag::complex_ ? 2 * ambient_dim : ambient_dim;
  k_ = static_cast<std::int64_t>(real_dim_) * m_;
  double cnt = std::pow(2.0 * static_cast<double>(k_) + 1.0, real_dim_) - 1.0;
  if (cnt > 9.0e18) throw std::length_error("CoveringGrid: point count overflows");
  count_ = 1;
  for (int i = 0; i < real_dim_; ++i) count_ *= 2 * k_ + 1;
  count_ -= 1;
}

std::vector<std::int64_t> CoveringGrid::lattice_point(std::int64_t index) const {
  if (index < 0 || index >= count_raw())
    throw std::out_of_range("CoveringGrid: raw index out of range");
  std::vector<std::int64_t> h(static_cast<std::size_t>(real_dim_));
  const std::int64_t base = 2 * k_ + 1;
  for (int i = real_dim_ - 1; i >= 0; --i) {
    h[static_cast<std::size_t>(i)] = index % base - k_;
    index /= base;
  }
  return h;
}

RVec CoveringGrid::real_point(std::int64_t index) const {
  auto h = lattice_point(index);
  RVec v(real_dim_);
  double nrm2 = 0.0;
  for (int i = 0; i < real_dim_; ++i) {
    v[i] = static_cast<double>(h[static_cast<std::size_t>(i)]);
    nrm2 += v[i] * v[i];
  }
  if (nrm2 == 0.0) throw std::invalid_argument("CoveringGrid: zero lattice point");
  return v / std::sqrt(nrm2);
}

Vec CoveringGrid::complex_point(std::int64_t index) const {
  if (field_ != FieldTag::complex_)
    throw std::logic_error("CoveringGrid: real grid has no complex points");
  return to_complex(real_point(index));
}

Vec CoveringGrid::to_complex(const RVec& interleaved) {
  Vec z(interleaved.size() / 2);
  for (Eigen::Index i = 0; i < z.size(); ++i)
    z[i] = cplx(interleaved[2 * i], interleaved[2 * i + 1]);
  return z;
}

double covering_radius_check(const CoveringGrid& grid, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("covering_radius_check: samples >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int nr = grid.real_dim();
  const auto k = grid.half_width();
  double worst = 0.0;

  std::vector<std::int64_t> h(static_cast<std::size_t>(nr));
  std::vector<int> offset(static_cast<std::size_t>(nr));
  for (int s = 0; s < samples; ++s) {
    RVec v(nr);
    do {
      for (int i = 0; i < nr; ++i) v[i] = gauss(rng);
    } while (v.norm() < 1e-6);
    v.normalize();
    for (int i = 0; i < nr; ++i) {
      h[static_cast<std::size_t>(i)] =
          std::min<std::int64_t>(k, std::max<std::int64_t>(-k,
              static_cast<std::int64_t>(std::llround(v[i] * static_cast<double>(k)))));
    }
    double best = 2.0;
    std::fill(offset.begin(), offset.end(), -1);
    for (;;) {
      RVec a(nr);
      double nrm2 = 0.0;
      for (int i = 0; i < nr; ++i) {
        auto hi = h[static_cast<std::size_t>(i)] + offset[static_cast<std::size_t>(i)];
        hi = std::min(k, std::max(-k, hi));
        a[i] = static_cast<double>(hi);
        nrm2 += a[i] * a[i];
      }
      if (nrm2 > 0.0) best = std::min(best, (a / std::sqrt(nrm2) - v).norm());
      int pos = 0;
      while (pos < nr && offset[static_cast<std::size_t>(pos)] == 1) {
        offset[static_cast<std::size_t>(pos)] = -1;
        ++pos;
      }
      if (pos == nr) break;
      ++offset[static_cast<std::size_t>(pos)];
    }
    worst = std::max(worst, best);
  }
  return worst;
}

void check_budget(std::int64_t points, std::int64_t budget) {
  if (points > budget) {
    std::ostringstream msg;
    msg << "grid enumeration of " << points << " points exceeds budget " << budget;
    throw std::length_error(msg.str());
  }
}

}  // namespace entanglib
