#include "entanglib/antisym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entanglib {

namespace {

// All permutations of [d] with signs, generated once per call (d is small).
std::vector<std::pair<std::vector<int>, int>> signed_permutations(int d) {
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> out;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b)
        if (p[a] > p[b]) ++inversions;
    out.emplace_back(p, inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

WedgeTensor::WedgeTensor(int n, int d, DenseTensor dense)
    : n_(n), d_(d), dense_(std::move(dense)) {
  if (dense_.order() != d || !dense_.shape().cubical() || dense_.shape().dim(0) != n)
    throw std::invalid_argument("WedgeTensor: shape is not n^d");
  if (d > n && dense_.norm() > 1e-12)
    throw std::invalid_argument("WedgeTensor: nonzero with d > n");
  // entries flip sign under adjacent transpositions
  const double tol = 1e-12 * std::max(1.0, dense_.norm());
  for (int u = 0; u + 1 < d; ++u) {
    for (std::int64_t f = 0; f < dense_.shape().size(); ++f) {
      auto idx = dense_.shape().unflat(f);
      std::swap(idx[static_cast<std::size_t>(u)], idx[static_cast<std::size_t>(u) + 1]);
      if (std::abs(dense_.entries()[f] + dense_.at(idx)) > tol)
        throw std::invalid_argument("WedgeTensor: entries are not antisymmetric");
    }
  }
}

WedgeTensor wedge(const std::vector<Vec>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("wedge: no factors");
  const int d = static_cast<int>(vectors.size());
  const int n = static_cast<int>(vectors[0].size());
  for (const auto& v : vectors)
    if (v.size() != n) throw std::invalid_argument("wedge: mixed lengths");

  std::vector<std::int64_t> dims(static_cast<std::size_t>(d),
                                 static_cast<std::int64_t>(n));
  Shape shape(dims);
  if (d > n) return WedgeTensor(n, d, DenseTensor::zero(shape));

  Vec out = Vec::Zero(shape.size());
  const double scale = 1.0 / std::sqrt(std::tgamma(static_cast<double>(d) + 1.0));
  for (const auto& [perm, sign] : signed_permutations(d)) {
    for (std::int64_t f = 0; f < shape.size(); ++f) {
      auto idx = shape.unflat(f);
      cplx term = static_cast<double>(sign) * scale;
      for (int j = 0; j < d; ++j)
        term *= vectors[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])]
                       [idx[static_cast<std::size_t>(j)]];
      out[f] += term;
    }
  }
  // numerically dependent inputs produce an exact-zero wedge
  Vec cleaned = out;
  double nrm = cleaned.norm();
  double inputs = 1.0;
  for (const auto& v : vectors) inputs *= v.norm();
  if (nrm <= 1e-12 * std::max(1.0, inputs)) cleaned.setZero();
  return WedgeTensor(n, d, DenseTensor(shape, std::move(cleaned)));
}

WedgeTensor antisymmetrize(const DenseTensor& x) {
  if (!x.shape().cubical())
    throw std::invalid_argument("antisymmetrize: tensor is not cubical");
  const int d = x.order();
  const int n = static_cast<int>(x.shape().dim(0));
  Vec out = Vec::Zero(x.shape().size());
  const auto perms = signed_permutations(d);
  for (const auto& [perm, sign] : perms) {
    // (T(sigma) X)_i = X_(i_{sigma^{-1}(1)},...)
    std::vector<int> inv(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j)
      inv[static_cast<std::size_t>(perm[j])] = static_cast<int>(j);
    for (std::int64_t f = 0; f < x.shape().size(); ++f) {
      auto idx = x.shape().unflat(f);
      std::vector<std::int64_t> src(idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j)
        src[j] = idx[static_cast<std::size_t>(inv[j])];
      out[f] += static_cast<double>(sign) * x.at(src);
    }
  }
  out /= static_cast<double>(perms.size());
  double nrm = out.norm();
  if (nrm <= 1e-14 * std::max(1.0, x.norm())) out.setZero();
  return WedgeTensor(n, d, DenseTensor(x.shape(), std::move(out)));
}

int slater_rank_d2(const WedgeTensor& f, double tol) {
  if (f.d() != 2)
    throw std::invalid_argument("slater_rank_d2: only d = 2 is supported");
  Mat a = unfold(f.dense(), {0});
  auto dec = jacobi_hermitian(a.adjoint() * a);
  const double top = std::sqrt(std::max(0.0, dec.eigenvalues[0]));
  if (top <= 0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k)
    if (std::sqrt(std::max(0.0, dec.eigenvalues[k])) > tol * top) ++rank;
  return (rank + 1) / 2;  // skew-matrix ranks are even
}

DensityTensor wedge_pure_density(const std::vector<Vec>& vectors) {
  const int d = static_cast<int>(vectors.size());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const cplx g = vectors[static_cast<std::size_t>(a)].dot(
          vectors[static_cast<std::size_t>(b)]);
      const double want = a == b ? 1.0 : 0.0;
      if (std::abs(g - want) > 1e-10)
        throw std::invalid_argument("wedge_pure_density: inputs are not orthonormal");
    }
  WedgeTensor w = wedge(vectors);
  return pure_density(w.dense());
}

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors) {
  std::vector<Vec> out;
  for (const auto& v : vectors) {
    Vec u = v;
    for (const auto& e : out) u -= e.dot(v) * e;
    const double nrm = u.norm();
    if (nrm <= 1e-12 * std::max(1.0, v.norm()))
      throw std::invalid_argument("gram_schmidt: linearly dependent input");
    out.push_back(u / nrm);
  }
  return out;
}

}  // namespace entanglib
