#include "entanglib/optim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace entanglib {

namespace {

Vec random_unit(std::mt19937_64& rng, int n, bool complex_field) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i)
      v[i] = complex_field ? cplx(gauss(rng), gauss(rng)) : cplx(gauss(rng), 0.0);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

void require_above_threshold(std::int64_t m, double t, const char* what) {
  if (static_cast<double>(m) <= t) {
    std::ostringstream msg;
    msg << what << ": m = " << m << " must exceed the regime threshold " << t;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double Decomposition::total_weight() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

// ---------------------------------------------------------------------------
// grid brackets
// ---------------------------------------------------------------------------

NormEstimate spectral_norm_grid(const SymTensor& t, std::int64_t m,
                                const OptimOptions& opts) {
  require_above_threshold(m, regime_threshold(Regime::symmetric, t.d(), t.n()),
                          "spectral_norm_grid");
  NormEstimate est;
  est.m_used = m;
  est.epsilon_used = static_cast<double>(t.d()) / (static_cast<double>(m) - t.d());
  if (t.field() == FieldTag::real) {
    RVec coeffs(t.coeffs().size());
    for (Eigen::Index j = 0; j < coeffs.size(); ++j)
      coeffs[j] = static_cast<double>(multinomial(t.support()[static_cast<std::size_t>(j)])) *
                  t.coeffs()[j].real();
    ScanBest best = scan_real_sym(coeffs, t.n(), t.d(), m, opts.budget, opts.threads);
    CoveringGrid grid(m, t.n(), FieldTag::real);
    est.lower = best.value;
    RVec x = grid.real_point(best.index);
    Vec xc(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) xc[i] = x[i];
    est.witness = {xc};
  } else {
    Vec coeffs = overlap_poly_coeffs(t);
    ScanBest best = scan_complex_sym(coeffs, t.n(), t.d(), m, ScanObjective::modulus,
                                     opts.budget, opts.threads);
    CoveringGrid grid(m, t.n(), FieldTag::complex_);
    est.lower = best.value;
    est.witness = {grid.complex_point(best.index)};
  }
  est.upper = est.lower * (1.0 + 1e-11) /
              (1.0 - static_cast<double>(t.d()) / static_cast<double>(m));
  return est;
}

NormEstimate spectral_norm_grid_pair(const BiSymTensor& t, std::int64_t m,
                                     const OptimOptions& opts) {
  require_above_threshold(m, regime_threshold(Regime::pair, t.d(), t.n()),
                          "spectral_norm_grid_pair");
  bool real_coeffs = true;
  for (Eigen::Index a = 0; a < t.coeffs().rows() && real_coeffs; ++a)
    for (Eigen::Index b = 0; b < t.coeffs().cols(); ++b)
      if (std::abs(t.coeffs()(a, b).imag()) > 0) {
        real_coeffs = false;
        break;
      }
  FieldTag field = real_coeffs ? FieldTag::real : FieldTag::complex_;
  CoveringGrid grid(m, t.n(), field);
  check_budget(grid.count() * grid.count(), opts.budget);

  double best = -1.0;
  Vec bz, bw;
  for (std::int64_t i = 0; i < grid.count_raw(); ++i) {
    Vec z;
    {
      auto h = grid.lattice_point(i);
      bool zero = true;
      for (auto v : h)
        if (v != 0) { zero = false; break; }
      if (zero) continue;
      z = field == FieldTag::real
              ? [&] { RVec r = grid.real_point(i); Vec c(r.size());
                      for (Eigen::Index q = 0; q < r.size(); ++q) c[q] = r[q];
                      return c; }()
              : grid.complex_point(i);
    }
    for (std::int64_t j = 0; j < grid.count_raw(); ++j) {
      auto h = grid.lattice_point(j);
      bool zero = true;
      for (auto v : h)
        if (v != 0) { zero = false; break; }
      if (zero) continue;
      Vec w;
      if (field == FieldTag::real) {
        RVec r = grid.real_point(j);
        w = Vec(r.size());
        for (Eigen::Index q = 0; q < r.size(); ++q) w[q] = r[q];
      } else {
        w = grid.complex_point(j);
      }
      const double val = std::abs(bisym_eval(t, z, w).real());
      if (val > best) {
        best = val;
        bz = z;
        bw = w;
      }
    }
  }
  NormEstimate est;
  est.m_used = m;
  est.lower = best;
  est.upper = best * (1.0 + 1e-11) / (1.0 - 2.0 * t.d() / static_cast<double>(m));
  est.epsilon_used = 2.0 * t.d() / (static_cast<double>(m) - 2.0 * t.d());
  est.witness = {bz, bw};
  return est;
}

Mat bspec_weighted_form(const HermitianTensor& b) {
  BiSymTensor f = bisym_coefficients(b);
  const auto& J = f.support();
  const auto sz = static_cast<Eigen::Index>(J.size());
  Mat w(sz, sz);
  for (Eigen::Index a = 0; a < sz; ++a)
    for (Eigen::Index c = 0; c < sz; ++c)
      w(a, c) = static_cast<double>(multinomial(J[static_cast<std::size_t>(a)])) *
                static_cast<double>(multinomial(J[static_cast<std::size_t>(c)])) *
                f.coeffs()(c, a);
  return w;
}

NormEstimate spectral_norm_grid_bisym(const HermitianTensor& b, std::int64_t m,
                                      const OptimOptions& opts) {
  const int d = b.order();
  const int n = static_cast<int>(b.shape().dim(0));
  const double thr = regime_threshold(Regime::bihermitian, d, n);
  require_above_threshold(m, thr, "spectral_norm_grid_bisym");
  Mat w = bspec_weighted_form(b);
  ScanBest best = scan_hermitian_form(w, n, d, m, opts.budget, opts.threads);
  CoveringGrid grid(m, n, FieldTag::complex_);
  NormEstimate est;
  est.m_used = m;
  est.lower = best.value;
  est.upper = best.value * (1.0 + 1e-11) / (1.0 - thr / static_cast<double>(m));
  est.epsilon_used = thr / (static_cast<double>(m) - thr);
  est.witness = {grid.complex_point(best.index)};
  return est;
}

// ---------------------------------------------------------------------------
// polish
// ---------------------------------------------------------------------------

namespace {

cplx poly_eval(const Vec& coeffs, const std::vector<MonomialIndex>& support, const Vec& z) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    cplx term = coeffs[static_cast<Eigen::Index>(j)];
    for (std::size_t v = 0; v < support[j].size(); ++v)
      for (int e = 0; e < support[j][v]; ++e) term *= z[static_cast<Eigen::Index>(v)];
    acc += term;
  }
  return acc;
}

Vec poly_gradient(const Vec& coeffs, const std::vector<MonomialIndex>& support, const Vec& z) {
  const auto n = static_cast<Eigen::Index>(support.empty() ? 0 : support[0].size());
  Vec g = Vec::Zero(n);
  for (std::size_t j = 0; j < support.size(); ++j) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const int jv = support[j][static_cast<std::size_t>(v)];
      if (jv == 0) continue;
      cplx term = coeffs[static_cast<Eigen::Index>(j)] * static_cast<double>(jv);
      for (Eigen::Index u = 0; u < n; ++u) {
        const int e = support[j][static_cast<std::size_t>(u)] - (u == v ? 1 : 0);
        for (int q = 0; q < e; ++q) term *= z[u];
      }
      g[v] += term;
    }
  }
  return g;
}

}  // namespace

std::pair<double, Vec> spectral_polish(const SymTensor& t, const Vec& start,
                                       int max_iters) {
  const auto& support = t.support();
  Vec coeffs = overlap_poly_coeffs(t);  // |q(x)| is the objective, q holomorphic
  Vec x = start / start.norm();
  double val = std::abs(poly_eval(coeffs, support, x));
  double shift = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const cplx q = poly_eval(coeffs, support, x);
    if (std::abs(q) < 1e-300) break;
    const cplx phase = q / std::abs(q);
    Vec g = poly_gradient(coeffs, support, x);
    Vec dir = (g * std::conj(phase)).conjugate();
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      Vec cand = dir / static_cast<double>(t.d()) + shift * x;
      const double nrm = cand.norm();
      if (nrm < 1e-300) break;
      cand /= nrm;
      const double cval = std::abs(poly_eval(coeffs, support, cand));
      if (cval >= val - 1e-15) {
        accepted = cval > val;
        if (cval > val) {
          x = cand;
          if (cval - val < 1e-13 * std::max(1.0, cval)) {
            val = cval;
            return {val, x};
          }
          val = cval;
        }
        break;
      }
      shift = shift == 0.0 ? 1.0 : shift * 2.0;
    }
    if (!accepted) break;
  }
  return {val, x};
}

std::pair<double, std::vector<Vec>> product_polish(const DenseTensor& t,
                                                   std::vector<Vec> start,
                                                   int max_iters) {
  const int d = t.order();
  if (static_cast<int>(start.size()) != d)
    throw std::invalid_argument("product_polish: wrong number of factors");
  for (auto& v : start) v /= v.norm();

  double val = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    double before = val;
    for (int k = 0; k < d; ++k) {
      // contract the other modes from the highest index down so that the
      // position of mode j stays j while it is contracted
      DenseTensor cur = t;
      for (int j = d - 1; j >= 0; --j) {
        if (j == k) continue;
        cur = contract_mode(cur, j, start[static_cast<std::size_t>(j)]);
      }
      Vec w = cur.entries();  // F = <x_k, w>, optimal x_k = w/|w|
      const double nw = w.norm();
      if (nw < 1e-300) return {0.0, start};
      start[static_cast<std::size_t>(k)] = w / nw;
      val = nw;
    }
    if (val - before < 1e-14 * std::max(1.0, val) && it > 0) break;
  }
  return {val, start};
}

std::pair<double, Vec> bisym_polish(const HermitianTensor& b, const Vec& start,
                                    int max_iters) {
  const int d = b.order();
  const int n = static_cast<int>(b.shape().dim(0));
  Vec x = start / start.norm();

  auto kmatrix = [&](const Vec& z) {
    std::vector<Vec> reps(static_cast<std::size_t>(d - 1), z);
    DenseTensor zt = rank_one(reps);
    const std::int64_t inner = zt.shape().size();
    Mat k(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        cplx acc = 0.0;
        for (std::int64_t r = 0; r < inner; ++r)
          for (std::int64_t s = 0; s < inner; ++s)
            acc += std::conj(zt.entries()[r]) *
                   b.matrix()(p * inner + r, q * inner + s) * zt.entries()[s];
        k(p, q) = acc;
      }
    return k;
  };
  auto value = [&](const Vec& z) {
    Mat k = kmatrix(z);
    return std::abs((z.adjoint() * k * z)(0, 0).real());
  };

  double val = value(x);
  for (int it = 0; it < max_iters; ++it) {
    Mat k = kmatrix(x);
    auto dec = jacobi_hermitian(k);
    Eigen::Index pick = 0;
    for (Eigen::Index i = 1; i < dec.eigenvalues.size(); ++i)
      if (std::abs(dec.eigenvalues[i]) > std::abs(dec.eigenvalues[pick])) pick = i;
    Vec cand = dec.eigenvectors.col(pick);
    const cplx ov = x.dot(cand);
    if (std::abs(ov) > 1e-300) cand *= std::conj(ov) / std::abs(ov);
    double tau = 1.0;
    bool moved = false;
    for (int tries = 0; tries < 40; ++tries) {
      Vec next = (1.0 - tau) * x + tau * cand;
      if (next.norm() < 1e-12) break;
      next /= next.norm();
      const double nv = value(next);
      if (nv > val + 1e-15) {
        const double gain = nv - val;
        x = next;
        val = nv;
        moved = true;
        if (gain < 1e-13 * std::max(1.0, val)) return {val, x};
        break;
      }
      tau /= 2.0;
    }
    if (!moved) break;
  }
  return {val, x};
}

std::pair<double, std::vector<Vec>> hermitian_product_polish(
    const HermitianTensor& b, std::vector<Vec> start, int max_iters) {
  const int d = b.order();
  if (static_cast<int>(start.size()) != d)
    throw std::invalid_argument("hermitian_product_polish: wrong arity");
  for (auto& v : start) v /= v.norm();

  auto value = [&](const std::vector<Vec>& xs) {
    DenseTensor x = rank_one(xs);
    return std::abs(apply_form(b, x).real());
  };

  double val = value(start);
  for (int it = 0; it < max_iters; ++it) {
    const double before = val;
    for (int k = 0; k < d; ++k) {
      const int nk = static_cast<int>(b.shape().dim(k));
      Mat cond(nk, nk);
      for (int a = 0; a < nk; ++a)
        for (int c = 0; c < nk; ++c) {
          auto xa = start;
          auto xc = start;
          Vec ea = Vec::Zero(nk), ec = Vec::Zero(nk);
          ea[a] = 1.0;
          ec[c] = 1.0;
          xa[static_cast<std::size_t>(k)] = ea;
          xc[static_cast<std::size_t>(k)] = ec;
          cond(a, c) = rank_one(xa).entries().dot(b.matrix() * rank_one(xc).entries());
        }
      auto dec = jacobi_hermitian(cond);
      Eigen::Index pick = 0;
      for (Eigen::Index i = 1; i < dec.eigenvalues.size(); ++i)
        if (std::abs(dec.eigenvalues[i]) > std::abs(dec.eigenvalues[pick])) pick = i;
      start[static_cast<std::size_t>(k)] = dec.eigenvectors.col(pick);
      val = std::abs(dec.eigenvalues[pick]);
    }
    if (val - before < 1e-14 * std::max(1.0, val) && it > 0) break;
  }
  return {val, start};
}

// ---------------------------------------------------------------------------
// end-to-end spectral estimates
// ---------------------------------------------------------------------------

NormEstimate spectral_norm(const SymTensor& t, const OptimOptions& opts) {
  const std::int64_t m =
      opts.m_override > 0 ? opts.m_override
                          : choose_m(opts.epsilon, t.d(), Regime::symmetric, t.n());
  NormEstimate est = spectral_norm_grid(t, m, opts);
  if (est.lower == 0.0 && hilbert_norm(t) == 0.0) {
    est.upper = 0.0;
    return est;
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<Vec> starts = {est.witness[0]};
  for (int s = 0; s < 8; ++s)
    starts.push_back(random_unit(rng, t.n(), t.field() == FieldTag::complex_));
  for (const auto& s0 : starts) {
    auto [val, x] = spectral_polish(t, s0, opts.polish_iters);
    if (val > est.lower && val <= est.upper * (1.0 + 1e-12)) {
      est.lower = std::min(val, est.upper);
      est.witness = {x};
    }
  }
  return est;
}

NormEstimate spectral_norm_bisym(const HermitianTensor& b, const OptimOptions& opts) {
  const int d = b.order();
  const int n = static_cast<int>(b.shape().dim(0));
  const double thr = regime_threshold(Regime::bihermitian, d, n);
  std::int64_t m = opts.m_override > 0
                       ? opts.m_override
                       : choose_m(opts.epsilon, d, Regime::bihermitian, n);
  NormEstimate est;
  CoveringGrid probe(std::max<std::int64_t>(m, 1), n, FieldTag::complex_);
  const bool grid_feasible = probe.count() / 4 <= opts.budget;
  if (static_cast<double>(m) > thr && grid_feasible) {
    est = spectral_norm_grid_bisym(b, m, opts);
  } else {
    // below the certified regime: grid lower bound at a small m, eigen upper
    std::int64_t m_small = m;
    while (m_small > 1) {
      CoveringGrid g(m_small, n, FieldTag::complex_);
      if (g.count() / 4 <= opts.budget) break;
      m_small /= 2;
    }
    Mat w = bspec_weighted_form(b);
    ScanBest best = scan_hermitian_form(w, n, d, m_small, opts.budget, opts.threads);
    CoveringGrid grid(m_small, n, FieldTag::complex_);
    est.lower = best.value;
    est.witness = {grid.complex_point(best.index)};
    est.m_used = m_small;
    const auto& dec = b.spectral_decomposition();
    double lam = 0.0;
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i)
      lam = std::max(lam, std::abs(dec.eigenvalues[i]));
    est.upper = lam;
    est.certified = false;
  }
  // polish the lower bound
  std::mt19937_64 rng(opts.seed);
  std::vector<Vec> starts = est.witness;
  for (int s = 0; s < 8; ++s) starts.push_back(random_unit(rng, n, true));
  for (const auto& s0 : starts) {
    auto [val, x] = bisym_polish(b, s0, opts.polish_iters);
    if (val > est.lower && val <= est.upper * (1.0 + 1e-12)) {
      est.lower = std::min(val, est.upper);
      est.witness = {x};
    }
  }
  est.epsilon_used = est.lower > 0 ? est.upper / est.lower - 1.0 : 0.0;
  return est;
}

namespace {

// Deterministic product approximation of a dense tensor, one mode at a time.
std::vector<Vec> product_approx(const DenseTensor& t) {
  std::vector<Vec> out;
  DenseTensor cur = t;
  while (cur.order() > 1) {
    Mat a = unfold(cur, {0});
    MatrixNorms mn = matrix_norms(a);
    Vec x = mn.u.cols() > 0 ? Vec(mn.u.col(0)) : Vec(Vec::Unit(a.rows(), 0));
    out.push_back(x);
    cur = contract_mode(cur, 0, x);
  }
  Vec lastv = cur.entries();
  if (lastv.norm() < 1e-300)
    lastv = Vec::Unit(lastv.size(), 0);
  out.push_back(lastv / lastv.norm());
  return out;
}

}  // namespace

NormEstimate spectral_norm_dense(const DenseTensor& t, std::int64_t m,
                                 const OptimOptions& opts) {
  const int d = t.order();
  if (d < 2) throw std::invalid_argument("spectral_norm_dense: order >= 2");
  NormEstimate est;
  est.m_used = m;
  if (t.norm() == 0.0) return est;

  if (d == 2) {
    MatrixNorms mn = matrix_norms(t);
    est.lower = est.upper = mn.spectral;
    if (mn.u.cols() > 0) est.witness = {mn.u.col(0), mn.v.col(0).conjugate()};
    est.epsilon_used = 0.0;
    return est;
  }

  // certified upper: mode-contraction grids and single-mode unfoldings
  double upper = t.norm();
  int best_mode = 0;
  std::int64_t best_index = -1;
  double best_scan = -1.0;
  for (int mode = 0; mode < d; ++mode) {
    Mat a = unfold(t, {mode});
    upper = std::min(upper, matrix_norms(a).spectral);
  }
  for (int mode = 0; mode < d; ++mode) {
    const int row_mode = mode == 0 ? 1 : 0;
    ScanBest sb = scan_contraction_sigma(t, mode, row_mode, m, opts.budget, opts.threads);
    const double u = sb.value / (1.0 - 1.0 / static_cast<double>(m));
    if (u < upper) upper = u;
    if (sb.value > best_scan) {
      best_scan = sb.value;
      best_mode = mode;
      best_index = sb.index;
    }
  }
  est.upper = upper;

  // lower bound: polish from the best grid contraction and assorted starts
  std::vector<std::vector<Vec>> starts;
  if (best_index >= 0) {
    CoveringGrid grid(m, static_cast<int>(t.shape().dim(best_mode)), FieldTag::complex_);
    Vec v = grid.complex_point(best_index);
    DenseTensor contracted = contract_mode(t, best_mode, v);
    std::vector<Vec> factors = product_approx(contracted);
    factors.insert(factors.begin() + best_mode, v);
    starts.push_back(factors);
  }
  starts.push_back(product_approx(t));
  std::mt19937_64 rng(opts.seed);
  for (int s = 0; s < 12; ++s) {
    std::vector<Vec> xs;
    for (int k = 0; k < d; ++k)
      xs.push_back(random_unit(rng, static_cast<int>(t.shape().dim(k)), true));
    starts.push_back(xs);
  }
  for (auto& s0 : starts) {
    auto [val, xs] = product_polish(t, s0, opts.polish_iters);
    if (val > est.lower) {
      est.lower = std::min(val, est.upper);
      est.witness = xs;
    }
  }
  est.epsilon_used = est.lower > 0 ? est.upper / est.lower - 1.0 : 0.0;
  return est;
}

NormEstimate spec_norm_hermitian(const HermitianTensor& b, const OptimOptions& opts) {
  const int d = b.order();
  NormEstimate est;
  const auto& dec = b.spectral_decomposition();
  double lam = 0.0;
  for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i)
    lam = std::max(lam, std::abs(dec.eigenvalues[i]));
  est.upper = lam;  // ||B||_spec <= ||lambda||_inf

  std::vector<std::vector<Vec>> starts;
  // basis product at the largest diagonal entry
  {
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < b.matrix().rows(); ++i)
      if (std::abs(b.matrix()(i, i).real()) > std::abs(b.matrix()(arg, arg).real()))
        arg = i;
    auto idx = b.shape().unflat(arg);
    std::vector<Vec> xs;
    for (int k = 0; k < d; ++k) {
      Vec e = Vec::Zero(b.shape().dim(k));
      e[idx[static_cast<std::size_t>(k)]] = 1.0;
      xs.push_back(e);
    }
    starts.push_back(xs);
  }
  // product approximations of the extreme eigenvectors
  for (Eigen::Index which : {Eigen::Index(0), dec.eigenvalues.size() - 1}) {
    DenseTensor top(b.shape(), dec.eigenvectors.col(which));
    starts.push_back(product_approx(top));
  }
  std::mt19937_64 rng(opts.seed);
  for (int s = 0; s < 8; ++s) {
    std::vector<Vec> xs;
    for (int k = 0; k < d; ++k)
      xs.push_back(random_unit(rng, static_cast<int>(b.shape().dim(k)), true));
    starts.push_back(xs);
  }
  for (auto& s0 : starts) {
    auto [val, xs] = hermitian_product_polish(b, s0, opts.polish_iters);
    if (val > est.lower) {
      est.lower = std::min(val, est.upper);
      est.witness = xs;
    }
  }
  est.epsilon_used = est.lower > 0 ? est.upper / est.lower - 1.0 : 0.0;
  return est;
}

// ---------------------------------------------------------------------------
// d = 2 oracle
// ---------------------------------------------------------------------------

MatrixNorms matrix_norms(const Mat& a) {
  MatrixNorms out;
  const bool tall = a.rows() >= a.cols();
  Mat g = tall ? Mat(a.adjoint() * a) : Mat(a * a.adjoint());
  auto dec = jacobi_hermitian(g);
  const Eigen::Index r = g.rows();
  out.singular_values = RVec(r);
  for (Eigen::Index i = 0; i < r; ++i)
    out.singular_values[i] = std::sqrt(std::max(0.0, dec.eigenvalues[i]));
  out.spectral = r > 0 ? out.singular_values[0] : 0.0;
  out.nuclear = out.singular_values.sum();

  const double tol = 1e-14 * std::max(1.0, out.spectral);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < r; ++i)
    if (out.singular_values[i] > tol) ++rank;
  out.u = Mat(a.rows(), rank);
  out.v = Mat(a.cols(), rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    if (tall) {
      out.v.col(i) = dec.eigenvectors.col(i);
      out.u.col(i) = a * out.v.col(i) / out.singular_values[i];
    } else {
      out.u.col(i) = dec.eigenvectors.col(i);
      out.v.col(i) = a.adjoint() * out.u.col(i) / out.singular_values[i];
    }
  }
  return out;
}

MatrixNorms matrix_norms(const DenseTensor& t) {
  if (t.order() != 2) throw std::invalid_argument("matrix_norms: d != 2");
  return matrix_norms(unfold(t, {0}));
}

// ---------------------------------------------------------------------------
// nuclear norms by column generation
// ---------------------------------------------------------------------------

namespace {

struct SymColumn {
  Vec w;     // unit vector
  int sign;  // +-1
};

Vec monomials_of(const std::vector<MonomialIndex>& support, const Vec& w) {
  Vec g(static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) {
    cplx term = 1.0;
    for (std::size_t v = 0; v < support[j].size(); ++v)
      for (int e = 0; e < support[j][v]; ++e) term *= w[static_cast<Eigen::Index>(v)];
    g[static_cast<Eigen::Index>(j)] = term;
  }
  return g;
}

RVec stack_reim(const Vec& g, bool complex_rows) {
  if (!complex_rows) {
    RVec out(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) out[i] = g[i].real();
    return out;
  }
  RVec out(2 * g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    out[i] = g[i].real();
    out[g.size() + i] = g[i].imag();
  }
  return out;
}

Vec rotate_i(const Vec& w) {
  return w * cplx(0.0, 1.0);
}

// quantized identity of a column, for deduplication across pricing rounds
std::string column_key(const Vec& w, int sign) {
  std::string key(1, sign > 0 ? '+' : '-');
  key.reserve(1 + 16 * static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const auto re = static_cast<std::int64_t>(std::llround(w[i].real() * 1e12));
    const auto im = static_cast<std::int64_t>(std::llround(w[i].imag() * 1e12));
    key.append(reinterpret_cast<const char*>(&re), sizeof(re));
    key.append(reinterpret_cast<const char*>(&im), sizeof(im));
  }
  return key;
}

// signed value of sum_{a,b} W_ab z^{j_a} conj(z^{j_b}) (real for Hermitian W)
double hermitian_form_value(const Mat& weighted,
                            const std::vector<MonomialIndex>& support, const Vec& z) {
  Vec mono = monomials_of(support, z);
  cplx acc = 0.0;
  for (Eigen::Index a = 0; a < mono.size(); ++a)
    for (Eigen::Index c = 0; c < mono.size(); ++c)
      acc += weighted(a, c) * mono[a] * std::conj(mono[c]);
  return acc.real();
}

}  // namespace

NuclearResult nuclear_norm_grid(const SymTensor& t, std::int64_t m,
                                const OptimOptions& opts) {
  const int n = t.n(), d = t.d();
  const bool complex_field = t.field() == FieldTag::complex_;
  const auto& support = t.support();
  const auto nj = static_cast<Eigen::Index>(support.size());

  NuclearResult res;
  res.decomposition.kind =
      complex_field ? TargetKind::symmetric_complex : TargetKind::symmetric_real;
  if (hilbert_norm(t) == 0.0) {
    res.estimate.m_used = m;
    return res;
  }

  RVec b = stack_reim(t.coeffs(), complex_field);
  MasterLP master(b);
  std::vector<SymColumn> columns;
  std::set<std::string> column_keys;
  auto add_column = [&](const Vec& w, int sign) {
    std::string key = column_key(w, sign);
    if (!column_keys.insert(key).second) return false;
    Vec g = monomials_of(support, w);
    master.add_column(static_cast<double>(sign) * stack_reim(g, complex_field), 1.0);
    columns.push_back({w, sign});
    return true;
  };

  CoveringGrid grid(m, n, complex_field ? FieldTag::complex_ : FieldTag::real);
  check_budget(grid.count() / (complex_field ? 4 : 2), opts.budget);

  // seed with basis directions (and their i-rotations over C)
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    for (int s : {1, -1}) add_column(e, s);
    if (complex_field)
      for (int s : {1, -1}) add_column(rotate_i(e), s);
  }
  // seed with the spectral witness
  {
    NormEstimate sp = spectral_norm_grid(t, m, opts);
    for (int s : {1, -1}) add_column(sp.witness[0], s);
    if (complex_field)
      for (int s : {1, -1}) add_column(rotate_i(sp.witness[0]), s);
  }

  double pricing_max = 0.0;
  bool converged = false;
  const int max_rounds = 300;
  for (int round = 0; round < max_rounds; ++round) {
    LPStatus st = master.solve();
    RVec y = master.duals();

    // dual polynomial p with functional(w, s) = s Re p(w)
    Vec p(nj);
    for (Eigen::Index j = 0; j < nj; ++j)
      p[j] = complex_field ? cplx(y[j], -y[nj + j]) : cplx(y[j], 0.0);

    ScanBest best;
    if (complex_field)
      best = scan_complex_sym(p, n, d, m, ScanObjective::real_part, opts.budget,
                              opts.threads);
    else {
      RVec pr(nj);
      for (Eigen::Index j = 0; j < nj; ++j) pr[j] = p[j].real();
      best = scan_real_sym(pr, n, d, m, opts.budget, opts.threads);
    }
    pricing_max = best.value;

    const double enter_bar = st == LPStatus::infeasible ? 1e-9 : 1.0 + 1e-9;
    if (best.value <= enter_bar) {
      if (st == LPStatus::infeasible)
        throw std::runtime_error(
            "nuclear_norm_grid: grid does not span the target; increase m");
      converged = true;
      break;
    }

    // add the best point and its phase rotations with the improving signs
    std::vector<Vec> cands;
    if (complex_field) {
      Vec w = grid.complex_point(best.index);
      cands = {w, rotate_i(w)};
    } else {
      RVec xr = CoveringGrid(m, n, FieldTag::real).real_point(best.index);
      Vec w(xr.size());
      for (Eigen::Index i = 0; i < xr.size(); ++i) w[i] = xr[i];
      cands = {w};
    }
    bool added = false;
    for (const auto& w : cands) {
      Vec g = monomials_of(support, w);
      double f = 0.0;
      for (Eigen::Index j = 0; j < nj; ++j) f += (p[j] * g[j]).real();
      const int sign = f >= 0 ? 1 : -1;
      added = add_column(w, sign) || added;
      added = add_column(w, -sign) || added;
    }
    if (!added) break;  // fp-degenerate master; bounds below stay valid
  }

  const double v = master.value();
  res.estimate.upper = v;
  res.estimate.m_used = m;

  // duality lower bound: V / c with c >= continuum max of the dual functional
  RVec y = master.duals();
  Vec p(nj);
  for (Eigen::Index j = 0; j < nj; ++j)
    p[j] = complex_field ? cplx(y[j], -y[nj + j]) : cplx(y[j], 0.0);
  res.dual_coeffs = p;
  double dual_hilbert = 0.0;
  for (Eigen::Index j = 0; j < nj; ++j)
    dual_hilbert += std::norm(p[j]) /
                    static_cast<double>(multinomial(support[static_cast<std::size_t>(j)]));
  dual_hilbert = std::sqrt(dual_hilbert);
  const double gamma = std::max(pricing_max, 1e-12);
  double c_cont = gamma + (static_cast<double>(d) / static_cast<double>(m)) * dual_hilbert;
  double lower = 0.0;
  if (static_cast<double>(m) > d && converged) {
    // with pricing exhausted the master value is the exact grid norm
    c_cont = std::min(c_cont, gamma / (1.0 - static_cast<double>(d) / static_cast<double>(m)));
    lower = (1.0 - static_cast<double>(d) / static_cast<double>(m)) * v;
    res.estimate.certified = true;
    res.estimate.epsilon_used =
        static_cast<double>(d) / (static_cast<double>(m) - d);
  }
  const double dual_value = master.duals().dot(b);
  lower = std::max({lower, dual_value / c_cont, hilbert_norm(t)});
  res.estimate.lower = std::min(lower, v);

  RVec x = master.primal();
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] > 1e-12) {
      DecompositionTerm term;
      term.weight = x[j];
      term.sign = columns[static_cast<std::size_t>(j)].sign;
      term.vectors = {columns[static_cast<std::size_t>(j)].w};
      res.decomposition.terms.push_back(term);
    }
  if (!res.decomposition.terms.empty())
    res.estimate.witness = {res.decomposition.terms[0].vectors[0]};
  return res;
}

NuclearResult nuclear_norm(const SymTensor& t, const OptimOptions& opts) {
  const std::int64_t m =
      opts.m_override > 0 ? opts.m_override
                          : choose_m(opts.epsilon, t.d(), Regime::symmetric, t.n());
  return nuclear_norm_grid(t, m, opts);
}

NuclearResult nuclear_norm_grid_bisym(const HermitianTensor& bt, std::int64_t m,
                                      const OptimOptions& opts) {
  const int d = bt.order();
  const int n = static_cast<int>(bt.shape().dim(0));
  BiSymTensor f = bisym_coefficients(bt);
  const auto& support = f.support();
  const auto nj = static_cast<Eigen::Index>(support.size());

  NuclearResult res;
  res.decomposition.kind = TargetKind::bihermitian;

  Vec fflat(nj * nj);
  for (Eigen::Index a = 0; a < nj; ++a)
    for (Eigen::Index c = 0; c < nj; ++c) fflat[a * nj + c] = f.coeffs()(a, c);
  RVec b = stack_reim(fflat, true);
  MasterLP master(b);

  struct BhColumn {
    Vec w;
    int sign;
  };
  std::vector<BhColumn> columns;
  std::set<std::string> column_keys;
  auto g_of = [&](const Vec& w) {
    Vec mono = monomials_of(support, w);
    Vec g(nj * nj);
    for (Eigen::Index a = 0; a < nj; ++a)
      for (Eigen::Index c = 0; c < nj; ++c)
        g[a * nj + c] = mono[a] * std::conj(mono[c]);
    return g;
  };
  auto add_column = [&](const Vec& w, int sign) {
    std::string key = column_key(w, sign);
    if (!column_keys.insert(key).second) return false;
    master.add_column(static_cast<double>(sign) * stack_reim(g_of(w), true), 1.0);
    columns.push_back({w, sign});
    return true;
  };

  CoveringGrid grid(m, n, FieldTag::complex_);
  check_budget(grid.count() / 4, opts.budget);

  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    add_column(e, 1);
    add_column(e, -1);
  }
  {
    Mat w = bspec_weighted_form(bt);
    ScanBest sb = scan_hermitian_form(w, n, d, std::min<std::int64_t>(m, 3), opts.budget,
                                      opts.threads);
    CoveringGrid g3(std::min<std::int64_t>(m, 3), n, FieldTag::complex_);
    add_column(g3.complex_point(sb.index), 1);
    add_column(g3.complex_point(sb.index), -1);
  }

  double pricing_max = 0.0;
  bool converged = false;
  Mat w_eff;
  const int max_rounds = 300;
  for (int round = 0; round < max_rounds; ++round) {
    LPStatus st = master.solve();
    RVec y = master.duals();
    Mat yc(nj, nj);
    for (Eigen::Index a = 0; a < nj; ++a)
      for (Eigen::Index c = 0; c < nj; ++c)
        yc(a, c) = cplx(y[a * nj + c], -y[nj * nj + a * nj + c]);
    w_eff = (yc + yc.adjoint()) / 2.0;  // Re of the functional

    ScanBest best = scan_hermitian_form(w_eff, n, d, m, opts.budget, opts.threads);
    pricing_max = best.value;
    const double enter_bar = st == LPStatus::infeasible ? 1e-9 : 1.0 + 1e-9;
    if (best.value <= enter_bar) {
      if (st == LPStatus::infeasible)
        throw std::runtime_error(
            "nuclear_norm_grid_bisym: grid does not span the target; increase m");
      converged = true;
      break;
    }
    Vec w = grid.complex_point(best.index);
    const double fval = hermitian_form_value(w_eff, support, w);
    const int sign = fval >= 0 ? 1 : -1;
    bool added = add_column(w, sign);
    added = add_column(w, -sign) || added;
    if (!added) break;
  }

  const double v = master.value();
  res.estimate.upper = v;
  res.estimate.m_used = m;

  // continuum certificate from the dual Hermitian tensor
  BiSymTensor dual_coeffs(n, d, true);
  {
    Mat fd(nj, nj);
    for (Eigen::Index a = 0; a < nj; ++a)
      for (Eigen::Index c = 0; c < nj; ++c) {
        const double ca = static_cast<double>(multinomial(support[static_cast<std::size_t>(a)]));
        const double cc = static_cast<double>(multinomial(support[static_cast<std::size_t>(c)]));
        fd(c, a) = w_eff(a, c) / (ca * cc);
      }
    dual_coeffs = BiSymTensor(n, d, std::move(fd), true);
  }
  HermitianTensor hdual = bisym_from_coefficients(dual_coeffs);
  res.dual_matrix = hdual.matrix();
  auto dec = hdual.spectral_decomposition();
  double lam = 0.0;
  for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i)
    lam = std::max(lam, std::abs(dec.eigenvalues[i]));

  const double thr = regime_threshold(Regime::bihermitian, d, n);
  const double gamma = std::max(pricing_max, 1e-12);
  double c_cont = gamma + (2.0 * d / static_cast<double>(m)) * lam;
  double lower = 0.0;
  res.estimate.certified = false;
  if (static_cast<double>(m) > thr && converged) {
    c_cont = std::min(c_cont, gamma / (1.0 - thr / static_cast<double>(m)));
    lower = (1.0 - thr / static_cast<double>(m)) * v;
    res.estimate.certified = true;
    res.estimate.epsilon_used = thr / (static_cast<double>(m) - thr);
  }
  double eig_abs_sum = 0.0;
  {
    const auto& decb = bt.spectral_decomposition();
    for (Eigen::Index i = 0; i < decb.eigenvalues.size(); ++i)
      eig_abs_sum += std::abs(decb.eigenvalues[i]);
  }
  const double dual_value = master.duals().dot(b);
  lower = std::max({lower, dual_value / c_cont, eig_abs_sum});
  res.estimate.lower = std::min(lower, v);
  if (!res.estimate.certified)
    res.estimate.epsilon_used =
        res.estimate.lower > 0 ? res.estimate.upper / res.estimate.lower - 1.0 : 0.0;

  RVec x = master.primal();
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] > 1e-12) {
      DecompositionTerm term;
      term.weight = x[j];
      term.sign = columns[static_cast<std::size_t>(j)].sign;
      term.vectors = {columns[static_cast<std::size_t>(j)].w};
      res.decomposition.terms.push_back(term);
    }
  return res;
}

NuclearResult nuclear_norm_product(const HermitianTensor& bt, std::int64_t m,
                                   const OptimOptions& opts) {
  if (bt.order() != 2)
    throw std::invalid_argument(
        "nuclear_norm_product: only bipartite shapes are supported");
  const int n1 = static_cast<int>(bt.shape().dim(0));
  const int n2 = static_cast<int>(bt.shape().dim(1));
  const auto nsz = static_cast<Eigen::Index>(bt.matrix().rows());

  NuclearResult res;
  res.decomposition.kind = TargetKind::product_states;

  Vec fflat(nsz * nsz);
  for (Eigen::Index r = 0; r < nsz; ++r)
    for (Eigen::Index c = 0; c < nsz; ++c) fflat[r * nsz + c] = bt.matrix()(r, c);
  RVec b = stack_reim(fflat, true);
  MasterLP master(b);

  struct ProdColumn {
    Vec x, y;
    int sign;
  };
  std::vector<ProdColumn> columns;
  std::set<std::string> column_keys;
  auto add_column = [&](const Vec& x, const Vec& y, int sign) {
    Vec both(x.size() + y.size());
    both << x, y;
    std::string key = column_key(both, sign);
    if (!column_keys.insert(key).second) return false;
    Vec state = rank_one({x, y}).entries();
    Vec g(nsz * nsz);
    for (Eigen::Index r = 0; r < nsz; ++r)
      for (Eigen::Index c = 0; c < nsz; ++c) g[r * nsz + c] = state[r] * std::conj(state[c]);
    master.add_column(static_cast<double>(sign) * stack_reim(g, true), 1.0);
    columns.push_back({x, y, sign});
    return true;
  };

  CoveringGrid grid(m, n1, FieldTag::complex_);
  check_budget(grid.count() / 4, opts.budget);

  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      Vec ex = Vec::Zero(n1), ey = Vec::Zero(n2);
      ex[i] = 1.0;
      ey[j] = 1.0;
      add_column(ex, ey, 1);
      add_column(ex, ey, -1);
    }
  {
    const auto& dec = bt.spectral_decomposition();
    for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k) {
      if (std::abs(dec.eigenvalues[k]) < 1e-8) continue;
      DenseTensor vec(bt.shape(), dec.eigenvectors.col(k));
      auto xs = product_approx(vec);
      add_column(xs[0], xs[1], 1);
      add_column(xs[0], xs[1], -1);
    }
  }

  Mat h_eff = Mat::Zero(nsz, nsz);
  double env = 0.0;
  const int max_rounds = 80;
  for (int round = 0; round < max_rounds; ++round) {
    LPStatus st = master.solve();
    RVec y = master.duals();
    Mat yc(nsz, nsz);
    for (Eigen::Index r = 0; r < nsz; ++r)
      for (Eigen::Index c = 0; c < nsz; ++c)
        yc(r, c) = cplx(y[r * nsz + c], -y[nsz * nsz + r * nsz + c]);
    // functional on a column is Re(X^H yc^T X); Hermitize that form
    h_eff = (yc.transpose() + yc.conjugate()) / 2.0;

    ScanBest sb = scan_bipartite_eigmax(h_eff, n1, n2, m, opts.budget, opts.threads);
    env = sb.value;
    const double enter_bar = st == LPStatus::infeasible ? 1e-9 : 1.0 + 1e-9;
    if (env <= enter_bar) {
      if (st == LPStatus::infeasible)
        throw std::runtime_error("nuclear_norm_product: columns do not span the target");
      break;
    }

    Vec x = grid.complex_point(sb.index);
    // exact inner maximizer over the second factor
    Mat kx(n2, n2);
    for (int j = 0; j < n2; ++j)
      for (int l = 0; l < n2; ++l) {
        cplx acc = 0.0;
        for (int i = 0; i < n1; ++i)
          for (int i2 = 0; i2 < n1; ++i2)
            acc += std::conj(x[i]) * h_eff(i * n2 + j, i2 * n2 + l) * x[i2];
        kx(j, l) = acc;
      }
    auto dec = jacobi_hermitian(kx);
    Eigen::Index pick = 0;
    for (Eigen::Index i = 1; i < dec.eigenvalues.size(); ++i)
      if (std::abs(dec.eigenvalues[i]) > std::abs(dec.eigenvalues[pick])) pick = i;
    Vec yvec = dec.eigenvectors.col(pick);
    const double fval = dec.eigenvalues[pick];
    const int sign = fval >= 0 ? 1 : -1;
    bool added = add_column(x, yvec, sign);
    added = add_column(x, yvec, -sign) || added;
    // polished variant of the same candidate
    HermitianTensor htmp(bt.shape(), h_eff);
    auto [pval, pxs] = hermitian_product_polish(htmp, {x, yvec}, 100);
    (void)pval;
    added = add_column(pxs[0], pxs[1], 1) || added;
    added = add_column(pxs[0], pxs[1], -1) || added;
    if (!added) break;
  }

  const double v = master.value();
  res.estimate.upper = v;
  res.estimate.m_used = m;
  res.dual_matrix = h_eff;

  double lam = 0.0;
  {
    auto dech = jacobi_hermitian(h_eff);
    for (Eigen::Index i = 0; i < dech.eigenvalues.size(); ++i)
      lam = std::max(lam, std::abs(dech.eigenvalues[i]));
  }
  const double c_cont = std::max(env, 1e-12) + (2.0 / static_cast<double>(m)) * lam;
  double eig_abs_sum = 0.0;
  {
    const auto& decb = bt.spectral_decomposition();
    for (Eigen::Index i = 0; i < decb.eigenvalues.size(); ++i)
      eig_abs_sum += std::abs(decb.eigenvalues[i]);
  }
  const double dual_value = master.duals().dot(b);
  res.estimate.lower = std::min(std::max(dual_value / c_cont, eig_abs_sum), v);
  res.estimate.certified = false;
  res.estimate.epsilon_used =
      res.estimate.lower > 0 ? res.estimate.upper / res.estimate.lower - 1.0 : 0.0;

  RVec x = master.primal();
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] > 1e-12) {
      DecompositionTerm term;
      term.weight = x[j];
      term.sign = columns[static_cast<std::size_t>(j)].sign;
      term.vectors = {columns[static_cast<std::size_t>(j)].x,
                      columns[static_cast<std::size_t>(j)].y};
      res.decomposition.terms.push_back(term);
    }
  return res;
}

// ---------------------------------------------------------------------------
// residuals
// ---------------------------------------------------------------------------

double reconstruction_residual(const Decomposition& dec, const SymTensor& target) {
  Vec acc = Vec::Zero(target.coeffs().size());
  for (const auto& term : dec.terms) {
    Vec g = monomials_of(target.support(), term.vectors[0]);
    acc += term.weight * static_cast<double>(term.sign) * g;
  }
  double num = 0.0, den = 0.0;
  for (Eigen::Index j = 0; j < acc.size(); ++j) {
    const double c = static_cast<double>(
        multinomial(target.support()[static_cast<std::size_t>(j)]));
    num += c * std::norm(acc[j] - target.coeffs()[j]);
    den += c * std::norm(target.coeffs()[j]);
  }
  return std::sqrt(num) / std::max(1e-300, std::sqrt(std::max(den, 1.0)));
}

double reconstruction_residual(const Decomposition& dec, const HermitianTensor& target) {
  Mat acc = Mat::Zero(target.matrix().rows(), target.matrix().cols());
  for (const auto& term : dec.terms) {
    Vec state;
    if (dec.kind == TargetKind::product_states) {
      state = rank_one({term.vectors[0], term.vectors[1]}).entries();
    } else {
      std::vector<Vec> reps(static_cast<std::size_t>(target.order()), term.vectors[0]);
      state = rank_one(reps).entries();
    }
    acc += term.weight * static_cast<double>(term.sign) * (state * state.adjoint());
  }
  return (acc - target.matrix()).norm() / std::max(1.0, target.matrix().norm());
}

}  // namespace entanglib
