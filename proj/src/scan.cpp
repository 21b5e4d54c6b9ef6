#include "entanglib/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <thread>

#include "entanglib/sym.hpp"

namespace entanglib {

namespace {

constexpr int kMaxPolyDeg = 24;

struct FDTable {
  std::array<cplx, kMaxPolyDeg + 1> delta;
  int deg = 0;

  // q given by coefficients (ascending powers); init at integer t0
  void init(const cplx* coeff, int degree, double t0) {
    deg = degree;
    std::array<cplx, kMaxPolyDeg + 1> vals;
    for (int s = 0; s <= deg; ++s) {
      const double t = t0 + s;
      cplx acc = coeff[deg];
      for (int k = deg - 1; k >= 0; --k) acc = acc * t + coeff[k];
      vals[static_cast<std::size_t>(s)] = acc;
    }
    // forward difference table
    std::array<cplx, kMaxPolyDeg + 1> w = vals;
    for (int lvl = 0; lvl <= deg; ++lvl) {
      delta[static_cast<std::size_t>(lvl)] = w[0];
      for (int s = 0; s + 1 <= deg - lvl; ++s)
        w[static_cast<std::size_t>(s)] =
            w[static_cast<std::size_t>(s + 1)] - w[static_cast<std::size_t>(s)];
    }
  }

  cplx value() const { return delta[0]; }

  void advance() {
    for (int lvl = 0; lvl < deg; ++lvl)
      delta[static_cast<std::size_t>(lvl)] += delta[static_cast<std::size_t>(lvl + 1)];
  }
};

/// Enumerates the complex grid quotient by z -> iz. For each "row" the last
/// real coordinate (Im z_{n-1}) runs over a contiguous range handled by the
/// row callback. Rows are split across threads; results merge by
/// (value, then smaller raw index), which is partition independent.
struct ComplexQuotientEnum {
  int n;             // ambient complex dimension
  std::int64_t k;    // lattice half width (2n*m)
  std::int64_t base; // 2k+1

  // fn(z_partial, re_last, inner_lo, inner_hi, base_index, best)
  // z_partial holds z_0..z_{n-2} (lattice-valued); z_{n-1} = re_last + i*t.
  using RowFn = std::function<void(const std::vector<cplx>&, double, std::int64_t,
                                   std::int64_t, std::int64_t, ScanBest&)>;

  ScanBest run(int threads, const RowFn& fn) const {
    ScanBest total;
    for (int lead = 0; lead < n; ++lead) {
      // outer digits: re_lead [1..k], im_lead [0..k] (when lead < n-1),
      // then free pairs, then re_{n-1} [-k..k]; inner is im_{n-1}.
      std::vector<std::int64_t> lo, hi;
      const bool lead_is_last = lead == n - 1;
      if (lead_is_last) {
        lo = {1};
        hi = {k};
      } else {
        lo = {1, 0};
        hi = {k, k};
        for (int v = lead + 1; v < n - 1; ++v) {
          lo.push_back(-k); hi.push_back(k);
          lo.push_back(-k); hi.push_back(k);
        }
        lo.push_back(-k); hi.push_back(k);  // re_{n-1}
      }
      const std::int64_t inner_lo = lead_is_last ? 0 : -k;
      const std::int64_t inner_hi = k;

      std::int64_t rows = 1;
      for (std::size_t i = 0; i < lo.size(); ++i) rows *= hi[i] - lo[i] + 1;

      const int nthreads = std::max(1, threads);
      std::vector<ScanBest> partial(static_cast<std::size_t>(nthreads));
      auto work = [&](int tid) {
        const std::int64_t r0 = rows * tid / nthreads;
        const std::int64_t r1 = rows * (tid + 1) / nthreads;
        std::vector<std::int64_t> digit(lo.size());
        std::vector<cplx> z(static_cast<std::size_t>(n - 1));
        ScanBest& best = partial[static_cast<std::size_t>(tid)];
        for (std::int64_t r = r0; r < r1; ++r) {
          std::int64_t rem = r;
          for (int i = static_cast<int>(lo.size()) - 1; i >= 0; --i) {
            const std::int64_t width = hi[static_cast<std::size_t>(i)] -
                                       lo[static_cast<std::size_t>(i)] + 1;
            digit[static_cast<std::size_t>(i)] =
                lo[static_cast<std::size_t>(i)] + rem % width;
            rem /= width;
          }
          double re_last;
          if (lead_is_last) {
            for (int v = 0; v < n - 1; ++v) z[static_cast<std::size_t>(v)] = 0.0;
            re_last = static_cast<double>(digit[0]);
          } else {
            for (int v = 0; v < lead; ++v) z[static_cast<std::size_t>(v)] = 0.0;
            std::size_t pos = 0;
            for (int v = lead; v < n - 1; ++v) {
              z[static_cast<std::size_t>(v)] =
                  cplx(static_cast<double>(digit[pos]), static_cast<double>(digit[pos + 1]));
              pos += 2;
            }
            re_last = static_cast<double>(digit[pos]);
          }
          // raw odometer index of (row, t = inner_lo)
          std::int64_t idx = 0;
          for (int v = 0; v < n - 1; ++v) {
            idx = idx * base + (static_cast<std::int64_t>(z[static_cast<std::size_t>(v)].real()) + k);
            idx = idx * base + (static_cast<std::int64_t>(z[static_cast<std::size_t>(v)].imag()) + k);
          }
          idx = idx * base + (static_cast<std::int64_t>(re_last) + k);
          idx = idx * base + (inner_lo + k);
          fn(z, re_last, inner_lo, inner_hi, idx, best);
        }
      };
      if (nthreads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(work, tid);
        for (auto& th : pool) th.join();
      }
      for (const auto& p : partial) {
        total.visited += p.visited;
        if (p.index >= 0 &&
            (total.index < 0 || p.value > total.value ||
             (p.value == total.value && p.index < total.index))) {
          total.value = p.value;
          total.index = p.index;
        }
      }
    }
    return total;
  }
};

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

// FD accumulation can drift by ~1e-13 relative; winners are re-evaluated
// exactly so reported values are reproducible at their witness points.
ScanBest scan_complex_sym(const Vec& coeffs, int n, int d, std::int64_t m,
                          ScanObjective obj, std::int64_t budget, int threads) {
  CoveringGrid grid(m, n, FieldTag::complex_);
  check_budget(grid.count() / 4, budget);  // phase quotient visits a quarter
  const auto support = enumerate_J(d, n);
  if (coeffs.size() != static_cast<Eigen::Index>(support.size()))
    throw std::invalid_argument("scan_complex_sym: coefficient count != |J|");

  // binomials and i^l for the (c + i t)^k expansion
  std::array<std::array<double, kMaxPolyDeg + 1>, kMaxPolyDeg + 1> binom{};
  for (int a = 0; a <= d; ++a) {
    binom[static_cast<std::size_t>(a)][0] = 1.0;
    for (int b = 1; b <= a; ++b)
      binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          static_cast<double>(binomial(a, b));
  }
  const cplx iunit(0.0, 1.0);
  const bool both_parts = obj == ScanObjective::real_part && d % 2 == 1;
  const bool real_only = obj == ScanObjective::real_part && d % 2 == 0;

  ComplexQuotientEnum en{n, grid.half_width(), 2 * grid.half_width() + 1};
  ScanBest best = en.run(threads, [&](const std::vector<cplx>& z, double re_last,
                                      std::int64_t t_lo, std::int64_t t_hi,
                                      std::int64_t base_index, ScanBest& acc) {
    // aggregate by the power of z_{n-1}
    std::array<cplx, kMaxPolyDeg + 1> a_pow{};
    std::array<std::array<cplx, kMaxPolyDeg + 1>, 8> powz{};
    for (int v = 0; v < n - 1; ++v) {
      powz[static_cast<std::size_t>(v)][0] = 1.0;
      for (int e = 1; e <= d; ++e)
        powz[static_cast<std::size_t>(v)][static_cast<std::size_t>(e)] =
            powz[static_cast<std::size_t>(v)][static_cast<std::size_t>(e - 1)] *
            z[static_cast<std::size_t>(v)];
    }
    for (std::size_t j = 0; j < support.size(); ++j) {
      cplx term = coeffs[static_cast<Eigen::Index>(j)];
      if (term == cplx(0.0, 0.0)) continue;
      for (int v = 0; v < n - 1; ++v)
        term *= powz[static_cast<std::size_t>(v)]
                    [static_cast<std::size_t>(support[j][static_cast<std::size_t>(v)])];
      a_pow[static_cast<std::size_t>(support[j][static_cast<std::size_t>(n - 1)])] += term;
    }
    // q(t) = sum_k a_pow[k] (c + i t)^k, c = re_last
    std::array<cplx, kMaxPolyDeg + 1> b{};
    std::array<double, kMaxPolyDeg + 1> cpow{};
    cpow[0] = 1.0;
    for (int e = 1; e <= d; ++e) cpow[static_cast<std::size_t>(e)] =
        cpow[static_cast<std::size_t>(e - 1)] * re_last;
    cplx il = 1.0;
    for (int l = 0; l <= d; ++l) {
      cplx acc2 = 0.0;
      for (int kk = l; kk <= d; ++kk)
        acc2 += a_pow[static_cast<std::size_t>(kk)] *
                binom[static_cast<std::size_t>(kk)][static_cast<std::size_t>(l)] *
                cpow[static_cast<std::size_t>(kk - l)];
      b[static_cast<std::size_t>(l)] = acc2 * il;
      il *= iunit;
    }

    double r2 = re_last * re_last;
    for (const auto& zz : z) r2 += std::norm(zz);

    FDTable fd;
    fd.init(b.data(), d, static_cast<double>(t_lo));
    double t = static_cast<double>(t_lo);
    std::int64_t idx = base_index;
    for (std::int64_t s = t_lo; s <= t_hi; ++s, t += 1.0, ++idx) {
      const double n2 = r2 + t * t;
      if (n2 > 0.0) {
        const cplx q = fd.value();
        double v2;
        if (both_parts)
          v2 = std::max(q.real() * q.real(), q.imag() * q.imag());
        else if (real_only)
          v2 = q.real() * q.real();
        else
          v2 = std::norm(q);
        const double denom = ipow(n2, d);
        if (acc.index < 0 || v2 > acc.value * acc.value * denom) {
          acc.value = std::sqrt(v2 / denom);
          acc.index = idx;
        }
        ++acc.visited;
      }
      fd.advance();
    }
  });
  if (best.index >= 0) {
    Vec z = grid.complex_point(best.index);
    cplx q = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      cplx term = coeffs[static_cast<Eigen::Index>(j)];
      for (int v = 0; v < n; ++v)
        for (int e = 0; e < support[j][static_cast<std::size_t>(v)]; ++e) term *= z[v];
      q += term;
    }
    if (both_parts)
      best.value = std::max(std::abs(q.real()), std::abs(q.imag()));
    else if (real_only)
      best.value = std::abs(q.real());
    else
      best.value = std::abs(q);
  }
  return best;
}

ScanBest scan_real_sym(const RVec& coeffs, int n, int d, std::int64_t m,
                       std::int64_t budget, int threads) {
  CoveringGrid grid(m, n, FieldTag::real);
  check_budget(grid.count() / 2, budget);  // sign quotient visits half
  const auto support = enumerate_J(d, n);
  if (coeffs.size() != static_cast<Eigen::Index>(support.size()))
    throw std::invalid_argument("scan_real_sym: coefficient count != |J|");
  const std::int64_t k = grid.half_width();
  const std::int64_t base = 2 * k + 1;

  ScanBest total;
  for (int lead = 0; lead < n; ++lead) {
    std::vector<std::int64_t> lo, hi;  // x_lead, then free coords up to x_{n-2}
    const bool lead_is_last = lead == n - 1;
    if (!lead_is_last) {
      lo.push_back(1); hi.push_back(k);
      for (int v = lead + 1; v < n - 1; ++v) { lo.push_back(-k); hi.push_back(k); }
    }
    const std::int64_t t_lo = lead_is_last ? 1 : -k;
    const std::int64_t t_hi = k;
    std::int64_t rows = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) rows *= hi[i] - lo[i] + 1;

    const int nthreads = std::max(1, threads);
    std::vector<ScanBest> partial(static_cast<std::size_t>(nthreads));
    auto work = [&](int tid) {
      const std::int64_t r0 = rows * tid / nthreads;
      const std::int64_t r1 = rows * (tid + 1) / nthreads;
      std::vector<std::int64_t> digit(lo.size());
      std::vector<double> x(static_cast<std::size_t>(n - 1), 0.0);
      ScanBest& acc = partial[static_cast<std::size_t>(tid)];
      std::array<double, kMaxPolyDeg + 1> b{};
      std::array<std::array<double, kMaxPolyDeg + 1>, 8> powx{};
      for (std::int64_t r = r0; r < r1; ++r) {
        std::int64_t rem = r;
        for (int i = static_cast<int>(lo.size()) - 1; i >= 0; --i) {
          const std::int64_t width = hi[static_cast<std::size_t>(i)] -
                                     lo[static_cast<std::size_t>(i)] + 1;
          digit[static_cast<std::size_t>(i)] =
              lo[static_cast<std::size_t>(i)] + rem % width;
          rem /= width;
        }
        for (int v = 0; v < n - 1; ++v) x[static_cast<std::size_t>(v)] = 0.0;
        std::size_t pos = 0;
        if (!lead_is_last)
          for (int v = lead; v < n - 1; ++v)
            x[static_cast<std::size_t>(v)] = static_cast<double>(digit[pos++]);
        for (int v = 0; v < n - 1; ++v) {
          powx[static_cast<std::size_t>(v)][0] = 1.0;
          for (int e = 1; e <= d; ++e)
            powx[static_cast<std::size_t>(v)][static_cast<std::size_t>(e)] =
                powx[static_cast<std::size_t>(v)][static_cast<std::size_t>(e - 1)] *
                x[static_cast<std::size_t>(v)];
        }
        b.fill(0.0);
        for (std::size_t j = 0; j < support.size(); ++j) {
          double term = coeffs[static_cast<Eigen::Index>(j)];
          if (term == 0.0) continue;
          for (int v = 0; v < n - 1; ++v)
            term *= powx[static_cast<std::size_t>(v)]
                        [static_cast<std::size_t>(support[j][static_cast<std::size_t>(v)])];
          b[static_cast<std::size_t>(support[j][static_cast<std::size_t>(n - 1)])] += term;
        }
        double r2 = 0.0;
        for (int v = 0; v < n - 1; ++v)
          r2 += x[static_cast<std::size_t>(v)] * x[static_cast<std::size_t>(v)];

        std::int64_t idx = 0;
        for (int v = 0; v < n - 1; ++v)
          idx = idx * base + (static_cast<std::int64_t>(x[static_cast<std::size_t>(v)]) + k);
        idx = idx * base + (t_lo + k);

        // real forward differences on q(t) = sum b_l t^l
        std::array<double, kMaxPolyDeg + 1> delta{};
        {
          std::array<double, kMaxPolyDeg + 1> vals{};
          for (int s = 0; s <= d; ++s) {
            const double t = static_cast<double>(t_lo + s);
            double accv = b[static_cast<std::size_t>(d)];
            for (int e = d - 1; e >= 0; --e) accv = accv * t + b[static_cast<std::size_t>(e)];
            vals[static_cast<std::size_t>(s)] = accv;
          }
          std::array<double, kMaxPolyDeg + 1> w = vals;
          for (int lvl = 0; lvl <= d; ++lvl) {
            delta[static_cast<std::size_t>(lvl)] = w[0];
            for (int s = 0; s + 1 <= d - lvl; ++s)
              w[static_cast<std::size_t>(s)] =
                  w[static_cast<std::size_t>(s + 1)] - w[static_cast<std::size_t>(s)];
          }
        }
        double t = static_cast<double>(t_lo);
        for (std::int64_t s = t_lo; s <= t_hi; ++s, t += 1.0, ++idx) {
          const double n2 = r2 + t * t;
          if (n2 > 0.0) {
            const double q = delta[0];
            const double v2 = q * q;
            const double denom = ipow(n2, d);
            if (acc.index < 0 || v2 > acc.value * acc.value * denom) {
              acc.value = std::sqrt(v2 / denom);
              acc.index = idx;
            }
            ++acc.visited;
          }
          for (int lvl = 0; lvl < d; ++lvl)
            delta[static_cast<std::size_t>(lvl)] += delta[static_cast<std::size_t>(lvl + 1)];
        }
      }
    };
    if (nthreads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(work, tid);
      for (auto& th : pool) th.join();
    }
    for (const auto& p : partial) {
      total.visited += p.visited;
      if (p.index >= 0 &&
          (total.index < 0 || p.value > total.value ||
           (p.value == total.value && p.index < total.index))) {
        total.value = p.value;
        total.index = p.index;
      }
    }
  }
  if (total.index >= 0) total.value = eval_real_sym(coeffs, d, grid.real_point(total.index));
  return total;
}

ScanBest scan_hermitian_form(const Mat& weighted, int n, int d, std::int64_t m,
                             std::int64_t budget, int threads) {
  CoveringGrid grid(m, n, FieldTag::complex_);
  check_budget(grid.count() / 4, budget);
  const auto support = enumerate_J(d, n);
  const auto sz = static_cast<Eigen::Index>(support.size());
  if (weighted.rows() != sz || weighted.cols() != sz)
    throw std::invalid_argument("scan_hermitian_form: matrix size != |J|^2");
  const int deg = 2 * d;
  if (deg > kMaxPolyDeg) throw std::invalid_argument("scan_hermitian_form: degree too large");

  std::array<std::array<double, kMaxPolyDeg + 1>, kMaxPolyDeg + 1> binom{};
  for (int a = 0; a <= d; ++a) {
    binom[static_cast<std::size_t>(a)][0] = 1.0;
    for (int bb = 1; bb <= a; ++bb)
      binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(bb)] =
          static_cast<double>(binomial(a, bb));
  }
  const cplx iunit(0.0, 1.0);

  ComplexQuotientEnum en{n, grid.half_width(), 2 * grid.half_width() + 1};
  ScanBest out = en.run(threads, [&](const std::vector<cplx>& z, double re_last,
                                     std::int64_t t_lo, std::int64_t t_hi,
                                     std::int64_t base_index, ScanBest& acc) {
    // v(t) = sum_{a,b} W_ab prefix_a conj(prefix_b) (c+it)^{ka} (c-it)^{kb}
    std::array<std::array<cplx, kMaxPolyDeg + 1>, 8> powz{};
    for (int v = 0; v < n - 1; ++v) {
      powz[static_cast<std::size_t>(v)][0] = 1.0;
      for (int e = 1; e <= d; ++e)
        powz[static_cast<std::size_t>(v)][static_cast<std::size_t>(e)] =
            powz[static_cast<std::size_t>(v)][static_cast<std::size_t>(e - 1)] *
            z[static_cast<std::size_t>(v)];
    }
    // group support entries by the last exponent with their prefix monomials
    std::vector<cplx> prefix(support.size());
    for (std::size_t j = 0; j < support.size(); ++j) {
      cplx p = 1.0;
      for (int v = 0; v < n - 1; ++v)
        p *= powz[static_cast<std::size_t>(v)]
                 [static_cast<std::size_t>(support[j][static_cast<std::size_t>(v)])];
      prefix[j] = p;
    }
    // A[ka][kb] = sum over pairs with those last exponents
    std::array<std::array<cplx, kMaxPolyDeg + 1>, kMaxPolyDeg + 1> a2{};
    for (std::size_t ja = 0; ja < support.size(); ++ja) {
      const int ka = support[ja][static_cast<std::size_t>(n - 1)];
      for (std::size_t jb = 0; jb < support.size(); ++jb) {
        const cplx w = weighted(static_cast<Eigen::Index>(ja), static_cast<Eigen::Index>(jb));
        if (w == cplx(0.0, 0.0)) continue;
        const int kb = support[jb][static_cast<std::size_t>(n - 1)];
        a2[static_cast<std::size_t>(ka)][static_cast<std::size_t>(kb)] +=
            w * prefix[ja] * std::conj(prefix[jb]);
      }
    }
    // expand (c+it)^ka (c-it)^kb
    std::array<double, kMaxPolyDeg + 1> cpow{};
    cpow[0] = 1.0;
    for (int e = 1; e <= deg; ++e)
      cpow[static_cast<std::size_t>(e)] = cpow[static_cast<std::size_t>(e - 1)] * re_last;
    std::array<cplx, kMaxPolyDeg + 1> b{};
    b.fill(cplx(0.0, 0.0));
    for (int ka = 0; ka <= d; ++ka)
      for (int kb = 0; kb <= d; ++kb) {
        const cplx w = a2[static_cast<std::size_t>(ka)][static_cast<std::size_t>(kb)];
        if (w == cplx(0.0, 0.0)) continue;
        // (c+it)^ka = sum_p C(ka,p) c^{ka-p} (it)^p ; similarly with (-i)
        for (int p = 0; p <= ka; ++p) {
          cplx ip = 1.0;
          for (int q2 = 0; q2 < p; ++q2) ip *= iunit;
          const cplx left = binom[static_cast<std::size_t>(ka)][static_cast<std::size_t>(p)] *
                            cpow[static_cast<std::size_t>(ka - p)] * ip;
          for (int q = 0; q <= kb; ++q) {
            cplx iq = 1.0;
            for (int q2 = 0; q2 < q; ++q2) iq *= -iunit;
            b[static_cast<std::size_t>(p + q)] +=
                w * left *
                binom[static_cast<std::size_t>(kb)][static_cast<std::size_t>(q)] *
                cpow[static_cast<std::size_t>(kb - q)] * iq;
          }
        }
      }

    double r2 = re_last * re_last;
    for (const auto& zz : z) r2 += std::norm(zz);

    FDTable fd;
    fd.init(b.data(), deg, static_cast<double>(t_lo));
    double t = static_cast<double>(t_lo);
    std::int64_t idx = base_index;
    for (std::int64_t s = t_lo; s <= t_hi; ++s, t += 1.0, ++idx) {
      const double n2 = r2 + t * t;
      if (n2 > 0.0) {
        const double q = fd.value().real();  // the form is real for Hermitian W
        const double v2 = q * q;
        const double denom = ipow(n2, deg);
        if (acc.index < 0 || v2 > acc.value * acc.value * denom) {
          acc.value = std::sqrt(v2 / denom);
          acc.index = idx;
        }
        ++acc.visited;
      }
      fd.advance();
    }
  });
  if (out.index >= 0)
    out.value = eval_hermitian_form(weighted, d, grid.complex_point(out.index));
  return out;
}

namespace {

double absmax_eigenvalue_small(Mat k) {
  const Eigen::Index n = k.rows();
  if (n == 1) return std::abs(k(0, 0).real());
  if (n == 2) {
    const double a = k(0, 0).real(), c = k(1, 1).real();
    const double h = std::abs(k(0, 1));
    const double mean = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + h * h);
    return std::max(std::abs(mean + rad), std::abs(mean - rad));
  }
  // tiny Jacobi, few sweeps suffice at these sizes
  for (int sweep = 0; sweep < 12; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(k(p, q));
    if (off < 1e-26 * std::max(1.0, k.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx g = k(p, q);
        const double absg = std::abs(g);
        if (absg < 1e-300) continue;
        const double tau = (k(q, q).real() - k(p, p).real()) / (2.0 * absg);
        double t = tau >= 0 ? -1.0 / (tau + std::sqrt(1 + tau * tau))
                            : 1.0 / (-tau + std::sqrt(1 + tau * tau));
        const double c = 1.0 / std::sqrt(1 + t * t);
        const double s = t * c;
        const cplx w = s * std::conj(g / absg);
        for (Eigen::Index r = 0; r < n; ++r) {
          const cplx kp = k(r, p), kq = k(r, q);
          k(r, p) = c * kp + w * kq;
          k(r, q) = -std::conj(w) * kp + c * kq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const cplx kp = k(p, r), kq = k(q, r);
          k(p, r) = c * kp + std::conj(w) * kq;
          k(q, r) = -w * kp + c * kq;
        }
      }
  }
  double best = 0.0;
  for (Eigen::Index p = 0; p < n; ++p) best = std::max(best, std::abs(k(p, p).real()));
  return best;
}

}  // namespace

ScanBest scan_bipartite_eigmax(const Mat& h, int n1, int n2, std::int64_t m,
                               std::int64_t budget, int threads) {
  CoveringGrid grid(m, n1, FieldTag::complex_);
  check_budget(grid.count() / 4, budget);
  const std::int64_t nsz = static_cast<std::int64_t>(n1) * n2;
  if (h.rows() != nsz || h.cols() != nsz)
    throw std::invalid_argument("scan_bipartite_eigmax: size mismatch");

  ComplexQuotientEnum en{n1, grid.half_width(), 2 * grid.half_width() + 1};
  return en.run(threads, [&](const std::vector<cplx>& zfixed, double re_last,
                             std::int64_t t_lo, std::int64_t t_hi,
                             std::int64_t base_index, ScanBest& acc) {
    Vec x(n1);
    for (int v = 0; v < n1 - 1; ++v) x[v] = zfixed[static_cast<std::size_t>(v)];
    std::int64_t idx = base_index;
    Mat kmat(n2, n2);
    for (std::int64_t s = t_lo; s <= t_hi; ++s, ++idx) {
      x[n1 - 1] = cplx(re_last, static_cast<double>(s));
      const double n2x = x.squaredNorm();
      if (n2x <= 0.0) continue;
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l) {
          cplx accv = 0.0;
          for (int i = 0; i < n1; ++i)
            for (int i2 = 0; i2 < n1; ++i2)
              accv += std::conj(x[i]) * h(i * n2 + j, i2 * n2 + l) * x[i2];
          kmat(j, l) = accv;
        }
      const double val = absmax_eigenvalue_small(kmat) / n2x;
      ++acc.visited;
      if (acc.index < 0 || val > acc.value) {
        acc.value = val;
        acc.index = idx;
      }
    }
  });
}

ScanBest scan_contraction_sigma(const DenseTensor& t, int mode, int row_mode,
                                std::int64_t m, std::int64_t budget, int threads) {
  const int d = t.order();
  if (mode < 0 || mode >= d || row_mode == mode || row_mode < 0 || row_mode >= d)
    throw std::invalid_argument("scan_contraction_sigma: bad modes");
  const int nv = static_cast<int>(t.shape().dim(mode));
  CoveringGrid grid(m, nv, FieldTag::complex_);
  check_budget(grid.count() / 4, budget);

  // unfold layout: rows = row_mode, cols = remaining modes (without `mode`)
  std::vector<int> rest;
  for (int k2 = 0; k2 < d; ++k2)
    if (k2 != mode && k2 != row_mode) rest.push_back(k2);
  const std::int64_t rows = t.shape().dim(row_mode);
  std::int64_t cols = 1;
  for (int k2 : rest) cols *= t.shape().dim(k2);

  // slices[i] = unfolded matrix of the tensor with mode index fixed to i
  std::vector<Mat> slices(static_cast<std::size_t>(nv), Mat::Zero(rows, cols));
  for (std::int64_t f = 0; f < t.shape().size(); ++f) {
    auto idx = t.shape().unflat(f);
    std::int64_t c = 0;
    for (int k2 : rest) c = c * t.shape().dim(k2) + idx[static_cast<std::size_t>(k2)];
    slices[static_cast<std::size_t>(idx[static_cast<std::size_t>(mode)])](
        idx[static_cast<std::size_t>(row_mode)], c) += t.entries()[f];
  }

  ComplexQuotientEnum en{nv, grid.half_width(), 2 * grid.half_width() + 1};
  return en.run(threads, [&](const std::vector<cplx>& zfixed, double re_last,
                             std::int64_t t_lo, std::int64_t t_hi,
                             std::int64_t base_index, ScanBest& acc) {
    Vec v(nv);
    for (int i = 0; i < nv - 1; ++i) v[i] = zfixed[static_cast<std::size_t>(i)];
    std::int64_t idx = base_index;
    Mat contracted(rows, cols);
    for (std::int64_t s = t_lo; s <= t_hi; ++s, ++idx) {
      v[nv - 1] = cplx(re_last, static_cast<double>(s));
      const double n2x = v.squaredNorm();
      if (n2x <= 0.0) continue;
      contracted.setZero();
      for (int i = 0; i < nv; ++i)
        contracted += std::conj(v[i]) * slices[static_cast<std::size_t>(i)];
      Mat g = contracted * contracted.adjoint();
      const double s1 = std::sqrt(std::max(0.0, absmax_eigenvalue_small(g)));
      const double val = s1 / std::sqrt(n2x);
      ++acc.visited;
      if (acc.index < 0 || val > acc.value) {
        acc.value = val;
        acc.index = idx;
      }
    }
  });
}

double eval_complex_sym(const Vec& coeffs, int d, const Vec& z, ScanObjective obj) {
  const int n = static_cast<int>(z.size());
  const auto support = enumerate_J(d, n);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    cplx term = coeffs[static_cast<Eigen::Index>(j)];
    for (int v = 0; v < n; ++v)
      for (int e = 0; e < support[j][static_cast<std::size_t>(v)]; ++e) term *= z[v];
    acc += term;
  }
  if (obj == ScanObjective::real_part) return std::abs(acc.real());
  return std::abs(acc);
}

double eval_real_sym(const RVec& coeffs, int d, const RVec& x) {
  const int n = static_cast<int>(x.size());
  const auto support = enumerate_J(d, n);
  double acc = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    double term = coeffs[static_cast<Eigen::Index>(j)];
    for (int v = 0; v < n; ++v)
      for (int e = 0; e < support[j][static_cast<std::size_t>(v)]; ++e) term *= x[v];
    acc += term;
  }
  return std::abs(acc);
}

double eval_hermitian_form(const Mat& weighted, int d, const Vec& z) {
  const int n = static_cast<int>(z.size());
  const auto support = enumerate_J(d, n);
  cplx acc = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    cplx ma = 1.0;
    for (int v = 0; v < n; ++v)
      for (int e = 0; e < support[a][static_cast<std::size_t>(v)]; ++e) ma *= z[v];
    for (std::size_t b = 0; b < support.size(); ++b) {
      cplx mb = 1.0;
      for (int v = 0; v < n; ++v)
        for (int e = 0; e < support[b][static_cast<std::size_t>(v)]; ++e) mb *= z[v];
      acc += weighted(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * ma *
             std::conj(mb);
    }
  }
  return std::abs(acc.real());
}

}  // namespace entanglib
