#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <random>

#include "entanglib/optim.hpp"
#include "entanglib/states.hpp"

using namespace entanglib;

namespace {

OptimOptions fast_opts() {
  OptimOptions o;
  o.threads = 1;
  return o;
}

SymTensor random_unit_sym(std::mt19937_64& rng, int n, int d,
                          FieldTag field = FieldTag::complex_) {
  std::normal_distribution<double> g;
  SymTensor s(n, d, FieldTag::complex_);
  for (Eigen::Index i = 0; i < s.coeffs().size(); ++i)
    s.coeffs()[i] = field == FieldTag::real ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
  const double nrm = hilbert_norm(s);
  Vec c = s.coeffs() / nrm;
  return SymTensor(n, d, c, field);
}

}  // namespace

TEST_CASE("matrix norms: fixed values and SVD oracle") {
  {
    Mat a = Mat::Identity(2, 2) / std::sqrt(2.0);
    auto mn = matrix_norms(a);
    CHECK(mn.spectral == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(mn.nuclear == doctest::Approx(std::sqrt(2.0)));
  }
  {
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 4.0;
    auto mn = matrix_norms(a);
    CHECK(mn.spectral == doctest::Approx(4.0));
    CHECK(mn.nuclear == doctest::Approx(7.0));
  }
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 20; ++rep) {
    Mat a(3, 4);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) a(r, c) = cplx(g(rng), g(rng));
    auto mn = matrix_norms(a);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CHECK(mn.spectral == doctest::Approx(svd.singularValues()[0]).epsilon(1e-10));
    CHECK(mn.nuclear == doctest::Approx(svd.singularValues().sum()).epsilon(1e-10));
    // reconstruction
    Mat rec = mn.u * mn.singular_values.head(mn.u.cols()).asDiagonal() * mn.v.adjoint();
    CHECK((rec - a).norm() < 1e-10);
  }
}

TEST_CASE("spectral grid bracket on aligned rank-one and W") {
  SymTensor e1cube(2, 3);
  e1cube.set_coeff({3, 0}, 1.0);
  auto est = spectral_norm_grid(e1cube, 5, fast_opts());
  CHECK(est.lower == doctest::Approx(1.0));
  CHECK(est.upper == doctest::Approx(1.0 / (1.0 - 3.0 / 5.0)));

  auto w = w_state();
  auto west = spectral_norm_grid(*w.symmetric, 5, fast_opts());
  CHECK(west.lower <= 2.0 / 3.0 + 1e-12);
  CHECK(west.upper >= 2.0 / 3.0 - 1e-12);
  // witness reproduces the lower bound
  Vec coeffs = overlap_poly_coeffs(*w.symmetric);
  CHECK(eval_complex_sym(coeffs, 3, west.witness[0], ScanObjective::modulus) ==
        doctest::Approx(west.lower).epsilon(1e-12));

  CHECK_THROWS_AS(spectral_norm_grid(e1cube, 3, fast_opts()), std::invalid_argument);
}

TEST_CASE("real grid bracket on the clique form of K3") {
  RMat adj = RMat::Zero(3, 3);
  adj << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  auto k3 = clique_tensor(adj, 1, 3.0);
  SymTensor s(k3.symmetric->n(), k3.symmetric->d(), k3.symmetric->coeffs(), FieldTag::real);
  auto est = spectral_norm_grid(s, 5, fast_opts());
  CHECK(est.lower <= 2.0 / 3.0 + 1e-12);
  CHECK(est.upper >= 2.0 / 3.0 - 1e-12);
}

TEST_CASE("polish: fixed point, matrix oracle, W convergence") {
  auto w = w_state();
  Vec opt(2);
  opt << std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0);
  auto [v0, x0] = spectral_polish(*w.symmetric, opt, 100);
  CHECK(v0 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 10; ++rep) {
    SymTensor s = random_unit_sym(rng, 2, 2);
    Vec start(2);
    start << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
    auto [val, x] = spectral_polish(s, start, 500);
    auto mn = matrix_norms(sym_to_dense(s));
    CHECK(val <= mn.spectral + 1e-10);
    // most starts reach the top singular value for 2x2 symmetric matrices
  }

  auto grid = spectral_norm_grid(*w.symmetric, 5, fast_opts());
  auto [vw, xw] = spectral_polish(*w.symmetric, grid.witness[0], 500);
  CHECK(vw == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("spectral_norm end-to-end on T_{3,1}") {
  auto t3 = t_lambda(3, 1.0);
  OptimOptions o = fast_opts();
  o.m_override = 7;
  auto est = spectral_norm(*t3.symmetric, o);
  CHECK(est.lower <= 1.0 / std::sqrt(2.0) + 1e-9);
  CHECK(est.upper >= 1.0 / std::sqrt(2.0) - 1e-9);
  CHECK(est.lower == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("nuclear LP: aligned rank-one gives a single term") {
  SymTensor e1cube(2, 3);
  e1cube.set_coeff({3, 0}, 1.0);
  auto res = nuclear_norm_grid(e1cube, 5, fast_opts());
  CHECK(res.estimate.upper == doctest::Approx(1.0));
  CHECK(res.estimate.lower <= 1.0 + 1e-9);
  CHECK(res.decomposition.total_weight() == doctest::Approx(1.0));
  CHECK(reconstruction_residual(res.decomposition, e1cube) < 1e-8);
}

TEST_CASE("nuclear LP on W: bracket straddles 3/2") {
  auto w = w_state();
  auto res = nuclear_norm_grid(*w.symmetric, 5, fast_opts());
  CHECK(res.estimate.upper >= 1.5 - 1e-9);
  CHECK(res.estimate.lower <= 1.5 + 1e-9);
  CHECK(reconstruction_residual(res.decomposition, *w.symmetric) < 1e-8);
  CHECK(res.decomposition.total_weight() ==
        doctest::Approx(res.estimate.upper).epsilon(1e-8));
}

TEST_CASE("nuclear LP vs SVD oracle on complex symmetric 2x2") {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 3; ++rep) {
    SymTensor s = random_unit_sym(rng, 2, 2);
    auto res = nuclear_norm_grid(s, 8, fast_opts());
    auto mn = matrix_norms(sym_to_dense(s));
    CHECK(res.estimate.lower <= mn.nuclear + 1e-9);
    CHECK(res.estimate.upper >= mn.nuclear - 1e-9);
  }
}

TEST_CASE("column generation equals the full-grid LP on small real instances") {
  std::mt19937_64 rng(26);
  for (int rep = 0; rep < 5; ++rep) {
    SymTensor s = random_unit_sym(rng, 2, 2, FieldTag::real);
    OptimOptions o = fast_opts();
    auto cg = nuclear_norm_grid(s, 3, o);
    o.full_grid_lp = true;
    auto full = nuclear_norm_grid(s, 3, o);
    CHECK(cg.estimate.upper == doctest::Approx(full.estimate.upper).epsilon(1e-7));
  }
}

TEST_CASE("sandwich and duality on random unit symmetric tensors") {
  std::mt19937_64 rng(27);
  for (int rep = 0; rep < 2; ++rep) {
    SymTensor s = random_unit_sym(rng, 2, 3);
    OptimOptions o = fast_opts();
    auto spec = spectral_norm_grid(s, 9, o);
    auto nuc = nuclear_norm_grid(s, 9, o);
    const double slack = 0.5 + 1e-9;  // epsilon at m = 3d
    CHECK(spec.upper <= 1.0 + slack);
    CHECK(nuc.estimate.lower >= 1.0 - slack);
    CHECK(spec.lower * nuc.estimate.lower >= 1.0 - 2.0 * slack);
    CHECK(spec.lower <= 1.0 + 1e-9);           // spectral <= Euclidean
    CHECK(nuc.estimate.upper >= 1.0 - 1e-9);   // nuclear >= Euclidean
  }
}

TEST_CASE("dense spectral bracket on M4") {
  auto m4 = m4_state();
  OptimOptions o = fast_opts();
  auto est = spectral_norm_dense(m4.dense, 4, o);
  const double truth = std::sqrt(2.0) / 3.0;
  CHECK(est.lower <= truth + 1e-9);
  CHECK(est.upper >= truth - 1e-9);
  CHECK(est.lower == doctest::Approx(truth).epsilon(1e-6));
  CHECK(est.upper <= 1.0 / std::sqrt(2.0) + 1e-9);  // single-mode unfolding bound
}

TEST_CASE("hermitian spec bracket: Bell density") {
  auto bell = bipartite_max_entangled(2, 2);
  auto rho = pure_density(bell.dense);
  auto est = spec_norm_hermitian(rho.base(), fast_opts());
  CHECK(est.lower == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(est.upper == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bisym polish reaches the W density b-spectral value") {
  auto w = w_state();
  auto rho = pure_density(w.dense);
  CHECK(rho.base().structure() == Structure::bisymmetric);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  double best = 0.0;
  for (int rep = 0; rep < 6; ++rep) {
    Vec start(2);
    start << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
    auto [val, x] = bisym_polish(rho.base(), start, 400);
    best = std::max(best, val);
  }
  CHECK(best == doctest::Approx(4.0 / 9.0).epsilon(1e-7));
}

TEST_CASE("pair-regime bracket on a small real instance") {
  // T = s (x) s for a unit real symmetric matrix s: |f(x,y)| max = sigma_1^2
  std::mt19937_64 rng(33);
  SymTensor s = random_unit_sym(rng, 2, 2, FieldTag::real);
  auto mn = matrix_norms(sym_to_dense(s));
  Mat coeffs = s.coeffs() * s.coeffs().transpose();
  BiSymTensor pair(2, 2, coeffs, false);
  auto est = spectral_norm_grid_pair(pair, 5, fast_opts());
  CHECK(est.lower <= mn.spectral * mn.spectral + 1e-10);
  CHECK(est.upper >= mn.spectral * mn.spectral - 1e-10);
}

TEST_CASE("nuclear product LP: I/4 and Bell") {
  Mat id = Mat::Identity(4, 4) / 4.0;
  HermitianTensor h(Shape({2, 2}), id);
  auto res = nuclear_norm_product(h, 2, fast_opts());
  CHECK(res.estimate.upper == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(reconstruction_residual(res.decomposition, h) < 1e-8);

  auto bell = bipartite_max_entangled(2, 2);
  auto rho = pure_density(bell.dense);
  auto res2 = nuclear_norm_product(rho.base(), 6, fast_opts());
  CHECK(res2.estimate.upper >= 2.0 - 1e-6);
  CHECK(res2.estimate.lower > 1.0 + 1e-3);
  CHECK(res2.estimate.lower <= 2.0 + 1e-9);
}

TEST_CASE("zero tensor short-circuits") {
  SymTensor z(2, 3);
  auto res = nuclear_norm_grid(z, 5, fast_opts());
  CHECK(res.estimate.lower == 0.0);
  CHECK(res.estimate.upper == 0.0);
  CHECK(res.decomposition.terms.empty());
}

TEST_CASE("spectral multiplicativity: pair bracket of S (x) T") {
  std::mt19937_64 rng(35);
  SymTensor s = random_unit_sym(rng, 2, 2, FieldTag::real);
  SymTensor t = random_unit_sym(rng, 2, 2, FieldTag::real);
  auto ms = matrix_norms(sym_to_dense(s));
  auto mt = matrix_norms(sym_to_dense(t));
  Mat coeffs = s.coeffs() * t.coeffs().transpose();
  BiSymTensor pair(2, 2, coeffs, false);
  auto est = spectral_norm_grid_pair(pair, 5, fast_opts());
  const double product = ms.spectral * mt.spectral;
  CHECK(est.lower <= product + 1e-10);
  CHECK(est.upper >= product - 1e-10);
}

TEST_CASE("hermitian spec multiplicativity on a product density") {
  std::mt19937_64 rng(36);
  std::normal_distribution<double> g;
  auto random_rho = [&](int n) {
    Mat a(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a(r, c) = cplx(g(rng), g(rng));
    Mat gram = a.adjoint() * a;
    gram /= gram.trace().real();
    return gram;
  };
  Mat r1 = random_rho(2), r2 = random_rho(2);
  Mat kron(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) kron(a * 2 + b, c * 2 + d) = r1(a, c) * r2(b, d);
  HermitianTensor h(Shape({2, 2}), kron);
  auto est = spec_norm_hermitian(h, fast_opts());
  const double product = jacobi_hermitian(r1).eigenvalues[0] *
                         jacobi_hermitian(r2).eigenvalues[0];
  CHECK(est.lower <= product + 1e-9);
  CHECK(est.upper >= product - 1e-9);
  CHECK(est.lower == doctest::Approx(product).epsilon(1e-8));
}

TEST_CASE("bspec <= spec on random bi-symmetric tensors, equality when PSD") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 3; ++rep) {
    // random bi-symmetric Hermitian from random polynomial coefficients
    auto J = enumerate_J(2, 2);
    const auto nj = static_cast<Eigen::Index>(J.size());
    Mat f(nj, nj);
    for (Eigen::Index a = 0; a < nj; ++a)
      for (Eigen::Index c = 0; c < nj; ++c) f(a, c) = cplx(g(rng), g(rng));
    f = (f + f.adjoint()).eval() / 2.0;
    HermitianTensor b = bisym_from_coefficients(BiSymTensor(2, 2, f, true));
    OptimOptions o = fast_opts();
    o.m_override = 4;
    auto bs = spectral_norm_bisym(b, o);
    auto sp = spec_norm_hermitian(b, o);
    CHECK(bs.lower <= sp.upper + 1e-9);

    // PSD shift: equality of the two norms
    const auto& dec = b.spectral_decomposition();
    const double lmin = dec.eigenvalues[dec.eigenvalues.size() - 1];
    HermitianTensor bp(b.shape(),
                       b.matrix() + (std::abs(lmin) + 0.2) *
                                        identity_on_sym(2, 2).matrix(),
                       Structure::bisymmetric);
    auto bsp = spectral_norm_bisym(bp, o);
    auto spp = spec_norm_hermitian(bp, o);
    CHECK(bsp.lower == doctest::Approx(spp.lower).epsilon(1e-7));
  }
}

TEST_CASE("decomposition support size stays within the basic-solution bound") {
  auto w = w_state();
  auto res = nuclear_norm_grid(*w.symmetric, 5, fast_opts());
  // M + 1 rows for the complex symmetric regime, M = 2 C(n+d-1, d)
  CHECK(res.decomposition.terms.size() <= 2 * 4 + 1);
}

TEST_CASE("polish from several starts reaches the matrix oracle") {
  std::mt19937_64 rng(38);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 5; ++rep) {
    SymTensor s = random_unit_sym(rng, 2, 2);
    auto mn = matrix_norms(sym_to_dense(s));
    double best = 0.0;
    for (int start = 0; start < 8; ++start) {
      Vec x(2);
      x << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
      best = std::max(best, spectral_polish(s, x, 500).first);
    }
    CHECK(best == doctest::Approx(mn.spectral).epsilon(1e-10));
  }
}

TEST_CASE("scan results are identical across thread counts") {
  std::mt19937_64 rng(39);
  SymTensor s = random_unit_sym(rng, 2, 3);
  Vec coeffs = overlap_poly_coeffs(s);
  auto a = scan_complex_sym(coeffs, 2, 3, 6, ScanObjective::modulus,
                            kDefaultGridBudget, 1);
  auto b = scan_complex_sym(coeffs, 2, 3, 6, ScanObjective::modulus,
                            kDefaultGridBudget, 3);
  CHECK(a.index == b.index);
  CHECK(a.value == b.value);
  CHECK(a.visited == b.visited);
}

TEST_CASE("clique density b-spectral polish matches the derived oracle") {
  RMat adj = RMat::Zero(3, 3);
  adj << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  auto rho = clique_density(adj);
  std::mt19937_64 rng(40);
  std::normal_distribution<double> g;
  double best = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    Vec start(3);
    for (int i = 0; i < 3; ++i) start[i] = cplx(g(rng), g(rng));
    best = std::max(best, bisym_polish(rho.base(), start, 400).first);
  }
  CHECK(best == doctest::Approx(clique_density_bspec(3, 3.0)).epsilon(1e-8));
}

TEST_CASE("quotient scan equals brute-force enumeration of the full grid") {
  std::mt19937_64 rng(41);
  SymTensor s = random_unit_sym(rng, 2, 3);
  Vec coeffs = overlap_poly_coeffs(s);
  auto fast = scan_complex_sym(coeffs, 2, 3, 2, ScanObjective::modulus,
                               kDefaultGridBudget, 1);
  CoveringGrid grid(2, 2, FieldTag::complex_);
  double brute = 0.0;
  std::int64_t points = 0;
  for (std::int64_t i = 0; i < grid.count_raw(); ++i) {
    auto h = grid.lattice_point(i);
    bool zero = true;
    for (auto v : h)
      if (v != 0) zero = false;
    if (zero) continue;
    ++points;
    brute = std::max(brute,
                     eval_complex_sym(coeffs, 3, grid.complex_point(i),
                                      ScanObjective::modulus));
  }
  CHECK(points == grid.count());
  CHECK(fast.visited * 4 == points);  // exact 4-group quotient
  CHECK(fast.value == doctest::Approx(brute).epsilon(1e-13));
}
