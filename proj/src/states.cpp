#include "entanglib/states.hpp"

#include <cmath>
#include <map>
#include <random>

namespace entanglib {

namespace {

constexpr double kPi = 3.14159265358979323846;

SymTensor single_dicke(int d, int k) {
  SymTensor s(2, d);
  MonomialIndex j = {d - k, k};
  s.set_coeff(j, 1.0 / std::sqrt(static_cast<double>(multinomial(j))));
  return s;
}

}  // namespace

NamedState w_state() {
  NamedState st;
  st.label = "w";
  st.symmetric = single_dicke(3, 1);
  st.dense = sym_to_dense(*st.symmetric);
  st.known_spectral = 2.0 / 3.0;
  st.known_nuclear = 3.0 / 2.0;
  st.provenance = "W state (Duer-Vidal-Cirac 2000); GME extremality Tamaryan-Wei-Park 2009";
  return st;
}

NamedState t_lambda(int d, cplx lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw std::invalid_argument("t_lambda: |lambda| must be 1");
  if (d < 1) throw std::invalid_argument("t_lambda: d >= 1");
  const cplx root = std::pow(lambda, 1.0 / static_cast<double>(d));
  Vec u(2);
  u << root / std::sqrt(2.0), root * cplx(0, 1) / std::sqrt(2.0);
  std::vector<Vec> us(static_cast<std::size_t>(d), u);
  DenseTensor plus = rank_one(us);
  Vec entries = (plus.entries() + plus.entries().conjugate()) / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < entries.size(); ++i)
    entries[i] = cplx(entries[i].real(), 0.0);  // exactly real by construction

  NamedState st;
  st.label = "t" + std::to_string(d);
  if (std::abs(lambda - cplx(1.0, 0.0)) > 1e-12) st.label += ",lambda";
  st.dense = DenseTensor(plus.shape(), entries);
  st.symmetric = symmetrize(st.dense);
  st.known_spectral = 1.0 / std::sqrt(2.0);
  st.known_nuclear = std::sqrt(2.0);
  st.provenance = "binary superposition of conjugate product states; real qubit extremes";
  return st;
}

NamedState m4_state() {
  const cplx zeta = std::exp(cplx(0.0, 2.0 * kPi / 3.0));
  Shape shape({2, 2, 2, 2});
  Vec e = Vec::Zero(16);
  const double s = 1.0 / std::sqrt(6.0);
  e[shape.flat({0, 0, 1, 1})] = s;
  e[shape.flat({1, 1, 0, 0})] = s;
  e[shape.flat({1, 0, 1, 0})] = s * zeta;
  e[shape.flat({0, 1, 0, 1})] = s * zeta;
  e[shape.flat({1, 0, 0, 1})] = s * zeta * zeta;
  e[shape.flat({0, 1, 1, 0})] = s * zeta * zeta;

  NamedState st;
  st.label = "m4";
  st.dense = DenseTensor(shape, e);
  st.known_spectral = std::sqrt(2.0) / 3.0;
  st.provenance = "Higuchi-Sudbery 2000 four-qubit state";
  return st;
}

NamedState dicke_state(int d, int k) {
  if (k < 0 || k > d) throw std::invalid_argument("dicke_state: 0 <= k <= d");
  NamedState st;
  st.label = "dicke-" + std::to_string(d) + "-" + std::to_string(k);
  st.symmetric = single_dicke(d, k);
  st.dense = sym_to_dense(*st.symmetric);
  if (k == 0 || k == d) st.known_spectral = 1.0;  // product state
  st.provenance = "Dicke 1954 basis state";
  return st;
}

NamedState max4_candidate() {
  SymTensor s(2, 4);
  s.set_coeff({4, 0}, 1.0 / std::sqrt(3.0));
  s.set_coeff({1, 3}, 1.0 / std::sqrt(6.0));
  NamedState st;
  st.label = "max4";
  st.symmetric = s;
  st.dense = sym_to_dense(s);
  st.known_spectral = 1.0 / std::sqrt(3.0);
  st.provenance = "Aulbach-Markham-Murao 2010, Example 6.1";
  return st;
}

NamedState bipartite_max_entangled(int m, int n) {
  if (m < 2 || m > n) throw std::invalid_argument("bipartite_max_entangled: 2 <= m <= n");
  Shape shape({m, n});
  Vec e = Vec::Zero(shape.size());
  for (int i = 0; i < m; ++i) e[i * n + i] = 1.0 / std::sqrt(static_cast<double>(m));
  NamedState st;
  st.label = "bell-" + std::to_string(m) + "x" + std::to_string(n);
  st.dense = DenseTensor(shape, e);
  st.known_spectral = 1.0 / std::sqrt(static_cast<double>(m));
  st.known_nuclear = std::sqrt(static_cast<double>(m));
  st.provenance = "maximally entangled bipartite state";
  return st;
}

NamedState clique_tensor(const RMat& adjacency, int power, double kappa) {
  const int n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n) throw std::invalid_argument("clique_tensor: square matrix");
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0)
      throw std::invalid_argument("clique_tensor: nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (adjacency(i, j) != adjacency(j, i))
        throw std::invalid_argument("clique_tensor: not symmetric");
      if (adjacency(i, j) != 0.0 && adjacency(i, j) != 1.0)
        throw std::invalid_argument("clique_tensor: entries must be 0/1");
    }
  }
  if (power < 1) throw std::invalid_argument("clique_tensor: power >= 1");

  // monomial map of f(x) = sum_{i,j} a_ij x_i^2 x_j^2 over ordered pairs
  std::map<MonomialIndex, double> base;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adjacency(i, j) != 0.0) {
        MonomialIndex e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] += 2;
        e[static_cast<std::size_t>(j)] += 2;
        base[e] += 1.0;
      }
  std::map<MonomialIndex, double> poly = base;
  for (int p = 1; p < power; ++p) {
    std::map<MonomialIndex, double> next;
    for (const auto& [ea, ca] : poly)
      for (const auto& [eb, cb] : base) {
        MonomialIndex e = ea;
        for (std::size_t v = 0; v < e.size(); ++v) e[v] += eb[v];
        next[e] += ca * cb;
      }
    poly.swap(next);
  }

  SymTensor s(n, 4 * power, FieldTag::real);
  for (const auto& [e, c] : poly)
    s.set_coeff(e, c / static_cast<double>(multinomial(e)));

  NamedState st;
  st.label = "clique";
  st.symmetric = s;
  st.dense = sym_to_dense(s);
  st.unit_norm = false;
  if (!poly.empty() && kappa > 0.0)
    st.known_spectral = std::pow(1.0 - 1.0 / kappa, power);
  if (poly.empty()) st.known_spectral = 0.0;
  st.provenance = "Motzkin-Straus 1965 clique form";
  return st;
}

DensityTensor clique_density(const RMat& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  clique_tensor(adjacency, 1);  // validates the adjacency matrix
  HermitianTensor isym = identity_on_sym(n, 2);
  Mat g = Mat::Zero(isym.matrix().rows(), isym.matrix().cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adjacency(i, j) != 0.0) g(i * n + i, j * n + j) = 1.0;
  const double c = 4.0 / (static_cast<double>(n) * n * (static_cast<double>(n) * n - 1.0));
  Mat t = c * (0.5 * n * (n - 1.0) * isym.matrix() + g);
  return make_density(HermitianTensor(isym.shape(), std::move(t), Structure::bisymmetric));
}

double clique_density_bspec(int n, double kappa) {
  const double c = 4.0 / (static_cast<double>(n) * n * (static_cast<double>(n) * n - 1.0));
  return c * (0.5 * n * (n - 1.0) + 1.0 - 1.0 / kappa);
}

double sphere_moment_exact(const MonomialIndex& exponents) {
  const int n = static_cast<int>(exponents.size());
  int total = 0;
  for (int e : exponents) {
    if (e % 2 == 1) return 0.0;
    total += e;
  }
  const int d = total / 2;
  double num = 1.0;
  for (int e : exponents)
    for (int q = e - 1; q >= 1; q -= 2) num *= static_cast<double>(q);
  double den = 1.0;
  for (int j = 0; j < d; ++j) den *= static_cast<double>(n + 2 * j);
  return num / den;
}

double sphere_moment_mc(const MonomialIndex& exponents, std::int64_t samples,
                        std::uint64_t seed) {
  const int n = static_cast<int>(exponents.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double acc = 0.0;
  RVec x(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    double nrm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = gauss(rng);
      nrm2 += x[i] * x[i];
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    double term = 1.0;
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < exponents[static_cast<std::size_t>(i)]; ++e) term *= x[i] * inv;
    acc += term;
  }
  return acc / static_cast<double>(samples);
}

HermitianTensor isotropic_moment_tensor(int n, int d) {
  std::vector<std::int64_t> dims(static_cast<std::size_t>(d),
                                 static_cast<std::int64_t>(n));
  Shape shape(dims);
  const std::int64_t nsz = shape.size();
  Mat out(nsz, nsz);
  for (std::int64_t r = 0; r < nsz; ++r) {
    auto ri = shape.unflat(r);
    for (std::int64_t c = 0; c < nsz; ++c) {
      auto ci = shape.unflat(c);
      MonomialIndex e(static_cast<std::size_t>(n), 0);
      for (auto i : ri) e[static_cast<std::size_t>(i)]++;
      for (auto i : ci) e[static_cast<std::size_t>(i)]++;
      out(r, c) = sphere_moment_exact(e);
    }
  }
  return HermitianTensor(shape, std::move(out), Structure::realsymmetric);
}

std::vector<std::string> state_labels() {
  return {"w", "t3", "t4", "t5", "t4,-i", "m4", "max4", "bell", "dicke-3-1", "dicke-4-0"};
}

NamedState make_state(const std::string& label) {
  if (label == "w") return w_state();
  if (label == "t3") return t_lambda(3, 1.0);
  if (label == "t4") return t_lambda(4, 1.0);
  if (label == "t5") return t_lambda(5, 1.0);
  if (label == "t4,-i") return t_lambda(4, cplx(0.0, -1.0));
  if (label == "m4") return m4_state();
  if (label == "max4") return max4_candidate();
  if (label == "bell") return bipartite_max_entangled(2, 2);
  if (label.rfind("dicke-", 0) == 0) {
    const auto rest = label.substr(6);
    const auto dash = rest.find('-');
    if (dash != std::string::npos)
      return dicke_state(std::stoi(rest.substr(0, dash)), std::stoi(rest.substr(dash + 1)));
  }
  throw std::invalid_argument("make_state: unknown label '" + label + "'");
}

std::vector<std::pair<cplx, Vec>> w_state_zeta_decomposition() {
  const cplx zeta(-0.5, std::sqrt(3.0) / 2.0);
  const double scale = 1.0 / (6.0 * std::sqrt(3.0));
  std::vector<std::pair<cplx, Vec>> out;
  const cplx phases[3] = {1.0, zeta * zeta, zeta};
  const cplx seconds[3] = {1.0, zeta, zeta * zeta};
  for (int k = 0; k < 3; ++k) {
    Vec v(2);
    v << std::sqrt(2.0), seconds[k];
    out.emplace_back(scale * phases[k], v);
  }
  return out;
}

}  // namespace entanglib
