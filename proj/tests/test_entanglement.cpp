#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entanglib/entanglement.hpp"
#include "entanglib/states.hpp"

using namespace entanglib;

namespace {

OptimOptions fast_opts(std::int64_t m = 5) {
  OptimOptions o;
  o.threads = 1;
  o.m_override = m;
  return o;
}

}  // namespace

TEST_CASE("gme of a product state is zero") {
  auto d30 = dicke_state(3, 0);
  auto rep = gme(*d30.symmetric, fast_opts());
  CHECK(rep.gme.lower == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.gme.contains(0.0, 1e-9));
  CHECK(rep.nuclear_energy.contains(0.0, 1e-6));
}

TEST_CASE("gme of W contains sqrt(2/3)") {
  auto w = w_state();
  auto rep = gme(*w.symmetric, fast_opts());
  const double truth = std::sqrt(2.0 / 3.0);
  CHECK(rep.gme.contains(truth, 1e-9));
  CHECK(rep.spectral.contains(2.0 / 3.0, 1e-9));
  CHECK(rep.nuclear.contains(1.5, 1e-9));
  CHECK(rep.nuclear_energy.contains(2.0 * std::log(1.5), 1e-9));
  // duality: nuclear energy lower >= log-spec lower up to bracket slack
  CHECK(rep.nuclear_energy.upper >= rep.log_spec.lower - 1e-9);
}

TEST_CASE("gme rejects unnormalized states") {
  SymTensor s(2, 3);
  s.set_coeff({3, 0}, 2.0);
  CHECK_THROWS_AS(gme(s, fast_opts()), std::invalid_argument);
}

TEST_CASE("gme of a dense state routes through the dense engine") {
  auto m4 = m4_state();
  OptimOptions o = fast_opts(4);
  auto rep = gme(m4.dense, o);
  const double truth = std::sqrt(2.0 * (1.0 - std::sqrt(2.0) / 3.0));
  CHECK(rep.gme.contains(truth, 1e-6));
  CHECK(rep.spectral.contains(std::sqrt(2.0) / 3.0, 1e-9));
}

TEST_CASE("nuclear energy: W and T_{3,1}") {
  auto w = w_state();
  auto b = nuclear_energy(*w.symmetric, fast_opts());
  CHECK(b.contains(2.0 * std::log(1.5), 1e-9));

  auto t3 = t_lambda(3, 1.0);
  auto bt = nuclear_energy(*t3.symmetric, fast_opts(7));
  CHECK(bt.contains(std::log(2.0), 1e-9));  // 2 log sqrt(2)
}

TEST_CASE("alpha lower bounds") {
  CHECK(alpha_lower_bound(Shape({3, 7}), FieldTag::complex_) ==
        doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(alpha_lower_bound(Shape({2, 2, 2}), FieldTag::complex_) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(alpha_lower_bound(Shape({2, 2, 2, 2}), FieldTag::complex_) ==
        doctest::Approx(std::sqrt(2.0) / 3.0));
  CHECK(alpha_lower_bound(Shape({2, 2, 2}), FieldTag::real) == doctest::Approx(0.5));
  CHECK(alpha_lower_bound(Shape({3, 3, 3}), FieldTag::real) ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("symmetric alpha bounds") {
  auto [lo22, up22] = symmetric_alpha_bounds(2, 2, fast_opts());
  CHECK(lo22 == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(up22 >= 1.0 / std::sqrt(2.0) - 1e-9);  // attained by T_{2,lambda}
  CHECK(up22 <= 1.0);

  auto [lo23, up23] = symmetric_alpha_bounds(2, 3, fast_opts());
  CHECK(lo23 == doctest::Approx(0.5));  // C(4,3) = 4
  CHECK(up23 <= 2.0 / 3.0 + 0.4);       // W pins the upper end at m = 5
  CHECK(up23 >= 2.0 / 3.0 - 1e-9);
}

TEST_CASE("real d-qubit extremes: bracket contains 2^{(1-d)/2}") {
  for (int d : {3, 4}) {
    auto t = t_lambda(d, 1.0);
    Vec c = t.symmetric->coeffs();
    SymTensor real_view(2, d, c, FieldTag::real);
    auto est = spectral_norm(real_view, fast_opts(2 * d + 1));
    const double truth = std::pow(2.0, 0.5 * (1.0 - d));
    CHECK(est.lower <= truth + 1e-9);
    CHECK(est.upper >= truth - 1e-9);
  }
}

TEST_CASE("bracket monotonicity: smaller epsilon never widens the bracket") {
  auto w = w_state();
  OptimOptions coarse;
  coarse.threads = 1;
  coarse.m_override = 5;
  OptimOptions fine = coarse;
  fine.m_override = 9;
  auto a = spectral_norm(*w.symmetric, coarse);
  auto b = spectral_norm(*w.symmetric, fine);
  CHECK(b.upper - b.lower <= a.upper - a.lower + 1e-12);
}
