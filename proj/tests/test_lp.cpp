#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "entanglib/lp.hpp"

using namespace entanglib;

TEST_CASE("trivial equality LPs") {
  {
    // min x1 s.t. x1 = 1
    LPProblem p;
    p.A = RMat::Ones(1, 1);
    p.b = RVec::Ones(1);
    p.c = RVec::Ones(1);
    auto sol = solve_lp(p);
    CHECK(sol.status == LPStatus::optimal);
    CHECK(sol.value == doctest::Approx(1.0));
  }
  {
    // min x1 + x2 s.t. x1 + x2 = 1
    LPProblem p;
    p.A = RMat::Ones(1, 2);
    p.b = RVec::Ones(1);
    p.c = RVec::Ones(2);
    auto sol = solve_lp(p);
    CHECK(sol.status == LPStatus::optimal);
    CHECK(sol.value == doctest::Approx(1.0));
    CHECK(sol.x.sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("infeasible and unbounded detection") {
  {
    // x1 = -1, x >= 0 is infeasible with a nonnegative column
    LPProblem p;
    p.A = RMat::Ones(1, 1);
    p.b = -RVec::Ones(1);
    p.c = RVec::Ones(1);
    CHECK(solve_lp(p).status == LPStatus::infeasible);
  }
  {
    // min -x1 + 0*x2 s.t. x1 - x2 = 0: ray x1 = x2 -> unbounded
    LPProblem p;
    p.A = RMat(1, 2);
    p.A << 1.0, -1.0;
    p.b = RVec::Zero(1);
    p.c = RVec(2);
    p.c << -1.0, 0.0;
    CHECK(solve_lp(p).status == LPStatus::unbounded);
  }
}

namespace {

// brute-force oracle: enumerate all basic solutions of Ax = b, x >= 0
double vertex_enumeration_optimum(const LPProblem& p) {
  const int m = static_cast<int>(p.A.rows());
  const int n = static_cast<int>(p.A.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      RMat base(m, m);
      for (int i = 0; i < m; ++i) base.col(i) = p.A.col(idx[static_cast<std::size_t>(i)]);
      Eigen::FullPivLU<RMat> lu(base);
      if (!lu.isInvertible()) return;
      RVec xb = lu.solve(p.b);
      for (int i = 0; i < m; ++i)
        if (xb[i] < -1e-9) return;
      double val = 0.0;
      for (int i = 0; i < m; ++i) val += p.c[idx[static_cast<std::size_t>(i)]] * xb[i];
      best = std::min(best, val);
      return;
    }
    for (int j = start; j < n; ++j) {
      idx[static_cast<std::size_t>(depth)] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("random feasible LPs vs vertex enumeration oracle") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int rep = 0; rep < 40; ++rep) {
    LPProblem p;
    p.A = RMat(2, 5);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 5; ++c) p.A(r, c) = g(rng);
    // force feasibility: b = A * (positive point)
    RVec x0(5);
    for (int i = 0; i < 5; ++i) x0[i] = u(rng);
    p.b = p.A * x0;
    p.c = RVec(5);
    for (int i = 0; i < 5; ++i) p.c[i] = u(rng);
    auto sol = solve_lp(p);
    REQUIRE(sol.status == LPStatus::optimal);
    const double oracle = vertex_enumeration_optimum(p);
    CHECK(sol.value == doctest::Approx(oracle).epsilon(1e-7));

    // optimality conditions: Ax = b and complementary slackness
    CHECK((p.A * sol.x - p.b).norm() < 1e-8);
    for (int j = 0; j < 5; ++j) {
      const double rc = p.c[j] - sol.duals.dot(p.A.col(j));
      CHECK(rc > -1e-7);
      if (sol.x[j] > 1e-7) CHECK(std::abs(rc) < 1e-6);
    }
  }
}

TEST_CASE("master warm start across added columns") {
  MasterLP master(RVec::Ones(2));
  RVec a1(2), a2(2), a3(2);
  a1 << 1.0, 0.0;
  a2 << 0.0, 1.0;
  master.add_column(a1, 3.0);
  master.add_column(a2, 3.0);
  CHECK(master.solve() == LPStatus::optimal);
  CHECK(master.value() == doctest::Approx(6.0));
  a3 << 1.0, 1.0;
  master.add_column(a3, 2.0);
  CHECK(master.solve() == LPStatus::optimal);
  CHECK(master.value() == doctest::Approx(2.0));
  RVec y = master.duals();
  CHECK(y.sum() == doctest::Approx(2.0));
}
