#pragma once

#include <vector>

#include "entanglib/tensor.hpp"

namespace entanglib {

enum class LPStatus { optimal, infeasible, unbounded };

/// min c'x  s.t.  Ax = b, x >= 0.
struct LPProblem {
  RMat A;
  RVec b;
  RVec c;
};

struct LPSolution {
  LPStatus status = LPStatus::optimal;
  double value = 0.0;
  RVec x;      // primal over the problem's columns
  RVec duals;  // y with A'y <= c at optimality
};

/// Equality-form master kept warm across column additions; revised simplex
/// with Bland's rule. Artificial columns seed the first basis.
class MasterLP {
 public:
  explicit MasterLP(RVec b);

  int add_column(const RVec& a, double cost);
  int num_columns() const { return static_cast<int>(cols_.size()); }

  LPStatus solve();
  double value() const;
  RVec duals() const;
  /// Primal values over the added columns (artificials excluded).
  RVec primal() const;

 private:
  void factor_basis();
  LPStatus run_simplex(const RVec& costs, bool phase1);

  int m_;
  RVec b_;
  std::vector<RVec> cols_;   // user columns
  std::vector<double> cost_;
  std::vector<int> basis_;   // indices; [0,m) artificials, m+j = user column j
  RMat binv_;
  bool phase1_done_ = false;
  bool last_infeasible_ = false;
};

LPSolution solve_lp(const LPProblem& p);

}  // namespace entanglib
