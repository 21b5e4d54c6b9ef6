#include "entanglib/lp.hpp"

#include <cmath>

namespace entanglib {

namespace {
constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kMaxIterations = 20000;
}  // namespace

MasterLP::MasterLP(RVec b) : m_(static_cast<int>(b.size())), b_(std::move(b)) {
  basis_.resize(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = i;
  binv_ = RMat::Identity(m_, m_);
}

int MasterLP::add_column(const RVec& a, double cost) {
  if (a.size() != m_) throw std::invalid_argument("MasterLP: column length != m");
  cols_.push_back(a);
  cost_.push_back(cost);
  return static_cast<int>(cols_.size()) - 1;
}

void MasterLP::factor_basis() {
  RMat basis_mat(m_, m_);
  for (int i = 0; i < m_; ++i) {
    const int var = basis_[static_cast<std::size_t>(i)];
    if (var < m_) {
      basis_mat.col(i).setZero();
      // artificial i carries sign(b_i) so the initial basis is feasible
      basis_mat(var, i) = b_[var] >= 0 ? 1.0 : -1.0;
    } else {
      basis_mat.col(i) = cols_[static_cast<std::size_t>(var - m_)];
    }
  }
  binv_ = basis_mat.fullPivLu().inverse();
}

LPStatus MasterLP::run_simplex(const RVec& costs, bool phase1) {
  const int total = m_ + static_cast<int>(cols_.size());
  auto column_of = [&](int var) -> RVec {
    if (var < m_) {
      RVec e = RVec::Zero(m_);
      e[var] = b_[var] >= 0 ? 1.0 : -1.0;
      return e;
    }
    return cols_[static_cast<std::size_t>(var - m_)];
  };

  factor_basis();
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    RVec xb = binv_ * b_;
    RVec cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = costs[basis_[static_cast<std::size_t>(i)]];
    RVec y = binv_.transpose() * cb;

    int entering = -1;
    for (int var = 0; var < total; ++var) {
      if (!phase1 && var < m_) continue;  // artificials never re-enter
      bool basic = false;
      for (int i = 0; i < m_; ++i)
        if (basis_[static_cast<std::size_t>(i)] == var) { basic = true; break; }
      if (basic) continue;
      const double rc = costs[var] - y.dot(column_of(var));
      if (rc < -kReducedCostTol) { entering = var; break; }  // Bland: first index
    }
    if (entering < 0) return LPStatus::optimal;

    RVec w = binv_ * column_of(entering);
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (w[i] > kPivotTol) {
        const double ratio = xb[i] / w[i];
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             basis_[static_cast<std::size_t>(i)] <
                 basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return LPStatus::unbounded;
    basis_[static_cast<std::size_t>(leave)] = entering;
    factor_basis();
  }
  // fp-degenerate cycling guard: the current basis is feasible, so stopping
  // here keeps every value/dual bound downstream valid (upper bounds come
  // from feasible points, lower bounds from explicit dual certificates)
  return LPStatus::optimal;
}

LPStatus MasterLP::solve() {
  const int total = m_ + static_cast<int>(cols_.size());
  if (!phase1_done_) {
    RVec phase1_costs = RVec::Zero(total);
    for (int i = 0; i < m_; ++i) phase1_costs[i] = 1.0;
    LPStatus st = run_simplex(phase1_costs, true);
    if (st == LPStatus::unbounded) return LPStatus::unbounded;
    RVec xb = binv_ * b_;
    double art = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] < m_) art += std::abs(xb[i]);
    if (art > 1e-9 * std::max(1.0, b_.cwiseAbs().sum())) {
      last_infeasible_ = true;
      return LPStatus::infeasible;
    }
    phase1_done_ = true;
  }
  last_infeasible_ = false;
  RVec costs = RVec::Zero(total);
  for (std::size_t j = 0; j < cost_.size(); ++j)
    costs[m_ + static_cast<int>(j)] = cost_[j];
  return run_simplex(costs, false);
}

double MasterLP::value() const {
  RVec xb = binv_ * b_;
  double v = 0.0;
  for (int i = 0; i < m_; ++i) {
    const int var = basis_[static_cast<std::size_t>(i)];
    if (var >= m_) v += cost_[static_cast<std::size_t>(var - m_)] * xb[i];
  }
  return v;
}

RVec MasterLP::duals() const {
  // after a failed phase 1 the relevant prices are the phase-1 ones
  RVec cb(m_);
  for (int i = 0; i < m_; ++i) {
    const int var = basis_[static_cast<std::size_t>(i)];
    if (last_infeasible_)
      cb[i] = var < m_ ? 1.0 : 0.0;
    else
      cb[i] = var < m_ ? 0.0 : cost_[static_cast<std::size_t>(var - m_)];
  }
  return binv_.transpose() * cb;
}

RVec MasterLP::primal() const {
  RVec xb = binv_ * b_;
  RVec x = RVec::Zero(static_cast<Eigen::Index>(cols_.size()));
  for (int i = 0; i < m_; ++i) {
    const int var = basis_[static_cast<std::size_t>(i)];
    if (var >= m_) x[var - m_] = xb[i];
  }
  return x;
}

LPSolution solve_lp(const LPProblem& p) {
  if (p.A.rows() != p.b.size() || p.A.cols() != p.c.size())
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  MasterLP master(p.b);
  for (Eigen::Index j = 0; j < p.A.cols(); ++j)
    master.add_column(p.A.col(j), p.c[j]);
  LPSolution out;
  out.status = master.solve();
  if (out.status == LPStatus::optimal) {
    out.value = master.value();
    out.x = master.primal();
    out.duals = master.duals();
  }
  return out;
}

}  // namespace entanglib
