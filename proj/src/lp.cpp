#include "lmps/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lmps {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration limit";
  }
  return "unknown";
}

namespace {

enum class Where { Basic, AtLower, AtUpper, FreeZero };

// Column layout: [0, n) structural, [n, n+m) row slacks (column -e_r),
// [n+m, n+m+na) artificials (column sign * e_row).
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const LpOptions& opt) : lp_(lp), opt_(opt) {
    n_ = lp.num_vars();
    m_ = lp.num_rows();
    if (lp.rows.cols() != n_ || lp.row_lower.size() != m_ || lp.row_upper.size() != m_ ||
        lp.var_lower.size() != n_ || lp.var_upper.size() != n_) {
      throw std::invalid_argument("solve_lp: inconsistent problem dimensions");
    }
    max_iter_ = opt.max_iterations > 0 ? opt.max_iterations
                                       : static_cast<int>(50 * (m_ + n_) + 1000);
  }

  LpSolution run() {
    LpSolution out;
    initialise();

    if (num_art_ > 0) {
      Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total_);
      phase1.tail(num_art_).setOnes();
      LpStatus s = iterate(phase1);
      if (s == LpStatus::IterationLimit) {
        out.status = s;
        out.iterations = iterations_;
        return out;
      }
      double infeas = value_.tail(num_art_).sum();
      double scale = 1.0 + lp_.row_lower.cwiseAbs().unaryExpr([](double v) {
                       return std::isfinite(v) ? v : 0.0;
                     }).maxCoeff();
      if (infeas > opt_.feasibility_tol * scale * 10.0) {
        out.status = LpStatus::Infeasible;
        out.iterations = iterations_;
        return out;
      }
      retire_artificials();
    }

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total_);
    phase2.head(n_) = lp_.cost;
    LpStatus s = iterate(phase2);
    out.status = s;
    out.iterations = iterations_;
    if (s != LpStatus::Optimal) return out;

    refactor();
    Eigen::VectorXd y = duals(phase2);
    out.x = value_.head(n_);
    out.row_activity = lp_.rows * out.x;
    out.row_duals = y;
    out.reduced_costs.resize(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      out.reduced_costs[j] = where_[j] == Where::Basic ? 0.0 : reduced_cost(phase2, y, j);
    }
    out.objective = lp_.cost.dot(out.x);
    out.degenerate = detect_degeneracy(phase2, y);
    return out;
  }

 private:
  void initialise() {
    // Structurals start at a finite bound (or zero when free).
    std::vector<double> art_sign;
    std::vector<Eigen::Index> art_row;
    Eigen::VectorXd xs(n_);
    std::vector<Where> ws(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      double lo = lp_.var_lower[j], hi = lp_.var_upper[j];
      if (lo > hi) throw std::invalid_argument("solve_lp: variable lower bound exceeds upper");
      if (std::isfinite(lo)) {
        xs[j] = lo;
        ws[j] = Where::AtLower;
      } else if (std::isfinite(hi)) {
        xs[j] = hi;
        ws[j] = Where::AtUpper;
      } else {
        xs[j] = 0.0;
        ws[j] = Where::FreeZero;
      }
    }
    Eigen::VectorXd act = lp_.rows * xs;

    std::vector<Where> slack_where(m_);
    Eigen::VectorXd slack_value(m_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      double lo = lp_.row_lower[r], hi = lp_.row_upper[r];
      if (lo > hi) throw std::invalid_argument("solve_lp: row lower bound exceeds upper");
      double tol = opt_.feasibility_tol * (1.0 + std::abs(act[r]));
      if (act[r] >= lo - tol && act[r] <= hi + tol) {
        slack_where[r] = Where::Basic;
        slack_value[r] = act[r];
      } else {
        double b = act[r] < lo ? lo : hi;
        slack_where[r] = act[r] < lo ? Where::AtLower : Where::AtUpper;
        slack_value[r] = b;
        art_row.push_back(r);
        art_sign.push_back(b - act[r] > 0 ? 1.0 : -1.0);
      }
    }

    num_art_ = static_cast<Eigen::Index>(art_row.size());
    total_ = n_ + m_ + num_art_;
    lower_.resize(total_);
    upper_.resize(total_);
    value_.resize(total_);
    where_.assign(total_, Where::AtLower);
    lower_.head(n_) = lp_.var_lower;
    upper_.head(n_) = lp_.var_upper;
    lower_.segment(n_, m_) = lp_.row_lower;
    upper_.segment(n_, m_) = lp_.row_upper;
    value_.head(n_) = xs;
    value_.segment(n_, m_) = slack_value;
    for (Eigen::Index j = 0; j < n_; ++j) where_[j] = ws[j];
    for (Eigen::Index r = 0; r < m_; ++r) where_[n_ + r] = slack_where[r];

    art_row_ = art_row;
    art_sign_ = art_sign;
    head_.assign(m_, -1);
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (slack_where[r] == Where::Basic) head_[r] = n_ + r;
    }
    for (Eigen::Index a = 0; a < num_art_; ++a) {
      Eigen::Index col = n_ + m_ + a;
      Eigen::Index r = art_row[a];
      lower_[col] = 0.0;
      upper_[col] = kInf;
      value_[col] = std::abs(slack_value[r] - act[r]);
      where_[col] = Where::Basic;
      head_[r] = col;
    }
    refactor();
  }

  // B^{-1} a_j
  Eigen::VectorXd ftran(Eigen::Index j) const {
    if (j < n_) return binv_ * lp_.rows.col(j);
    if (j < n_ + m_) return -binv_.col(j - n_);
    Eigen::Index a = j - n_ - m_;
    return art_sign_[a] * binv_.col(art_row_[a]);
  }

  Eigen::VectorXd column(Eigen::Index j) const {
    if (j < n_) return lp_.rows.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
    if (j < n_ + m_) {
      e[j - n_] = -1.0;
    } else {
      Eigen::Index a = j - n_ - m_;
      e[art_row_[a]] = art_sign_[a];
    }
    return e;
  }

  double reduced_cost(const Eigen::VectorXd& c, const Eigen::VectorXd& y, Eigen::Index j) const {
    if (j < n_) return c[j] - lp_.rows.col(j).dot(y);
    if (j < n_ + m_) return c[j] + y[j - n_];
    Eigen::Index a = j - n_ - m_;
    return c[j] - art_sign_[a] * y[art_row_[a]];
  }

  Eigen::VectorXd duals(const Eigen::VectorXd& c) const {
    Eigen::VectorXd cb(m_);
    for (Eigen::Index r = 0; r < m_; ++r) cb[r] = c[head_[r]];
    return binv_.transpose() * cb;
  }

  void refactor() {
    Eigen::MatrixXd basis(m_, m_);
    for (Eigen::Index r = 0; r < m_; ++r) basis.col(r) = column(head_[r]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    binv_ = lu.inverse();
    // Recompute basic values from the nonbasic ones: B x_B = -N x_N.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (Eigen::Index j = 0; j < total_; ++j) {
      if (where_[j] == Where::Basic || value_[j] == 0.0) continue;
      rhs -= column(j) * value_[j];
    }
    Eigen::VectorXd xb = binv_ * rhs;
    for (Eigen::Index r = 0; r < m_; ++r) value_[head_[r]] = xb[r];
    since_refactor_ = 0;
  }

  LpStatus iterate(const Eigen::VectorXd& c) {
    int stall = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= max_iter_) return LpStatus::IterationLimit;
      if (since_refactor_ >= opt_.refactor_every) refactor();

      Eigen::VectorXd y = duals(c);

      // Pricing.
      Eigen::Index q = -1;
      double best = 0.0;
      double dir = 0.0;
      for (Eigen::Index j = 0; j < total_; ++j) {
        Where w = where_[j];
        if (w == Where::Basic || lower_[j] == upper_[j]) continue;
        double d = reduced_cost(c, y, j);
        double cand_dir = 0.0;
        if (w == Where::AtLower && d < -opt_.optimality_tol) cand_dir = 1.0;
        else if (w == Where::AtUpper && d > opt_.optimality_tol) cand_dir = -1.0;
        else if (w == Where::FreeZero && std::abs(d) > opt_.optimality_tol) cand_dir = d < 0 ? 1.0 : -1.0;
        if (cand_dir == 0.0) continue;
        if (bland) {
          q = j;
          dir = cand_dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          q = j;
          dir = cand_dir;
        }
      }
      if (q < 0) return LpStatus::Optimal;

      Eigen::VectorXd alpha = ftran(q);

      // Ratio test: x_B moves at rate delta = -dir * alpha per unit step.
      double t_min = kInf;
      Eigen::Index leave = -1;
      double leave_rate = 0.0;
      for (Eigen::Index r = 0; r < m_; ++r) {
        double delta = -dir * alpha[r];
        if (std::abs(delta) <= opt_.pivot_tol) continue;
        Eigen::Index b = head_[r];
        double limit;
        if (delta > 0) {
          if (!std::isfinite(upper_[b])) continue;
          limit = (upper_[b] - value_[b]) / delta;
        } else {
          if (!std::isfinite(lower_[b])) continue;
          limit = (value_[b] - lower_[b]) / -delta;
        }
        limit = std::max(limit, 0.0);
        bool take;
        if (leave < 0) {
          take = true;
        } else if (bland) {
          take = limit < t_min - 1e-12 || (limit <= t_min + 1e-12 && b < head_[leave]);
        } else {
          take = limit < t_min - 1e-12 ||
                 (limit <= t_min + 1e-12 && std::abs(delta) > std::abs(leave_rate));
        }
        if (take) {
          t_min = limit;
          leave = r;
          leave_rate = delta;
        }
      }

      double span = upper_[q] - lower_[q];
      ++iterations_;
      ++since_refactor_;

      if (std::isfinite(span) && span <= t_min) {
        // Bound flip of the entering variable.
        value_[q] += dir * span;
        where_[q] = dir > 0 ? Where::AtUpper : Where::AtLower;
        value_[q] = dir > 0 ? upper_[q] : lower_[q];
        for (Eigen::Index r = 0; r < m_; ++r) value_[head_[r]] += -dir * alpha[r] * span;
        stall = 0;
        bland = false;
        continue;
      }
      if (leave < 0) return LpStatus::Unbounded;

      double t = t_min;
      for (Eigen::Index r = 0; r < m_; ++r) value_[head_[r]] += -dir * alpha[r] * t;
      value_[q] += dir * t;

      Eigen::Index out = head_[leave];
      if (leave_rate > 0) {
        value_[out] = upper_[out];
        where_[out] = Where::AtUpper;
      } else {
        value_[out] = lower_[out];
        where_[out] = Where::AtLower;
      }
      where_[q] = Where::Basic;
      head_[leave] = q;

      // Product-form update of the basis inverse.
      double piv = alpha[leave];
      binv_.row(leave) /= piv;
      for (Eigen::Index r = 0; r < m_; ++r) {
        if (r == leave || alpha[r] == 0.0) continue;
        binv_.row(r) -= alpha[r] * binv_.row(leave);
      }

      if (t <= 1e-12) {
        if (++stall > 50) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
    }
  }

  void retire_artificials() {
    // Pivot basic artificials out where a non-artificial column can replace them.
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (head_[r] < n_ + m_) continue;
      Eigen::RowVectorXd row = binv_.row(r);
      for (Eigen::Index j = 0; j < n_ + m_; ++j) {
        if (where_[j] == Where::Basic) continue;
        double a = j < n_ ? row.dot(lp_.rows.col(j)) : -row[j - n_];
        if (std::abs(a) < 1e-7) continue;
        Eigen::VectorXd alpha = ftran(j);
        Eigen::Index out = head_[r];
        where_[out] = Where::AtLower;
        value_[out] = 0.0;
        where_[j] = Where::Basic;
        head_[r] = j;
        double piv = alpha[r];
        binv_.row(r) /= piv;
        for (Eigen::Index i = 0; i < m_; ++i) {
          if (i == r || alpha[i] == 0.0) continue;
          binv_.row(i) -= alpha[i] * binv_.row(r);
        }
        break;
      }
    }
    for (Eigen::Index a = 0; a < num_art_; ++a) {
      Eigen::Index col = n_ + m_ + a;
      upper_[col] = 0.0;
      if (where_[col] != Where::Basic) {
        where_[col] = Where::AtLower;
        value_[col] = 0.0;
      }
    }
    refactor();
  }

  // Dual ratio test on every primal-degenerate basic variable: a positive
  // step that keeps reduced costs feasible gives a second optimal dual.
  bool detect_degeneracy(const Eigen::VectorXd& c, const Eigen::VectorXd& y) const {
    const double tol = opt_.degeneracy_tol;
    std::vector<double> d(total_, 0.0);
    for (Eigen::Index j = 0; j < total_; ++j)
      if (where_[j] != Where::Basic) d[j] = reduced_cost(c, y, j);
    for (Eigen::Index r = 0; r < m_; ++r) {
      Eigen::Index b = head_[r];
      double v = value_[b];
      double vt = tol * (1.0 + std::abs(v));
      bool at_lo = std::isfinite(lower_[b]) && std::abs(v - lower_[b]) <= vt;
      bool at_hi = std::isfinite(upper_[b]) && std::abs(v - upper_[b]) <= vt;
      if (!at_lo && !at_hi) continue;
      Eigen::RowVectorXd row = binv_.row(r);
      if (!opt_.watched_rows.empty()) {
        bool moves = false;
        for (int w : opt_.watched_rows) moves = moves || std::abs(row[w]) > 1e-12;
        if (!moves) continue;
      }
      for (double dir : {1.0, -1.0}) {
        if ((dir > 0 && !at_lo) || (dir < 0 && !at_hi)) continue;
        double step = kInf;
        for (Eigen::Index j = 0; j < total_ && step > tol; ++j) {
          if (where_[j] == Where::Basic || lower_[j] == upper_[j]) continue;
          double alpha = dir * row.dot(column(j));
          if (std::abs(alpha) <= 1e-12) continue;
          if (where_[j] == Where::FreeZero) step = 0.0;
          else if (where_[j] == Where::AtLower && alpha < 0) step = std::min(step, std::max(d[j], 0.0) / -alpha);
          else if (where_[j] == Where::AtUpper && alpha > 0) step = std::min(step, std::max(-d[j], 0.0) / alpha);
        }
        if (step > tol) return true;
      }
    }
    return false;
  }

  const LinearProgram& lp_;
  LpOptions opt_;
  Eigen::Index n_ = 0, m_ = 0, num_art_ = 0, total_ = 0;
  int max_iter_ = 0;
  int iterations_ = 0;
  int since_refactor_ = 0;
  Eigen::VectorXd lower_, upper_, value_;
  std::vector<Where> where_;
  std::vector<Eigen::Index> head_;
  std::vector<Eigen::Index> art_row_;
  std::vector<double> art_sign_;
  Eigen::MatrixXd binv_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  Simplex simplex(lp, options);
  return simplex.run();
}

}  // namespace lmps
