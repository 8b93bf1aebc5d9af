#pragma once

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lmps {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Linear program in computational form:
///
///   minimize    cost' x
///   subject to  row_lower <= rows * x <= row_upper
///               var_lower <=  x       <= var_upper
///
/// Equality rows use row_lower == row_upper. Bounds may be +-kInf.
struct LinearProgram {
  Eigen::VectorXd cost;
  Eigen::MatrixXd rows;
  Eigen::VectorXd row_lower;
  Eigen::VectorXd row_upper;
  Eigen::VectorXd var_lower;
  Eigen::VectorXd var_upper;

  [[nodiscard]] Eigen::Index num_vars() const { return cost.size(); }
  [[nodiscard]] Eigen::Index num_rows() const { return rows.rows(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

[[nodiscard]] std::string to_string(LpStatus status);

/// Solution of a LinearProgram.
///
/// Dual sign convention: row_duals[r] is the derivative of the optimal
/// objective with respect to whichever bound of row r is active, and
/// reduced_costs[j] likewise for the active bound of variable j. For a
/// minimization, a row sitting at its lower bound has a non-negative dual
/// and a row at its upper bound a non-positive one.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  Eigen::VectorXd row_activity;
  Eigen::VectorXd row_duals;
  Eigen::VectorXd reduced_costs;
  double objective = 0.0;
  int iterations = 0;
  /// Optimal duals are not unique: a degenerate pivot reaches another
  /// optimal basis with different row duals.
  bool degenerate = false;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  double degeneracy_tol = 1e-9;
  int max_iterations = 0;  ///< 0 selects 50 * (rows + vars) + 1000
  int refactor_every = 64;
  /// Rows whose duals matter for the degeneracy flag (empty: all rows).
  std::vector<int> watched_rows;
};

/// Bounded-variable revised primal simplex (two phases, dense basis
/// inverse with periodic refactorisation, Bland's rule on stalling).
[[nodiscard]] LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace lmps
