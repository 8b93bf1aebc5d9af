#include "lmps/dcopf.hpp"

#include <stdexcept>

#include "lmps/errors.hpp"
#include "lmps/lp.hpp"

namespace lmps {

MarketMode parse_mode(const std::string& s) {
  if (s == "lossless") return MarketMode::Lossless;
  if (s == "lossy") return MarketMode::Lossy;
  throw std::invalid_argument("mode must be lossless or lossy, got " + s);
}

std::string to_string(MarketMode m) { return m == MarketMode::Lossless ? "lossless" : "lossy"; }

DispatchSolution solve_dcopf(const NetworkCase& c, const PtdfMatrix& ptdf, MarketMode mode) {
  const int nb = c.num_buses();
  const int ng = static_cast<int>(c.generators.size());
  const bool lossy = mode == MarketMode::Lossy;
  if (ptdf.T.rows() != c.num_lines() || ptdf.T.cols() != nb)
    throw std::invalid_argument("dcopf: PTDF shape does not match the case");

  // Variables: one per offer block, then the loss l (lossy).
  std::vector<int> block_gen;
  for (int g = 0; g < ng; ++g)
    for (std::size_t b = 0; b < c.generators[g].blocks.size(); ++b) block_gen.push_back(g);
  const int nblk = static_cast<int>(block_gen.size());
  const int nv = nblk + (lossy ? 1 : 0);

  std::vector<int> limited;
  for (int j = 0; j < c.num_lines(); ++j)
    if (c.lines[j].limited()) limited.push_back(j);
  const int nlim = static_cast<int>(limited.size());

  // Rows: balance, loss (lossy), generators, limited lines.
  const int r_bal = 0;
  const int r_loss = lossy ? 1 : -1;
  const int r_gen = lossy ? 2 : 1;
  const int r_line = r_gen + ng;
  const int nr = r_line + nlim;

  const Eigen::VectorXd PD = c.loads();
  const Eigen::VectorXd LF = c.loss_factors();
  const Eigen::VectorXd d = c.loss_distribution();

  LinearProgram lp;
  lp.cost = Eigen::VectorXd::Zero(nv);
  lp.var_lower = Eigen::VectorXd::Zero(nv);
  lp.var_upper = Eigen::VectorXd::Zero(nv);
  lp.rows = Eigen::MatrixXd::Zero(nr, nv);
  lp.row_lower = Eigen::VectorXd::Zero(nr);
  lp.row_upper = Eigen::VectorXd::Zero(nr);

  // S(r, i): derivative of row r's bounds with respect to the load at bus i.
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nr, nb);

  int v = 0;
  for (int g = 0; g < ng; ++g) {
    for (const auto& o : c.generators[g].blocks) {
      lp.cost[v] = o.price;
      lp.var_upper[v] = o.quantity;
      ++v;
    }
  }
  if (lossy) {
    lp.var_lower[nblk] = -kInf;
    lp.var_upper[nblk] = kInf;
  }

  for (int k = 0; k < nblk; ++k) lp.rows(r_bal, k) = 1.0;
  if (lossy) lp.rows(r_bal, nblk) = -1.0;
  lp.row_lower[r_bal] = lp.row_upper[r_bal] = PD.sum();
  S.row(r_bal).setOnes();

  if (lossy) {
    lp.rows(r_loss, nblk) = 1.0;
    for (int k = 0; k < nblk; ++k) lp.rows(r_loss, k) = -LF[c.generators[block_gen[k]].bus];
    lp.row_lower[r_loss] = lp.row_upper[r_loss] = c.loss.l0 - LF.dot(PD);
    S.row(r_loss) = -LF.transpose();
  }

  for (int g = 0; g < ng; ++g) {
    for (int k = 0; k < nblk; ++k)
      if (block_gen[k] == g) lp.rows(r_gen + g, k) = 1.0;
    lp.row_lower[r_gen + g] = c.generators[g].pmin;
    lp.row_upper[r_gen + g] = c.generators[g].pmax;
  }

  for (int a = 0; a < nlim; ++a) {
    int j = limited[a];
    int r = r_line + a;
    for (int k = 0; k < nblk; ++k) lp.rows(r, k) = ptdf.T(j, c.generators[block_gen[k]].bus);
    if (lossy) lp.rows(r, nblk) = -ptdf.T.row(j).dot(d);
    double base = ptdf.T.row(j).dot(PD);
    lp.row_lower[r] = -c.lines[j].capacity + base;
    lp.row_upper[r] = c.lines[j].capacity + base;
    S.row(r) = ptdf.T.row(j);
  }

  LpOptions lpo;
  for (int r = 0; r < r_gen; ++r) lpo.watched_rows.push_back(r);
  for (int r = r_line; r < nr; ++r) lpo.watched_rows.push_back(r);
  LpSolution lps = solve_lp(lp, lpo);
  if (lps.status == LpStatus::Infeasible)
    throw InfeasibleError("dcopf: infeasible (load cannot be served within generator and line limits)");
  if (lps.status != LpStatus::Optimal)
    throw std::runtime_error("dcopf: LP solver stopped: " + to_string(lps.status));

  DispatchSolution sol;
  sol.mode = mode;
  sol.blocks = lps.x.head(nblk);
  sol.pg = Eigen::VectorXd::Zero(ng);
  for (int k = 0; k < nblk; ++k) sol.pg[block_gen[k]] += lps.x[k];
  sol.objective = lps.objective;
  sol.lambda = lps.row_duals[r_bal];
  sol.loss = lossy ? lps.x[nblk] : 0.0;
  sol.sigma = lossy ? lps.row_duals[r_loss] : sol.lambda;
  sol.mu = Eigen::VectorXd::Zero(c.num_lines());
  for (int a = 0; a < nlim; ++a) sol.mu[limited[a]] = lps.row_duals[r_line + a];
  sol.gamma_min = Eigen::VectorXd::Zero(ng);
  sol.gamma_max = Eigen::VectorXd::Zero(ng);
  for (int g = 0; g < ng; ++g) {
    double y = lps.row_duals[r_gen + g];
    sol.gamma_min[g] = std::max(y, 0.0);
    sol.gamma_max[g] = std::max(-y, 0.0);
  }
  Eigen::VectorXd inj = -PD;
  for (int g = 0; g < ng; ++g) inj[c.generators[g].bus] += sol.pg[g];
  if (lossy) inj -= d * sol.loss;
  sol.flows = ptdf.T * inj;
  sol.lmp = S.transpose() * lps.row_duals;
  sol.degenerate = lps.degenerate;
  return sol;
}

DispatchSolution solve_dcopf_lossless(const NetworkCase& c, const PtdfMatrix& ptdf) {
  return solve_dcopf(c, ptdf, MarketMode::Lossless);
}

DispatchSolution solve_dcopf_lossy(const NetworkCase& c, const PtdfMatrix& ptdf) {
  return solve_dcopf(c, ptdf, MarketMode::Lossy);
}

}  // namespace lmps
