#pragma once

#include <Eigen/Dense>

#include "lmps/network.hpp"
#include "lmps/ptdf.hpp"

namespace lmps {

enum class MarketMode { Lossless, Lossy };

MarketMode parse_mode(const std::string& s);
std::string to_string(MarketMode m);

struct DispatchSolution {
  MarketMode mode = MarketMode::Lossless;
  Eigen::VectorXd pg;      // per generator, MW
  Eigen::VectorXd blocks;  // per block, generator-major
  double objective = 0.0;  // $/h
  double lambda = 0.0;     // balance dual
  double sigma = 0.0;      // loss-row dual (lossy only)
  double loss = 0.0;       // MW
  Eigen::VectorXd mu;      // per line, mu = mu_minus - mu_plus
  Eigen::VectorXd gamma_min;
  Eigen::VectorXd gamma_max;
  Eigen::VectorXd flows;   // per line, MW
  Eigen::VectorXd lmp;     // full nodal price from the LP duals
  bool degenerate = false;
};

/// Throws InfeasibleError when no dispatch meets load and limits.
DispatchSolution solve_dcopf_lossless(const NetworkCase& c, const PtdfMatrix& ptdf);
DispatchSolution solve_dcopf_lossy(const NetworkCase& c, const PtdfMatrix& ptdf);
DispatchSolution solve_dcopf(const NetworkCase& c, const PtdfMatrix& ptdf, MarketMode mode);

}  // namespace lmps
