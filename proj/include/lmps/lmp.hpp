#pragma once

#include <Eigen/Dense>

#include "lmps/dcopf.hpp"

namespace lmps {

struct LmpComponents {
  Eigen::VectorXd energy;
  Eigen::VectorXd congestion;
  Eigen::VectorXd loss;
  Eigen::VectorXd total;
};

LmpComponents decompose_lmp(const DispatchSolution& sol, const PtdfMatrix& ptdf,
                            const NetworkCase& c, MarketMode mode);

}  // namespace lmps
