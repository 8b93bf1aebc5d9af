#include "lmps/lmp.hpp"

#include <stdexcept>

namespace lmps {

LmpComponents decompose_lmp(const DispatchSolution& sol, const PtdfMatrix& ptdf,
                            const NetworkCase& c, MarketMode mode) {
  const int nb = c.num_buses();
  if (ptdf.T.cols() != nb || ptdf.T.rows() != c.num_lines() || sol.mu.size() != c.num_lines())
    throw std::invalid_argument("decompose_lmp: shape mismatch");
  LmpComponents out;
  Eigen::VectorXd tmu = ptdf.T.transpose() * sol.mu;
  if (mode == MarketMode::Lossless) {
    out.energy = Eigen::VectorXd::Constant(nb, sol.lambda);
    out.congestion = tmu;
    out.loss = Eigen::VectorXd::Zero(nb);
  } else {
    double shift = c.loss_distribution().dot(tmu);
    out.energy = Eigen::VectorXd::Constant(nb, sol.sigma);
    out.congestion = tmu - Eigen::VectorXd::Constant(nb, shift);
    out.loss = -sol.sigma * c.loss_factors();
  }
  out.total = sol.lmp.size() == nb ? sol.lmp : Eigen::VectorXd(out.energy + out.congestion + out.loss);
  return out;
}

}  // namespace lmps
