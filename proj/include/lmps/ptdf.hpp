#pragma once

#include <Eigen/Dense>

#include "lmps/network.hpp"

namespace lmps {

/// Line flow sensitivity to nodal injection (withdrawal at the reference bus).
struct PtdfMatrix {
  Eigen::MatrixXd T;  // lines x buses
  int reference = 0;
};

/// Throws std::invalid_argument for zero reactance or islands (named in the message).
PtdfMatrix build_ptdf(const NetworkCase& c);

/// Connected components of the bus graph, as lists of bus indices.
std::vector<std::vector<int>> islands(const NetworkCase& c);

}  // namespace lmps
