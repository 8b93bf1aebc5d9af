#pragma once

#include <cstdint>
#include <vector>

#include "lmps/dcopf.hpp"
#include "lmps/lmp.hpp"

namespace lmps {

struct ScenarioOptions {
  int intervals = 576;
  double noise = 0.03;  // relative std of loads and offer prices
  std::uint64_t seed = 1;
  MarketMode mode = MarketMode::Lossless;
  double mu_tol = 1e-6;  // |mu| above this counts as congested
  bool parallel = true;
};

struct ScenarioRecord {
  int interval = 0;
  NetworkCase market;
  DispatchSolution dispatch;
  LmpComponents lmp;
  std::vector<std::uint8_t> congested;  // per line
};

struct ScenarioSet {
  std::vector<ScenarioRecord> records;  // feasible ones, in interval order
  std::vector<int> infeasible;          // skipped interval indices
  PtdfMatrix ptdf;
};

/// Perturbed copy of the base case for interval t.
NetworkCase perturb_case(const NetworkCase& base, int t, const ScenarioOptions& opt);

/// Throws InfeasibleError when fewer than half the intervals clear.
ScenarioSet generate_scenarios(const NetworkCase& base, const ScenarioOptions& opt);

}  // namespace lmps
