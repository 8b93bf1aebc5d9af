#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmps/bottom_up.hpp"
#include "lmps/dcopf.hpp"
#include "lmps/identify.hpp"
#include "lmps/panel.hpp"
#include "lmps/top_down.hpp"

namespace lmps {

struct PipelineOptions {
  MarketMode mode = MarketMode::Lossless;
  std::string ref_node;  // empty selects the first node
  double dedupe_tol = -1.0;  // negative: keep every node
  double filter_tol = 1e-4;
  double energy_tol = 1e-8;
  double eps_cutoff = 0.005;
  double rank_tol = 1e-6;
  double zero_tol = 1e-6;
  double eps_encode = 1e-3;
  double p = 0.05;
  long n_trials = 0;
  double inlier_tol = 1e-6;
  int depth_limit = 0;
  std::uint64_t seed = 1;
  bool keep_round_data = false;
};

struct StageTimes {
  double preprocess = 0.0;
  double bottom_up = 0.0;
  double top_down = 0.0;
  double assemble = 0.0;
  double encode = 0.0;
};

struct PipelineResult {
  CongestionMatrix data;
  BottomUpResult bottom;
  std::optional<TopDownResult> top;
  BasisSet top_basis;  // top-down vectors mapped to working coordinates
  AssembledBasis basis;
  Eigen::MatrixXd chi;
  StatusCodes codes;
  StageTimes times;
};

/// Optional node merge, elimination (lossy), filtering and PCA.
CongestionMatrix preprocess(const LmpPanel& panel, const PipelineOptions& opt);

/// Bottom-up, top-down on any residual, assembly and encoding.
PipelineResult identify_congestion(CongestionMatrix data, const PipelineOptions& opt);

PipelineResult run_pipeline(const LmpPanel& panel, const PipelineOptions& opt);

}  // namespace lmps
