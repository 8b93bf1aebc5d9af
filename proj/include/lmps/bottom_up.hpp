#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmps/basis.hpp"
#include "lmps/spectral.hpp"

namespace lmps {

struct HarvestResult {
  std::vector<Eigen::VectorXd> bases;  // sign-normalized, input coordinates
  std::vector<std::vector<int>> harvested_members;  // per base
  std::vector<int> residual;           // columns of X not harvested
  std::vector<int> cluster_ranks;      // per cluster
};

/// Rank-1 clusters are harvested whole. With collinear_core, a cluster of
/// higher rank still yields its largest exactly collinear subset.
HarvestResult harvest_rank1(const Eigen::MatrixXd& X, const ClusterResult& clusters,
                            double rank_tol, int min_size = 2, bool collinear_core = false);

struct ComplementProjection {
  Eigen::MatrixXd X;      // surviving columns in complement coordinates
  Eigen::MatrixXd frame;  // dim x (dim - rank B), orthonormal
  std::vector<int> kept;  // input column indices
};

/// Projects onto span(B)^perp; drops columns with norm <= zero_abs.
ComplementProjection project_complement(const Eigen::MatrixXd& X, const Eigen::MatrixXd& B,
                                        double zero_abs);

struct RoundLog {
  int round = 0;
  int columns = 0;
  int dim = 0;
  int K = 0;
  std::vector<double> eigengaps;
  int harvested = 0;
  int residual = 0;
  double seconds = 0.0;
  std::vector<int> labels;  // per column of this round
  Eigen::MatrixXd data;     // round input, kept when requested
};

struct BottomUpOptions {
  double eps_cutoff = 0.005;
  double rank_tol = 1e-6;
  double zero_tol = 1e-6;  // relative to the median original column norm
  int max_rounds = 0;      // 0 selects the working dimension
  int restarts = 10;
  std::uint64_t seed = 1;
  bool keep_round_data = false;
  bool collinear_core = true;
};

struct BottomUpResult {
  BasisSet basis;
  Eigen::MatrixXd residual;        // in residual_frame coordinates
  Eigen::MatrixXd residual_frame;  // dim x residual dim
  std::vector<int> residual_columns;
  std::vector<RoundLog> rounds;
};

BottomUpResult bottom_up_search(const Eigen::MatrixXd& X, const BottomUpOptions& opt);

std::string format_round(const RoundLog& r);

}  // namespace lmps
