#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmps/basis.hpp"

namespace lmps {

struct HyperplaneFit {
  Eigen::VectorXd normal;
  std::vector<int> inliers;
  std::vector<int> outliers;
  std::string method;  // "DPCP" or "RS"
  double objective = 0.0;  // ||X' n||_1
  int iterations = 0;
};

struct L1Result {
  Eigen::VectorXd m;
  double objective = 0.0;
};

/// argmin ||X' m||_1 subject to m' n = 1.
L1Result l1_min_linear_constraint(const Eigen::MatrixXd& X, const Eigen::VectorXd& n);

struct HyperplaneCheck {
  bool passes = false;
  std::vector<int> inliers;
};

/// Inliers |n' x| <= inlier_tol ||x||; passes iff count > p M and count >= dim.
HyperplaneCheck check_hyperplane(const Eigen::MatrixXd& X, const Eigen::VectorXd& n, double p,
                                 double inlier_tol);

struct DpcpOptions {
  int max_iter = 50;
  double conv_tol = 1e-9;
  double p = 0.05;
  double inlier_tol = 1e-6;
};

struct DpcpTrace {
  std::vector<double> objective;  // ||X' n_i||_1 for n_0, n_1, ...
  Eigen::VectorXd normal;
};

/// Converged normal regardless of the inlier test.
DpcpTrace dpcp_iterate(const Eigen::MatrixXd& X, const DpcpOptions& opt);
std::optional<HyperplaneFit> dpcp(const Eigen::MatrixXd& X, const DpcpOptions& opt);

struct RsOptions {
  double p = 0.05;
  long n_trials = 0;  // 0 selects rs_default_trials
  double inlier_tol = 1e-6;
  std::uint64_t seed = 1;
  int max_redraws = 100;
  bool parallel = true;
};

/// ceil(log(fail) / log(1 - p^(dim-1))), capped.
long rs_default_trials(double p, int dim, double fail = 1e-3, long cap = 200000);

std::optional<HyperplaneFit> random_sample_norm(const Eigen::MatrixXd& X, const RsOptions& opt);

/// Number of the first `trials` RS trials whose normal passes check_hyperplane.
long rs_success_count(const Eigen::MatrixXd& X, const RsOptions& opt, long trials);

enum class LeafKind { Internal, Exhausted, RankResolved, DepthLimited };
std::string to_string(LeafKind k);

struct TreeNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  int dim = 0;
  std::vector<int> columns;  // into the top-down input
  Eigen::MatrixXd frame;     // input dim x dim, orthonormal
  std::string method;        // fit method, empty at leaves
  int inliers = 0;
  LeafKind kind = LeafKind::Internal;
  int inlier_child = -1;
  int outlier_child = -1;
};

struct SearchTree {
  std::vector<TreeNode> nodes;
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] std::vector<int> leaves() const;
};

struct TopDownOptions {
  double p = 0.05;
  long n_trials = 0;
  double inlier_tol = 1e-6;
  double rank_tol = 1e-6;
  int depth_limit = 0;  // 0 selects 2k
  std::uint64_t seed = 1;
  DpcpOptions dpcp;
};

struct TopDownResult {
  BasisSet basis;
  SearchTree tree;
};

TopDownResult top_down_search(const Eigen::MatrixXd& X, const TopDownOptions& opt);

}  // namespace lmps
