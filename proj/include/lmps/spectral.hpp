#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace lmps {

/// |Xn' Xn| with unit-normalized columns. Throws on a zero column.
Eigen::MatrixXd affinity(const Eigen::MatrixXd& X);

/// 1 where A > 1 - eps, else 0 (diagonal kept at 1).
Eigen::MatrixXd cutoff(const Eigen::MatrixXd& A, double eps);

struct ClusterResult {
  int K = 1;
  std::vector<int> labels;              // 0 .. K-1
  Eigen::VectorXd eigenvalues;          // ascending; empty on the component shortcut
  std::vector<double> eigengaps;        // xi_i for i = 2 .. (1-based), index 0 is i = 2
  int components = 1;
  bool shortcut = false;

  [[nodiscard]] std::vector<std::vector<int>> members() const;
};

/// Connected components of a 0/1 graph; labels in order of first appearance.
std::vector<int> connected_components(const Eigen::MatrixXd& Abin, int* count);

ClusterResult spectral_cluster(const Eigen::MatrixXd& Abin, std::uint64_t seed, int restarts = 10);

}  // namespace lmps
