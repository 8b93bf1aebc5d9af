#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

// Hot loops with an OpenMP version and a serial reference.
namespace lmps::kernels {

/// |Xn' Xn| for unit-norm columns.
Eigen::MatrixXd abs_gram(const Eigen::MatrixXd& Xn);
Eigen::MatrixXd abs_gram_serial(const Eigen::MatrixXd& Xn);

/// Columns with |n' x| <= tol * ||x||.
std::vector<int> inliers(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                         const Eigen::VectorXd& n, double tol);
std::vector<int> inliers_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                                const Eigen::VectorXd& n, double tol);

/// Unit normal of the span of dim-1 columns; empty when the sample is degenerate.
Eigen::VectorXd sample_normal(const Eigen::MatrixXd& X, const std::vector<int>& cols);

struct RsTrial {
  std::vector<int> cols;
  Eigen::VectorXd normal;  // empty if every redraw was degenerate
  int inliers = 0;
};

/// Runs trials [first, first + count) of the RS stream for `seed`.
std::vector<RsTrial> rs_trials(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                               std::uint64_t seed, long first, long count, double tol,
                               int max_redraws);
std::vector<RsTrial> rs_trials_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                                      std::uint64_t seed, long first, long count, double tol,
                                      int max_redraws);

struct KMeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centers;  // K x d
  double inertia = 0.0;
};

/// Farthest-point seeded Lloyd iterations, best of `restarts`.
KMeansResult kmeans(const Eigen::MatrixXd& points, int K, int restarts, std::uint64_t seed,
                    int max_iter = 300);
KMeansResult kmeans_serial(const Eigen::MatrixXd& points, int K, int restarts,
                           std::uint64_t seed, int max_iter = 300);

}  // namespace lmps::kernels
