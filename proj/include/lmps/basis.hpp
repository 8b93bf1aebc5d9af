#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lmps {

struct BasisVector {
  Eigen::VectorXd v;   // unit norm, working coordinates
  std::string source;  // "bottom-up round r" or "top-down leaf n"
};

struct BasisSet {
  std::vector<BasisVector> vectors;

  [[nodiscard]] int size() const { return static_cast<int>(vectors.size()); }
  [[nodiscard]] bool empty() const { return vectors.empty(); }
  [[nodiscard]] Eigen::MatrixXd matrix(Eigen::Index dim) const;
  void add(Eigen::VectorXd v, std::string source);
};

/// Unit norm with the first largest-magnitude entry positive.
Eigen::VectorXd sign_normalize(Eigen::VectorXd v);

/// Numerical rank: singular values above tol * largest.
int numerical_rank(const Eigen::MatrixXd& m, double tol);

/// Orthonormal basis of the column space at relative tolerance.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double tol);

}  // namespace lmps
