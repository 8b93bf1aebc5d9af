#include "lmps/basis.hpp"

#include <cmath>

namespace lmps {

Eigen::MatrixXd BasisSet::matrix(Eigen::Index dim) const {
  Eigen::MatrixXd B(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) B.col(k) = vectors[k].v;
  return B;
}

void BasisSet::add(Eigen::VectorXd v, std::string source) {
  vectors.push_back({sign_normalize(std::move(v)), std::move(source)});
}

Eigen::VectorXd sign_normalize(Eigen::VectorXd v) {
  double n = v.norm();
  if (n > 0.0) v /= n;
  Eigen::Index big = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // first entry of (numerically) largest magnitude
    if (std::abs(v[i]) > best * (1.0 + 1e-9)) {
      best = std::abs(v[i]);
      big = i;
    }
  }
  if (v.size() && v[big] < 0.0) v = -v;
  return v;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  while (r < s.size() && s[r] > tol * s[0]) ++r;
  return r;
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s[0] > 0.0 && s[r] > tol * s[0]) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace lmps
