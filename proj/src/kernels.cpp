#include "lmps/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lmps/seed.hpp"

namespace lmps::kernels {

Eigen::MatrixXd abs_gram(const Eigen::MatrixXd& Xn) {
  const Eigen::Index M = Xn.cols();
  Eigen::MatrixXd A(M, M);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < M; ++i) {
    for (Eigen::Index j = i; j < M; ++j) {
      double v = std::abs(Xn.col(i).dot(Xn.col(j)));
      A(i, j) = v;
      A(j, i) = v;
    }
  }
  return A;
}

Eigen::MatrixXd abs_gram_serial(const Eigen::MatrixXd& Xn) {
  const Eigen::Index M = Xn.cols();
  Eigen::MatrixXd A(M, M);
  for (Eigen::Index i = 0; i < M; ++i) {
    for (Eigen::Index j = i; j < M; ++j) {
      double v = std::abs(Xn.col(i).dot(Xn.col(j)));
      A(i, j) = v;
      A(j, i) = v;
    }
  }
  return A;
}

std::vector<int> inliers(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                         const Eigen::VectorXd& n, double tol) {
  const Eigen::Index M = X.cols();
  std::vector<std::uint8_t> flag(M, 0);
#pragma omp parallel for schedule(static) if (M > 4096)
  for (Eigen::Index j = 0; j < M; ++j) flag[j] = std::abs(n.dot(X.col(j))) <= tol * norms[j];
  std::vector<int> out;
  for (Eigen::Index j = 0; j < M; ++j)
    if (flag[j]) out.push_back(static_cast<int>(j));
  return out;
}

std::vector<int> inliers_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                                const Eigen::VectorXd& n, double tol) {
  std::vector<int> out;
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    if (std::abs(n.dot(X.col(j))) <= tol * norms[j]) out.push_back(static_cast<int>(j));
  return out;
}

Eigen::VectorXd sample_normal(const Eigen::MatrixXd& X, const std::vector<int>& cols) {
  const Eigen::Index d = X.rows();
  Eigen::MatrixXd S(d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) S.col(k) = X.col(cols[k]).normalized();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(S);
  Eigen::MatrixXd R = qr.matrixQR().topRows(S.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < S.cols(); ++k)
    if (std::abs(R(k, k)) < 1e-10) return {};
  Eigen::MatrixXd Q = qr.householderQ();
  return Q.col(d - 1);
}

namespace {

RsTrial one_trial(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms, std::uint64_t seed,
                  long t, double tol, int max_redraws) {
  const int d = static_cast<int>(X.rows());
  const int M = static_cast<int>(X.cols());
  auto rng = make_rng(seed, "rs", static_cast<std::uint64_t>(t));
  std::uniform_int_distribution<int> pick(0, M - 1);
  RsTrial out;
  for (int attempt = 0; attempt <= max_redraws; ++attempt) {
    std::vector<int> cols;
    while (static_cast<int>(cols.size()) < d - 1) {
      int c = pick(rng);
      if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    }
    Eigen::VectorXd n = sample_normal(X, cols);
    if (n.size() == 0) continue;
    out.cols = cols;
    out.normal = n;
    out.inliers = static_cast<int>(inliers_serial(X, norms, n, tol).size());
    return out;
  }
  return out;
}

}  // namespace

std::vector<RsTrial> rs_trials(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                               std::uint64_t seed, long first, long count, double tol,
                               int max_redraws) {
  std::vector<RsTrial> out(count);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < count; ++k) out[k] = one_trial(X, norms, seed, first + k, tol, max_redraws);
  return out;
}

std::vector<RsTrial> rs_trials_serial(const Eigen::MatrixXd& X, const Eigen::VectorXd& norms,
                                      std::uint64_t seed, long first, long count, double tol,
                                      int max_redraws) {
  std::vector<RsTrial> out(count);
  for (long k = 0; k < count; ++k) out[k] = one_trial(X, norms, seed, first + k, tol, max_redraws);
  return out;
}

namespace {

KMeansResult lloyd(const Eigen::MatrixXd& P, int K, int first, int max_iter) {
  const Eigen::Index n = P.rows();
  KMeansResult r;
  r.centers.resize(K, P.cols());
  // Farthest-point seeding from the given first center.
  r.centers.row(0) = P.row(first);
  Eigen::VectorXd mind = (P.rowwise() - P.row(first)).rowwise().squaredNorm();
  for (int c = 1; c < K; ++c) {
    Eigen::Index far = 0;
    mind.maxCoeff(&far);
    r.centers.row(c) = P.row(far);
    mind = mind.cwiseMin((P.rowwise() - P.row(far)).rowwise().squaredNorm());
  }
  r.labels.assign(n, -1);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    Eigen::VectorXd dist(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      dist[i] = (r.centers.rowwise() - P.row(i)).rowwise().squaredNorm().minCoeff(&best);
      if (r.labels[i] != best) {
        r.labels[i] = static_cast<int>(best);
        changed = true;
      }
    }
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(K, P.cols());
    std::vector<int> cnt(K, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sum.row(r.labels[i]) += P.row(i);
      ++cnt[r.labels[i]];
    }
    for (int c = 0; c < K; ++c) {
      if (cnt[c] > 0) {
        r.centers.row(c) = sum.row(c) / cnt[c];
      } else {
        Eigen::Index far = 0;
        dist.maxCoeff(&far);
        r.centers.row(c) = P.row(far);
        dist[far] = 0.0;
        changed = true;
      }
    }
    if (!changed) break;
  }
  r.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) r.inertia += (P.row(i) - r.centers.row(r.labels[i])).squaredNorm();
  return r;
}

int first_center(std::uint64_t seed, int restart, Eigen::Index n) {
  auto rng = make_rng(seed, "kmeans", static_cast<std::uint64_t>(restart));
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  return static_cast<int>(pick(rng));
}

KMeansResult best_of(std::vector<KMeansResult>& runs) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].inertia < runs[best].inertia - 1e-12) best = r;
  return runs[best];
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int K, int restarts, std::uint64_t seed,
                    int max_iter) {
  restarts = std::max(restarts, 1);
  std::vector<KMeansResult> runs(restarts);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r)
    runs[r] = lloyd(points, K, first_center(seed, r, points.rows()), max_iter);
  return best_of(runs);
}

KMeansResult kmeans_serial(const Eigen::MatrixXd& points, int K, int restarts,
                           std::uint64_t seed, int max_iter) {
  restarts = std::max(restarts, 1);
  std::vector<KMeansResult> runs(restarts);
  for (int r = 0; r < restarts; ++r)
    runs[r] = lloyd(points, K, first_center(seed, r, points.rows()), max_iter);
  return best_of(runs);
}

}  // namespace lmps::kernels
