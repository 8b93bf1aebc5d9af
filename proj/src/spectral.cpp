#include "lmps/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lmps/kernels.hpp"

namespace lmps {

std::vector<std::vector<int>> ClusterResult::members() const {
  std::vector<std::vector<int>> out(K);
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(static_cast<int>(i));
  return out;
}

Eigen::MatrixXd affinity(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd Xn = X;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double n = X.col(j).norm();
    if (!(n > 0.0)) throw std::invalid_argument("affinity: column " + std::to_string(j) + " is zero");
    Xn.col(j) /= n;
  }
  Eigen::MatrixXd A = kernels::abs_gram(Xn);
  A.diagonal().setOnes();
  return A.cwiseMin(1.0);
}

Eigen::MatrixXd cutoff(const Eigen::MatrixXd& A, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("cutoff: eps must lie in (0,1)");
  Eigen::MatrixXd B = (A.array() > 1.0 - eps).cast<double>();
  B.diagonal().setOnes();
  return B;
}

std::vector<int> connected_components(const Eigen::MatrixXd& Abin, int* count) {
  const Eigen::Index M = Abin.rows();
  std::vector<int> label(M, -1);
  int next = 0;
  std::vector<Eigen::Index> stack;
  for (Eigen::Index s = 0; s < M; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Eigen::Index u = stack.back();
      stack.pop_back();
      for (Eigen::Index v = 0; v < M; ++v) {
        if (label[v] < 0 && Abin(u, v) != 0.0) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

namespace {

std::vector<int> relabel(const std::vector<int>& raw) {
  std::vector<int> map, out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    int r = raw[i];
    if (r >= static_cast<int>(map.size())) map.resize(r + 1, -1);
    if (map[r] < 0) map[r] = static_cast<int>(std::count_if(map.begin(), map.end(), [](int v) { return v >= 0; }));
    out[i] = map[r];
  }
  return out;
}

}  // namespace

ClusterResult spectral_cluster(const Eigen::MatrixXd& Abin, std::uint64_t seed, int restarts) {
  const Eigen::Index M = Abin.rows();
  ClusterResult res;
  if (M == 0) {
    res.K = 0;
    return res;
  }
  int ncomp = 0;
  std::vector<int> comp = connected_components(Abin, &ncomp);
  res.components = ncomp;

  std::vector<int> size(ncomp, 0);
  for (int c : comp) ++size[c];
  bool cliques = true;
  for (Eigen::Index i = 0; i < M && cliques; ++i) {
    Eigen::Index deg = 0;
    for (Eigen::Index j = 0; j < M; ++j) deg += Abin(i, j) != 0.0;
    if (deg != size[comp[i]]) cliques = false;
  }
  if (cliques) {
    res.K = ncomp;
    res.labels = comp;
    res.shortcut = true;
    return res;
  }

  Eigen::VectorXd dinv = Abin.rowwise().sum().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd L = -(dinv.asDiagonal() * Abin * dinv.asDiagonal());
  L.diagonal().array() += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  res.eigenvalues = es.eigenvalues();
  const Eigen::VectorXd& g = res.eigenvalues;

  const double zero = 1e-10;
  int K = 1;
  double best = -1.0;
  for (Eigen::Index i = 1; i + 1 < M; ++i) {  // 1-based i = 2 .. M-1
    double gi = std::max(g[i], 0.0), gn = std::max(g[i + 1], 0.0);
    double xi;
    if (gi <= zero) xi = gn > zero ? std::numeric_limits<double>::infinity() : 0.0;
    else xi = (gn - gi) / gi;
    res.eigengaps.push_back(xi);
    if (xi > best) {
      best = xi;
      K = static_cast<int>(i + 1);
    }
  }
  if (M <= 2) K = ncomp;

  Eigen::MatrixXd emb = es.eigenvectors().leftCols(K);
  for (Eigen::Index i = 0; i < M; ++i) {
    double n = emb.row(i).norm();
    if (n > 0.0) emb.row(i) /= n;
  }
  kernels::KMeansResult km = kernels::kmeans(emb, K, restarts, seed);
  res.labels = relabel(km.labels);
  res.K = 0;
  for (int l : res.labels) res.K = std::max(res.K, l + 1);
  return res;
}

}  // namespace lmps
