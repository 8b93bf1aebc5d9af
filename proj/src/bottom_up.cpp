#include "lmps/bottom_up.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lmps/seed.hpp"

namespace lmps {

namespace {

// Largest group of exactly collinear columns (sine of the angle below tol)
// within a cluster. Empty unless it has min_size columns and no rival of equal size.
std::vector<int> collinear_class(const Eigen::MatrixXd& X, const std::vector<int>& mem, double tol, int min_size) {
  const double cos_min = std::sqrt(1.0 - tol * tol);
  std::vector<int> group(mem.size(), -1);
  std::vector<std::vector<int>> classes;
  for (std::size_t a = 0; a < mem.size(); ++a) {
    if (group[a] >= 0) continue;
    Eigen::VectorXd u = X.col(mem[a]).normalized();
    group[a] = static_cast<int>(classes.size());
    classes.push_back({mem[a]});
    for (std::size_t b = a + 1; b < mem.size(); ++b) {
      if (group[b] >= 0) continue;
      if (std::abs(u.dot(X.col(mem[b]).normalized())) >= cos_min) {
        group[b] = group[a];
        classes.back().push_back(mem[b]);
      }
    }
  }
  std::size_t best = 0, second = 0, at = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].size() > best) {
      second = best;
      best = classes[c].size();
      at = c;
    } else if (classes[c].size() > second) {
      second = classes[c].size();
    }
  }
  if (static_cast<int>(best) < min_size || best == second) return {};
  return classes[at];
}

}  // namespace

HarvestResult harvest_rank1(const Eigen::MatrixXd& X, const ClusterResult& clusters,
                            double rank_tol, int min_size, bool collinear_core) {
  HarvestResult out;
  for (const auto& mem : clusters.members()) {
    Eigen::MatrixXd S(X.rows(), static_cast<Eigen::Index>(mem.size()));
    for (std::size_t k = 0; k < mem.size(); ++k) S.col(k) = X.col(mem[k]);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeThinU);
    const Eigen::VectorXd& s = svd.singularValues();
    int rank = 0;
    while (rank < s.size() && s[0] > 0.0 && s[rank] > rank_tol * s[0]) ++rank;
    out.cluster_ranks.push_back(rank);
    std::vector<int> take = mem;
    Eigen::VectorXd v;
    if (static_cast<int>(mem.size()) >= min_size && rank == 1) {
      v = sign_normalize(svd.matrixU().col(0));
    } else if (collinear_core && rank > 1) {
      take = collinear_class(X, mem, rank_tol, min_size);
      if (!take.empty()) v = sign_normalize(X.col(take[0]).normalized());
    } else {
      take.clear();
    }
    if (take.empty()) {
      out.residual.insert(out.residual.end(), mem.begin(), mem.end());
      continue;
    }
    if (take.size() < mem.size()) {
      std::vector<int> sorted = take;
      std::sort(sorted.begin(), sorted.end());
      for (int m : mem)
        if (!std::binary_search(sorted.begin(), sorted.end(), m)) out.residual.push_back(m);
    }
    std::size_t dup = out.bases.size();
    for (std::size_t b = 0; b < out.bases.size(); ++b)
      if (std::abs(out.bases[b].dot(v)) > 1.0 - 1e-6) dup = b;
    if (dup == out.bases.size()) {
      out.bases.push_back(v);
      out.harvested_members.push_back(take);
    } else {
      auto& into = out.harvested_members[dup];
      into.insert(into.end(), take.begin(), take.end());
    }
  }
  std::sort(out.residual.begin(), out.residual.end());
  return out;
}

ComplementProjection project_complement(const Eigen::MatrixXd& X, const Eigen::MatrixXd& B,
                                        double zero_abs) {
  const Eigen::Index d = X.rows();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  ComplementProjection out;
  out.frame = Q.rightCols(d - B.cols());
  Eigen::MatrixXd Y = out.frame.transpose() * X;
  for (Eigen::Index j = 0; j < Y.cols(); ++j)
    if (Y.col(j).norm() > zero_abs) out.kept.push_back(static_cast<int>(j));
  out.X.resize(Y.rows(), static_cast<Eigen::Index>(out.kept.size()));
  for (std::size_t k = 0; k < out.kept.size(); ++k) out.X.col(k) = Y.col(out.kept[k]);
  return out;
}

namespace {

// Most common value among ratios: the largest group agreeing within a relative tolerance.
bool ratio_mode(std::vector<double> r, double* value) {
  if (r.size() < 2) return false;
  std::sort(r.begin(), r.end());
  std::size_t best_len = 0, best_at = 0;
  bool tied = false;
  for (std::size_t a = 0, b = 0; a < r.size(); a = b) {
    b = a + 1;
    while (b < r.size() && r[b] - r[a] <= 1e-7 * std::max(1.0, std::abs(r[a]))) ++b;
    std::size_t len = b - a;
    if (len > best_len) {
      best_len = len;
      best_at = a;
      tied = false;
    } else if (len == best_len) {
      tied = true;
    }
  }
  if (best_len < 2 || tied) return false;
  *value = r[best_at + best_len / 2];
  return true;
}

// Adds back components along earlier bases that every column sharing a fixed
// combination agrees on, so the vector is a true basis rather than its projection.
Eigen::VectorXd lift(const Eigen::VectorXd& u, const Eigen::MatrixXd& prev, const Eigen::MatrixXd& cols) {
  const Eigen::Index p = prev.cols();
  if (p == 0) return u;
  Eigen::MatrixXd G(u.size(), p + 1);
  G << prev, u;
  Eigen::MatrixXd E = G.colPivHouseholderQr().solve(cols);
  Eigen::VectorXd b = u;
  for (Eigen::Index j = 0; j < p; ++j) {
    std::vector<double> ratios;
    for (Eigen::Index t = 0; t < E.cols(); ++t)
      if (std::abs(E(p, t)) > 1e-12 * cols.col(t).norm()) ratios.push_back(E(j, t) / E(p, t));
    double a = 0.0;
    if (ratio_mode(ratios, &a)) b += a * prev.col(j);
  }
  return sign_normalize(b);
}

}  // namespace

BottomUpResult bottom_up_search(const Eigen::MatrixXd& X, const BottomUpOptions& opt) {
  using clock = std::chrono::steady_clock;
  const Eigen::Index k = X.rows();
  BottomUpResult res;
  std::vector<double> norms(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) norms[j] = X.col(j).norm();
  double med = 0.0;
  if (!norms.empty()) {
    std::vector<double> tmp = norms;
    std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end());
    med = tmp[tmp.size() / 2];
  }
  const double zero_abs = opt.zero_tol * med;
  const int max_rounds = opt.max_rounds > 0 ? opt.max_rounds : static_cast<int>(k);

  Eigen::MatrixXd F = Eigen::MatrixXd::Identity(k, k);
  Eigen::MatrixXd W = X;
  std::vector<int> idx(X.cols());
  std::iota(idx.begin(), idx.end(), 0);

  for (int round = 1; round <= max_rounds && W.cols() > 0 && W.rows() > 0; ++round) {
    auto t0 = clock::now();
    RoundLog log;
    log.round = round;
    log.columns = static_cast<int>(W.cols());
    log.dim = static_cast<int>(W.rows());
    if (opt.keep_round_data) log.data = W;

    Eigen::MatrixXd A = cutoff(affinity(W), opt.eps_cutoff);
    ClusterResult cl = spectral_cluster(A, derive_seed(opt.seed, "bottom-up", round), opt.restarts);
    HarvestResult hv = harvest_rank1(W, cl, opt.rank_tol, 2, opt.collinear_core);
    log.K = cl.K;
    log.eigengaps = cl.eigengaps;
    log.labels = cl.labels;
    log.harvested = static_cast<int>(hv.bases.size());

    if (!hv.bases.empty()) {
      Eigen::MatrixXd prev = res.basis.matrix(k);
      for (std::size_t h = 0; h < hv.bases.size(); ++h) {
        Eigen::VectorXd u = F * hv.bases[h];
        // Original columns of the cluster this direction came from.
        const auto& mem = hv.harvested_members[h];
        Eigen::MatrixXd cols(k, static_cast<Eigen::Index>(mem.size()));
        for (std::size_t m = 0; m < mem.size(); ++m) cols.col(m) = X.col(idx[mem[m]]);
        res.basis.add(lift(u, prev, cols), "bottom-up round " + std::to_string(round));
      }
      Eigen::MatrixXd H(W.rows(), static_cast<Eigen::Index>(hv.bases.size()));
      for (std::size_t h = 0; h < hv.bases.size(); ++h) H.col(h) = hv.bases[h];
      ComplementProjection pr = project_complement(W, H, zero_abs);
      F = F * pr.frame;
      W = pr.X;
      std::vector<int> next;
      for (int c : pr.kept) next.push_back(idx[c]);
      idx = next;
    }
    log.residual = static_cast<int>(W.cols());
    log.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    res.rounds.push_back(std::move(log));
    if (hv.bases.empty()) break;
  }
  res.residual = W;
  res.residual_frame = F;
  res.residual_columns = idx;
  return res;
}

std::string format_round(const RoundLog& r) {
  std::ostringstream s;
  s << "round=" << r.round << " columns=" << r.columns << " dim=" << r.dim << " K=" << r.K
    << " harvested=" << r.harvested << " residual=" << r.residual << " seconds=" << r.seconds << " eigengaps=";
  std::size_t n = std::min<std::size_t>(r.eigengaps.size(), 8);
  for (std::size_t i = 0; i < n; ++i) s << (i ? ";" : "") << r.eigengaps[i];
  return s.str();
}

}  // namespace lmps
