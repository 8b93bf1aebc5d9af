#include "lmps/top_down.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lmps/kernels.hpp"
#include "lmps/lp.hpp"
#include "lmps/seed.hpp"

namespace lmps {

namespace {

std::vector<int> complement_of(const std::vector<int>& in, Eigen::Index M) {
  std::vector<int> out;
  std::size_t k = 0;
  for (int j = 0; j < static_cast<int>(M); ++j) {
    if (k < in.size() && in[k] == j) ++k;
    else out.push_back(j);
  }
  return out;
}

}  // namespace

L1Result l1_min_linear_constraint(const Eigen::MatrixXd& X, const Eigen::VectorXd& n) {
  // Dual form: max a s.t. X w = a n, |w| <= 1. The row duals give m.
  const Eigen::Index d = X.rows(), M = X.cols();
  LinearProgram lp;
  lp.cost = Eigen::VectorXd::Zero(M + 1);
  lp.cost[M] = -1.0;
  lp.rows.resize(d, M + 1);
  lp.rows << X, -n;
  lp.row_lower = Eigen::VectorXd::Zero(d);
  lp.row_upper = Eigen::VectorXd::Zero(d);
  lp.var_lower = Eigen::VectorXd::Constant(M + 1, -1.0);
  lp.var_upper = Eigen::VectorXd::Constant(M + 1, 1.0);
  lp.var_lower[M] = -kInf;
  lp.var_upper[M] = kInf;
  LpSolution s = solve_lp(lp);
  if (s.status == LpStatus::Unbounded) throw std::runtime_error("l1_min_linear_constraint: unbounded");
  if (s.status != LpStatus::Optimal)
    throw std::runtime_error("l1_min_linear_constraint: LP " + to_string(s.status));
  double scale = n.dot(s.row_duals);
  L1Result out;
  out.m = std::abs(scale) > 1e-12 ? Eigen::VectorXd(s.row_duals / scale) : Eigen::VectorXd(n);
  out.objective = (X.transpose() * out.m).lpNorm<1>();
  return out;
}

HyperplaneCheck check_hyperplane(const Eigen::MatrixXd& X, const Eigen::VectorXd& n, double p,
                                 double inlier_tol) {
  Eigen::VectorXd norms = X.colwise().norm().transpose();
  HyperplaneCheck out;
  out.inliers = kernels::inliers(X, norms, n, inlier_tol);
  double count = static_cast<double>(out.inliers.size());
  out.passes = count > p * static_cast<double>(X.cols()) && count >= static_cast<double>(X.rows());
  return out;
}

DpcpTrace dpcp_iterate(const Eigen::MatrixXd& X, const DpcpOptions& opt) {
  const Eigen::Index d = X.rows();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeFullU);
  Eigen::VectorXd n = svd.matrixU().col(d - 1);
  DpcpTrace tr;
  tr.objective.push_back((X.transpose() * n).lpNorm<1>());
  for (int it = 0; it < opt.max_iter; ++it) {
    L1Result r = l1_min_linear_constraint(X, n);
    Eigen::VectorXd next = r.m.normalized();
    if (next.dot(n) < 0.0) next = -next;
    double step = (next - n).norm();
    double obj = (X.transpose() * next).lpNorm<1>();
    // Keep the previous normal if the LP returned no improvement beyond round-off.
    if (obj > tr.objective.back()) {
      tr.objective.push_back(tr.objective.back());
      break;
    }
    n = next;
    tr.objective.push_back(obj);
    if (step < opt.conv_tol) break;
  }
  tr.normal = sign_normalize(n);
  return tr;
}

std::optional<HyperplaneFit> dpcp(const Eigen::MatrixXd& X, const DpcpOptions& opt) {
  if (X.rows() < 2 || X.cols() < X.rows()) return std::nullopt;
  DpcpTrace tr = dpcp_iterate(X, opt);
  HyperplaneCheck chk = check_hyperplane(X, tr.normal, opt.p, opt.inlier_tol);
  if (!chk.passes) return std::nullopt;
  HyperplaneFit fit;
  fit.normal = tr.normal;
  fit.inliers = chk.inliers;
  fit.outliers = complement_of(fit.inliers, X.cols());
  fit.method = "DPCP";
  fit.objective = tr.objective.back();
  fit.iterations = static_cast<int>(tr.objective.size()) - 1;
  return fit;
}

long rs_default_trials(double p, int dim, double fail, long cap) {
  double q = std::pow(p, dim - 1);
  if (q >= 1.0) return 1;
  if (q <= 0.0) return cap;
  double n = std::ceil(std::log(fail) / std::log1p(-q));
  if (!(n < static_cast<double>(cap))) return cap;
  return std::max(static_cast<long>(n), 1L);
}

std::optional<HyperplaneFit> random_sample_norm(const Eigen::MatrixXd& X, const RsOptions& opt) {
  const int d = static_cast<int>(X.rows());
  if (d < 2 || X.cols() < d - 1) return std::nullopt;
  const long N = opt.n_trials > 0 ? opt.n_trials : rs_default_trials(opt.p, d);
  Eigen::VectorXd norms = X.colwise().norm().transpose();
  const double need = opt.p * static_cast<double>(X.cols());
  const long batch = 1024;
  for (long first = 0; first < N; first += batch) {
    long count = std::min(batch, N - first);
    auto trials = opt.parallel
                      ? kernels::rs_trials(X, norms, opt.seed, first, count, opt.inlier_tol, opt.max_redraws)
                      : kernels::rs_trials_serial(X, norms, opt.seed, first, count, opt.inlier_tol, opt.max_redraws);
    for (const auto& t : trials) {
      if (t.normal.size() == 0 || !(t.inliers > need && t.inliers >= d)) continue;
      HyperplaneFit fit;
      fit.normal = sign_normalize(t.normal);
      fit.inliers = kernels::inliers(X, norms, fit.normal, opt.inlier_tol);
      fit.outliers = complement_of(fit.inliers, X.cols());
      fit.method = "RS";
      fit.objective = (X.transpose() * fit.normal).lpNorm<1>();
      return fit;
    }
  }
  return std::nullopt;
}

long rs_success_count(const Eigen::MatrixXd& X, const RsOptions& opt, long trials) {
  const int d = static_cast<int>(X.rows());
  Eigen::VectorXd norms = X.colwise().norm().transpose();
  const double need = opt.p * static_cast<double>(X.cols());
  auto all = kernels::rs_trials(X, norms, opt.seed, 0, trials, opt.inlier_tol, opt.max_redraws);
  long ok = 0;
  for (const auto& t : all) ok += t.normal.size() > 0 && t.inliers > need && t.inliers >= d;
  return ok;
}

std::string to_string(LeafKind k) {
  switch (k) {
    case LeafKind::Internal: return "internal";
    case LeafKind::Exhausted: return "exhausted";
    case LeafKind::RankResolved: return "rank-resolved";
    case LeafKind::DepthLimited: return "depth-limited";
  }
  return "unknown";
}

std::string SearchTree::to_text() const {
  std::ostringstream s;
  for (const auto& n : nodes) {
    s << "node=" << n.id << " parent=" << n.parent << " depth=" << n.depth << " dim=" << n.dim
      << " columns=" << n.columns.size() << " method=" << (n.method.empty() ? "-" : n.method)
      << " inliers=" << n.inliers << " rank=" << n.dim << " kind=" << to_string(n.kind) << "\n";
  }
  return s.str();
}

std::vector<int> SearchTree::leaves() const {
  std::vector<int> out;
  for (const auto& n : nodes)
    if (n.kind != LeafKind::Internal) out.push_back(n.id);
  return out;
}

TopDownResult top_down_search(const Eigen::MatrixXd& X, const TopDownOptions& opt) {
  const Eigen::Index d0 = X.rows();
  const int depth_limit = opt.depth_limit > 0 ? opt.depth_limit : static_cast<int>(2 * d0);
  TopDownResult res;
  auto& nodes = res.tree.nodes;

  TreeNode root;
  root.columns.resize(X.cols());
  std::iota(root.columns.begin(), root.columns.end(), 0);
  root.frame = Eigen::MatrixXd::Identity(d0, d0);
  root.dim = static_cast<int>(d0);
  nodes.push_back(root);

  for (std::size_t at = 0; at < nodes.size(); ++at) {
    TreeNode node = nodes[at];
    Eigen::MatrixXd S(d0, static_cast<Eigen::Index>(node.columns.size()));
    for (std::size_t k = 0; k < node.columns.size(); ++k) S.col(k) = X.col(node.columns[k]);
    Eigen::MatrixXd Y = node.frame.transpose() * S;
    int r = numerical_rank(Y, opt.rank_tol);
    if (r < node.dim) {
      node.frame = node.frame * orthonormal_span(Y, opt.rank_tol);
      node.dim = r;
      Y = node.frame.transpose() * S;
    }
    if (node.dim <= 1) {
      node.kind = LeafKind::RankResolved;
    } else if (node.depth >= depth_limit) {
      node.kind = LeafKind::DepthLimited;
    } else {
      DpcpOptions dp = opt.dpcp;
      dp.p = opt.p;
      dp.inlier_tol = opt.inlier_tol;
      std::optional<HyperplaneFit> fit = dpcp(Y, dp);
      if (!fit) {
        RsOptions rs;
        rs.p = opt.p;
        rs.n_trials = opt.n_trials;
        rs.inlier_tol = opt.inlier_tol;
        rs.seed = derive_seed(opt.seed, "top-down", static_cast<std::uint64_t>(node.id));
        fit = random_sample_norm(Y, rs);
      }
      if (!fit) {
        node.kind = LeafKind::Exhausted;
      } else {
        node.method = fit->method;
        node.inliers = static_cast<int>(fit->inliers.size());
        // Orthonormal frame of the hyperplane inside the node frame.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(fit->normal);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(node.dim, node.dim);
        TreeNode in;
        in.id = static_cast<int>(nodes.size());
        in.parent = node.id;
        in.depth = node.depth + 1;
        in.dim = node.dim - 1;
        in.frame = node.frame * Q.rightCols(node.dim - 1);
        for (int c : fit->inliers) in.columns.push_back(node.columns[c]);
        node.inlier_child = in.id;
        nodes.push_back(in);
        if (!fit->outliers.empty()) {
          TreeNode out;
          out.id = static_cast<int>(nodes.size());
          out.parent = node.id;
          out.depth = node.depth + 1;
          out.dim = node.dim;
          out.frame = node.frame;
          for (int c : fit->outliers) out.columns.push_back(node.columns[c]);
          node.outlier_child = out.id;
          nodes.push_back(out);
        }
      }
    }
    nodes[at] = node;
  }

  // Candidate spans: leaves plus proper pairwise intersections of leaves,
  // smallest rank first; keep directions not already covered.
  struct Span {
    Eigen::MatrixXd U;
    std::size_t columns;
    int leaf;
  };
  std::vector<Span> spans;
  std::vector<int> leaves = res.tree.leaves();
  for (int id : leaves) spans.push_back({nodes[id].frame, nodes[id].columns.size(), id});
  for (std::size_t a = 0; a < leaves.size(); ++a)
    for (std::size_t b = a + 1; b < leaves.size(); ++b) {
      const Eigen::MatrixXd &Ua = nodes[leaves[a]].frame, &Ub = nodes[leaves[b]].frame;
      if (Ua.cols() == 0 || Ub.cols() == 0) continue;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ua.transpose() * Ub, Eigen::ComputeThinU);
      const Eigen::VectorXd& s = svd.singularValues();
      int shared = 0;
      while (shared < s.size() && s[shared] >= 1.0 - 1e-6) ++shared;
      if (shared == 0 || shared >= std::min(Ua.cols(), Ub.cols())) continue;
      spans.push_back({Ua * svd.matrixU().leftCols(shared),
                       nodes[leaves[a]].columns.size() + nodes[leaves[b]].columns.size(), leaves[a]});
    }
  std::stable_sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    if (a.U.cols() != b.U.cols()) return a.U.cols() < b.U.cols();
    return a.columns > b.columns;
  });
  const int target = numerical_rank(X, opt.rank_tol);
  Eigen::MatrixXd C(d0, 0);
  for (const Span& sp : spans) {
    if (C.cols() >= target) break;
    const Eigen::MatrixXd& U = sp.U;
    Eigen::MatrixXd fresh;
    if (C.cols() == 0) {
      fresh = U;
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(C.transpose() * U, Eigen::ComputeFullV);
      const Eigen::VectorXd& s = svd.singularValues();
      int shared = 0;
      while (shared < s.size() && s[shared] >= 1.0 - 1e-6) ++shared;
      fresh = U * svd.matrixV().rightCols(U.cols() - shared);
    }
    for (Eigen::Index j = 0; j < fresh.cols() && C.cols() < target; ++j) {
      res.basis.add(fresh.col(j), "top-down leaf " + std::to_string(sp.leaf));
      Eigen::MatrixXd next(d0, C.cols() + 1);
      next << C, fresh.col(j);
      C = orthonormal_span(next, 1e-9);
    }
  }
  return res;
}

}  // namespace lmps
