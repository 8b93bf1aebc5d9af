#include "lmps/pipeline.hpp"

#include <chrono>

#include "lmps/errors.hpp"
#include "lmps/seed.hpp"

namespace lmps {

namespace {
using clock = std::chrono::steady_clock;
double since(clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); }
}  // namespace

CongestionMatrix preprocess(const LmpPanel& panel, const PipelineOptions& opt) {
  LmpPanel p = opt.dedupe_tol >= 0.0 ? dedupe_nodes(panel, opt.dedupe_tol) : panel;
  if (opt.mode == MarketMode::Lossy) {
    std::string ref = opt.ref_node.empty() ? panel.nodes.at(0) : opt.ref_node;
    if (auto it = p.aliases.find(ref); it != p.aliases.end()) ref = it->second;
    p = eliminate_loss_term(p, ref);
  }
  return pca_reduce(filter_congested(p, opt.filter_tol), opt.energy_tol);
}

PipelineResult identify_congestion(CongestionMatrix data, const PipelineOptions& opt) {
  PipelineResult res;
  res.data = std::move(data);
  const Eigen::MatrixXd& X = res.data.X;

  auto t0 = clock::now();
  BottomUpOptions bo;
  bo.eps_cutoff = opt.eps_cutoff;
  bo.rank_tol = opt.rank_tol;
  bo.zero_tol = opt.zero_tol;
  bo.seed = derive_seed(opt.seed, "bottom-up");
  bo.keep_round_data = opt.keep_round_data;
  res.bottom = bottom_up_search(X, bo);
  res.times.bottom_up = since(t0);

  if (res.bottom.residual.cols() > 0 && res.bottom.residual.rows() > 0) {
    t0 = clock::now();
    TopDownOptions to;
    to.p = opt.p;
    to.n_trials = opt.n_trials;
    to.inlier_tol = opt.inlier_tol;
    to.rank_tol = opt.rank_tol;
    to.depth_limit = opt.depth_limit;
    to.seed = derive_seed(opt.seed, "top-down");
    res.top = top_down_search(res.bottom.residual, to);
    // TODO: lift top-down vectors along bottom-up bases as bottom_up_search does
    for (const auto& bv : res.top->basis.vectors)
      res.top_basis.add(res.bottom.residual_frame * bv.v, bv.source);
    res.times.top_down = since(t0);
  }

  t0 = clock::now();
  try {
    res.basis = assemble_basis(res.bottom.basis, res.top_basis, X, res.data.projection);
  } catch (const RankDeficitError& e) {
    std::string msg = std::string(e.what()) + " (bottom-up kept " + std::to_string(res.bottom.basis.size()) +
                      ", residual " + std::to_string(res.bottom.residual.cols()) + " columns in dimension " +
                      std::to_string(res.bottom.residual.rows());
    if (res.top) msg += ", top-down tree of " + std::to_string(res.top->tree.nodes.size()) + " nodes";
    throw RankDeficitError(msg + ")", e.missing());
  }
  res.chi = recover_chi(res.basis.B, X);
  res.times.assemble = since(t0);

  t0 = clock::now();
  res.codes = encode_status(res.chi, opt.eps_encode);
  res.times.encode = since(t0);
  return res;
}

PipelineResult run_pipeline(const LmpPanel& panel, const PipelineOptions& opt) {
  auto t0 = clock::now();
  CongestionMatrix data = preprocess(panel, opt);
  double pre = since(t0);
  PipelineResult res = identify_congestion(std::move(data), opt);
  res.times.preprocess = pre;
  return res;
}

}  // namespace lmps
