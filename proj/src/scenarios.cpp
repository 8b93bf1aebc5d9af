#include "lmps/scenarios.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

#include "lmps/errors.hpp"
#include "lmps/seed.hpp"

namespace lmps {

NetworkCase perturb_case(const NetworkCase& base, int t, const ScenarioOptions& opt) {
  NetworkCase c = base;
  auto rng = make_rng(opt.seed, "scenario", static_cast<std::uint64_t>(t));
  std::normal_distribution<double> gauss(0.0, 1.0);
  double level = base.profile.empty() ? 1.0 : base.profile[t % base.profile.size()];
  for (auto& b : c.buses) b.load *= level * (1.0 + opt.noise * gauss(rng));
  for (auto& g : c.generators) {
    std::vector<double> prices;
    for (auto& o : g.blocks) prices.push_back(o.price * (1.0 + opt.noise * gauss(rng)));
    std::sort(prices.begin(), prices.end());
    for (std::size_t k = 0; k < prices.size(); ++k) g.blocks[k].price = prices[k];
  }
  return c;
}

ScenarioSet generate_scenarios(const NetworkCase& base, const ScenarioOptions& opt) {
  if (opt.intervals < 1) throw std::invalid_argument("scenarios: need at least one interval");
  if (opt.noise < 0.0) throw std::invalid_argument("scenarios: noise must be non-negative");
  base.validate();

  ScenarioSet out;
  out.ptdf = build_ptdf(base);
  const int M = opt.intervals;
  std::vector<std::optional<ScenarioRecord>> slots(M);
  std::vector<std::string> errors(M);

#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int t = 0; t < M; ++t) {
    try {
      ScenarioRecord r;
      r.interval = t;
      r.market = perturb_case(base, t, opt);
      r.dispatch = solve_dcopf(r.market, out.ptdf, opt.mode);
      r.lmp = decompose_lmp(r.dispatch, out.ptdf, r.market, opt.mode);
      r.congested.resize(base.num_lines());
      for (int j = 0; j < base.num_lines(); ++j)
        r.congested[j] = std::abs(r.dispatch.mu[j]) > opt.mu_tol ? 1 : 0;
      slots[t] = std::move(r);
    } catch (const InfeasibleError&) {
      // recorded below
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  }

  for (int t = 0; t < M; ++t) {
    if (!errors[t].empty()) throw std::runtime_error("scenario " + std::to_string(t) + ": " + errors[t]);
    if (slots[t]) out.records.push_back(std::move(*slots[t]));
    else out.infeasible.push_back(t);
  }
  if (2 * static_cast<int>(out.records.size()) < M)
    throw InfeasibleError("scenarios: only " + std::to_string(out.records.size()) + " of " +
                          std::to_string(M) + " intervals feasible");
  return out;
}

}  // namespace lmps
