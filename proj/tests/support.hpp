#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmps/dcopf.hpp"
#include "lmps/errors.hpp"
#include "lmps/network.hpp"
#include "lmps/panel.hpp"
#include "lmps/ptdf.hpp"

namespace testing_support {

using lmps::NetworkCase;

inline std::string cases_dir() { return LMPS_CASES_DIR; }

/// Random connected network: spanning tree plus extra edges.
inline NetworkCase random_network(int nb, std::mt19937_64& rng, int extra = -1) {
  std::uniform_real_distribution<double> ux(0.02, 0.4), ul(0.0, 50.0);
  NetworkCase c;
  c.name = "random";
  for (int i = 0; i < nb; ++i) c.buses.push_back({std::to_string(i + 1), ul(rng)});
  int id = 0;
  auto add = [&](int a, int b) {
    lmps::Line l;
    l.id = "L" + std::to_string(++id);
    l.from = a;
    l.to = b;
    l.reactance = ux(rng);
    c.lines.push_back(l);
  };
  for (int i = 1; i < nb; ++i) add(static_cast<int>(rng() % i), i);
  if (extra < 0) extra = nb / 2;
  for (int e = 0; e < extra && nb > 2; ++e) {
    int a = static_cast<int>(rng() % nb), b = static_cast<int>(rng() % nb);
    if (a != b) add(a, b);
  }
  c.reference = static_cast<int>(rng() % nb);
  return c;
}

/// Line flows for a nodal injection vector (sum zero after the reference
/// absorbs the mismatch), from the full nodal susceptance matrix.
inline Eigen::VectorXd dc_flows(const NetworkCase& c, const Eigen::VectorXd& injection) {
  const int nb = c.num_buses();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nb, nb);
  for (const auto& l : c.lines) {
    double b = 1.0 / l.reactance;
    B(l.from, l.from) += b;
    B(l.to, l.to) += b;
    B(l.from, l.to) -= b;
    B(l.to, l.from) -= b;
  }
  Eigen::VectorXd P = injection;
  P[c.reference] -= injection.sum();
  // Pin the reference angle by replacing its equation.
  B.row(c.reference).setZero();
  B(c.reference, c.reference) = 1.0;
  P[c.reference] = 0.0;
  Eigen::VectorXd theta = B.fullPivLu().solve(P);
  Eigen::VectorXd f(c.num_lines());
  for (int j = 0; j < c.num_lines(); ++j)
    f[j] = (theta[c.lines[j].from] - theta[c.lines[j].to]) / c.lines[j].reactance;
  return f;
}

/// Dense min c'x s.t. E x = e, G x <= h, solved by enumerating every vertex.
struct VertexLp {
  Eigen::VectorXd c;
  Eigen::MatrixXd E;
  Eigen::VectorXd e;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
};

struct VertexSolution {
  bool found = false;
  bool unique = false;     // single optimal vertex, exactly n active rows, strictly complementary
  Eigen::VectorXd x;
  double objective = 0.0;
  Eigen::VectorXd eq_duals;   // d objective / d e
  Eigen::VectorXd ineq_duals; // d objective / d h (<= 0), zero for inactive rows
};

inline VertexSolution enumerate_vertices(const VertexLp& lp, double tol = 1e-9) {
  const int n = static_cast<int>(lp.c.size());
  const int me = static_cast<int>(lp.E.rows());
  const int mg = static_cast<int>(lp.G.rows());
  const int pick = n - me;
  VertexSolution best;
  int optimal_vertices = 0;
  std::vector<int> sel(mg, 0);
  std::fill(sel.end() - pick, sel.end(), 1);
  do {
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    A.topRows(me) = lp.E;
    b.head(me) = lp.e;
    std::vector<int> rows;
    for (int i = 0; i < mg; ++i)
      if (sel[i]) rows.push_back(i);
    for (int k = 0; k < pick; ++k) {
      A.row(me + k) = lp.G.row(rows[k]);
      b[me + k] = lp.h[rows[k]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() < n) continue;
    Eigen::VectorXd x = lu.solve(b);
    if (((lp.G * x - lp.h).array() > tol * (1.0 + lp.h.cwiseAbs().maxCoeff())).any()) continue;
    double obj = lp.c.dot(x);
    if (best.found && std::abs(obj - best.objective) <= 1e-9 * (1.0 + std::abs(obj))) {
      if ((x - best.x).norm() > 1e-9) ++optimal_vertices;
      continue;
    }
    if (best.found && obj > best.objective) continue;
    best.found = true;
    best.x = x;
    best.objective = obj;
    optimal_vertices = 1;
    // Sensitivities: A' w = c gives d obj / d b.
    Eigen::VectorXd w = A.transpose().fullPivLu().solve(lp.c);
    best.eq_duals = w.head(me);
    best.ineq_duals = Eigen::VectorXd::Zero(mg);
    for (int k = 0; k < pick; ++k) best.ineq_duals[rows[k]] = w[me + k];
    Eigen::VectorXd slack = lp.h - lp.G * x;
    int active = 0;
    for (int i = 0; i < mg; ++i) active += slack[i] <= tol * (1.0 + std::abs(lp.h[i]));
    bool strict = true;
    for (int k = 0; k < pick; ++k) strict = strict && w[me + k] < -1e-7;
    best.unique = active == pick && strict;
  } while (std::next_permutation(sel.begin(), sel.end()));
  if (optimal_vertices > 1) best.unique = false;
  return best;
}

/// Dispatch LP of a case with one block per generator, in enumerator form.
/// line_rows receives the line index of each limited-line row pair.
inline VertexLp oracle_lp(const NetworkCase& c, const Eigen::MatrixXd& T, bool lossy, std::vector<int>* line_rows) {
  const int ng = static_cast<int>(c.generators.size());
  const int nv = ng + (lossy ? 1 : 0);
  Eigen::VectorXd PD = c.loads();
  Eigen::VectorXd LF = c.loss_factors(), d = c.loss_distribution();
  std::vector<int> limited;
  for (int j = 0; j < c.num_lines(); ++j)
    if (c.lines[j].limited()) limited.push_back(j);
  Eigen::MatrixXd Ag = Eigen::MatrixXd::Zero(c.num_buses(), ng);
  for (int g = 0; g < ng; ++g) Ag(c.generators[g].bus, g) = 1.0;

  VertexLp lp;
  lp.c = Eigen::VectorXd::Zero(nv);
  for (int g = 0; g < ng; ++g) lp.c[g] = c.generators[g].blocks.at(0).price;
  lp.E = Eigen::MatrixXd::Zero(lossy ? 2 : 1, nv);
  lp.e.resize(lp.E.rows());
  lp.E.row(0).head(ng).setOnes();
  if (lossy) lp.E(0, ng) = -1.0;
  lp.e[0] = PD.sum();
  if (lossy) {
    lp.E(1, ng) = 1.0;
    lp.E.row(1).head(ng) = -(LF.transpose() * Ag);
    lp.e[1] = c.loss.l0 - LF.dot(PD);
  }
  const int mg = 2 * ng + 2 * static_cast<int>(limited.size());
  lp.G = Eigen::MatrixXd::Zero(mg, nv);
  lp.h.resize(mg);
  for (int g = 0; g < ng; ++g) {
    lp.G(2 * g, g) = 1.0;
    lp.h[2 * g] = c.generators[g].pmax;
    lp.G(2 * g + 1, g) = -1.0;
    lp.h[2 * g + 1] = -c.generators[g].pmin;
  }
  for (std::size_t a = 0; a < limited.size(); ++a) {
    int j = limited[a];
    Eigen::RowVectorXd row(nv);
    row.head(ng) = T.row(j) * Ag;
    if (lossy) row[ng] = -T.row(j).dot(d);
    double base = T.row(j).dot(PD);
    int r = 2 * ng + 2 * static_cast<int>(a);
    lp.G.row(r) = row;
    lp.h[r] = c.lines[j].capacity + base;
    lp.G.row(r + 1) = -row;
    lp.h[r + 1] = c.lines[j].capacity - base;
    line_rows->push_back(j);
  }
  return lp;
}

inline NetworkCase random_three_bus(std::mt19937_64& rng, bool lossy) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  NetworkCase c;
  c.name = "tri";
  for (int i = 0; i < 3; ++i) c.buses.push_back({std::to_string(i + 1), 20.0 + 80.0 * U(rng)});
  const int ends[3][2] = {{0, 1}, {1, 2}, {0, 2}};
  for (int j = 0; j < 3; ++j) {
    lmps::Line l;
    l.id = "L" + std::to_string(j + 1);
    l.from = ends[j][0];
    l.to = ends[j][1];
    l.reactance = 0.05 + 0.25 * U(rng);
    if (U(rng) < 0.7) l.capacity = 10.0 + 60.0 * U(rng);
    c.lines.push_back(l);
  }
  int ng = 2 + static_cast<int>(rng() % 2);
  for (int g = 0; g < ng; ++g) {
    lmps::Generator gen;
    gen.id = "G" + std::to_string(g + 1);
    gen.bus = g;
    gen.pmin = 0.0;
    gen.pmax = 80.0 + 150.0 * U(rng);
    gen.blocks = {{gen.pmax, 10.0 + 40.0 * U(rng)}};
    c.generators.push_back(gen);
  }
  c.reference = 0;
  if (lossy) {
    c.loss.l0 = 0.5 + 2.0 * U(rng);
    c.loss.lf = Eigen::VectorXd(3);
    c.loss.lf << 0.0, 0.01 + 0.05 * U(rng), 0.01 + 0.05 * U(rng);
    c.loss.d = Eigen::VectorXd(3);
    c.loss.d << U(rng), U(rng), U(rng);
    c.loss.d /= c.loss.d.sum();
  }
  return c;
}

/// PTDF assembled column by column from the nodal solve.
inline Eigen::MatrixXd ptdf_oracle(const NetworkCase& c) {
  Eigen::MatrixXd T(c.num_lines(), c.num_buses());
  for (int i = 0; i < c.num_buses(); ++i) {
    Eigen::VectorXd inj = Eigen::VectorXd::Zero(c.num_buses());
    inj[i] = 1.0;
    T.col(i) = dc_flows(c, inj);
  }
  return T;
}

/// Largest disagreement between solve_dcopf and the enumerated vertex
/// (lambda, sigma, |mu|, nodal prices, objective, dispatch). Empty when the
/// oracle optimum is not unique or the case is infeasible.
inline std::optional<double> oracle_dual_gap(const NetworkCase& c, bool lossy, bool* congested) {
  Eigen::MatrixXd T = ptdf_oracle(c);
  std::vector<int> line_of;
  VertexLp vlp = oracle_lp(c, T, lossy, &line_of);
  VertexSolution vs = enumerate_vertices(vlp);
  if (!vs.found || !vs.unique) return std::nullopt;
  lmps::DispatchSolution sol;
  try {
    sol = lmps::solve_dcopf(c, lmps::build_ptdf(c), lossy ? lmps::MarketMode::Lossy : lmps::MarketMode::Lossless);
  } catch (const lmps::InfeasibleError&) {
    return std::nullopt;
  }
  const int ng = static_cast<int>(c.generators.size());
  double diff = std::abs(sol.lambda - vs.eq_duals[0]);
  if (lossy) diff = std::max(diff, std::abs(sol.sigma - vs.eq_duals[1]));
  Eigen::VectorXd lmp = Eigen::VectorXd::Constant(c.num_buses(), vs.eq_duals[0]);
  if (lossy) lmp -= vs.eq_duals[1] * c.loss_factors();
  *congested = false;
  for (std::size_t a = 0; a < line_of.size(); ++a) {
    int j = line_of[a];
    double up = vs.ineq_duals[2 * ng + 2 * a], dn = vs.ineq_duals[2 * ng + 2 * a + 1];
    lmp += (up - dn) * T.row(j).transpose();
    diff = std::max(diff, std::abs(std::abs(sol.mu[j]) - std::abs(up + dn)));
    *congested = *congested || up != 0.0 || dn != 0.0;
  }
  diff = std::max(diff, (sol.lmp - lmp).cwiseAbs().maxCoeff());
  diff = std::max(diff, std::abs(sol.objective - vs.objective) / (1.0 + std::abs(vs.objective)));
  diff = std::max(diff, (sol.pg - vs.x.head(ng)).cwiseAbs().maxCoeff() / 100.0);
  return diff;
}

/// Synthetic congestion panel: X = B chi in node space, noise free.
struct SyntheticPanel {
  lmps::LmpPanel panel;
  Eigen::MatrixXd basis;  // nodes x k
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> truth;  // k x M
};

/// Every basis appears alone in at least `alone` intervals; the rest are random nonempty subsets.
inline SyntheticPanel synthetic_panel(int k, int M, int nodes, std::uint64_t seed, int alone = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  SyntheticPanel s;
  s.basis.resize(nodes, k);
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < k; ++j) s.basis(i, j) = N(rng);
  s.truth.setZero(k, M);
  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(k, M);
  for (int t = 0; t < M; ++t) {
    if (t < alone * k) {
      s.truth(t % k, t) = 1;
    } else {
      while (s.truth.col(t).cast<int>().sum() == 0)
        for (int j = 0; j < k; ++j) s.truth(j, t) = (rng() & 1U) ? 1 : 0;
    }
    for (int j = 0; j < k; ++j)
      if (s.truth(j, t)) chi(j, t) = (rng() & 1U ? 1.0 : -1.0) * mag(rng);
  }
  // Shuffle intervals so singletons are spread out.
  std::vector<int> perm(M);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd X = s.basis * chi;
  auto& p = s.panel;
  for (int i = 0; i < nodes; ++i) p.nodes.push_back("n" + std::to_string(i + 1));
  p.congestion.resize(nodes, M);
  decltype(s.truth) truth(k, M);
  for (int t = 0; t < M; ++t) {
    p.timestamps.push_back("t" + std::to_string(t));
    p.congestion.col(t) = X.col(perm[t]);
    truth.col(t) = s.truth.col(perm[t]);
  }
  s.truth = truth;
  return s;
}

}  // namespace testing_support
