#include "lmps/ptdf.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lmps {

std::vector<std::vector<int>> islands(const NetworkCase& c) {
  int n = c.num_buses();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& l : c.lines) parent[find(l.from)] = find(l.to);
  std::vector<int> slot(n, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

PtdfMatrix build_ptdf(const NetworkCase& c) {
  int nb = c.num_buses(), nl = c.num_lines();
  for (const auto& l : c.lines)
    if (!(l.reactance > 0.0)) throw std::invalid_argument("ptdf: line " + l.id + " has zero or negative reactance");
  auto parts = islands(c);
  if (parts.size() > 1) {
    std::ostringstream msg;
    msg << "ptdf: network is disconnected into " << parts.size() << " islands:";
    for (const auto& p : parts) {
      msg << " {";
      for (std::size_t k = 0; k < p.size(); ++k) msg << (k ? "," : "") << c.buses[p[k]].id;
      msg << "}";
    }
    throw std::invalid_argument(msg.str());
  }

  // Reduced susceptance matrix without the reference bus.
  auto reduced = [&](int i) { return i < c.reference ? i : i - 1; };
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nb - 1, nb - 1);
  for (const auto& l : c.lines) {
    double y = 1.0 / l.reactance;
    if (l.from != c.reference) B(reduced(l.from), reduced(l.from)) += y;
    if (l.to != c.reference) B(reduced(l.to), reduced(l.to)) += y;
    if (l.from != c.reference && l.to != c.reference) {
      B(reduced(l.from), reduced(l.to)) -= y;
      B(reduced(l.to), reduced(l.from)) -= y;
    }
  }
  Eigen::MatrixXd Binv = nb > 1 ? Eigen::MatrixXd(B.ldlt().solve(Eigen::MatrixXd::Identity(nb - 1, nb - 1)))
                                : Eigen::MatrixXd();

  PtdfMatrix out;
  out.reference = c.reference;
  out.T = Eigen::MatrixXd::Zero(nl, nb);
  for (int j = 0; j < nl; ++j) {
    const auto& l = c.lines[j];
    double y = 1.0 / l.reactance;
    for (int i = 0; i < nb; ++i) {
      if (i == c.reference) continue;
      double af = l.from == c.reference ? 0.0 : Binv(reduced(l.from), reduced(i));
      double at = l.to == c.reference ? 0.0 : Binv(reduced(l.to), reduced(i));
      out.T(j, i) = y * (af - at);
    }
  }
  return out;
}

}  // namespace lmps
