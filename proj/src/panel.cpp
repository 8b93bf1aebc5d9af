#include "lmps/panel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "lmps/csv.hpp"
#include "lmps/errors.hpp"

namespace lmps {

CsvSchema spp_schema() {
  CsvSchema s;
  s.node = "Pnode";
  s.timestamp = "GMTIntervalEnd";
  s.congestion = "MCC";
  s.loss = "MLC";
  s.energy = "MEC";
  s.strict = true;
  return s;
}

bool node_less(const std::string& a, const std::string& b) {
  auto integral = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (integral(a) && integral(b) && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

double parse_cell(const std::string& s, bool* ok) {
  *ok = false;
  if (s.empty()) return 0.0;
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    *ok = pos == s.size();
    return v;
  } catch (const std::exception&) {
    return 0.0;
  }
}

}  // namespace

LmpPanel read_lmp_csv(std::istream& in, const IngestOptions& opt) {
  CsvTable t = read_csv(in);
  const CsvSchema& s = opt.schema;
  int c_node = t.column(s.node), c_ts = t.column(s.timestamp), c_mcc = t.column(s.congestion);
  int c_mlc = s.loss.empty() ? -1 : t.column(s.loss);
  int c_mec = s.energy.empty() ? -1 : t.column(s.energy);
  if (c_node < 0) throw std::invalid_argument("lmp csv: missing node column '" + s.node + "'");
  if (c_ts < 0) throw std::invalid_argument("lmp csv: missing timestamp column '" + s.timestamp + "'");
  if (c_mcc < 0) throw std::invalid_argument("lmp csv: missing component column '" + s.congestion + "'");
  if (s.strict && !s.loss.empty() && c_mlc < 0)
    throw std::invalid_argument("lmp csv: missing component column '" + s.loss + "'");
  if (s.strict && !s.energy.empty() && c_mec < 0)
    throw std::invalid_argument("lmp csv: missing component column '" + s.energy + "'");

  std::vector<std::string> nodes, stamps;
  for (const auto& r : t.rows) {
    if (static_cast<int>(r.size()) != static_cast<int>(t.header.size()))
      throw std::invalid_argument("lmp csv: row width differs from header");
    nodes.push_back(r[c_node]);
    stamps.push_back(r[c_ts]);
  }
  std::sort(nodes.begin(), nodes.end(), node_less);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::sort(stamps.begin(), stamps.end());
  stamps.erase(std::unique(stamps.begin(), stamps.end()), stamps.end());

  auto index_of = [](const std::vector<std::string>& v, const std::string& key, auto less) {
    auto it = std::lower_bound(v.begin(), v.end(), key, less);
    return static_cast<int>(it - v.begin());
  };
  const int n = static_cast<int>(nodes.size()), m = static_cast<int>(stamps.size());
  const int ncomp = 3;
  const int cols[ncomp] = {c_mcc, c_mlc, c_mec};
  std::vector<Eigen::MatrixXd> val(ncomp, Eigen::MatrixXd::Zero(n, m));
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> seen =
      Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, m);

  for (const auto& r : t.rows) {
    int i = index_of(nodes, r[c_node], node_less);
    int j = index_of(stamps, r[c_ts], std::less<std::string>());
    double v[ncomp] = {0, 0, 0};
    bool present = true;
    for (int k = 0; k < ncomp; ++k) {
      if (cols[k] < 0) continue;
      bool ok = false;
      v[k] = parse_cell(r[cols[k]], &ok);
      if (!ok) present = false;
    }
    if (!present) continue;  // treated as a gap
    if (seen(i, j)) {
      for (int k = 0; k < ncomp; ++k) {
        if (cols[k] >= 0 && val[k](i, j) != v[k])
          throw std::invalid_argument("lmp csv: conflicting duplicate for node " + nodes[i] + " at " + stamps[j]);
      }
      continue;
    }
    seen(i, j) = 1;
    for (int k = 0; k < ncomp; ++k) val[k](i, j) = v[k];
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (seen(i, j)) continue;
      if (!opt.forward_fill || j == 0 || !seen(i, j - 1))
        throw std::invalid_argument("lmp csv: missing value for node " + nodes[i] + " at " + stamps[j]);
      for (int k = 0; k < ncomp; ++k) val[k](i, j) = val[k](i, j - 1);
      seen(i, j) = 1;
    }
  }

  LmpPanel p;
  p.nodes = nodes;
  p.timestamps = stamps;
  p.congestion = val[0];
  if (c_mlc >= 0) p.loss = val[1];
  if (c_mec >= 0) p.energy = val[2];
  return p;
}

LmpPanel ingest_lmp_csv(const std::string& path, const IngestOptions& opt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_lmp_csv(in, opt);
}

void write_lmp_csv(std::ostream& out, const LmpPanel& p) {
  bool loss = p.loss.size() > 0, energy = p.energy.size() > 0;
  out << "node,timestamp,mcc";
  if (loss) out << ",mlc";
  if (energy) out << ",mec";
  out << "\n";
  for (int i = 0; i < p.num_nodes(); ++i) {
    for (int j = 0; j < p.num_intervals(); ++j) {
      out << p.nodes[i] << "," << p.timestamps[j] << "," << format_double(p.congestion(i, j));
      if (loss) out << "," << format_double(p.loss(i, j));
      if (energy) out << "," << format_double(p.energy(i, j));
      out << "\n";
    }
  }
}

LmpPanel dedupe_nodes(const LmpPanel& panel, double tol) {
  const int n = panel.num_nodes();
  auto close = [&](int a, int b) {
    auto same = [&](const Eigen::MatrixXd& m) {
      return m.size() == 0 || (m.row(a) - m.row(b)).cwiseAbs().maxCoeff() <= tol;
    };
    return same(panel.congestion) && same(panel.loss) && same(panel.energy);
  };
  // Candidates are near each other in the first congestion value.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int i) { return panel.num_intervals() > 0 ? panel.congestion(i, 0) : 0.0; };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });

  std::vector<int> rep(n, -1);
  for (int a = 0; a < n; ++a) rep[a] = a;
  for (std::size_t x = 0; x < order.size(); ++x) {
    for (std::size_t y = x + 1; y < order.size() && key(order[y]) - key(order[x]) <= tol; ++y) {
      int a = std::min(order[x], order[y]), b = std::max(order[x], order[y]);
      if (rep[a] != a || rep[b] != b) continue;
      if (close(a, b)) rep[b] = a;
    }
  }

  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (rep[i] == i) keep.push_back(i);
  LmpPanel out;
  out.timestamps = panel.timestamps;
  out.aliases = panel.aliases;
  for (int i : keep) out.nodes.push_back(panel.nodes[i]);
  for (int i = 0; i < n; ++i)
    if (rep[i] != i) out.aliases[panel.nodes[i]] = panel.nodes[rep[i]];
  auto take = [&](const Eigen::MatrixXd& m) {
    if (m.size() == 0) return Eigen::MatrixXd();
    Eigen::MatrixXd r(keep.size(), m.cols());
    for (std::size_t k = 0; k < keep.size(); ++k) r.row(k) = m.row(keep[k]);
    return r;
  };
  out.congestion = take(panel.congestion);
  out.loss = take(panel.loss);
  out.energy = take(panel.energy);
  return out;
}

LmpPanel eliminate_loss_term(const LmpPanel& panel, const std::string& ref_node) {
  auto it = std::find(panel.nodes.begin(), panel.nodes.end(), ref_node);
  if (it == panel.nodes.end()) throw std::invalid_argument("reference node " + ref_node + " not in panel");
  int r = static_cast<int>(it - panel.nodes.begin());
  LmpPanel out = panel;
  Eigen::RowVectorXd ref = panel.congestion.row(r);
  out.congestion.rowwise() -= ref;
  return out;
}

CongestionMatrix filter_congested(const LmpPanel& panel, double tol) {
  CongestionMatrix cm;
  cm.nodes = panel.nodes;
  std::vector<int> keep;
  for (int j = 0; j < panel.num_intervals(); ++j) {
    double norm = panel.num_nodes() ? panel.congestion.col(j).cwiseAbs().maxCoeff() : 0.0;
    if (norm > tol) keep.push_back(j);
    else cm.dropped.push_back(j);
  }
  if (keep.empty()) throw NoCongestionError("no congestion observed");
  cm.X.resize(panel.num_nodes(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    cm.X.col(k) = panel.congestion.col(keep[k]);
    cm.timestamps.push_back(panel.timestamps[keep[k]]);
  }
  cm.columns = keep;
  return cm;
}

CongestionMatrix pca_reduce(const CongestionMatrix& in, double energy_tol) {
  if (in.X.size() == 0) throw std::invalid_argument("pca_reduce: empty matrix");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(in.X, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  double total = s.squaredNorm();
  int k = 0;
  double acc = 0.0;
  while (k < s.size() && acc < (1.0 - energy_tol) * total) acc += s[k] * s[k], ++k;
  k = std::max(k, 1);
  CongestionMatrix out = in;
  Eigen::MatrixXd Uk = svd.matrixU().leftCols(k);
  out.X = Uk.transpose() * in.X;
  out.projection = in.reduced() ? Eigen::MatrixXd(Uk.transpose() * in.projection) : Eigen::MatrixXd(Uk.transpose());
  out.singular_values = s;
  out.rank = k;
  return out;
}

}  // namespace lmps
