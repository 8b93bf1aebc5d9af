#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lmps {

struct LmpPanel {
  std::vector<std::string> nodes;
  std::vector<std::string> timestamps;
  Eigen::MatrixXd energy;      // nodes x intervals (empty if not supplied)
  Eigen::MatrixXd congestion;
  Eigen::MatrixXd loss;
  std::map<std::string, std::string> aliases;  // merged node -> representative

  [[nodiscard]] int num_nodes() const { return static_cast<int>(nodes.size()); }
  [[nodiscard]] int num_intervals() const { return static_cast<int>(timestamps.size()); }
};

struct CsvSchema {
  std::string node = "node";
  std::string timestamp = "timestamp";
  std::string congestion = "mcc";
  std::string loss = "mlc";  // optional
  std::string energy = "mec";  // optional
  bool strict = false;  // every named column must exist
};

/// Column map for SPP-style exports.
CsvSchema spp_schema();

struct IngestOptions {
  CsvSchema schema;
  bool forward_fill = false;
};

LmpPanel read_lmp_csv(std::istream& in, const IngestOptions& opt = {});
LmpPanel ingest_lmp_csv(const std::string& path, const IngestOptions& opt = {});
void write_lmp_csv(std::ostream& out, const LmpPanel& panel);

/// Numeric-aware ordering used for node ids.
bool node_less(const std::string& a, const std::string& b);

LmpPanel dedupe_nodes(const LmpPanel& panel, double tol);

/// Subtracts the reference node's congestion row from every row.
LmpPanel eliminate_loss_term(const LmpPanel& panel, const std::string& ref_node);

struct CongestionMatrix {
  Eigen::MatrixXd X;                  // coordinates x columns
  std::vector<int> columns;           // panel interval of each column
  std::vector<int> dropped;           // filtered-out panel intervals
  std::vector<std::string> nodes;
  std::vector<std::string> timestamps;  // of retained columns
  Eigen::MatrixXd projection;         // k x nodes, orthonormal rows; empty before PCA
  Eigen::VectorXd singular_values;
  int rank = 0;

  [[nodiscard]] bool reduced() const { return projection.size() > 0; }
  [[nodiscard]] int num_columns() const { return static_cast<int>(X.cols()); }
};

/// Drops columns with inf-norm <= tol. Throws NoCongestionError if none remain.
CongestionMatrix filter_congested(const LmpPanel& panel, double tol = 1e-4);

/// Uncentered PCA keeping the smallest rank with >= 1 - energy_tol of the energy.
CongestionMatrix pca_reduce(const CongestionMatrix& in, double energy_tol = 1e-8);

}  // namespace lmps
