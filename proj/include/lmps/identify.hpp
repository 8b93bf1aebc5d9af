#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmps/basis.hpp"

namespace lmps {

using CodeMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

struct AssembledBasis {
  Eigen::MatrixXd B;     // working coordinates, one column per vector
  Eigen::MatrixXd node;  // back-mapped through the PCA projection (empty without one)
  std::vector<std::string> sources;
  int duplicates = 0;
};

/// Stacks both sets, drops duplicates, checks rank(B) == rank(X).
/// Throws RankDeficitError("1 basis vector missing" and so on).
AssembledBasis assemble_basis(const BasisSet& bottom, const BasisSet& top, const Eigen::MatrixXd& X,
                              const Eigen::MatrixXd& projection = {}, double rank_tol = 1e-8);

/// pinv(B) X.
Eigen::MatrixXd recover_chi(const Eigen::MatrixXd& B, const Eigen::MatrixXd& X);

struct StatusCodes {
  CodeMatrix bits;  // rows x intervals
  std::vector<std::string> row_labels;
  std::vector<int> empty_rows;     // rows with no nonzero entry (kept as zeros)
  std::vector<int> empty_columns;  // intervals decoded as congestion-free
};

/// 1 iff |chi| > eps_rel * (row median nonzero magnitude).
StatusCodes encode_status(const Eigen::MatrixXd& chi, double eps_rel = 1e-3);

struct RowMatch {
  std::vector<int> truth_row;  // per recovered row, -1 if unmatched
  std::vector<double> score;   // Hamming distance or |cos|
  bool tie = false;
  std::string by;  // "hamming" or "ptdf"
};

RowMatch match_rows_hamming(const CodeMatrix& hat, const CodeMatrix& truth);
/// basis_node: nodes x r; line_cols: nodes x k (PTDF rows of the candidate lines, transposed).
RowMatch match_rows_ptdf(const Eigen::MatrixXd& basis_node, const Eigen::MatrixXd& line_cols);

struct MiscodeReport {
  std::vector<double> per_row;  // per truth row
  double total = 0.0;
  long mismatches = 0;
  int k_eval = 0;
  int intervals = 0;
  bool k_mismatch = false;
};

MiscodeReport miscode(const CodeMatrix& hat, const CodeMatrix& truth, const RowMatch& match);

struct FrequencyRow {
  std::vector<std::uint8_t> code;
  int count = 0;
  double share = 0.0;
};

/// Distinct columns with shares, sorted by descending count (ties by code).
std::vector<FrequencyRow> status_frequency(const CodeMatrix& codes);

}  // namespace lmps
