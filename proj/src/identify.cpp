#include "lmps/identify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lmps/errors.hpp"

namespace lmps {

AssembledBasis assemble_basis(const BasisSet& bottom, const BasisSet& top, const Eigen::MatrixXd& X,
                              const Eigen::MatrixXd& projection, double rank_tol) {
  const Eigen::Index k = X.rows();
  AssembledBasis out;
  std::vector<Eigen::VectorXd> cols;
  auto take = [&](const BasisSet& set) {
    for (const auto& bv : set.vectors) {
      if (bv.v.size() != k) throw std::invalid_argument("assemble_basis: vector dimension mismatch");
      bool dup = false;
      for (const auto& c : cols) dup = dup || std::abs(c.dot(bv.v)) > 1.0 - 1e-6;
      if (dup) {
        ++out.duplicates;
        continue;
      }
      cols.push_back(bv.v);
      out.sources.push_back(bv.source);
    }
  };
  take(bottom);
  take(top);
  out.B.resize(k, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.B.col(j) = cols[j];

  int rb = numerical_rank(out.B, 1e-8);
  if (rb < out.B.cols())
    throw std::invalid_argument("assemble_basis: basis vectors are linearly dependent");
  int rx = numerical_rank(X, rank_tol);
  if (rb < rx) {
    int missing = rx - rb;
    throw RankDeficitError(std::to_string(missing) + (missing == 1 ? " basis vector missing" : " basis vectors missing"),
                           missing);
  }
  if (projection.size() > 0) out.node = projection.transpose() * out.B;
  return out;
}

Eigen::MatrixXd recover_chi(const Eigen::MatrixXd& B, const Eigen::MatrixXd& X) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(B);
  return cod.pseudoInverse() * X;
}

StatusCodes encode_status(const Eigen::MatrixXd& chi, double eps_rel) {
  const Eigen::Index r = chi.rows(), M = chi.cols();
  Eigen::MatrixXd mag = chi.cwiseAbs();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> nonzero(r, M);
  for (Eigen::Index t = 0; t < M; ++t) {
    double top = r ? mag.col(t).maxCoeff() : 0.0;
    for (Eigen::Index j = 0; j < r; ++j) nonzero(j, t) = mag(j, t) > 1e-9 * top && mag(j, t) > 0.0;
  }
  StatusCodes out;
  out.bits = CodeMatrix::Zero(r, M);
  for (Eigen::Index j = 0; j < r; ++j) {
    out.row_labels.push_back("b" + std::to_string(j + 1));
    std::vector<double> vals;
    for (Eigen::Index t = 0; t < M; ++t)
      if (nonzero(j, t)) vals.push_back(mag(j, t));
    if (vals.empty()) {
      out.empty_rows.push_back(static_cast<int>(j));
      continue;
    }
    std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
    double thr = eps_rel * vals[vals.size() / 2];
    for (Eigen::Index t = 0; t < M; ++t) out.bits(j, t) = nonzero(j, t) && mag(j, t) > thr;
  }
  for (Eigen::Index t = 0; t < M; ++t)
    if (r == 0 || out.bits.col(t).cast<int>().sum() == 0) out.empty_columns.push_back(static_cast<int>(t));
  return out;
}

namespace {

// Greedy one-to-one assignment; better(a, b) says score a beats b.
template <class Better>
RowMatch greedy(const Eigen::MatrixXd& score, Better better, const std::string& by) {
  const Eigen::Index r = score.rows(), k = score.cols();
  RowMatch m;
  m.by = by;
  m.truth_row.assign(r, -1);
  m.score.assign(r, 0.0);
  std::vector<bool> hat_used(r, false), truth_used(k, false);
  for (Eigen::Index step = 0; step < std::min(r, k); ++step) {
    Eigen::Index bi = -1, bj = -1;
    // Scan truth rows first so ties fall to the lower line index.
    for (Eigen::Index j = 0; j < k; ++j) {
      if (truth_used[j]) continue;
      for (Eigen::Index i = 0; i < r; ++i) {
        if (hat_used[i]) continue;
        if (bi < 0 || better(score(i, j), score(bi, bj))) {
          bi = i;
          bj = j;
        }
      }
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      if (truth_used[j]) continue;
      for (Eigen::Index i = 0; i < r; ++i) {
        if (hat_used[i] || (i == bi && j == bj)) continue;
        bool same = !better(score(i, j), score(bi, bj)) && !better(score(bi, bj), score(i, j));
        if (same && (i == bi || j == bj)) m.tie = true;
      }
    }
    hat_used[bi] = truth_used[bj] = true;
    m.truth_row[bi] = static_cast<int>(bj);
    m.score[bi] = score(bi, bj);
  }
  return m;
}

}  // namespace

RowMatch match_rows_hamming(const CodeMatrix& hat, const CodeMatrix& truth) {
  if (hat.cols() != truth.cols()) throw std::invalid_argument("match_rows: interval counts differ");
  Eigen::MatrixXd d(hat.rows(), truth.rows());
  for (Eigen::Index i = 0; i < hat.rows(); ++i)
    for (Eigen::Index j = 0; j < truth.rows(); ++j)
      d(i, j) = (hat.row(i).cast<int>() - truth.row(j).cast<int>()).cwiseAbs().sum();
  return greedy(d, [](double a, double b) { return a < b; }, "hamming");
}

RowMatch match_rows_ptdf(const Eigen::MatrixXd& basis_node, const Eigen::MatrixXd& line_cols) {
  if (basis_node.rows() != line_cols.rows()) throw std::invalid_argument("match_rows: node counts differ");
  Eigen::MatrixXd c(basis_node.cols(), line_cols.cols());
  for (Eigen::Index i = 0; i < basis_node.cols(); ++i)
    for (Eigen::Index j = 0; j < line_cols.cols(); ++j) {
      double den = basis_node.col(i).norm() * line_cols.col(j).norm();
      c(i, j) = den > 0.0 ? std::abs(basis_node.col(i).dot(line_cols.col(j))) / den : 0.0;
    }
  return greedy(c, [](double a, double b) { return a > b + 1e-12; }, "ptdf");
}

MiscodeReport miscode(const CodeMatrix& hat, const CodeMatrix& truth, const RowMatch& match) {
  if (hat.cols() != truth.cols()) throw std::invalid_argument("miscode: interval counts differ");
  if (static_cast<Eigen::Index>(match.truth_row.size()) != hat.rows())
    throw std::invalid_argument("miscode: match does not cover the recovered rows");
  const Eigen::Index M = truth.cols(), k = truth.rows(), r = hat.rows();
  MiscodeReport rep;
  rep.intervals = static_cast<int>(M);
  rep.k_eval = static_cast<int>(std::max(k, r));
  rep.k_mismatch = k != r;
  rep.per_row.assign(k, 1.0);
  std::vector<bool> covered(k, false);
  long total = 0;
  for (Eigen::Index i = 0; i < r; ++i) {
    int j = match.truth_row[i];
    if (j < 0) {
      total += M;
      continue;
    }
    long miss = (hat.row(i).cast<int>() - truth.row(j).cast<int>()).cwiseAbs().sum();
    covered[j] = true;
    rep.per_row[j] = static_cast<double>(miss) / static_cast<double>(M);
    total += miss;
  }
  for (Eigen::Index j = 0; j < k; ++j)
    if (!covered[j]) total += M;
  rep.mismatches = total;
  rep.total = static_cast<double>(total) / (static_cast<double>(rep.k_eval) * static_cast<double>(M));
  return rep;
}

std::vector<FrequencyRow> status_frequency(const CodeMatrix& codes) {
  std::map<std::vector<std::uint8_t>, int> count;
  for (Eigen::Index t = 0; t < codes.cols(); ++t) {
    std::vector<std::uint8_t> c(codes.rows());
    for (Eigen::Index j = 0; j < codes.rows(); ++j) c[j] = codes(j, t);
    ++count[c];
  }
  std::vector<FrequencyRow> out;
  for (const auto& [code, n] : count)
    out.push_back({code, n, static_cast<double>(n) / static_cast<double>(codes.cols())});
  std::stable_sort(out.begin(), out.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
    return a.count > b.count;
  });
  return out;
}

}  // namespace lmps
