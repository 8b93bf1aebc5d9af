#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lmps {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] int column(const std::string& name) const;  // -1 if absent
};

std::vector<std::string> split_csv_line(const std::string& line);
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::string format_double(double v);

/// Header row then one row per matrix row; first column from `labels`.
void write_matrix_csv(std::ostream& out, const std::string& corner,
                      const std::vector<std::string>& col_names,
                      const std::vector<std::string>& row_labels, const Eigen::MatrixXd& m);

}  // namespace lmps
