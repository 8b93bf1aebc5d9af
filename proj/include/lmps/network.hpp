#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lmps {

struct Bus {
  std::string id;
  double load = 0.0;  // MW
};

struct Line {
  std::string id;
  int from = 0;  // bus index
  int to = 0;
  double reactance = 0.0;  // p.u.
  double capacity = std::numeric_limits<double>::infinity();  // MW

  [[nodiscard]] bool limited() const { return std::isfinite(capacity); }
};

struct Offer {
  double quantity = 0.0;  // MW
  double price = 0.0;     // $/MWh
};

struct Generator {
  std::string id;
  int bus = 0;
  double pmin = 0.0;
  double pmax = 0.0;
  std::vector<Offer> blocks;
};

/// Litvinov-style linear loss model: l = l0 + LF' (P_G - P_D), distributed by d.
struct LossModel {
  double l0 = 0.0;
  Eigen::VectorXd lf;  // per bus
  Eigen::VectorXd d;   // per bus, sums to 1
};

struct NetworkCase {
  std::string name;
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::vector<Generator> generators;
  int reference = 0;  // bus index
  LossModel loss;
  /// Per-interval load multipliers, applied cyclically by the scenario generator.
  std::vector<double> profile;

  [[nodiscard]] int num_buses() const { return static_cast<int>(buses.size()); }
  [[nodiscard]] int num_lines() const { return static_cast<int>(lines.size()); }
  [[nodiscard]] int bus_index(const std::string& id) const;
  [[nodiscard]] int line_index(const std::string& id) const;
  [[nodiscard]] Eigen::VectorXd loads() const;
  [[nodiscard]] Eigen::VectorXd loss_factors() const;
  [[nodiscard]] Eigen::VectorXd loss_distribution() const;

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

NetworkCase parse_case(std::istream& in);
NetworkCase read_case(const std::string& path);
void write_case(std::ostream& out, const NetworkCase& c);

/// Converts a MATPOWER-style case (mpc.bus / mpc.branch / mpc.gen / mpc.gencost).
NetworkCase convert_matpower(std::istream& in, const std::string& name = "converted");

}  // namespace lmps
