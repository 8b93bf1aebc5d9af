#include "lmps/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lmps/csv.hpp"
#include "lmps/errors.hpp"
#include "lmps/network.hpp"
#include "lmps/pipeline.hpp"
#include "lmps/ptdf.hpp"
#include "lmps/scenarios.hpp"
#include "lmps/seed.hpp"
#include "lmps/spectral.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace lmps {

std::string interval_stamp(int t) {
  long minutes = 5L * t;
  long day = minutes / 1440, rem = minutes % 1440;
  // Civil date from days since 2008-01-01 (2008 is a leap year).
  static const int mdays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int year = 2008;
  auto leap = [](int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; };
  while (day >= (leap(year) ? 366 : 365)) day -= leap(year) ? 366 : 365, ++year;
  int month = 0;
  while (true) {
    int md = mdays[month] - (month == 1 && !leap(year) ? 1 : 0);
    if (day < md) break;
    day -= md;
    ++month;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02ldT%02ld:%02ld:00", year, month + 1, day + 1, rem / 60, rem % 60);
  return buf;
}

namespace {

struct Config {
  std::string mode = "lossless";
  std::string case_path, lmp_path, truth_path, out_dir = ".", ref_node;
  std::string matpower_path, case_out;
  double eps_cutoff = 0.005, eps_encode = 1e-3, p = 0.05, noise = 0.03;
  double dedupe_tol = -1.0, rank_tol = 1e-6, zero_tol = 1e-6, energy_tol = 1e-8, filter_tol = 1e-4, inlier_tol = 1e-6;
  long n_trials = 0;
  int intervals = 576, depth_limit = 0;
  std::uint64_t seed = 1;
  bool forward_fill = false, spp = false;
};

void check_fraction(double v, const std::string& name) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(name + " must lie in (0,1)");
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

PipelineOptions pipeline_options(const Config& c) {
  check_fraction(c.eps_cutoff, "--eps-cutoff");
  check_fraction(c.eps_encode, "--eps-encode");
  check_fraction(c.p, "--p");
  PipelineOptions o;
  o.mode = parse_mode(c.mode);
  o.ref_node = c.ref_node;
  o.dedupe_tol = c.dedupe_tol;
  o.filter_tol = c.filter_tol;
  o.energy_tol = c.energy_tol;
  o.eps_cutoff = c.eps_cutoff;
  o.rank_tol = c.rank_tol;
  o.zero_tol = c.zero_tol;
  o.eps_encode = c.eps_encode;
  o.p = c.p;
  o.n_trials = c.n_trials;
  o.inlier_tol = c.inlier_tol;
  o.depth_limit = c.depth_limit;
  o.seed = c.seed;
  return o;
}

int cmd_simulate(const Config& c) {
  NetworkCase base = read_case(c.case_path);
  if (c.intervals < 1) throw std::invalid_argument("--intervals must be at least 1");
  ScenarioOptions so;
  so.intervals = c.intervals;
  so.noise = c.noise;
  so.seed = c.seed;
  so.mode = parse_mode(c.mode);
  ScenarioSet set = generate_scenarios(base, so);

  fs::create_directories(c.out_dir);
  auto lmp = open_out(fs::path(c.out_dir) / "lmp.csv");
  lmp << "node,timestamp,mcc,mlc,mec\n";
  for (int i = 0; i < base.num_buses(); ++i) {
    for (const auto& r : set.records) {
      lmp << base.buses[i].id << "," << interval_stamp(r.interval) << "," << format_double(r.lmp.congestion[i])
          << "," << format_double(r.lmp.loss[i]) << "," << format_double(r.lmp.energy[i]) << "\n";
    }
  }
  auto truth = open_out(fs::path(c.out_dir) / "truth.csv");
  truth << "interval,line_id,mu,congested\n";
  std::set<int> ever;
  std::map<std::vector<std::uint8_t>, int> statuses;
  int congested_intervals = 0, degenerate = 0;
  for (const auto& r : set.records) {
    bool any = false;
    for (int j = 0; j < base.num_lines(); ++j) {
      if (!base.lines[j].limited()) continue;
      truth << interval_stamp(r.interval) << "," << base.lines[j].id << "," << format_double(r.dispatch.mu[j]) << ","
            << int(r.congested[j]) << "\n";
      if (r.congested[j]) ever.insert(j), any = true;
    }
    congested_intervals += any;
    degenerate += r.dispatch.degenerate;
    ++statuses[r.congested];
  }
  std::cout << "case " << base.name << " (" << to_string(so.mode) << "): " << set.records.size() << " of "
            << c.intervals << " intervals feasible";
  if (!set.infeasible.empty()) std::cout << ", " << set.infeasible.size() << " skipped";
  std::cout << "\ncongested intervals: " << congested_intervals << "\never-congested lines:";
  for (int j : ever) std::cout << " " << base.lines[j].id;
  std::cout << "\ndistinct statuses: " << statuses.size() << "\ndegenerate clearings: " << degenerate << "\n";
  return kExitOk;
}

void write_codes(const fs::path& p, const std::vector<std::string>& stamps, const StatusCodes& codes) {
  auto f = open_out(p);
  f << "interval";
  for (const auto& l : codes.row_labels) f << "," << l;
  f << "\n";
  for (Eigen::Index t = 0; t < codes.bits.cols(); ++t) {
    f << stamps[t];
    for (Eigen::Index j = 0; j < codes.bits.rows(); ++j) f << "," << int(codes.bits(j, t));
    f << "\n";
  }
}

int cmd_identify(const Config& c) {
  PipelineOptions opt = pipeline_options(c);
  IngestOptions io;
  if (c.spp) io.schema = spp_schema();
  io.forward_fill = c.forward_fill;
  LmpPanel panel = ingest_lmp_csv(c.lmp_path, io);
  PipelineResult res = run_pipeline(panel, opt);

  fs::path out(c.out_dir);
  fs::create_directories(out);
  const auto& d = res.data;
  std::vector<std::string> labels = res.codes.row_labels;

  {
    auto f = open_out(out / "basis.csv");
    bool node = res.basis.node.size() > 0;
    const Eigen::MatrixXd& B = node ? res.basis.node : res.basis.B;
    std::vector<std::string> rows;
    for (Eigen::Index i = 0; i < B.rows(); ++i) rows.push_back(node ? d.nodes[i] : "c" + std::to_string(i + 1));
    write_matrix_csv(f, "node", labels, rows, B);
  }
  {
    auto f = open_out(out / "working.csv");
    std::vector<std::string> rows;
    for (Eigen::Index i = 0; i < d.X.rows(); ++i) rows.push_back("c" + std::to_string(i + 1));
    write_matrix_csv(f, "coord", d.timestamps, rows, d.X);
  }
  write_codes(out / "codes.csv", d.timestamps, res.codes);
  {
    auto f = open_out(out / "intervals.csv");
    f << "interval,congested\n";
    std::vector<int> kept(panel.num_intervals(), 0);
    for (int col : d.columns) kept[col] = 1;
    for (int t = 0; t < panel.num_intervals(); ++t) f << panel.timestamps[t] << "," << kept[t] << "\n";
  }
  {
    auto f = open_out(out / "rounds.log");
    for (const auto& r : res.bottom.rounds) {
      RoundLog copy = r;
      copy.seconds = 0.0;
      std::string line = format_round(copy);
      line.erase(line.find(" seconds="), line.find(" eigengaps=") - line.find(" seconds="));
      f << line << "\n";
    }
  }
  if (res.top) {
    auto f = open_out(out / "tree.txt");
    f << res.top->tree.to_text();
  }
  json run;
  run["mode"] = c.mode;
  run["ref_node"] = c.ref_node.empty() ? panel.nodes.at(0) : c.ref_node;
  run["eps_cutoff"] = c.eps_cutoff;
  run["eps_encode"] = c.eps_encode;
  run["dedupe_tol"] = c.dedupe_tol;
  run["rank_tol"] = c.rank_tol;
  run["zero_tol"] = c.zero_tol;
  run["energy_tol"] = c.energy_tol;
  run["p"] = c.p;
  run["n_trials"] = c.n_trials;
  run["seed"] = c.seed;
  run["pca_rank"] = d.rank;
  run["columns"] = d.num_columns();
  run["dropped"] = d.dropped.size();
  run["bottom_up_rounds"] = res.bottom.rounds.size();
  run["sources"] = res.basis.sources;
  run["empty_rows"] = res.codes.empty_rows;
  run["empty_columns"] = res.codes.empty_columns.size();
  open_out(out / "run.json") << run.dump(2) << "\n";

  std::cout << "working matrix: (" << d.rank << "," << d.num_columns() << ") from " << panel.num_nodes() << " nodes, "
            << d.dropped.size() << " congestion-free intervals dropped\n";
  for (const auto& r : res.bottom.rounds) std::cout << format_round(r) << "\n";
  std::cout << "basis: " << res.basis.B.cols() << " vectors (" << res.bottom.basis.size() << " bottom-up, "
            << res.top_basis.size() << " top-down)\n";
  if (!res.codes.empty_rows.empty()) std::cout << "warning: " << res.codes.empty_rows.size() << " basis row(s) never active\n";
  if (!res.codes.empty_columns.empty())
    std::cout << "warning: " << res.codes.empty_columns.size() << " interval(s) decoded without congestion\n";
  std::printf("seconds: preprocess %.4f bottom-up %.4f top-down %.4f assemble %.4f encode %.4f\n",
              res.times.preprocess, res.times.bottom_up, res.times.top_down, res.times.assemble, res.times.encode);
  return kExitOk;
}

struct CodesFile {
  std::vector<std::string> stamps;
  std::vector<std::string> labels;
  CodeMatrix bits;
};

CodesFile read_codes(const fs::path& p) {
  CsvTable t = read_csv_file(p.string());
  CodesFile cf;
  cf.labels.assign(t.header.begin() + 1, t.header.end());
  cf.bits = CodeMatrix::Zero(static_cast<Eigen::Index>(cf.labels.size()), static_cast<Eigen::Index>(t.rows.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    cf.stamps.push_back(t.rows[r].at(0));
    for (std::size_t j = 0; j < cf.labels.size(); ++j) cf.bits(j, r) = t.rows[r].at(j + 1) == "1";
  }
  return cf;
}

void require(const fs::path& p) {
  if (!fs::exists(p)) throw std::runtime_error("missing artifact " + p.string() + " (run identify first)");
}

int cmd_evaluate(const Config& c) {
  fs::path out(c.out_dir);
  for (const char* f : {"codes.csv", "intervals.csv", "basis.csv", "run.json"}) require(out / f);
  CodesFile codes = read_codes(out / "codes.csv");
  CsvTable iv = read_csv_file((out / "intervals.csv").string());
  CsvTable tr = read_csv_file(c.truth_path);
  int ci = tr.column("interval"), cl = tr.column("line_id"), cc = tr.column("congested");
  if (ci < 0 || cl < 0 || cc < 0) throw std::invalid_argument("truth csv needs interval, line_id, congested");

  std::set<std::string> panel_stamps, truth_stamps;
  for (const auto& r : iv.rows) panel_stamps.insert(r.at(0));
  std::vector<std::string> lines;
  std::map<std::string, int> line_at;
  std::map<std::string, std::set<int>> active;  // stamp -> congested line slots
  for (const auto& r : tr.rows) {
    truth_stamps.insert(r.at(ci));
    if (!line_at.count(r.at(cl))) {
      line_at[r.at(cl)] = static_cast<int>(lines.size());
      lines.push_back(r.at(cl));
    }
    if (r.at(cc) == "1") active[r.at(ci)].insert(line_at[r.at(cl)]);
  }
  std::vector<std::string> unmatched;
  for (const auto& s : truth_stamps)
    if (!panel_stamps.count(s)) unmatched.push_back(s + " (truth only)");
  for (const auto& s : panel_stamps)
    if (!truth_stamps.count(s)) unmatched.push_back(s + " (identify only)");
  if (!unmatched.empty()) {
    std::string msg = "interval misalignment, " + std::to_string(unmatched.size()) + " unmatched:";
    for (std::size_t k = 0; k < std::min<std::size_t>(unmatched.size(), 10); ++k) msg += " " + unmatched[k];
    throw std::invalid_argument(msg);
  }

  // Evaluate on retained intervals plus any truly congested one the filter dropped.
  std::vector<std::string> cols = codes.stamps;
  std::set<std::string> in_codes(cols.begin(), cols.end());
  for (const auto& [s, set] : active)
    if (!set.empty() && !in_codes.count(s)) cols.push_back(s);
  std::set<int> ever_set;
  for (const auto& s : cols)
    if (active.count(s)) ever_set.insert(active[s].begin(), active[s].end());
  std::vector<int> ever(ever_set.begin(), ever_set.end());

  const Eigen::Index M = static_cast<Eigen::Index>(cols.size());
  CodeMatrix truth = CodeMatrix::Zero(static_cast<Eigen::Index>(ever.size()), M);
  CodeMatrix hat = CodeMatrix::Zero(codes.bits.rows(), M);
  for (Eigen::Index t = 0; t < M; ++t) {
    for (std::size_t j = 0; j < ever.size(); ++j) truth(j, t) = active.count(cols[t]) && active[cols[t]].count(ever[j]);
    if (t < codes.bits.cols()) hat.col(t) = codes.bits.col(t);
  }

  RowMatch match;
  if (!c.case_path.empty()) {
    NetworkCase net = read_case(c.case_path);
    PtdfMatrix ptdf = build_ptdf(net);
    CsvTable bt = read_csv_file((out / "basis.csv").string());
    std::ifstream rj(out / "run.json");
    json run = json::parse(rj);
    std::string ref = run.value("ref_node", std::string());
    bool lossy = run.value("mode", std::string("lossless")) == "lossy";
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(bt.rows.size()), static_cast<Eigen::Index>(bt.header.size() - 1));
    Eigen::MatrixXd lc(basis.rows(), static_cast<Eigen::Index>(ever.size()));
    int ref_bus = lossy ? net.bus_index(ref) : -1;
    for (std::size_t i = 0; i < bt.rows.size(); ++i) {
      for (Eigen::Index j = 0; j < basis.cols(); ++j) basis(i, j) = std::stod(bt.rows[i].at(j + 1));
      int bus = net.bus_index(bt.rows[i].at(0));
      if (bus < 0) throw std::invalid_argument("basis node " + bt.rows[i].at(0) + " is not a bus of the case");
      for (std::size_t k = 0; k < ever.size(); ++k) {
        int line = net.line_index(lines[ever[k]]);
        if (line < 0) throw std::invalid_argument("truth line " + lines[ever[k]] + " is not in the case");
        lc(i, k) = ptdf.T(line, bus) - (ref_bus >= 0 ? ptdf.T(line, ref_bus) : 0.0);
      }
    }
    match = match_rows_ptdf(basis, lc);
  } else {
    match = match_rows_hamming(hat, truth);
  }
  MiscodeReport rep = miscode(hat, truth, match);

  // Recovered rows reordered to truth order for the frequency table.
  CodeMatrix aligned = CodeMatrix::Zero(truth.rows(), static_cast<Eigen::Index>(codes.stamps.size()));
  for (std::size_t i = 0; i < match.truth_row.size(); ++i)
    if (match.truth_row[i] >= 0) aligned.row(match.truth_row[i]) = codes.bits.row(i);
  auto freq = status_frequency(aligned);

  std::ostringstream r;
  r << "intervals evaluated: " << M << "\n";
  r << "true lines: " << ever.size() << ", recovered rows: " << codes.bits.rows()
    << (rep.k_mismatch ? " (count mismatch, unmatched rows scored all-wrong)" : "") << "\n";
  r << "matching by " << match.by << (match.tie ? " (tie broken by lower line index)" : "") << "\n";
  for (std::size_t i = 0; i < match.truth_row.size(); ++i) {
    r << "  " << codes.labels[i] << " -> ";
    if (match.truth_row[i] < 0) r << "unmatched\n";
    else r << lines[ever[match.truth_row[i]]] << " score " << match.score[i] << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f%%", 100.0 * rep.total);
  r << "total miscode: " << buf << " (" << rep.mismatches << " of " << long(rep.k_eval) * M << ")\n";
  for (std::size_t j = 0; j < ever.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.4f%%", 100.0 * rep.per_row[j]);
    r << "  line " << lines[ever[j]] << ": " << buf << "\n";
  }
  r << "status frequency:\n";
  for (const auto& f : freq) {
    r << "  (";
    for (std::size_t j = 0; j < f.code.size(); ++j) r << (j ? "," : "") << int(f.code[j]);
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * f.share);
    r << ") " << f.count << " " << buf << "\n";
  }
  open_out(out / "report.txt") << r.str();
  {
    auto f = open_out(out / "frequency.csv");
    for (int j : ever) f << lines[j] << ",";
    f << "count,share\n";
    for (const auto& fr : freq) {
      for (auto b : fr.code) f << int(b) << ",";
      f << fr.count << "," << format_double(fr.share) << "\n";
    }
  }
  std::cout << r.str();
  return kExitOk;
}

int cmd_report(const Config& c) {
  fs::path out(c.out_dir);
  for (const char* f : {"codes.csv", "working.csv", "run.json"}) require(out / f);
  CodesFile codes = read_codes(out / "codes.csv");
  {
    auto f = open_out(out / "blocks.csv");
    f << "row";
    for (const auto& s : codes.stamps) f << "," << s;
    f << "\n";
    for (Eigen::Index j = 0; j < codes.bits.rows(); ++j) {
      f << codes.labels[j];
      for (Eigen::Index t = 0; t < codes.bits.cols(); ++t) f << "," << int(codes.bits(j, t));
      f << "\n";
    }
  }
  CsvTable wt = read_csv_file((out / "working.csv").string());
  Eigen::MatrixXd X(static_cast<Eigen::Index>(wt.rows.size()), static_cast<Eigen::Index>(wt.header.size() - 1));
  for (std::size_t i = 0; i < wt.rows.size(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = std::stod(wt.rows[i].at(j + 1));
  std::ifstream rj(out / "run.json");
  json run = json::parse(rj);
  BottomUpOptions bo;
  bo.eps_cutoff = run.value("eps_cutoff", 0.005);
  bo.rank_tol = run.value("rank_tol", 1e-6);
  bo.zero_tol = run.value("zero_tol", 1e-6);
  bo.seed = derive_seed(run.value("seed", std::uint64_t{1}), "bottom-up");
  bo.keep_round_data = true;
  BottomUpResult bu = bottom_up_search(X, bo);
  for (const auto& r : bu.rounds) {
    Eigen::MatrixXd A = cutoff(affinity(r.data), bo.eps_cutoff);
    std::vector<int> order(A.rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r.labels[a] < r.labels[b]; });
    auto f = open_out(out / ("affinity_round" + std::to_string(r.round) + ".csv"));
    f << "label";
    for (int o : order) f << "," << r.labels[o] + 1;
    f << "\n";
    for (int a : order) {
      f << r.labels[a] + 1;
      for (int b : order) f << "," << int(A(a, b));
      f << "\n";
    }
  }
  std::cout << "blocks.csv: " << codes.bits.rows() << " rows x " << codes.bits.cols() << " intervals\n";
  std::cout << "affinity grids: " << bu.rounds.size() << " round(s)\n";
  return kExitOk;
}

int cmd_convert(const Config& c) {
  std::ifstream in(c.matpower_path);
  if (!in) throw std::runtime_error("cannot open " + c.matpower_path);
  NetworkCase net = convert_matpower(in, fs::path(c.matpower_path).stem().string());
  if (c.case_out.empty()) write_case(std::cout, net);
  else {
    auto f = open_out(c.case_out);
    write_case(f, net);
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Congestion status identification from published LMP data"};
  app.set_config("--config", "", "Options file (TOML/INI); command-line flags win");
  app.require_subcommand(1);
  Config c;

  auto common_search = [&](CLI::App* s) {
    s->add_option("--mode", c.mode, "lossless or lossy")->check(CLI::IsMember({"lossless", "lossy"}));
    s->add_option("--ref-node", c.ref_node, "Node subtracted in lossy mode (default: first node)");
    s->add_option("--eps-cutoff", c.eps_cutoff, "Affinity cutoff epsilon");
    s->add_option("--eps-encode", c.eps_encode, "Relative encoding threshold");
    s->add_option("--p", c.p, "Hyperplane inlier fraction");
    s->add_option("--n-trials", c.n_trials, "Random-sampling trials (0 = from failure bound)");
    s->add_option("--seed", c.seed, "Root seed");
    s->add_option("--rank-tol", c.rank_tol, "Relative singular-value cutoff for numerical rank");
    s->add_option("--zero-tol", c.zero_tol, "Residual columns below this times the median norm are dropped");
    s->add_option("--energy-tol", c.energy_tol, "PCA discards at most this fraction of energy");
    s->add_option("--filter-tol", c.filter_tol, "Intervals with max |MCC| at or below this are uncongested");
    s->add_option("--inlier-tol", c.inlier_tol, "Relative distance for a hyperplane inlier");
    s->add_option("--depth-limit", c.depth_limit, "Top-down tree depth cap (0 = twice the dimension)");
  };

  auto* sim = app.add_subcommand("simulate", "Simulate market clearings and write lmp.csv and truth.csv");
  sim->add_option("--case", c.case_path, "Case file")->required()->check(CLI::ExistingFile);
  sim->add_option("--mode", c.mode, "lossless or lossy")->check(CLI::IsMember({"lossless", "lossy"}));
  sim->add_option("--intervals", c.intervals, "Number of intervals M");
  sim->add_option("--noise", c.noise, "Relative std of load and offer noise");
  sim->add_option("--seed", c.seed, "Root seed");
  sim->add_option("--out", c.out_dir, "Output directory");

  auto* ident = app.add_subcommand("identify", "Recover basis vectors and congestion codes");
  ident->add_option("--lmp", c.lmp_path, "LMP panel CSV")->required()->check(CLI::ExistingFile);
  ident->add_option("--out", c.out_dir, "Output directory");
  ident->add_flag("--spp", c.spp, "Use the SPP export column names");
  ident->add_flag("--forward-fill", c.forward_fill, "Fill gaps from the previous interval");
  ident->add_option("--dedupe-tol", c.dedupe_tol, "Merge nodes whose series agree within this ($/MWh)");
  common_search(ident);

  auto* eval = app.add_subcommand("evaluate", "Score identify output against truth");
  eval->add_option("--truth", c.truth_path, "truth.csv")->required()->check(CLI::ExistingFile);
  eval->add_option("--out", c.out_dir, "Directory holding identify output");
  eval->add_option("--case", c.case_path, "Case file; enables PTDF-based row matching");

  auto* rep = app.add_subcommand("report", "Write plot-ready block and affinity grids");
  rep->add_option("--out", c.out_dir, "Directory holding identify output");

  auto* conv = app.add_subcommand("convert", "Convert a MATPOWER-style case");
  conv->add_option("input", c.matpower_path, "MATPOWER .m file")->required();
  conv->add_option("-o,--output", c.case_out, "Case file to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*sim) return cmd_simulate(c);
    if (*ident) return cmd_identify(c);
    if (*eval) return cmd_evaluate(c);
    if (*rep) return cmd_report(c);
    if (*conv) return cmd_convert(c);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const RankDeficitError& e) {
    std::cerr << "rank deficit: " << e.what() << "\n";
    return kExitRankDeficit;
  } catch (const NoCongestionError& e) {
    std::cerr << e.what() << "\n";
    return kExitNoCongestion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lmps
