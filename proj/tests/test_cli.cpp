#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "lmps/cli.hpp"
#include "lmps/csv.hpp"
#include "lmps/dcopf.hpp"
#include "lmps/ptdf.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using lmps::cli_main;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("lmps_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  [[nodiscard]] std::string operator/(const std::string& f) const { return (path / f).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string bus30() { return testing_support::cases_dir() + "/bus30_style.case"; }

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "lmps");
  return cli_main(args);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("interval stamps") {
    CHECK(lmps::interval_stamp(0) == "2008-01-01T00:00:00");
    CHECK(lmps::interval_stamp(13) == "2008-01-01T01:05:00");
    CHECK(lmps::interval_stamp(288 * 59) == "2008-02-29T00:00:00");
    CHECK(lmps::interval_stamp(288 * 366) == "2009-01-01T00:00:00");
  }

  TEST_CASE("simulate, identify, evaluate, report on the 30-bus case") {
    TempDir d("e2e");
    std::string out = d.path.string();
    REQUIRE(run({"simulate", "--case", bus30(), "--out", out, "--seed", "3"}) == 0);
    REQUIRE(run({"identify", "--lmp", d / "lmp.csv", "--out", out, "--seed", "3"}) == 0);
    REQUIRE(run({"evaluate", "--out", out, "--truth", d / "truth.csv", "--case", bus30()}) == 0);
    std::string report = slurp(d / "report.txt");
    CHECK(report.find("total miscode: 0.0000%") != std::string::npos);
    REQUIRE(run({"report", "--out", out}) == 0);
    lmps::CsvTable blocks = lmps::read_csv_file(d / "blocks.csv");
    CHECK(blocks.rows.size() == 4);
    CHECK(blocks.header.size() == 577);
    CHECK(fs::exists(d / "affinity_round1.csv"));
    CHECK(fs::exists(d / "affinity_round2.csv"));
    CHECK_FALSE(fs::exists(d / "affinity_round3.csv"));
    CHECK(fs::exists(d / "codes.csv"));
    CHECK(fs::exists(d / "frequency.csv"));
    CHECK(fs::exists(d / "rounds.log"));
  }

  TEST_CASE("same seed gives byte-identical files") {
    TempDir a("det_a"), b("det_b");
    for (const TempDir* d : {&a, &b}) {
      std::string out = d->path.string();
      REQUIRE(run({"simulate", "--case", bus30(), "--out", out, "--seed", "9", "--intervals", "200"}) == 0);
      REQUIRE(run({"identify", "--lmp", *d / "lmp.csv", "--out", out, "--seed", "9"}) == 0);
      REQUIRE(run({"evaluate", "--out", out, "--truth", *d / "truth.csv"}) == 0);
      REQUIRE(run({"report", "--out", out}) == 0);
    }
    int files = 0;
    for (const auto& e : fs::directory_iterator(a.path)) {
      std::string name = e.path().filename().string();
      CHECK_MESSAGE(slurp(a / name) == slurp(b / name), name);
      ++files;
    }
    CHECK(files >= 12);
  }

  TEST_CASE("one noise-free interval equals the base clearing") {
    TempDir d("one");
    REQUIRE(run({"simulate", "--case", bus30(), "--out", d.path.string(), "--intervals", "1", "--noise", "0"}) == 0);
    lmps::NetworkCase c = lmps::read_case(bus30());
    lmps::NetworkCase base = c;
    for (auto& b : base.buses) b.load *= c.profile.at(0);
    auto sol = lmps::solve_dcopf(base, lmps::build_ptdf(base), lmps::MarketMode::Lossless);
    lmps::CsvTable t = lmps::read_csv_file(d / "lmp.csv");
    REQUIRE(t.rows.size() == static_cast<std::size_t>(c.num_buses()));
    for (const auto& r : t.rows) {
      int i = c.bus_index(r[0]);
      CHECK(std::stod(r[2]) + std::stod(r[3]) + std::stod(r[4]) == doctest::Approx(sol.lmp[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("exit codes") {
    TempDir d("codes");
    std::string out = d.path.string();

    // 2: unservable load.
    std::string text = slurp(bus30());
    text.replace(text.find("\n2 21.7\n"), 8, "\n2 9000\n");
    std::ofstream(d / "heavy.case") << text;
    CHECK(run({"simulate", "--case", d / "heavy.case", "--out", out}) == 2);

    // 4: nothing congested.
    {
      std::ofstream f(d / "flat.csv");
      f << "node,timestamp,mcc\n";
      for (int t = 0; t < 5; ++t) f << "A," << t << ",0\nB," << t << ",0\n";
    }
    CHECK(run({"identify", "--lmp", d / "flat.csv", "--out", out}) == 4);

    REQUIRE(run({"simulate", "--case", testing_support::cases_dir() + "/bus118_style.case", "--out", out,
                 "--intervals", "120"}) == 0);

    // 1: bad arguments, missing artifacts, misaligned truth.
    CHECK(run({"identify", "--lmp", d / "lmp.csv", "--out", out, "--p", "1.5"}) == 1);
    CHECK(run({"bogus"}) == 1);
    CHECK(run({"--help"}) == 0);
    TempDir empty("empty");
    CHECK(run({"report", "--out", empty.path.string()}) == 1);
    REQUIRE(run({"identify", "--lmp", d / "lmp.csv", "--out", out}) == 0);
    std::string truth = slurp(d / "truth.csv");
    std::ofstream(d / "truth_extra.csv") << truth << "2099-01-01T00:00:00,L199,0,0\n";
    CHECK(run({"evaluate", "--out", out, "--truth", d / "truth_extra.csv"}) == 1);
    CHECK(run({"evaluate", "--out", out, "--truth", d / "truth.csv"}) == 0);
  }

  TEST_CASE("config file values yield to flags") {
    TempDir d("cfg");
    std::string out = d.path.string();
    REQUIRE(run({"simulate", "--case", bus30(), "--out", out, "--intervals", "60"}) == 0);
    std::ofstream(d / "run.toml") << "[identify]\neps-encode = 0.002\nseed = 11\n";
    REQUIRE(run({"--config", d / "run.toml", "identify", "--lmp", d / "lmp.csv", "--out", out, "--seed", "5"}) == 0);
    std::string js = slurp(d / "run.json");
    CHECK(js.find("\"eps_encode\": 0.002") != std::string::npos);
    CHECK(js.find("\"seed\": 5") != std::string::npos);
  }

  TEST_CASE("matpower conversion writes a loadable case") {
    TempDir d("conv");
    std::ofstream(d / "m.m") << "mpc.bus = [\n1 3 0 0\n2 1 30 0\n];\nmpc.gen = [\n1 0 0 0 0 1 100 1 80 0\n];\n"
                                "mpc.branch = [\n1 2 0 0.1 0 50 0 0 0 0 1\n];\n";
    REQUIRE(run({"convert", d / "m.m", "-o", d / "m.case"}) == 0);
    lmps::NetworkCase c = lmps::read_case(d / "m.case");
    CHECK(c.num_buses() == 2);
    CHECK(c.lines.at(0).capacity == 50.0);
  }
}
