#include <doctest.h>

#include <random>
#include <sstream>

#include "lmps/errors.hpp"
#include "lmps/panel.hpp"

using namespace lmps;

namespace {

LmpPanel read(const std::string& text, IngestOptions opt = {}) {
  std::istringstream in(text);
  return read_lmp_csv(in, opt);
}

LmpPanel from_matrix(const Eigen::MatrixXd& m) {
  LmpPanel p;
  for (Eigen::Index i = 0; i < m.rows(); ++i) p.nodes.push_back("n" + std::to_string(i));
  for (Eigen::Index j = 0; j < m.cols(); ++j) p.timestamps.push_back("t" + std::to_string(j));
  p.congestion = m;
  return p;
}

}  // namespace

TEST_SUITE("panel") {
  TEST_CASE("long-format csv becomes a dense panel") {
    LmpPanel p = read(
        "node,timestamp,mcc\n"
        "B,2,0.5\nA,1,1\nA,2,2\nB,1,-1\nA,3,3\nB,3,0\n");
    REQUIRE(p.num_nodes() == 2);
    REQUIRE(p.num_intervals() == 3);
    CHECK(p.nodes[0] == "A");
    CHECK(p.congestion(0, 2) == 3.0);
    CHECK(p.congestion(1, 1) == 0.5);
    CHECK(p.loss.size() == 0);
  }

  TEST_CASE("duplicates: identical rows collapse, conflicting rows fail") {
    LmpPanel p = read("node,timestamp,mcc\nA,1,1\nA,1,1\n");
    CHECK(p.num_nodes() == 1);
    CHECK_THROWS_AS(read("node,timestamp,mcc\nA,1,1\nA,1,2\n"), std::invalid_argument);
  }

  TEST_CASE("gaps fail unless forward-filled") {
    const char* text = "node,timestamp,mcc\nA,1,1\nA,2,\nA,3,4\nB,1,0\nB,2,0\nB,3,0\n";
    CHECK_THROWS_AS(read(text), std::invalid_argument);
    IngestOptions o;
    o.forward_fill = true;
    LmpPanel p = read(text, o);
    CHECK(p.congestion(0, 1) == 1.0);
  }

  TEST_CASE("node ids order numerically") {
    LmpPanel p = read("node,timestamp,mcc\n10,1,0\n9,1,0\n100,1,0\nX,1,0\n");
    REQUIRE(p.num_nodes() == 4);
    CHECK(p.nodes[0] == "9");
    CHECK(p.nodes[1] == "10");
    CHECK(p.nodes[2] == "100");
  }

  TEST_CASE("SPP export columns") {
    const char* text =
        "Interval,GMTIntervalEnd,Settlement Location,Pnode,LMP,MLC,MCC,MEC\n"
        "01/01/2020 00:05:00,2020-01-01T06:05:00,SETTLE1,NODE_A,21.5,0.5,-1.25,22.25\n"
        "01/01/2020 00:05:00,2020-01-01T06:05:00,SETTLE2,NODE_B,23,0.25,0.5,22.25\n"
        "01/01/2020 00:10:00,2020-01-01T06:10:00,SETTLE1,NODE_A,20,0.1,-2,21.9\n"
        "01/01/2020 00:10:00,2020-01-01T06:10:00,SETTLE2,NODE_B,22.9,0.5,0.5,21.9\n";
    IngestOptions o;
    o.schema = spp_schema();
    LmpPanel p = read(text, o);
    REQUIRE(p.num_nodes() == 2);
    CHECK(p.congestion(0, 0) == -1.25);
    CHECK(p.congestion(0, 1) == -2.0);
    CHECK(p.loss(1, 1) == 0.5);
    CHECK(p.energy(0, 1) == 21.9);

    std::ostringstream out;
    write_lmp_csv(out, p);
    LmpPanel back = read(out.str());
    CHECK(back.nodes == p.nodes);
    CHECK(back.timestamps == p.timestamps);
    CHECK(back.congestion == p.congestion);
    CHECK(back.loss == p.loss);
    CHECK(back.energy == p.energy);

    // The strict schema insists on every component column.
    CHECK_THROWS_AS(read("Pnode,GMTIntervalEnd,MCC\nA,1,0\n", o), std::invalid_argument);
    CHECK_THROWS_AS(read("node,timestamp,lmp\nA,1,0\n"), std::invalid_argument);
  }

  TEST_CASE("dedupe merges identical nodes only") {
    Eigen::MatrixXd m(3, 4);
    m << 1, 2, 3, 4,  //
        1, 2, 3, 4,   //
        1, 2, 3.2, 4;
    LmpPanel p = dedupe_nodes(from_matrix(m), 0.1);
    REQUIRE(p.num_nodes() == 2);
    CHECK(p.aliases.at("n1") == "n0");
    CHECK(p.nodes[1] == "n2");
  }

  TEST_CASE("elimination removes a constant shift") {
    Eigen::MatrixXd tmu(3, 2);
    tmu << 0, 0, 1.5, -2, -0.5, 4;
    Eigen::MatrixXd shifted = tmu;
    shifted.col(0).array() -= 7.0;
    shifted.col(1).array() += 3.0;
    LmpPanel a = eliminate_loss_term(from_matrix(shifted), "n0");
    CHECK((a.congestion - tmu).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(a.congestion.row(0).isZero());
    // Lossless data with a zero reference row is unchanged.
    LmpPanel b = eliminate_loss_term(from_matrix(tmu), "n0");
    CHECK(b.congestion == tmu);
    CHECK_THROWS_AS(eliminate_loss_term(from_matrix(tmu), "nope"), std::invalid_argument);
  }

  TEST_CASE("filter drops congestion-free intervals") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::MatrixXd m(5, 100);
    for (Eigen::Index j = 0; j < 100; ++j)
      for (Eigen::Index i = 0; i < 5; ++i) m(i, j) = j % 10 == 3 ? 0.0 : N(rng);
    CongestionMatrix cm = filter_congested(from_matrix(m), 1e-4);
    CHECK(cm.num_columns() == 90);
    CHECK(cm.dropped.size() == 10);
    CHECK(cm.dropped[0] == 3);
    CHECK(cm.timestamps[3] == "t4");
    try {
      (void)filter_congested(from_matrix(Eigen::MatrixXd::Zero(3, 4)), 1e-4);
      FAIL("expected NoCongestionError");
    } catch (const NoCongestionError& e) {
      CHECK(std::string(e.what()) == "no congestion observed");
    }
  }

  TEST_CASE("PCA keeps the numerical rank") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::MatrixXd B(30, 4), chi(4, 576);
    for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = N(rng);
    for (Eigen::Index i = 0; i < chi.size(); ++i) chi.data()[i] = N(rng);
    Eigen::MatrixXd X = B * chi;
    CongestionMatrix cm = pca_reduce(filter_congested(from_matrix(X)), 1e-8);
    CHECK(cm.rank == 4);
    CHECK(cm.X.rows() == 4);
    CHECK((cm.projection * cm.projection.transpose() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
    CHECK((cm.projection.transpose() * cm.X - X).norm() / X.norm() < 1e-12);

    // Full-rank k x M input: coordinates change only by a rotation.
    Eigen::MatrixXd small = chi.leftCols(50);
    CongestionMatrix s = pca_reduce(filter_congested(from_matrix(small)), 1e-8);
    CHECK(s.rank == 4);
    CHECK((s.X.transpose() * s.X - small.transpose() * small).norm() < 1e-9 * small.squaredNorm());

    // Rank 2 plus 1e-8 noise.
    Eigen::MatrixXd noisy = B.leftCols(2) * chi.topRows(2);
    for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy.data()[i] += 1e-8 * N(rng);
    CHECK(pca_reduce(filter_congested(from_matrix(noisy)), 1e-6).rank == 2);
  }
}
