#include <doctest.h>

#include <cmath>
#include <random>

#include "lmps/bottom_up.hpp"
#include "lmps/spectral.hpp"

using namespace lmps;

namespace {

Eigen::MatrixXd block_graph(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  int at = 0;
  for (int s : sizes) {
    A.block(at, at, s, s).setOnes();
    at += s;
  }
  return A;
}

Eigen::VectorXd random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = N(rng);
  return v.normalized();
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("affinity is the absolute cosine") {
    Eigen::MatrixXd X(2, 4);
    X << 1, 2, 0, 0.5, 0, 0, 3, std::sqrt(3.0) / 2.0;
    Eigen::MatrixXd A = affinity(X);
    CHECK(A(0, 1) == doctest::Approx(1.0));
    CHECK(A(0, 2) == doctest::Approx(0.0));
    CHECK(A(0, 3) == doctest::Approx(0.5));
    X.col(2).setZero();
    CHECK_THROWS_AS(affinity(X), std::invalid_argument);
  }

  TEST_CASE("cutoff") {
    Eigen::MatrixXd A(2, 2);
    A << 0.2, 0.996, 0.994, 0.3;
    Eigen::MatrixXd C = cutoff(A, 0.005);
    CHECK(C(0, 1) == 1.0);
    CHECK(C(1, 0) == 0.0);
    CHECK(C(0, 0) == 1.0);
    CHECK(C(1, 1) == 1.0);
  }

  TEST_CASE("perfect blocks give one cluster each") {
    Eigen::MatrixXd A = block_graph({5, 3, 7, 4});
    ClusterResult r = spectral_cluster(A, 1);
    CHECK(r.K == 4);
    std::vector<int> expect;
    int b = 0;
    for (int s : {5, 3, 7, 4}) expect.insert(expect.end(), s, b++);
    CHECK(r.labels == expect);
  }

  TEST_CASE("edgeless graph gives singletons") {
    ClusterResult r = spectral_cluster(Eigen::MatrixXd::Identity(5, 5), 1);
    CHECK(r.K == 5);
    CHECK(r.labels == std::vector<int>{0, 1, 2, 3, 4});
  }

  TEST_CASE("one spurious edge between two blocks") {
    Eigen::MatrixXd A = block_graph({12, 9});
    A(3, 15) = A(15, 3) = 1.0;
    int count = 0;
    std::vector<int> joined = connected_components(A, &count);
    CHECK(count == 1);
    ClusterResult r = spectral_cluster(A, 7);
    CHECK(r.K == 2);
    CHECK_FALSE(r.shortcut);
    // Oracle: components once the bridging edge is removed.
    Eigen::MatrixXd cut = A;
    cut(3, 15) = cut(15, 3) = 0.0;
    std::vector<int> parts = connected_components(cut, &count);
    REQUIRE(count == 2);
    CHECK(r.labels == parts);
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) CHECK(r.eigenvalues[i] >= r.eigenvalues[i - 1]);
    CHECK(r.eigenvalues.minCoeff() > -1e-9);
    CHECK(r.eigenvalues.maxCoeff() < 2.0 + 1e-9);
  }
}

TEST_SUITE("bottom-up") {
  TEST_CASE("rank-1 cluster with tiny noise is harvested") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::VectorXd v = random_unit(5, rng);
    Eigen::MatrixXd X(5, 100);
    for (int t = 0; t < 100; ++t) {
      X.col(t) = v * (0.5 + t * 0.01);
      for (int i = 0; i < 5; ++i) X(i, t) += 1e-9 * N(rng);
    }
    ClusterResult one;
    one.K = 1;
    one.labels.assign(100, 0);
    HarvestResult h = harvest_rank1(X, one, 1e-6);
    REQUIRE(h.bases.size() == 1);
    CHECK(std::abs(h.bases[0].dot(v)) > 1.0 - 1e-12);
    CHECK(h.residual.empty());
  }

  TEST_CASE("two-dimensional cluster is not harvested") {
    std::mt19937_64 rng(5);
    Eigen::VectorXd a = random_unit(4, rng), b = random_unit(4, rng);
    Eigen::MatrixXd X(4, 40);
    for (int t = 0; t < 40; ++t) X.col(t) = std::cos(0.05 * t) * a + std::sin(0.05 * t) * b;
    ClusterResult one;
    one.K = 1;
    one.labels.assign(40, 0);
    CHECK(harvest_rank1(X, one, 1e-6).bases.empty());
    CHECK(harvest_rank1(X, one, 1e-6, 2, true).bases.empty());
    // With a repeated direction inside, the collinear core is taken.
    X.col(7) = 3.0 * X.col(3);
    HarvestResult h = harvest_rank1(X, one, 1e-6, 2, true);
    REQUIRE(h.bases.size() == 1);
    CHECK(h.harvested_members[0] == std::vector<int>{3, 7});
    CHECK(h.residual.size() == 38);
  }

  TEST_CASE("complement projection") {
    Eigen::MatrixXd B(3, 1);
    B << 1, 0, 0;
    Eigen::MatrixXd X(3, 3);
    X << 2, 0, 1, 0, 3, 1, 0, 4, 0;
    ComplementProjection p = project_complement(X, B, 1e-9);
    CHECK(p.kept == std::vector<int>{1, 2});
    CHECK(p.X.col(0).norm() == doctest::Approx(5.0));
    CHECK((p.frame.transpose() * p.frame - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  }

  TEST_CASE("one-dimensional subspaces are all found in round one") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    Eigen::MatrixXd V(6, 4);
    for (int j = 0; j < 4; ++j) V.col(j) = random_unit(6, rng);
    Eigen::MatrixXd X(6, 80);
    for (int t = 0; t < 80; ++t) X.col(t) = V.col(t % 4) * U(rng);
    BottomUpResult r = bottom_up_search(X, BottomUpOptions{});
    CHECK(r.basis.size() == 4);
    CHECK(r.rounds.size() == 1);
    CHECK(r.residual.cols() == 0);
    for (int j = 0; j < 4; ++j) {
      double best = 0.0;
      for (const auto& b : r.basis.vectors) best = std::max(best, std::abs(b.v.dot(V.col(j))));
      CHECK(best > 1.0 - 1e-9);
    }
  }

  TEST_CASE("every column mixing two directions leaves a basis gap") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    Eigen::VectorXd a = random_unit(5, rng), b = random_unit(5, rng);
    Eigen::MatrixXd X(5, 60);
    for (int t = 0; t < 60; ++t) X.col(t) = U(rng) * a + U(rng) * b;
    BottomUpResult r = bottom_up_search(X, BottomUpOptions{});
    CHECK(r.basis.empty());
    CHECK(r.residual.cols() == 60);
  }

  TEST_CASE("nested statuses resolve over two rounds") {
    // a and c alone; b only with a; d only with a.
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    Eigen::MatrixXd V(8, 4);
    for (int j = 0; j < 4; ++j) V.col(j) = random_unit(8, rng);
    Eigen::MatrixXd X(8, 200);
    for (int t = 0; t < 200; ++t) {
      switch (t % 5) {
        case 0: X.col(t) = U(rng) * V.col(0); break;
        case 1: X.col(t) = U(rng) * V.col(2); break;
        case 2: X.col(t) = U(rng) * V.col(0) + U(rng) * V.col(1); break;
        case 3: X.col(t) = U(rng) * V.col(0) + U(rng) * V.col(3); break;
        default: X.col(t) = U(rng) * V.col(0) + U(rng) * V.col(2); break;
      }
    }
    BottomUpResult r = bottom_up_search(X, BottomUpOptions{});
    REQUIRE(r.rounds.size() == 2);
    CHECK(r.rounds[0].harvested == 2);
    CHECK(r.rounds[1].harvested == 2);
    CHECK(r.residual.cols() == 0);
    // Directions seen alone are recovered exactly; b and d only up to adding a.
    for (int j : {0, 2}) {
      double best = 0.0;
      for (const auto& b : r.basis.vectors) best = std::max(best, std::abs(b.v.dot(V.col(j))));
      CHECK(best > 1.0 - 1e-9);
    }
    for (int j : {1, 3}) {
      Eigen::MatrixXd S(8, 2);
      S << V.col(0), V.col(j);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(S);
      Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(8, 2);
      int inside = 0;
      for (const auto& b : r.basis.vectors)
        if ((b.v - Q * (Q.transpose() * b.v)).norm() < 1e-9 && std::abs(b.v.dot(V.col(0))) < 1.0 - 1e-6) ++inside;
      CHECK(inside == 1);
    }
  }
}
