// Serial reference against OpenMP for each hot loop.
#include <benchmark/benchmark.h>

#include <random>

#include "lmps/kernels.hpp"

namespace k = lmps::kernels;

namespace {

Eigen::MatrixXd gaussian(int rows, int cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  Eigen::MatrixXd X(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) X(i, j) = N(rng);
  return X;
}

Eigen::MatrixXd unit_columns(int rows, int cols) {
  Eigen::MatrixXd X = gaussian(rows, cols, 1);
  X.colwise().normalize();
  return X;
}

template <bool Parallel>
void abs_gram(benchmark::State& st) {
  Eigen::MatrixXd X = unit_columns(6, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? k::abs_gram(X) : k::abs_gram_serial(X));
}

template <bool Parallel>
void inliers(benchmark::State& st) {
  Eigen::MatrixXd X = gaussian(8, static_cast<int>(st.range(0)), 2);
  Eigen::VectorXd norms = X.colwise().norm().transpose();
  Eigen::VectorXd n = Eigen::VectorXd::Unit(8, 0);
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? k::inliers(X, norms, n, 0.1) : k::inliers_serial(X, norms, n, 0.1));
}

template <bool Parallel>
void rs_trials(benchmark::State& st) {
  Eigen::MatrixXd X = gaussian(6, 2000, 3);
  Eigen::VectorXd norms = X.colwise().norm().transpose();
  const long count = st.range(0);
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? k::rs_trials(X, norms, 7, 0, count, 1e-6, 10)
                                      : k::rs_trials_serial(X, norms, 7, 0, count, 1e-6, 10));
}

template <bool Parallel>
void kmeans(benchmark::State& st) {
  Eigen::MatrixXd P = gaussian(static_cast<int>(st.range(0)), 8, 4);
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? k::kmeans(P, 8, 10, 5) : k::kmeans_serial(P, 8, 10, 5));
}

}  // namespace

BENCHMARK(abs_gram<false>)->Arg(500)->Arg(2000);
BENCHMARK(abs_gram<true>)->Arg(500)->Arg(2000);
BENCHMARK(inliers<false>)->Arg(10000)->Arg(100000);
BENCHMARK(inliers<true>)->Arg(10000)->Arg(100000);
BENCHMARK(rs_trials<false>)->Arg(1024);
BENCHMARK(rs_trials<true>)->Arg(1024);
BENCHMARK(kmeans<false>)->Arg(500)->Arg(2000);
BENCHMARK(kmeans<true>)->Arg(500)->Arg(2000);

BENCHMARK_MAIN();
