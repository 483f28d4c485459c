#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <random>

#include "cdlab/jacobi_svd.hpp"

using cdlab::Matrix;

namespace {

Matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(gen);
  return m;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  return e;
}

}  // namespace

TEST(JacobiSvd, SingularValuesMatchEigen) {
  std::mt19937_64 gen(81);
  for (auto [rows, cols] : {std::pair{6, 7}, std::pair{7, 6}, std::pair{8, 10}, std::pair{3, 3}, std::pair{1, 5}}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto m = random_matrix(gen, rows, cols);
      const auto s = cdlab::singular_values(m);
      const Eigen::VectorXd ref = Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(m)).singularValues();
      ASSERT_EQ(s.size(), static_cast<std::size_t>(ref.size()));
      for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], ref(static_cast<Eigen::Index>(i)), 1e-12);
    }
  }
}

TEST(JacobiSvd, RightVectorsDiagonalize) {
  std::mt19937_64 gen(82);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_matrix(gen, 7, 5);
    const auto svd = cdlab::jacobi_svd(m);
    const Matrix av = m * svd.right_vectors;
    // Columns of A V are orthogonal with norms sigma_k.
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        double dot = 0.0;
        for (std::size_t r = 0; r < 7; ++r) dot += av(r, i) * av(r, j);
        const double expect = i == j ? svd.singular_values[i] * svd.singular_values[i] : 0.0;
        EXPECT_NEAR(dot, expect, 1e-12);
      }
  }
}

TEST(JacobiSvd, WideInputGivesLeftVectors) {
  std::mt19937_64 gen(83);
  const auto m = random_matrix(gen, 6, 7);
  const auto svd = cdlab::jacobi_svd(m);
  ASSERT_EQ(svd.right_vectors.rows(), 6u);
  // u_6^T A has norm sigma_6.
  double norm = 0.0;
  for (std::size_t c = 0; c < 7; ++c) {
    double v = 0.0;
    for (std::size_t r = 0; r < 6; ++r) v += svd.right_vectors(r, 5) * m(r, c);
    norm += v * v;
  }
  EXPECT_NEAR(std::sqrt(norm), svd.singular_values[5], 1e-12);
}

TEST(JacobiSvd, NumericRank) {
  std::mt19937_64 gen(84);
  const auto a = random_matrix(gen, 6, 3), b = random_matrix(gen, 3, 7);
  EXPECT_EQ(cdlab::numeric_rank(a * b), 3u);
  EXPECT_EQ(cdlab::numeric_rank(Matrix(4, 4)), 0u);
  EXPECT_EQ(cdlab::numeric_rank(random_matrix(gen, 6, 7)), 6u);
}

TEST(SolveLinear, MatchesEigen) {
  std::mt19937_64 gen(85);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(gen, 8, 8);
    std::vector<double> b(8);
    Eigen::VectorXd eb(8);
    for (int i = 0; i < 8; ++i) eb(i) = b[static_cast<std::size_t>(i)] = std::uniform_real_distribution<>(-1, 1)(gen);
    ASSERT_TRUE(cdlab::solve_linear(a, b));
    const Eigen::VectorXd x = to_eigen(a).fullPivLu().solve(eb);
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(b[static_cast<std::size_t>(i)], x(i), 1e-9);
  }
  std::vector<double> b(2, 1.0);
  EXPECT_FALSE(cdlab::solve_linear(Matrix(2, 2), b));
}
