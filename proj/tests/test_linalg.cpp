#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eggd/linalg.hpp"
#include "test_support.hpp"

namespace eggd {
namespace {

using testing::random_matrix;
using testing::random_orthonormal;

// Entry-wise centering formula evaluated directly.
Matrix centering_oracle(const Matrix& d) {
  const Index n = d.rows();
  const Vector row_mean = d.rowwise().mean();
  const Vector col_mean = d.colwise().mean().transpose();
  const double all_mean = d.mean();
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = -0.5 * (d(i, j) - row_mean(i) - col_mean(j) + all_mean);
  }
  return g;
}

Matrix random_symmetric_distances(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
  }
  return d;
}

// Largest principal-angle sine between two orthonormal column spaces.
double subspace_gap(const Matrix& a, const Matrix& b) {
  const Matrix pa = a * a.transpose();
  const Matrix pb = b * b.transpose();
  return (pa - pb).norm();
}

Matrix with_spectrum(Index m, Index n, const Vector& sigma, std::mt19937_64& rng) {
  const Matrix u = random_orthonormal(m, sigma.size(), rng);
  const Matrix v = random_orthonormal(n, sigma.size(), rng);
  return u * sigma.asDiagonal() * v.transpose();
}

TEST(DoubleCenter, TwoPointExample) {
  Matrix d(2, 2);
  d << 0, 2, 2, 0;
  Matrix expected(2, 2);
  expected << 0.5, -0.5, -0.5, 0.5;
  EXPECT_TRUE(double_center(d).values.isApprox(expected, 1e-15));
}

TEST(DoubleCenter, ZerosStayZero) {
  EXPECT_TRUE(double_center(Matrix::Zero(5, 5)).values.isZero(0.0));
}

TEST(DoubleCenter, RowAndColumnSumsVanish) {
  std::mt19937_64 rng(31);
  const Matrix d = random_symmetric_distances(50, rng);
  const Matrix g = double_center(d).values;
  EXPECT_LE(g.rowwise().sum().cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE(g.colwise().sum().cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((g - g.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((g - centering_oracle(d)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DoubleCenter, RejectsNonFinite) {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 2) = d(2, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW((void)double_center(d), InvalidInput);
  d(0, 2) = d(2, 0) = std::nan("");
  EXPECT_THROW((void)double_center(d), InvalidInput);
}

TEST(QrOrthonormalize, OrthonormalInputKeepsColumnsUpToSign) {
  std::mt19937_64 rng(32);
  const Matrix y = random_orthonormal(30, 6, rng);
  const Orthonormalized out = qr_orthonormalize(y);
  ASSERT_EQ(out.q.cols(), 6);
  for (Index j = 0; j < 6; ++j) {
    const double sign = out.q.col(j).dot(y.col(j)) < 0 ? -1.0 : 1.0;
    EXPECT_LE((sign * out.q.col(j) - y.col(j)).norm(), 1e-12);
  }
}

TEST(QrOrthonormalize, SingleColumnNormalized) {
  Matrix y(2, 1);
  y << 3, 4;
  const Orthonormalized out = qr_orthonormalize(y);
  EXPECT_NEAR(std::abs(out.q(0, 0)), 0.6, 1e-15);
  EXPECT_NEAR(std::abs(out.q(1, 0)), 0.8, 1e-15);
  EXPECT_GT(out.q(0, 0) * out.q(1, 0), 0.0);
}

TEST(QrOrthonormalize, RandomTallMatrix) {
  std::mt19937_64 rng(33);
  const Matrix y = random_matrix(100, 10, rng);
  const Orthonormalized out = qr_orthonormalize(y);
  ASSERT_EQ(out.q.cols(), 10);
  EXPECT_EQ(out.dropped, 0);
  EXPECT_LE((out.q.transpose() * out.q - Matrix::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((out.q * (out.q.transpose() * y) - y).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(QrOrthonormalize, DropsDependentColumns) {
  std::mt19937_64 rng(34);
  Matrix y = random_matrix(40, 5, rng);
  y.col(3) = 2.0 * y.col(0) - y.col(1);
  const Orthonormalized out = qr_orthonormalize(y);
  EXPECT_EQ(out.q.cols(), 4);
  EXPECT_EQ(out.dropped, 1);
  EXPECT_LE((out.q * (out.q.transpose() * y) - y).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ExactSvd, Diagonal) {
  Matrix a(2, 2);
  a << 1, 0, 0, 3;
  const SingularTriplets s = exact_svd(a);
  EXPECT_NEAR(s.values(0), 3.0, 1e-15);
  EXPECT_NEAR(s.values(1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.right(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.right(0, 1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.left(1, 0)), 1.0, 1e-15);
}

TEST(ExactSvd, RankOne) {
  Vector u(3);
  u << 1, 2, 2;
  Vector v(2);
  v << 3, 4;
  const Matrix a = (u / 3.0) * (v / 5.0).transpose();
  const SingularTriplets s = exact_svd(a);
  EXPECT_NEAR(s.values(0), 1.0, 1e-12);
  EXPECT_NEAR(s.values(1), 0.0, 1e-12);
}

TEST(ExactSvd, ReconstructsRandomMatrix) {
  std::mt19937_64 rng(35);
  const Matrix a = random_matrix(20, 12, rng);
  const SingularTriplets s = exact_svd(a);
  const Matrix back = s.left * s.values.asDiagonal() * s.right.transpose();
  EXPECT_LE((back - a).norm(), 1e-10);
  for (Index i = 1; i < s.count(); ++i) EXPECT_GE(s.values(i - 1), s.values(i));
}

TEST(ExactSvd, RejectsNonFinite) {
  Matrix a = Matrix::Ones(3, 3);
  a(1, 1) = std::nan("");
  EXPECT_THROW((void)exact_svd(a), InvalidInput);
}

TEST(Rsvd, ExactRankMatchesOracle) {
  std::mt19937_64 rng(36);
  for (Index r : {1, 4, 9}) {
    Vector sigma(r);
    for (Index i = 0; i < r; ++i) sigma(i) = 20.0 / double(i + 1);
    const Matrix a = with_spectrum(60, 45, sigma, rng);
    const SingularTriplets oracle = exact_svd(a);
    for (std::uint64_t seed : {1ULL, 99ULL}) {
      const SingularTriplets s = rsvd(a, r + 2, 5, RandomSeed{seed});
      ASSERT_GE(s.count(), r);
      for (Index i = 0; i < r; ++i) {
        EXPECT_NEAR(s.values(i), oracle.values(i), 1e-8 * oracle.values(i));
        EXPECT_NEAR((a * s.right.col(i)).norm(), s.values(i), 1e-6 * s.values(i));
      }
      EXPECT_LE(subspace_gap(s.right.leftCols(r), oracle.right.leftCols(r)), 1e-6);
      const Matrix q = s.left.leftCols(r);
      EXPECT_LE((q * (q.transpose() * a) - a).norm(), 1e-8 * a.norm());
    }
  }
}

TEST(Rsvd, IdentityIsIsometry) {
  const SingularTriplets s = rsvd(Matrix::Identity(10, 10), 10, 0, RandomSeed{5});
  ASSERT_EQ(s.count(), 10);
  for (Index i = 0; i < 10; ++i) EXPECT_NEAR(s.values(i), 1.0, 1e-10);
}

TEST(Rsvd, DecayingSpectrumSanityBound) {
  std::mt19937_64 rng(37);
  // Leading values 10, 9, ..., 1, then a geometric tail from 0.1.
  Vector sigma(200);
  for (Index i = 0; i < 200; ++i) sigma(i) = i < 10 ? 10.0 - double(i) : 0.1 * std::pow(0.9, double(i - 10));
  const Matrix a = with_spectrum(200, 200, sigma, rng);
  const SingularTriplets s = rsvd(a, 10, 10, RandomSeed{7});
  const Matrix q = s.left;
  const Matrix residual = a - q * (q.transpose() * a);
  const double spectral = exact_svd(residual).values(0);
  EXPECT_LE(spectral, 10.0 * sigma(10));
  for (Index i = 0; i < 10; ++i) EXPECT_NEAR(s.values(i), sigma(i), 0.01 * sigma(i));
}

TEST(Rsvd, SameSeedSameBits) {
  std::mt19937_64 rng(38);
  const Matrix a = random_matrix(300, 300, rng);
  setenv("EGGD_THREADS", "1", 1);
  const SingularTriplets x = rsvd(a, 15, 10, RandomSeed{42});
  setenv("EGGD_THREADS", "3", 1);
  const SingularTriplets y = rsvd(a, 15, 10, RandomSeed{42});
  unsetenv("EGGD_THREADS");
  EXPECT_EQ(x.values, y.values);
  EXPECT_EQ(x.left, y.left);
  EXPECT_EQ(x.right, y.right);
}

TEST(Rsvd, RejectsBadParameters) {
  const Matrix a = Matrix::Ones(4, 6);
  EXPECT_THROW((void)rsvd(a, 5, 0, RandomSeed{1}), InvalidParameter);
  EXPECT_THROW((void)rsvd(a, 0, 0, RandomSeed{1}), InvalidParameter);
  EXPECT_THROW((void)rsvd(a, 2, -1, RandomSeed{1}), InvalidParameter);
}

TEST(BlockedProduct, MatchesDenseProduct) {
  std::mt19937_64 rng(39);
  const Matrix a = random_matrix(600, 300, rng);
  const Matrix b = random_matrix(300, 7, rng);
  const Matrix c = random_matrix(600, 5, rng);
  EXPECT_LE((blocked_product(a, b) - a * b).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((blocked_transpose_product(a, c) - a.transpose() * c).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace eggd
