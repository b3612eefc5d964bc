#include "eggd/linalg.hpp"

#include <cmath>
#include <random>
#include <string>

#include "eggd/parallel.hpp"

namespace eggd {

namespace {

constexpr Index kProductBlock = 256;
constexpr double kRankTolerance = 1e-10;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidInput(std::string(what) + " contains non-finite entries");
}

}  // namespace

Gramian double_center(Matrix d) {
  require_finite(d, "distance matrix");
  const Index rows = d.rows();
  const Index cols = d.cols();
  if (rows == 0 || cols == 0) return Gramian{std::move(d)};

  const Vector row_mean = d.rowwise().sum() / double(cols);
  const Eigen::RowVectorXd col_mean = d.colwise().sum() / double(rows);
  const double grand_mean = row_mean.sum() / double(rows);

  parallel_for_chunks(cols, 64, [&](Index begin, Index end) {
    for (Index j = begin; j < end; ++j) {
      for (Index i = 0; i < rows; ++i) {
        d(i, j) = -0.5 * (d(i, j) - row_mean[i] - col_mean[j] + grand_mean);
      }
    }
  });
  return Gramian{std::move(d)};
}

Gramian double_center(GeodesicMatrix distances) {
  return double_center(std::move(distances.distances));
}

Orthonormalized qr_orthonormalize(const Matrix& y) {
  require_finite(y, "sketch matrix");
  const Index m = y.rows();
  double scale = 0.0;
  for (Index j = 0; j < y.cols(); ++j) scale = std::max(scale, y.col(j).norm());
  const double threshold = kRankTolerance * scale;

  Matrix q(m, std::min(m, y.cols()));
  Index kept = 0;
  for (Index j = 0; j < y.cols() && kept < m; ++j) {
    Vector v = y.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index c = 0; c < kept; ++c) v -= q.col(c).dot(v) * q.col(c);
    }
    const double norm = v.norm();
    if (norm <= threshold || norm == 0.0) continue;
    q.col(kept++) = v / norm;
  }
  return Orthonormalized{q.leftCols(kept), y.cols() - kept};
}

SingularTriplets exact_svd(const Matrix& a) {
  require_finite(a, "matrix");
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SingularTriplets{svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

Matrix blocked_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  parallel_for_chunks(a.rows(), kProductBlock, [&](Index begin, Index end) {
    out.middleRows(begin, end - begin).noalias() = a.middleRows(begin, end - begin) * b;
  });
  return out;
}

Matrix blocked_transpose_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("matrix product shape mismatch");
  Matrix out(a.cols(), b.cols());
  parallel_for_chunks(b.cols(), kProductBlock, [&](Index begin, Index end) {
    out.middleCols(begin, end - begin).noalias() =
        a.transpose() * b.middleCols(begin, end - begin);
  });
  return out;
}

SingularTriplets rsvd(const Matrix& a, Index rank, Index oversample, RandomSeed seed) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (rank < 1 || rank > std::min(m, n)) {
    throw InvalidParameter("target rank " + std::to_string(rank) + " outside [1, " +
                           std::to_string(std::min(m, n)) + "]");
  }
  if (oversample < 0) throw InvalidParameter("oversample must be >= 0");
  require_finite(a, "matrix");

  // Stage one: Gaussian sketch of the range. The test matrix is drawn
  // sequentially, column by column, before any parallel work.
  const Index width = std::min(rank + oversample, n);
  Matrix omega(n, width);
  std::mt19937_64 engine(seed.value);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  for (Index j = 0; j < width; ++j) {
    for (Index i = 0; i < n; ++i) omega(i, j) = gaussian(engine);
  }
  const Matrix sketch = blocked_product(a, omega);
  const Matrix q = qr_orthonormalize(sketch).q;
  if (q.cols() == 0) return SingularTriplets{Vector(0), Matrix(m, 0), Matrix(n, 0)};

  // Stage two: exact SVD of the small projection B = Q^T A.
  const Matrix b = blocked_transpose_product(q, a);
  const SingularTriplets small = exact_svd(b);
  const Index keep = std::min(rank, small.count());
  return SingularTriplets{small.values.head(keep), q * small.left.leftCols(keep),
                          small.right.leftCols(keep)};
}

}  // namespace eggd
