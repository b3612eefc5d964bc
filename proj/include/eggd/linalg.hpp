#pragma once

#include "eggd/common.hpp"
#include "eggd/patch_graph.hpp"

namespace eggd {

/// Double-centered geodesic matrix, G = -1/2 (D - row mean - col mean + mean).
struct Gramian {
  Matrix values;
};

/// Leading singular triplets, values descending. Column l of `left` / `right`
/// pairs with values[l].
struct SingularTriplets {
  Vector values;
  Matrix left;
  Matrix right;

  [[nodiscard]] Index count() const { return values.size(); }
};

struct Orthonormalized {
  Matrix q;           // orthonormal columns spanning the input's column space
  Index dropped = 0;  // numerically dependent input columns left out
};

/// Centers `distances` in place; throws InvalidInput on non-finite entries.
[[nodiscard]] Gramian double_center(Matrix distances);
[[nodiscard]] Gramian double_center(GeodesicMatrix distances);

/// Gram-Schmidt with one full reorthogonalization pass. A column whose
/// residual norm falls below 1e-10 times the largest input column norm is
/// dropped.
[[nodiscard]] Orthonormalized qr_orthonormalize(const Matrix& y);

/// Dense thin SVD with descending singular values.
[[nodiscard]] SingularTriplets exact_svd(const Matrix& a);

/// Randomized SVD. Stage one sketches the range of `a` with a Gaussian test
/// matrix of rank + oversample columns drawn from `seed` and orthonormalizes
/// it; stage two takes the exact SVD of the projected matrix Q^T a. Returns
/// at most `rank` triplets: fewer when the sketch is numerically rank
/// deficient.
[[nodiscard]] SingularTriplets rsvd(const Matrix& a, Index rank, Index oversample,
                                    RandomSeed seed);

/// Column-major a * b evaluated in fixed row blocks, parallel across blocks.
[[nodiscard]] Matrix blocked_product(const Matrix& a, const Matrix& b);

/// a^T * b evaluated in fixed column blocks of b, parallel across blocks.
[[nodiscard]] Matrix blocked_transpose_product(const Matrix& a, const Matrix& b);

}  // namespace eggd
