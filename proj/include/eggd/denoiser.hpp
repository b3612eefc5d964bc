#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eggd/common.hpp"
#include "eggd/image.hpp"

namespace eggd {

/// Per-channel tuning: patch length rho, neighbor count delta, basis rank L.
struct ChannelParams {
  int rho = 5;
  int delta = 20;
  int rank = 80;

  /// Throws InvalidParameter unless rho is odd and >= 3, delta >= 1 and
  /// rank >= 1. With a positive side, also checks rho <= side and
  /// delta, rank against the side^2 patch count.
  void validate(int side = 0) const;

  /// Parses "rho,delta,rank", e.g. "5,20,80".
  static ChannelParams parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Orthonormal columns of length n^2: leading right singular vectors of the
/// geodesic Gramian.
struct GramianBasis {
  Matrix vectors;
};

/// Wall-clock seconds per pipeline stage.
struct StageTimings {
  double patches = 0.0;
  double graph = 0.0;
  double geodesics = 0.0;
  double gramian = 0.0;
  double rsvd = 0.0;
  double projection = 0.0;
  double merge = 0.0;

  [[nodiscard]] double total() const {
    return patches + graph + geodesics + gramian + rsvd + projection + merge;
  }
};

struct ChannelDiagnostics {
  StageTimings timings;
  Index bridging_edges = 0;
  Index rank_used = 0;
  std::vector<std::string> warnings;
};

/// Low-rank projection V V^T U of the patch matrix onto the basis span.
[[nodiscard]] PatchMatrix project_patches(const PatchMatrix& patches, const GramianBasis& basis);

/// Basis of the geodesic Gramian for a patch cloud: kNN graph (bridged when
/// disconnected), shortest paths, double centering, then randomized SVD.
[[nodiscard]] GramianBasis gramian_basis(const PatchMatrix& patches, int delta, int rank,
                                         Index oversample, RandomSeed seed,
                                         ChannelDiagnostics* diagnostics = nullptr);

inline constexpr Index kDefaultOversample = 10;

/// Single-channel geodesic Gramian denoising. The mean patch is removed
/// before projection and restored afterwards; the output is clamped to
/// [0, 255].
[[nodiscard]] Channel denoise_channel(const Channel& noisy, const ChannelParams& params,
                                      RandomSeed seed, Index oversample = kDefaultOversample,
                                      ChannelDiagnostics* diagnostics = nullptr);

}  // namespace eggd
