#pragma once

#include <array>
#include <span>
#include <vector>

#include "eggd/common.hpp"

namespace eggd {

/// Zero-based pixel position. Linear index k = row * side + col.
struct PixelCoord {
  int row = 0;
  int col = 0;

  friend bool operator==(PixelCoord, PixelCoord) = default;
};

/// Square single-channel image, row-major, intensities on the [0, 255] scale.
class Channel {
 public:
  Channel() = default;
  explicit Channel(int side, double fill = 0.0);

  /// Validating constructor: rejects non-square shapes, non-finite values and
  /// values outside [0, 255].
  static Channel from_values(int width, int height, std::vector<double> values);

  [[nodiscard]] int side() const { return side_; }
  [[nodiscard]] int width() const { return side_; }
  [[nodiscard]] int height() const { return side_; }
  [[nodiscard]] std::size_t size() const { return data_.size(); }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  double operator()(int row, int col) const { return data_[index(row, col)]; }
  double& operator()(int row, int col) { return data_[index(row, col)]; }

  [[nodiscard]] std::span<const double> data() const { return data_; }
  [[nodiscard]] std::span<double> data() { return data_; }

  /// Clamp every intensity into [0, 255].
  void clamp();

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  [[nodiscard]] std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * side_ + col;
  }

  int side_ = 0;
  std::vector<double> data_;
};

/// Three equally sized channels in R, G, B order.
struct RgbImage {
  Channel r;
  Channel g;
  Channel b;

  /// Throws InvalidArgument when channel sides differ.
  static RgbImage from_channels(Channel r, Channel g, Channel b);

  [[nodiscard]] int side() const { return r.side(); }
  [[nodiscard]] std::array<const Channel*, 3> channels() const { return {&r, &g, &b}; }
  [[nodiscard]] std::array<Channel*, 3> channels() { return {&r, &g, &b}; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Mirror index into [0, n) without repeating the edge sample
/// (-1 -> 1, n -> n - 2). Valid for offsets up to n - 1 past either edge.
[[nodiscard]] int reflect_index(int i, int n);

/// The n^2 x rho^2 patch cloud: row k is the row-major vectorization of the
/// rho x rho window centered at pixel k.
class PatchMatrix {
 public:
  PatchMatrix(int side, int rho);
  PatchMatrix(int side, int rho, RowMatrix values);

  [[nodiscard]] int side() const { return side_; }
  [[nodiscard]] int rho() const { return rho_; }
  [[nodiscard]] int radius() const { return rho_ / 2; }
  [[nodiscard]] Index count() const { return values_.rows(); }
  [[nodiscard]] Index dim() const { return values_.cols(); }

  [[nodiscard]] const RowMatrix& values() const { return values_; }
  [[nodiscard]] RowMatrix& values() { return values_; }

  /// Entry of patch k at offset (dr, dc) from the patch center.
  [[nodiscard]] double at(Index k, int dr, int dc) const {
    return values_(k, (dr + radius()) * rho_ + (dc + radius()));
  }
  double& at(Index k, int dr, int dc) {
    return values_(k, (dr + radius()) * rho_ + (dc + radius()));
  }

 private:
  int side_;
  int rho_;
  RowMatrix values_;
};

/// Pixels t with ||center - t||_inf <= rho / 2 that lie inside the image.
struct PixelNeighborhood {
  PixelCoord center;
  std::vector<PixelCoord> members;

  /// Window of odd side rho around center, clipped to a side x side image.
  static PixelNeighborhood around(PixelCoord center, int rho, int side);

  [[nodiscard]] bool contains(PixelCoord t) const;
};

/// Throws InvalidParameter unless rho is odd, >= 3 and <= side.
void validate_patch_size(int rho, int side);

[[nodiscard]] PatchMatrix extract_patches(const Channel& channel, int rho);

/// Normalized Shepard weight exp(-|c - t|^2) / sum_{t' in N} exp(-|c - t'|^2),
/// distances in pixel units.
[[nodiscard]] double shepard_weight(PixelCoord center, PixelCoord t,
                                    const PixelNeighborhood& neighborhood);

/// Shepard-weighted recombination of overlapping patch estimates. Contributors
/// whose patch center falls outside the image are dropped and the remaining
/// weights renormalized.
[[nodiscard]] Channel merge_patches(const PatchMatrix& patches);

}  // namespace eggd
