#include "eggd/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eggd/parallel.hpp"

namespace eggd {

Channel::Channel(int side, double fill)
    : side_(side), data_(static_cast<std::size_t>(side) * side, fill) {
  if (side < 0) throw InvalidArgument("channel side must be non-negative");
}

Channel Channel::from_values(int width, int height, std::vector<double> values) {
  if (width != height) {
    throw InvalidInput("image must be square, got " + std::to_string(width) + "x" +
                       std::to_string(height));
  }
  if (width <= 0) throw InvalidInput("image is empty");
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidArgument("value count does not match image shape");
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0 || v > 255.0) {
      throw InvalidInput("intensity outside [0, 255]: " + std::to_string(v));
    }
  }
  Channel c;
  c.side_ = width;
  c.data_ = std::move(values);
  return c;
}

void Channel::clamp() {
  for (double& v : data_) v = std::clamp(v, 0.0, 255.0);
}

RgbImage RgbImage::from_channels(Channel r, Channel g, Channel b) {
  if (r.side() != g.side() || r.side() != b.side()) {
    throw InvalidArgument("RGB channels differ in size");
  }
  return RgbImage{std::move(r), std::move(g), std::move(b)};
}

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  if (i < 0) return -i;
  if (i >= n) return 2 * (n - 1) - i;
  return i;
}

PatchMatrix::PatchMatrix(int side, int rho)
    : side_(side), rho_(rho), values_(RowMatrix::Zero(Index{side} * side, Index{rho} * rho)) {}

PatchMatrix::PatchMatrix(int side, int rho, RowMatrix values)
    : side_(side), rho_(rho), values_(std::move(values)) {
  if (values_.rows() != Index{side} * side || values_.cols() != Index{rho} * rho) {
    throw InvalidArgument("patch matrix must be side^2 x rho^2");
  }
}

PixelNeighborhood PixelNeighborhood::around(PixelCoord center, int rho, int side) {
  if (rho < 1 || rho % 2 == 0) throw InvalidParameter("neighborhood size must be odd");
  const int r = rho / 2;
  PixelNeighborhood nb{center, {}};
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      const PixelCoord t{center.row + dr, center.col + dc};
      if (t.row >= 0 && t.row < side && t.col >= 0 && t.col < side) nb.members.push_back(t);
    }
  }
  return nb;
}

bool PixelNeighborhood::contains(PixelCoord t) const {
  return std::find(members.begin(), members.end(), t) != members.end();
}

void validate_patch_size(int rho, int side) {
  if (rho < 3 || rho % 2 == 0) {
    throw InvalidParameter("patch length must be odd and >= 3, got " + std::to_string(rho));
  }
  if (rho > side) {
    throw InvalidParameter("patch length " + std::to_string(rho) +
                           " exceeds image side " + std::to_string(side));
  }
}

PatchMatrix extract_patches(const Channel& channel, int rho) {
  const int n = channel.side();
  validate_patch_size(rho, n);
  const int r = rho / 2;
  PatchMatrix patches(n, rho);
  RowMatrix& out = patches.values();
  parallel_for_chunks(n, 8, [&](Index begin, Index end) {
    for (int i = static_cast<int>(begin); i < end; ++i) {
      for (int j = 0; j < n; ++j) {
        const Index k = Index{i} * n + j;
        Index e = 0;
        for (int dr = -r; dr <= r; ++dr) {
          const int src_row = reflect_index(i + dr, n);
          for (int dc = -r; dc <= r; ++dc) {
            out(k, e++) = channel(src_row, reflect_index(j + dc, n));
          }
        }
      }
    }
  });
  return patches;
}

namespace {

double squared_pixel_distance(PixelCoord a, PixelCoord b) {
  const double dr = a.row - b.row;
  const double dc = a.col - b.col;
  return dr * dr + dc * dc;
}

}  // namespace

double shepard_weight(PixelCoord center, PixelCoord t, const PixelNeighborhood& neighborhood) {
  if (!neighborhood.contains(t)) {
    throw InvalidArgument("pixel is not a member of the neighborhood");
  }
  double total = 0.0;
  for (const PixelCoord& m : neighborhood.members) {
    total += std::exp(-squared_pixel_distance(center, m));
  }
  return std::exp(-squared_pixel_distance(center, t)) / total;
}

Channel merge_patches(const PatchMatrix& patches) {
  const int n = patches.side();
  const int rho = patches.rho();
  const int r = rho / 2;
  if (patches.count() != Index{n} * n || patches.dim() != Index{rho} * rho) {
    throw InvalidArgument("patch matrix shape does not match its side and rho");
  }

  std::vector<double> kernel(static_cast<std::size_t>(rho) * rho);
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      kernel[(dr + r) * rho + (dc + r)] = std::exp(-double(dr * dr + dc * dc));
    }
  }

  Channel out(n);
  parallel_for_chunks(n, 8, [&](Index begin, Index end) {
    for (int i = static_cast<int>(begin); i < end; ++i) {
      for (int j = 0; j < n; ++j) {
        // Pixel (i, j) sits at offset (dr, dc) inside the patch centered at
        // (i - dr, j - dc).
        double weight_sum = 0.0;
        double value_sum = 0.0;
        for (int dr = -r; dr <= r; ++dr) {
          const int ti = i - dr;
          if (ti < 0 || ti >= n) continue;
          for (int dc = -r; dc <= r; ++dc) {
            const int tj = j - dc;
            if (tj < 0 || tj >= n) continue;
            const double w = kernel[(dr + r) * rho + (dc + r)];
            weight_sum += w;
            value_sum += w * patches.at(Index{ti} * n + tj, dr, dc);
          }
        }
        out(i, j) = value_sum / weight_sum;
      }
    }
  });
  return out;
}

}  // namespace eggd
