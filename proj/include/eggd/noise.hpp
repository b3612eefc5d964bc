#pragma once

#include <optional>

#include "eggd/common.hpp"
#include "eggd/image.hpp"

namespace eggd {

/// Either an absolute standard deviation (on the 0..255 scale) or a target
/// relative noise level zeta in percent.
struct NoiseSpec {
  std::optional<double> sigma;
  std::optional<double> zeta_target;
  RandomSeed seed;

  static NoiseSpec with_sigma(double sigma, RandomSeed seed);
  static NoiseSpec with_zeta(double zeta_percent, RandomSeed seed);

  /// Throws InvalidParameter unless exactly one of sigma > 0 or
  /// 0 < zeta_target < 100 is set.
  void validate() const;
};

template <typename Image>
struct NoisyImage {
  Image image;
  double zeta = 0.0;   // achieved relative noise, percent
  double sigma = 0.0;  // standard deviation actually used
  int probes = 0;      // noise draws spent (1 in sigma mode)
};

inline constexpr int kMaxZetaProbes = 40;
inline constexpr double kZetaRelativeTolerance = 0.01;

/// Adds i.i.d. N(0, sigma^2) noise per pixel (row-major, channel after
/// channel) and clamps to [0, 255]. In zeta mode sigma is found by bisection
/// on the measured post-clamp zeta, with a fresh draw per probe; throws
/// ConvergenceError when the target is not met within kMaxZetaProbes draws.
[[nodiscard]] NoisyImage<Channel> add_gaussian_noise(const Channel& image, const NoiseSpec& spec);
[[nodiscard]] NoisyImage<RgbImage> add_gaussian_noise(const RgbImage& image,
                                                      const NoiseSpec& spec);

/// 100 * ||noisy - clean||_F / ||clean||_F. Throws InvalidInput when the
/// clean image is all zero.
[[nodiscard]] double measure_zeta(const Channel& clean, const Channel& noisy);
[[nodiscard]] double measure_zeta(const RgbImage& clean, const RgbImage& noisy);

}  // namespace eggd
