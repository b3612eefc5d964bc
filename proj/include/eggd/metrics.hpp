#pragma once

#include <optional>

#include "eggd/image.hpp"

namespace eggd {

inline constexpr double kPeakIntensity = 255.0;

/// Histogram entropy in bits over 256 bins (round-half-up quantization).
/// RGB pools one histogram over all channel values.
[[nodiscard]] double shannon_entropy(const Channel& image);
[[nodiscard]] double shannon_entropy(const RgbImage& image);

/// Root mean square error. RGB pools squared error over all channels.
[[nodiscard]] double rmse(const Channel& reference, const Channel& test);
[[nodiscard]] double rmse(const RgbImage& reference, const RgbImage& test);

/// 20 log10(255 / rmse); +infinity for identical images.
[[nodiscard]] double psnr(const Channel& reference, const Channel& test);
[[nodiscard]] double psnr(const RgbImage& reference, const RgbImage& test);
[[nodiscard]] double psnr_from_rmse(double rmse);

/// Whole-image SSIM (luminance * contrast * structure) with population
/// statistics and c1 = (0.01*255)^2, c2 = (0.03*255)^2, c3 = c2/2.
/// RGB averages the three per-channel values.
[[nodiscard]] double ssim(const Channel& reference, const Channel& test);
[[nodiscard]] double ssim(const RgbImage& reference, const RgbImage& test);

struct MetricsReport {
  double she = 0.0;
  std::optional<double> rmse;
  std::optional<double> psnr;
  std::optional<double> ssim;
};

[[nodiscard]] MetricsReport metrics_report(const Channel& test, const Channel* reference);
[[nodiscard]] MetricsReport metrics_report(const RgbImage& test, const RgbImage* reference);

}  // namespace eggd
