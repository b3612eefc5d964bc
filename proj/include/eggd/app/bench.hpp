#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "eggd/app/png_io.hpp"
#include "eggd/colorspace.hpp"

namespace eggd::app {

/// One (image, zeta, method) measurement against the clean original.
struct BenchResult {
  std::string image;
  double zeta = 0.0;
  std::string method;  // "noisy" or "eggd"
  double she = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
  double seconds = 0.0;
};

/// Mean or standard deviation of a metric column over images, per
/// (zeta, method).
struct BenchSummary {
  double zeta = 0.0;
  std::string method;
  std::string statistic;  // "mean" or "sd"
  double she = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
  double seconds = 0.0;
};

using ParamSchedule = std::map<double, ParamTriplet>;

/// Default per-level parameters: rho 5/7/7 at 2%, 7/9/9 at 4%, 9/11/11 at 6%
/// for Y/Cb/Cr, delta 20 and rank 80 throughout.
[[nodiscard]] ParamSchedule default_schedule();

struct NamedImage {
  std::string name;
  Image image;
};

struct BenchOptions {
  std::vector<double> zetas{2.0, 4.0, 6.0};
  ParamSchedule schedule = default_schedule();
  RandomSeed seed{};
  Index oversample = kDefaultOversample;
};

/// Seeds for image `image_index` at level `zeta_index`: noise draw, then
/// denoiser.
[[nodiscard]] RandomSeed bench_noise_seed(RandomSeed seed, std::size_t image_index,
                                          std::size_t zeta_index);
[[nodiscard]] RandomSeed bench_denoise_seed(RandomSeed seed, std::size_t image_index,
                                            std::size_t zeta_index);

/// For every (image, zeta): add noise at the target level, denoise with the
/// scheduled parameters and score both images against the clean one. Rows
/// come out image-major, then zeta, "noisy" before "eggd". Throws
/// InvalidParameter when a level has no schedule entry.
[[nodiscard]] std::vector<BenchResult> run_bench(const std::vector<NamedImage>& images,
                                                 const BenchOptions& options);

/// Mean and sample standard deviation (0 for a single image) per
/// (zeta, method), zeta ascending, "noisy" before "eggd".
[[nodiscard]] std::vector<BenchSummary> summarize(const std::vector<BenchResult>& rows);

/// Header image,zeta,method,she,psnr,ssim,seconds; summary rows carry
/// "mean" / "sd" in the image column.
void write_csv(std::ostream& out, const std::vector<BenchResult>& rows,
               const std::vector<BenchSummary>& summary);
void write_json(std::ostream& out, const std::vector<BenchResult>& rows,
                const std::vector<BenchSummary>& summary);

/// Shortest round-trip decimal form; "inf" / "-inf" / "nan" for non-finite.
[[nodiscard]] std::string format_number(double value);

}  // namespace eggd::app
