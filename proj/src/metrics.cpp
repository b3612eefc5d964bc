#include "eggd/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace eggd {

namespace {

constexpr double kC1 = (0.01 * kPeakIntensity) * (0.01 * kPeakIntensity);
constexpr double kC2 = (0.03 * kPeakIntensity) * (0.03 * kPeakIntensity);
constexpr double kC3 = kC2 / 2.0;

void require_same_shape(const Channel& a, const Channel& b) {
  if (a.side() != b.side()) throw InvalidArgument("images differ in size");
  if (a.empty()) throw InvalidInput("image is empty");
}

void accumulate_histogram(const Channel& c, std::array<std::size_t, 256>& bins) {
  for (double v : c.data()) {
    const double q = std::floor(v + 0.5);
    const int bin = q < 0.0 ? 0 : (q > 255.0 ? 255 : static_cast<int>(q));
    ++bins[bin];
  }
}

double entropy_of(const std::array<std::size_t, 256>& bins, std::size_t total) {
  if (total == 0) throw InvalidInput("image is empty");
  double h = 0.0;
  for (std::size_t count : bins) {
    if (count == 0) continue;
    const double p = double(count) / double(total);
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;  // no negative zero
}

double squared_error_sum(const Channel& a, const Channel& b) {
  const auto x = a.data();
  const auto y = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

double shannon_entropy(const Channel& image) {
  std::array<std::size_t, 256> bins{};
  accumulate_histogram(image, bins);
  return entropy_of(bins, image.size());
}

double shannon_entropy(const RgbImage& image) {
  std::array<std::size_t, 256> bins{};
  std::size_t total = 0;
  for (const Channel* c : image.channels()) {
    accumulate_histogram(*c, bins);
    total += c->size();
  }
  return entropy_of(bins, total);
}

double rmse(const Channel& reference, const Channel& test) {
  require_same_shape(reference, test);
  return std::sqrt(squared_error_sum(reference, test) / double(reference.size()));
}

double rmse(const RgbImage& reference, const RgbImage& test) {
  double sum = 0.0;
  std::size_t count = 0;
  const auto ref = reference.channels();
  const auto tst = test.channels();
  for (int ch = 0; ch < 3; ++ch) {
    require_same_shape(*ref[ch], *tst[ch]);
    sum += squared_error_sum(*ref[ch], *tst[ch]);
    count += ref[ch]->size();
  }
  return std::sqrt(sum / double(count));
}

double psnr_from_rmse(double error) {
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(kPeakIntensity / error);
}

double psnr(const Channel& reference, const Channel& test) {
  return psnr_from_rmse(rmse(reference, test));
}

double psnr(const RgbImage& reference, const RgbImage& test) {
  return psnr_from_rmse(rmse(reference, test));
}

double ssim(const Channel& reference, const Channel& test) {
  require_same_shape(reference, test);
  const auto x = reference.data();
  const auto y = test.data();
  const double count = double(x.size());

  double sum_x = 0.0;
  double sum_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum_x += x[i];
    sum_y += y[i];
  }
  const double mu_x = sum_x / count;
  const double mu_y = sum_y / count;

  double var_x = 0.0;
  double var_y = 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mu_x;
    const double dy = y[i] - mu_y;
    var_x += dx * dx;
    var_y += dy * dy;
    cov += dx * dy;
  }
  var_x /= count;
  var_y /= count;
  cov /= count;
  const double sd_x = std::sqrt(var_x);
  const double sd_y = std::sqrt(var_y);

  const double luminance = (2.0 * mu_x * mu_y + kC1) / (mu_x * mu_x + mu_y * mu_y + kC1);
  const double contrast = (2.0 * sd_x * sd_y + kC2) / (var_x + var_y + kC2);
  const double structure = (cov + kC3) / (sd_x * sd_y + kC3);
  return luminance * contrast * structure;
}

double ssim(const RgbImage& reference, const RgbImage& test) {
  return (ssim(reference.r, test.r) + ssim(reference.g, test.g) + ssim(reference.b, test.b)) /
         3.0;
}

namespace {

template <typename Image>
MetricsReport report_for(const Image& test, const Image* reference) {
  MetricsReport report;
  report.she = shannon_entropy(test);
  if (reference != nullptr) {
    report.rmse = rmse(*reference, test);
    report.psnr = psnr_from_rmse(*report.rmse);
    report.ssim = ssim(*reference, test);
  }
  return report;
}

}  // namespace

MetricsReport metrics_report(const Channel& test, const Channel* reference) {
  return report_for(test, reference);
}

MetricsReport metrics_report(const RgbImage& test, const RgbImage* reference) {
  return report_for(test, reference);
}

}  // namespace eggd
