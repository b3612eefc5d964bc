#include "eggd/app/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <type_traits>

#include <json.hpp>

#include "eggd/metrics.hpp"
#include "eggd/noise.hpp"

namespace eggd::app {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename Img>
BenchResult score(const std::string& name, double zeta, const char* method, const Img& clean,
                  const Img& test, double seconds) {
  return BenchResult{name,
                     zeta,
                     method,
                     shannon_entropy(test),
                     psnr(clean, test),
                     ssim(clean, test),
                     seconds};
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

ParamSchedule default_schedule() {
  return ParamSchedule{
      {2.0, ParamTriplet{{5, 20, 80}, {7, 20, 80}, {7, 20, 80}}},
      {4.0, ParamTriplet{{7, 20, 80}, {9, 20, 80}, {9, 20, 80}}},
      {6.0, ParamTriplet{{9, 20, 80}, {11, 20, 80}, {11, 20, 80}}},
  };
}

RandomSeed bench_noise_seed(RandomSeed seed, std::size_t image_index, std::size_t zeta_index) {
  return seed.derive(2 * (image_index * 1024 + zeta_index));
}

RandomSeed bench_denoise_seed(RandomSeed seed, std::size_t image_index, std::size_t zeta_index) {
  return seed.derive(2 * (image_index * 1024 + zeta_index) + 1);
}

std::vector<BenchResult> run_bench(const std::vector<NamedImage>& images,
                                   const BenchOptions& options) {
  for (double zeta : options.zetas) {
    if (!options.schedule.contains(zeta)) {
      throw InvalidParameter("no parameter schedule for zeta = " + format_number(zeta) + "%");
    }
  }
  std::vector<BenchResult> rows;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const NamedImage& named = images[i];
    for (std::size_t z = 0; z < options.zetas.size(); ++z) {
      const double zeta = options.zetas[z];
      const ParamTriplet& params = options.schedule.at(zeta);
      const NoiseSpec spec = NoiseSpec::with_zeta(zeta, bench_noise_seed(options.seed, i, z));
      const RandomSeed denoise_seed = bench_denoise_seed(options.seed, i, z);
      std::visit(
          [&](const auto& clean) {
            auto start = std::chrono::steady_clock::now();
            const auto noisy = add_gaussian_noise(clean, spec);
            rows.push_back(score(named.name, zeta, "noisy", clean, noisy.image,
                                 seconds_since(start)));
            start = std::chrono::steady_clock::now();
            using Img = std::decay_t<decltype(clean)>;
            Img denoised;
            if constexpr (std::is_same_v<Img, Channel>) {
              denoised = denoise_channel(noisy.image, params.y, denoise_seed, options.oversample);
            } else {
              denoised = denoise_rgb(noisy.image, params, denoise_seed, options.oversample);
            }
            rows.push_back(
                score(named.name, zeta, "eggd", clean, denoised, seconds_since(start)));
          },
          named.image);
    }
  }
  return rows;
}

std::vector<BenchSummary> summarize(const std::vector<BenchResult>& rows) {
  std::map<double, std::vector<const BenchResult*>> by_zeta;
  for (const BenchResult& r : rows) by_zeta[r.zeta].push_back(&r);

  std::vector<BenchSummary> out;
  for (const auto& [zeta, group] : by_zeta) {
    for (const char* method : {"noisy", "eggd"}) {
      std::vector<const BenchResult*> sel;
      for (const BenchResult* r : group) {
        if (r->method == method) sel.push_back(r);
      }
      if (sel.empty()) continue;
      const double n = double(sel.size());
      BenchSummary mean{zeta, method, "mean"};
      for (const BenchResult* r : sel) {
        mean.she += r->she / n;
        mean.psnr += r->psnr / n;
        mean.ssim += r->ssim / n;
        mean.seconds += r->seconds / n;
      }
      BenchSummary sd{zeta, method, "sd"};
      if (sel.size() > 1) {
        for (const BenchResult* r : sel) {
          sd.she += (r->she - mean.she) * (r->she - mean.she);
          sd.psnr += (r->psnr - mean.psnr) * (r->psnr - mean.psnr);
          sd.ssim += (r->ssim - mean.ssim) * (r->ssim - mean.ssim);
          sd.seconds += (r->seconds - mean.seconds) * (r->seconds - mean.seconds);
        }
        sd.she = std::sqrt(sd.she / (n - 1));
        sd.psnr = std::sqrt(sd.psnr / (n - 1));
        sd.ssim = std::sqrt(sd.ssim / (n - 1));
        sd.seconds = std::sqrt(sd.seconds / (n - 1));
      }
      out.push_back(mean);
      out.push_back(sd);
    }
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchResult>& rows,
               const std::vector<BenchSummary>& summary) {
  out << "image,zeta,method,she,psnr,ssim,seconds\n";
  for (const BenchResult& r : rows) {
    out << r.image << ',' << format_number(r.zeta) << ',' << r.method << ','
        << format_number(r.she) << ',' << format_number(r.psnr) << ',' << format_number(r.ssim)
        << ',' << format_number(r.seconds) << '\n';
  }
  for (const BenchSummary& s : summary) {
    out << s.statistic << ',' << format_number(s.zeta) << ',' << s.method << ','
        << format_number(s.she) << ',' << format_number(s.psnr) << ','
        << format_number(s.ssim) << ',' << format_number(s.seconds) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<BenchResult>& rows,
                const std::vector<BenchSummary>& summary) {
  nlohmann::json doc;
  doc["rows"] = nlohmann::json::array();
  for (const BenchResult& r : rows) {
    doc["rows"].push_back({{"image", r.image},
                           {"zeta", r.zeta},
                           {"method", r.method},
                           {"she", number(r.she)},
                           {"psnr", number(r.psnr)},
                           {"ssim", number(r.ssim)},
                           {"seconds", r.seconds}});
  }
  doc["summary"] = nlohmann::json::array();
  for (const BenchSummary& s : summary) {
    doc["summary"].push_back({{"zeta", s.zeta},
                              {"method", s.method},
                              {"statistic", s.statistic},
                              {"she", number(s.she)},
                              {"psnr", number(s.psnr)},
                              {"ssim", number(s.ssim)},
                              {"seconds", s.seconds}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace eggd::app
