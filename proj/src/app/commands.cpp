#include "eggd/app/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eggd/app/bench.hpp"
#include "eggd/app/fixtures.hpp"
#include "eggd/app/png_io.hpp"
#include "eggd/metrics.hpp"
#include "eggd/noise.hpp"

namespace eggd::app {

namespace {

// Parameter problems detected before compute.
class UsageError : public Error {
 public:
  using Error::Error;
};

ChannelParams parse_triplet(const std::string& text, const char* flag) {
  try {
    return ChannelParams::parse(text);
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

ReportFormat parse_format(const std::string& text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw UsageError("--format must be json or csv");
}

void print_timings(std::ostream& out, const char* channel, const ChannelDiagnostics& d) {
  const StageTimings& t = d.timings;
  out << "channel " << channel << ": patches " << t.patches << "s, graph " << t.graph
      << "s, geodesics " << t.geodesics << "s, gramian " << t.gramian << "s, rsvd " << t.rsvd
      << "s, projection " << t.projection << "s, merge " << t.merge << "s (rank "
      << d.rank_used << ", bridging edges " << d.bridging_edges << ")\n";
}

void print_warnings(std::ostream& err, const char* channel, const ChannelDiagnostics& d) {
  for (const std::string& w : d.warnings) err << "warning: channel " << channel << ": " << w << '\n';
}

// Sink that is either a file or the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open " + path + " for writing");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------- add-noise

struct AddNoiseArgs {
  std::string input;
  std::string output;
  std::optional<double> sigma;
  std::optional<double> zeta;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_add_noise(const AddNoiseArgs& args, std::ostream& out) {
  NoiseSpec spec{args.sigma, args.zeta, RandomSeed{args.seed}};
  try {
    spec.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const Image clean = read_png(args.input);
  std::visit(
      [&](const auto& image) {
        const auto noisy = add_gaussian_noise(image, spec);
        write_png(args.output, noisy.image);
        const double written = measure_zeta(image, quantized(noisy.image));
        out << "sigma=" << format_number(noisy.sigma) << " zeta=" << format_number(noisy.zeta)
            << " zeta_written=" << format_number(written) << " probes=" << noisy.probes << '\n';
      },
      clean);
  return kExitOk;
}

// ------------------------------------------------------------------ denoise

struct DenoiseArgs {
  RunConfig config;
  std::string y = "5,20,80";
  std::string cb = "7,20,80";
  std::string cr = "7,20,80";
  bool grayscale = false;
};

int cmd_denoise(DenoiseArgs args, std::ostream& out, std::ostream& err) {
  RunConfig& config = args.config;
  config.params = ParamTriplet{parse_triplet(args.y, "--y"), parse_triplet(args.cb, "--cb"),
                               parse_triplet(args.cr, "--cr")};
  if (config.oversample < 0) throw UsageError("--oversample must be >= 0");

  Image input = read_png(config.input);
  const int side = std::visit([](const auto& img) { return img.side(); }, input);
  check_side_limit(side, config.max_side);

  if (args.grayscale) {
    if (const auto* rgb = std::get_if<RgbImage>(&input)) input = rgb_to_ycbcr(*rgb).y;
  }
  try {
    if (const auto* gray = std::get_if<Channel>(&input)) {
      ChannelDiagnostics diag;
      const Channel result =
          denoise_channel(*gray, config.params.y, config.seed, config.oversample, &diag);
      print_warnings(err, "gray", diag);
      write_png(config.output, result);
      print_timings(out, "gray", diag);
    } else {
      ColorDiagnostics diag;
      const RgbImage result = denoise_rgb(std::get<RgbImage>(input), config.params, config.seed,
                                          config.oversample, &diag);
      print_warnings(err, "Y", diag.y);
      print_warnings(err, "Cb", diag.cb);
      print_warnings(err, "Cr", diag.cr);
      write_png(config.output, result);
      print_timings(out, "Y", diag.y);
      print_timings(out, "Cb", diag.cb);
      print_timings(out, "Cr", diag.cr);
    }
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  out << "wrote " << config.output.string() << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ metrics

struct MetricsArgs {
  std::string input;
  std::string reference;
  std::string format = "json";
  std::string output;
};

int cmd_metrics(const MetricsArgs& args, std::ostream& out) {
  const ReportFormat format = parse_format(args.format);
  const Image test = read_png(args.input);
  std::optional<Image> reference;
  if (!args.reference.empty()) reference = read_png(args.reference);

  const MetricsReport report = std::visit(
      [&](const auto& img) {
        using Img = std::decay_t<decltype(img)>;
        if (!reference) return metrics_report(img, nullptr);
        const Img* ref = std::get_if<Img>(&*reference);
        if (ref == nullptr) {
          throw InvalidArgument("test and reference differ in channel count");
        }
        return metrics_report(img, ref);
      },
      test);

  Sink sink(args.output, out);
  if (format == ReportFormat::kJson) {
    nlohmann::json doc;
    doc["she"] = report.she;
    if (report.rmse) doc["rmse"] = *report.rmse;
    if (report.psnr) {
      doc["psnr"] = std::isfinite(*report.psnr) ? nlohmann::json(*report.psnr)
                                                : nlohmann::json(format_number(*report.psnr));
    }
    if (report.ssim) doc["ssim"] = *report.ssim;
    sink.stream() << doc.dump(2) << '\n';
  } else {
    auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : ""; };
    sink.stream() << "she,rmse,psnr,ssim\n"
                  << format_number(report.she) << ',' << cell(report.rmse) << ','
                  << cell(report.psnr) << ',' << cell(report.ssim) << '\n';
  }
  return kExitOk;
}

// -------------------------------------------------------------------- bench

struct BenchArgs {
  RunConfig config;
  std::vector<double> zetas{2.0, 4.0, 6.0};
  std::string y;
  std::string cb;
  std::string cr;
  std::string format = "csv";
};

int cmd_bench(BenchArgs args, std::ostream& out, std::ostream& err) {
  RunConfig& config = args.config;
  config.format = parse_format(args.format);
  if (config.oversample < 0) throw UsageError("--oversample must be >= 0");

  BenchOptions options;
  options.zetas = args.zetas;
  options.seed = config.seed;
  options.oversample = config.oversample;
  const bool override_y = !args.y.empty();
  const bool override_cb = !args.cb.empty();
  const bool override_cr = !args.cr.empty();
  for (double zeta : options.zetas) {
    if (!(zeta > 0.0 && zeta < 100.0)) throw UsageError("--zeta levels must lie in (0, 100)");
    if (!options.schedule.contains(zeta)) {
      if (!(override_y && override_cb && override_cr)) {
        throw UsageError("no default parameters for zeta = " + format_number(zeta) +
                         "%; pass --y, --cb and --cr");
      }
      options.schedule[zeta] = ParamTriplet{};
    }
  }
  for (auto& [zeta, triplet] : options.schedule) {
    if (override_y) triplet.y = parse_triplet(args.y, "--y");
    if (override_cb) triplet.cb = parse_triplet(args.cb, "--cb");
    if (override_cr) triplet.cr = parse_triplet(args.cr, "--cr");
  }

  if (!std::filesystem::is_directory(config.input)) {
    throw IoError(config.input.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(config.input)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw IoError("no .png images in " + config.input.string());
  std::sort(files.begin(), files.end());

  std::vector<NamedImage> images;
  for (const auto& file : files) {
    Image img = read_png(file);
    check_side_limit(std::visit([](const auto& i) { return i.side(); }, img), config.max_side);
    images.push_back(NamedImage{file.stem().string(), std::move(img)});
  }
  err << "bench: " << images.size() << " image(s) x " << options.zetas.size() << " level(s)\n";

  std::vector<BenchResult> rows;
  try {
    rows = run_bench(images, options);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const auto summary = summarize(rows);
  Sink sink(config.output.string(), out);
  if (config.format == ReportFormat::kJson) {
    write_json(sink.stream(), rows, summary);
  } else {
    write_csv(sink.stream(), rows, summary);
  }
  return kExitOk;
}

// ----------------------------------------------------------------- fixtures

struct FixturesArgs {
  std::string output_dir;
  int side = 64;
  std::uint64_t seed = 7;
};

int cmd_fixtures(const FixturesArgs& args, std::ostream& out) {
  if (args.side < 4) throw UsageError("--side must be >= 4");
  std::filesystem::create_directories(args.output_dir);
  for (const std::string& name : fixture_names()) {
    const auto path = std::filesystem::path(args.output_dir) / (name + ".png");
    write_png(path, make_fixture(name, args.side, RandomSeed{args.seed}));
    out << "wrote " << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

void check_side_limit(int side, int max_side) {
  if (side <= max_side) return;
  const double n = double(side) * side;
  const double gib = 2.0 * n * n * sizeof(double) / (1024.0 * 1024.0 * 1024.0);
  std::ostringstream msg;
  msg << "image side " << side << " exceeds the limit of " << max_side
      << "; the dense geodesic and Gramian matrices would need about " << gib
      << " GiB. Pass --max-side " << side << " to proceed anyway.";
  throw ImageTooLarge(msg.str());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic Gramian image denoising"};
  app.name("eggd");
  app.require_subcommand(1);

  AddNoiseArgs noise;
  auto* add_noise = app.add_subcommand("add-noise", "Add Gaussian noise to an image");
  add_noise->add_option("--input", noise.input, "Clean PNG")->required();
  add_noise->add_option("--output", noise.output, "Noisy PNG to write")->required();
  auto* sigma_opt = add_noise->add_option("--sigma", noise.sigma, "Noise standard deviation");
  auto* zeta_opt = add_noise->add_option("--zeta", noise.zeta, "Target relative noise, percent");
  sigma_opt->excludes(zeta_opt);
  add_noise->add_option("--seed", noise.seed, "Random seed");

  DenoiseArgs den;
  auto* denoise = app.add_subcommand("denoise", "Denoise an image");
  denoise->add_option("--input", den.config.input, "Noisy PNG")->required();
  denoise->add_option("--output", den.config.output, "Denoised PNG to write")->required();
  denoise->add_option("--y", den.y, "Y (or gray) channel rho,delta,rank");
  denoise->add_option("--cb", den.cb, "Cb channel rho,delta,rank");
  denoise->add_option("--cr", den.cr, "Cr channel rho,delta,rank");
  denoise->add_flag("--grayscale", den.grayscale, "Denoise the luminance as one channel");
  denoise->add_option("--seed", den.config.seed.value, "Random seed");
  denoise->add_option("--oversample", den.config.oversample, "Extra sketch columns");
  denoise->add_option("--max-side", den.config.max_side, "Largest accepted image side");

  MetricsArgs met;
  auto* metrics = app.add_subcommand("metrics", "Image quality report");
  metrics->add_option("--input", met.input, "Image to score")->required();
  metrics->add_option("--reference", met.reference, "Clean reference image");
  metrics->add_option("--format", met.format, "json or csv");
  metrics->add_option("--output", met.output, "Report file (default stdout)");

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "Noise, denoise and score a directory of images");
  bench->add_option("--images", ben.config.input, "Directory of clean PNGs")->required();
  bench->add_option("--zeta", ben.zetas, "Relative noise levels, percent")->delimiter(',');
  bench->add_option("--y", ben.y, "Override Y rho,delta,rank at every level");
  bench->add_option("--cb", ben.cb, "Override Cb rho,delta,rank at every level");
  bench->add_option("--cr", ben.cr, "Override Cr rho,delta,rank at every level");
  bench->add_option("--seed", ben.config.seed.value, "Random seed");
  bench->add_option("--oversample", ben.config.oversample, "Extra sketch columns");
  bench->add_option("--max-side", ben.config.max_side, "Largest accepted image side");
  bench->add_option("--format", ben.format, "csv or json");
  bench->add_option("--output", ben.config.output, "Result file (default stdout)");

  FixturesArgs fix;
  auto* fixtures = app.add_subcommand("fixtures", "Write the synthetic test scenes");
  fixtures->add_option("--output-dir", fix.output_dir, "Destination directory")->required();
  fixtures->add_option("--side", fix.side, "Image side");
  fixtures->add_option("--seed", fix.seed, "Scene seed");

  std::vector<std::string> argv_storage{"eggd"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*add_noise) return cmd_add_noise(noise, out);
    if (*denoise) return cmd_denoise(den, out, err);
    if (*metrics) return cmd_metrics(met, out);
    if (*bench) return cmd_bench(ben, out, err);
    if (*fixtures) return cmd_fixtures(fix, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace eggd::app
