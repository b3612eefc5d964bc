#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eggd/colorspace.hpp"

namespace eggd::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kDefaultMaxSide = 128;
inline constexpr std::uint64_t kDefaultSeed = 1;

enum class ReportFormat { kJson, kCsv };

/// Settings shared by the denoise and bench commands, validated before any
/// compute starts.
struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  ParamTriplet params{{5, 20, 80}, {7, 20, 80}, {7, 20, 80}};
  RandomSeed seed{kDefaultSeed};
  Index oversample = kDefaultOversample;
  int max_side = kDefaultMaxSide;
  ReportFormat format = ReportFormat::kCsv;
};

/// Refusal to process an image larger than the configured side limit.
class ImageTooLarge : public Error {
 public:
  using Error::Error;
};

/// Throws ImageTooLarge with guidance when side > max_side.
void check_side_limit(int side, int max_side);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on success, 2 on usage errors, 1 on runtime
/// failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eggd::app
