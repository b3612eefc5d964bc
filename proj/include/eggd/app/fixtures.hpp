#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eggd/common.hpp"
#include "eggd/image.hpp"

namespace eggd::app {

/// Names of the built-in synthetic scenes: blocks, gradient, checker, texture.
[[nodiscard]] const std::vector<std::string>& fixture_names();

/// Deterministic synthetic RGB scene of the given side. Throws
/// InvalidParameter for an unknown name.
[[nodiscard]] RgbImage make_fixture(std::string_view name, int side, RandomSeed seed);

}  // namespace eggd::app
