#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracehull/region.hpp"

namespace tracehull {

// Standalone scatter plot: a 4.4 x 4.4 frame over [-2.2, 2.2]^2 with unit
// gridlines, filled circles at the atoms, and the constraint boundary drawn
// when a region is supplied. Output is deterministic (fixed formatting, no
// plotting dependency).
std::string render_scatter_svg(const std::vector<std::pair<double, double>>& atoms,
                               const std::optional<Region>& region);

}  // namespace tracehull
