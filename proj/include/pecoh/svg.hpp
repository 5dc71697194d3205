#pragma once

#include <string>

#include "pecoh/penrose.hpp"

namespace pecoh
{

    // Standalone SVG document: one polygon per tile in patch order, fill
    // keyed by family, stroke by rotation class, coordinates with 6 decimals,
    // y axis flipped to screen convention, plus a legend of the 40 classes.
    std::string patch_to_svg(const Patch &p);

} // namespace pecoh
