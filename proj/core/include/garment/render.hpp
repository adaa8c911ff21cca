#pragma once

#include <span>
#include <string>

#include "garment/io.hpp"
#include "garment/structures.hpp"

namespace garment {

// Deterministic SVG 1.1 picture of a document: red/blue points, the convex
// hull outline, and each highlighted structure as translucent filled
// polygons. A necklace shows its two triangles, a bowtie its two wings
// meeting at the diagonal crossing, a pant the notched simple 4-gon.
// Rendering the same document twice yields byte-identical output.
std::string render_svg(const PointSetDocument& doc,
                       std::span<const StructureInstance> highlights = {});

}  // namespace garment
