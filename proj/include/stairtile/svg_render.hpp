#pragma once

#include "stairtile/geometry.hpp"
#include "stairtile/staircase.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stairtile {

// Deterministic renderer: same input, byte-identical output. All geometry is
// integer SVG units (scale per half-unit), y axis flipped to screen convention.
struct RenderStyle {
    int scale = 8; // SVG units per half-unit
    std::vector<std::string> fills = {"#e9c46a", "#5b8bb2", "#9c6b9e", "#6aab8e"};
    std::string stroke = "#20242a";
    int stroke_width = 1;
    bool diagonal = false;            // NW-SE diagonal of the frame
    bool blocks = false;              // per-generation block outlines (staircases)
    std::optional<std::pair<Vec2, Vec2>> periods; // axis-aligned period vectors, doubled
};

std::string render_svg(const Patch& patch, const RenderStyle& style,
                       const std::optional<Rect>& frame = std::nullopt);

std::string render_svg(const StaircasePatch& staircase, RenderStyle style);

} // namespace stairtile
