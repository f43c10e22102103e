#include "stairtile/svg_render.hpp"

#include <sstream>

namespace stairtile {

namespace {

const char* kBlockPalette[] = {"#c0392b", "#1f7a4d", "#8e44ad", "#b07f16", "#1a5276", "#6e2c00"};

struct Frame {
    Rect box; // doubled coordinates
    int scale;

    int64_t sx(int64_t x2) const { return (x2 - box.anchor.x2) * scale; }
    // y flip: the frame's top edge becomes SVG y = 0.
    int64_t sy(int64_t y2) const { return (box.ne().y2 - y2) * scale; }
};

void emit_rect(std::ostringstream& out, const Frame& f, const Rect& r, const std::string& fill,
               const std::string& stroke, int stroke_width) {
    out << "<rect x=\"" << f.sx(r.anchor.x2) << "\" y=\"" << f.sy(r.ne().y2) << "\" width=\""
        << r.size.x2 * f.scale << "\" height=\"" << r.size.y2 * f.scale << "\" fill=\"" << fill
        << "\"";
    if (stroke_width > 0) out << " stroke=\"" << stroke << "\" stroke-width=\"" << stroke_width
                              << "\"";
    out << "/>\n";
}

void emit_line(std::ostringstream& out, const Frame& f, Vec2 a, Vec2 b, const std::string& stroke,
               int width, bool dashed) {
    out << "<line x1=\"" << f.sx(a.x2) << "\" y1=\"" << f.sy(a.y2) << "\" x2=\"" << f.sx(b.x2)
        << "\" y2=\"" << f.sy(b.y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
        << "\"";
    if (dashed) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
}

void emit_periods(std::ostringstream& out, const Frame& f, Vec2 u, Vec2 v) {
    for (Vec2 p : {u, v}) {
        if (p.x2 != 0 && p.y2 != 0)
            fail(ErrorKind::BadParameters, "period overlay supports axis-aligned vectors only");
        if (p.x2 == 0 && p.y2 == 0) fail(ErrorKind::BadParameters, "zero period vector");
        if (p.x2 < 0 || p.y2 < 0) p = -p;
        if (p.x2 > 0) {
            for (int64_t x = f.box.anchor.x2 + p.x2; x < f.box.ne().x2; x += p.x2)
                emit_line(out, f, {x, f.box.anchor.y2}, {x, f.box.ne().y2}, "#444c55", 1, true);
        } else {
            for (int64_t y = f.box.anchor.y2 + p.y2; y < f.box.ne().y2; y += p.y2)
                emit_line(out, f, {f.box.anchor.x2, y}, {f.box.ne().x2, y}, "#444c55", 1, true);
        }
    }
}

std::string render(const Patch& patch, const RenderStyle& style, const Rect& box,
                   const std::vector<DecompositionBlock>* blocks) {
    if (style.scale < 1) fail(ErrorKind::BadParameters, "render scale must be >= 1");
    if (style.fills.empty()) fail(ErrorKind::BadParameters, "need at least one fill color");
    Frame f{box, style.scale};

    Patch sorted = patch;
    normalize(sorted);

    std::ostringstream out;
    int64_t w = box.size.x2 * style.scale, h = box.size.y2 * style.scale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#ffffff\"/>\n";
    for (const auto& tile : sorted.tiles) {
        const std::string& fill =
            style.fills[static_cast<size_t>(tile.type) % style.fills.size()];
        emit_rect(out, f, tile_rect(sorted, tile), fill, style.stroke, style.stroke_width);
    }
    if (blocks && style.blocks) {
        for (const auto& b : *blocks) {
            const char* stroke =
                kBlockPalette[static_cast<size_t>(b.generation - 1) % std::size(kBlockPalette)];
            emit_rect(out, f, b.rect, "none", stroke, 2);
        }
    }
    if (style.periods) emit_periods(out, f, style.periods->first, style.periods->second);
    if (style.diagonal)
        emit_line(out, f, {box.anchor.x2, box.ne().y2}, {box.ne().x2, box.anchor.y2}, "#c0392b",
                  2, false);
    out << "</svg>\n";
    return out.str();
}

} // namespace

std::string render_svg(const Patch& patch, const RenderStyle& style,
                       const std::optional<Rect>& frame) {
    Rect box = frame ? *frame : (patch.support ? *patch.support : bounding_rect(patch));
    return render(patch, style, box, nullptr);
}

std::string render_svg(const StaircasePatch& staircase, RenderStyle style) {
    std::vector<DecompositionBlock> blocks;
    if (style.blocks) {
        blocks = decomposition_blocks(staircase.word);
        if (staircase.mode == SeedAnchor::Corner) {
            // Blocks live in the centered frame; shift into the corner frame.
            Vec2 shift{staircase.frame.size.x2 / 2, staircase.frame.size.y2 / 2};
            for (auto& b : blocks) b.rect.anchor = b.rect.anchor + shift;
        }
    }
    style.diagonal = true;
    return render(staircase.patch, style, staircase.frame, &blocks);
}

} // namespace stairtile
