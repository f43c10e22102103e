#include "stairtile/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace stairtile {

namespace {

[[noreturn]] void bad_format(const std::string& what) { fail(ErrorKind::ConfigParse, what); }

int64_t doubled_from_number(const Json& v, const std::string& what) {
    if (v.is_number_integer()) return 2 * v.get<int64_t>();
    if (v.is_number_float()) {
        double x = v.get<double>() * 2;
        double r = std::round(x);
        if (std::abs(x - r) > 1e-9)
            bad_format(what + " must lie on the half-unit grid, got " + v.dump());
        return static_cast<int64_t>(r);
    }
    bad_format(what + " must be a number, got " + v.dump());
}

const Json& require(const Json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) bad_format(ctx + " is missing the '" + key + "' field");
    return *it;
}

} // namespace

Json patch_to_json(const Patch& patch) {
    Patch sorted = patch;
    normalize(sorted);
    Json tiles = Json::array();
    for (const auto& t : sorted.tiles) {
        Json tile;
        tile["type"] = sorted.protos->at(t.type).id;
        tile["x2"] = t.anchor.x2;
        tile["y2"] = t.anchor.y2;
        tiles.push_back(std::move(tile));
    }
    Json j;
    j["tiles"] = std::move(tiles);
    return j;
}

Patch patch_from_json(const Json& j, const PrototileSetPtr& protos) {
    if (!j.is_object()) bad_format("patch document must be an object");
    const Json& tiles = require(j, "tiles", "patch document");
    if (!tiles.is_array()) bad_format("'tiles' must be an array");
    Patch patch{protos, {}, std::nullopt};
    for (const auto& t : tiles) {
        std::string id = require(t, "type", "tile").get<std::string>();
        int type = protos->index_of(id);
        if (type < 0) bad_format("unknown prototile '" + id + "' in patch");
        const Json& x2 = require(t, "x2", "tile");
        const Json& y2 = require(t, "y2", "tile");
        if (!x2.is_number_integer() || !y2.is_number_integer())
            bad_format("tile coordinates must be integers (doubled half-units)");
        patch.tiles.push_back({type, {x2.get<int64_t>(), y2.get<int64_t>()}});
    }
    normalize(patch);
    return patch;
}

Json rule_to_json(const SubstitutionRule& rule) {
    Json j;
    j["name"] = rule.name;
    j["inflation"] = rule.inflation;
    Json protos = Json::array();
    for (const auto& p : rule.protos->tiles) {
        Json entry;
        entry["id"] = p.id;
        entry["w"] = p.size.x2 % 2 == 0 ? Json(p.size.x2 / 2) : Json(p.size.x2 / 2.0);
        entry["h"] = p.size.y2 % 2 == 0 ? Json(p.size.y2 / 2) : Json(p.size.y2 / 2.0);
        protos.push_back(std::move(entry));
    }
    j["prototiles"] = std::move(protos);
    Json images = Json::object();
    for (size_t t = 0; t < rule.images.size(); ++t) {
        Json list = Json::array();
        for (const auto& it : rule.images[t]) {
            Json entry;
            entry["type"] = rule.protos->at(it.type).id;
            entry["x"] = it.offset.x2 % 2 == 0 ? Json(it.offset.x2 / 2) : Json(it.offset.x2 / 2.0);
            entry["y"] = it.offset.y2 % 2 == 0 ? Json(it.offset.y2 / 2) : Json(it.offset.y2 / 2.0);
            list.push_back(std::move(entry));
        }
        images[rule.protos->tiles[t].id] = std::move(list);
    }
    j["images"] = std::move(images);
    return j;
}

SubstitutionRule rule_from_json(const Json& j) {
    if (!j.is_object()) bad_format("rule document must be an object");
    SubstitutionRule rule;
    rule.name = require(j, "name", "rule document").get<std::string>();
    const Json& inflation = require(j, "inflation", "rule document");
    if (!inflation.is_number_integer() || inflation.get<int64_t>() < 2)
        bad_format("'inflation' must be an integer >= 2");
    rule.inflation = inflation.get<int64_t>();

    const Json& protos = require(j, "prototiles", "rule document");
    if (!protos.is_array() || protos.empty()) bad_format("'prototiles' must be a non-empty array");
    auto set = std::make_shared<PrototileSet>();
    for (const auto& p : protos) {
        Prototile tile;
        tile.id = require(p, "id", "prototile").get<std::string>();
        tile.size.x2 = doubled_from_number(require(p, "w", "prototile"), "prototile width");
        tile.size.y2 = doubled_from_number(require(p, "h", "prototile"), "prototile height");
        if (tile.size.x2 <= 0 || tile.size.y2 <= 0) bad_format("prototile sizes must be positive");
        if (set->index_of(tile.id) >= 0) bad_format("duplicate prototile id '" + tile.id + "'");
        set->tiles.push_back(std::move(tile));
    }
    rule.protos = set;

    const Json& images = require(j, "images", "rule document");
    if (!images.is_object()) bad_format("'images' must be an object keyed by prototile id");
    rule.images.resize(set->tiles.size());
    for (const auto& p : set->tiles) {
        auto it = images.find(p.id);
        if (it == images.end()) bad_format("missing image for prototile '" + p.id + "'");
        if (!it->is_array()) bad_format("image of '" + p.id + "' must be an array");
        auto& list = rule.images[static_cast<size_t>(set->index_of(p.id))];
        for (const auto& t : *it) {
            ImageTile tile;
            std::string id = require(t, "type", "image tile").get<std::string>();
            int type = set->index_of(id);
            if (type < 0) bad_format("unknown prototile '" + id + "' in image");
            tile.type = type;
            tile.offset.x2 = doubled_from_number(require(t, "x", "image tile"), "image offset x");
            tile.offset.y2 = doubled_from_number(require(t, "y", "image tile"), "image offset y");
            list.push_back(tile);
        }
    }
    return rule;
}

Json quad_to_json(const Quad& q) {
    Json j;
    j["a"] = q.a;
    j["b"] = q.b;
    j["radicand"] = q.radicand;
    j["den"] = q.den;
    j["value"] = q.to_double();
    j["text"] = q.to_string();
    return j;
}

Json point_set_to_json(const QuadPointSet& ps) {
    Json pts = Json::array();
    for (const auto& p : ps.pts) {
        Json entry;
        entry["x"] = quad_to_json(p.x);
        entry["y"] = quad_to_json(p.y);
        pts.push_back(std::move(entry));
    }
    Json j;
    j["points"] = std::move(pts);
    return j;
}

Json match_outcome_to_json(const MatchOutcome& outcome, bool include_pairs) {
    Json j;
    j["size1"] = outcome.size1;
    j["size2"] = outcome.size2;
    j["radius_sq"] = quad_to_json(outcome.radius_sq);
    j["radius"] = std::sqrt(std::max(0.0, outcome.radius_sq.to_double()));
    j["matched"] = outcome.matched;
    j["deficiency"] = outcome.deficiency;
    if (outcome.violator) {
        Json v;
        v["side"] = outcome.violator->on_first ? 1 : 2;
        v["members"] = outcome.violator->members.size();
        v["neighborhood"] = outcome.violator->neighborhood.size();
        j["hall_violator"] = std::move(v);
    }
    if (include_pairs) {
        Json pairs = Json::array();
        for (const auto& [a, b] : outcome.pairs) pairs.push_back(Json::array({a, b}));
        j["pairs"] = std::move(pairs);
    }
    return j;
}

Json perron_to_json(const PerronData& pd) {
    Json j;
    Json matrix = Json::array();
    for (int i = 0; i < pd.matrix.n; ++i) {
        Json row = Json::array();
        for (int k = 0; k < pd.matrix.n; ++k) row.push_back(pd.matrix.at(i, k).str());
        matrix.push_back(std::move(row));
    }
    j["matrix"] = std::move(matrix);
    j["exact"] = pd.exact;
    j["lambda1"] = pd.lambda1;
    if (pd.lambda1_exact) j["lambda1_exact"] = rat_to_string(*pd.lambda1_exact);
    Json v1 = Json::array();
    if (pd.exact)
        for (const auto& x : pd.v1_exact) v1.push_back(rat_to_string(x));
    else
        for (double x : pd.v1) v1.push_back(x);
    j["v1"] = std::move(v1);
    j["left_check"] = pd.left_check;
    Json others = Json::array();
    for (const auto& rec : pd.others) {
        Json e;
        if (rec.exact) e["exact"] = rat_to_string(*rec.exact);
        e["re"] = rec.value.real();
        e["im"] = rec.value.imag();
        e["modulus"] = rec.modulus;
        e["real"] = rec.is_real;
        e["nonzero_sum_eigenvector"] = rec.nonzero_sum_eigenvector;
        e["repeated"] = rec.repeated;
        others.push_back(std::move(e));
    }
    j["subdominant"] = std::move(others);
    DensityResult density = natural_density(pd);
    j["density"] = density.value;
    if (density.exact) j["density_exact"] = rat_to_string(*density.exact);
    return j;
}

Json classifier_to_json(const ClassifierReport& report) {
    Json j;
    j["verdict"] = verdict_name(report.verdict);
    j["dimension"] = report.dimension;
    j["exact_path"] = report.exact_path;
    j["lambda1"] = report.lambda1;
    j["threshold"] = report.threshold;
    if (report.chosen) {
        j["chosen_index"] = *report.chosen;
        j["chosen_modulus"] = report.chosen_modulus;
    }
    j["repeated_flag"] = report.repeated_flag;
    j["perron"] = perron_to_json(report.data);
    return j;
}

Json series_to_json(const DiscrepancySeries& series) {
    Json rows = Json::array();
    for (const auto& r : series.rows) {
        Json row;
        row["m"] = r.m;
        row["count1"] = r.count1.str();
        row["count2"] = rat_to_string(r.count2);
        row["boundary"] = r.boundary.str();
        row["ratio"] = rat_to_string(r.ratio);
        row["ratio_decimal"] = rat_to_decimal(r.ratio);
        rows.push_back(std::move(row));
    }
    Json j;
    j["label1"] = series.label1;
    j["label2"] = series.label2;
    j["rows"] = std::move(rows);
    return j;
}

std::string series_to_csv(const DiscrepancySeries& series) {
    std::ostringstream out;
    out << "m,count1,count2,boundary,ratio,ratio_decimal\n";
    for (const auto& r : series.rows) {
        out << r.m << ',' << r.count1.str() << ',' << rat_to_string(r.count2) << ','
            << r.boundary.str() << ',' << rat_to_string(r.ratio) << ',' << rat_to_decimal(r.ratio)
            << '\n';
    }
    return out.str();
}

Json decomposition_to_json(const DecompositionCounts& dc) {
    Json rows = Json::array();
    for (const auto& r : dc.rows) {
        Json row;
        row["generation"] = r.generation;
        row["kind"] = std::string(1, r.kind);
        row["block_count"] = r.block_count.str();
        row["tiles_per_block"] = r.tiles_per_block.str();
        row["block_area"] = r.block_area.str();
        rows.push_back(std::move(row));
    }
    Json j;
    j["rows"] = std::move(rows);
    j["total_tiles"] = dc.total_tiles.str();
    j["total_area"] = dc.total_area.str();
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoFailure, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) fail(ErrorKind::IoFailure, "failed reading '" + path + "'");
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
    out << content;
    if (!out.good()) fail(ErrorKind::IoFailure, "failed writing '" + path + "'");
}

Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Turn the byte offset into a line number for a usable message.
        size_t line = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        fail(ErrorKind::ConfigParse,
             origin + " line " + std::to_string(line) + ": " + e.what());
    }
}

SubstitutionRule resolve_rule(const std::string& name_or_path) {
    for (const std::string& name : builtin_rule_names())
        if (name == name_or_path) return builtin_rule(name);
    if (name_or_path.find('.') == std::string::npos && name_or_path.find('/') == std::string::npos)
        fail(ErrorKind::UnknownRule, "no built-in rule named '" + name_or_path + "'");
    return rule_from_json(parse_json_text(read_text_file(name_or_path), name_or_path));
}

} // namespace stairtile
