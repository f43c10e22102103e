#include "stairtile/report.hpp"

#include "stairtile/svg_render.hpp"

#include <cctype>
#include <filesystem>
#include <unordered_set>

namespace stairtile {

namespace {

struct Ctx {
    std::string out_dir;
    ReportResult* result = nullptr;

    void check(bool ok, const std::string& what) {
        result->lines.push_back(std::string(ok ? "[ok]   " : "[FAIL] ") + what);
        if (!ok) result->ok = false;
    }

    void note(const std::string& what) { result->lines.push_back("[info] " + what); }

    void artifact(const std::string& name, const std::string& content) {
        std::filesystem::create_directories(out_dir);
        std::string path = out_dir + "/" + name;
        write_text_file(path, content);
        result->artifacts.push_back(path);
    }
};

std::string get_string(const Json& j, const char* key, const std::string& fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_string()) fail(ErrorKind::ConfigParse, std::string("'") + key + "' must be a string");
    return it->get<std::string>();
}

std::pair<unsigned, unsigned> get_range(const Json& j, const char* key, unsigned lo, unsigned hi) {
    auto it = j.find(key);
    if (it == j.end()) return {lo, hi};
    if (it->is_array() && it->size() == 2 && (*it)[0].is_number_integer() &&
        (*it)[1].is_number_integer()) {
        int64_t a = (*it)[0].get<int64_t>(), b = (*it)[1].get<int64_t>();
        if (a >= 1 && a <= b) return {static_cast<unsigned>(a), static_cast<unsigned>(b)};
    }
    fail(ErrorKind::ConfigParse, std::string("'") + key + "' must be [lo, hi] with 1 <= lo <= hi");
}

// [lo, hi] letters-only digit strings are words; everything else is kind:args.
bool looks_like_word(const std::string& s) {
    return !s.empty() && s.find(':') == std::string::npos &&
           s.find_first_not_of("123456789") == std::string::npos;
}

std::pair<int64_t, int64_t> parse_int_pair(const std::string& args, const std::string& ctx) {
    auto comma = args.find(',');
    if (comma == std::string::npos)
        fail(ErrorKind::ConfigParse, ctx + " needs two comma-separated integers, got '" + args + "'");
    try {
        return {std::stoll(args.substr(0, comma)), std::stoll(args.substr(comma + 1))};
    } catch (const std::exception&) {
        fail(ErrorKind::ConfigParse, ctx + ": cannot parse '" + args + "'");
    }
}

} // namespace

WordFamily word_family_from_spec(const std::string& spec) {
    if (looks_like_word(spec)) return fixed_family(Word::from_string(spec));
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        fail(ErrorKind::ConfigParse, "word spec '" + spec +
                                         "' is neither a digit word nor kind:args");
    std::string kind = spec.substr(0, colon), args = spec.substr(colon + 1);
    if (kind == "gamma") return gamma_family(parse_rational(args));
    if (kind == "periodic") {
        auto [p, q] = parse_int_pair(args, "periodic word spec");
        return periodic_family(p, q);
    }
    if (kind == "constant") {
        if (args != "1" && args != "2")
            fail(ErrorKind::ConfigParse, "constant word spec needs letter 1 or 2");
        return constant_family(static_cast<uint8_t>(args[0] - '0'));
    }
    fail(ErrorKind::ConfigParse, "unknown word spec kind '" + kind + "'");
}

namespace {

// "gamma(-1/2)" -> "gamma_-1_2"; keeps artifact names distinct per family.
std::string label_slug(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-')
            out.push_back(c);
        else if (!out.empty() && out.back() != '_')
            out.push_back('_');
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

// ---- scenario: lattice-discrepancy --------------------------------------

void run_lattice_discrepancy(Ctx& ctx, const Json& cfg) {
    WordFamily family = word_family_from_spec(get_string(cfg, "word", "constant:2"));
    Rat alpha = parse_rational(get_string(cfg, "alpha", "2/3"));
    auto [lo, hi] = get_range(cfg, "m", 1, 8);

    DiscrepancySeries series = discrepancy_vs_lattice(family, alpha, lo, hi);
    ctx.artifact("lattice_discrepancy.csv", series_to_csv(series));
    ctx.note("lattice series " + series.label1 + " vs " + series.label2 + ", m=" +
             std::to_string(lo) + ".." + std::to_string(hi));
    ctx.check(true, "closed-form counts matched enumeration within budget");

    bool all2 = get_string(cfg, "word", "constant:2") == "constant:2";
    if (all2 && alpha == Rat(2, 3)) {
        bool gap_ok = true, ratio_ok = true;
        for (const auto& row : series.rows) {
            Rat gap = Rat(row.count1) - row.count2;
            if (gap < 0) gap = -gap;
            if (gap != Rat(row.m * pow3(row.m))) gap_ok = false;
            if (!(row.ratio > Rat(row.m, 8))) ratio_ok = false;
        }
        ctx.check(gap_ok, "defect grows as m*3^m for the all-2s family");
        ctx.check(ratio_ok, "defect-to-boundary ratio exceeds m/8 (unbounded)");
    }
    if (auto it = cfg.find("min_final_ratio"); it != cfg.end()) {
        Rat want = parse_rational(it->get<std::string>());
        ctx.check(series.rows.back().ratio >= want,
                  "final ratio >= " + rat_to_string(want));
    }
}

// ---- scenario: pair-discrepancy ------------------------------------------

void run_pair_discrepancy(Ctx& ctx, const Json& cfg) {
    WordFamily f1 = word_family_from_spec(get_string(cfg, "word1", "constant:1"));
    WordFamily f2 = word_family_from_spec(get_string(cfg, "word2", "constant:2"));
    auto [lo, hi] = get_range(cfg, "m", 1, 20);

    DiscrepancySeries series = discrepancy_pair(f1, f2, lo, hi);
    ctx.artifact("pair_" + label_slug(series.label1) + "_vs_" + label_slug(series.label2) + ".csv",
                 series_to_csv(series));
    ctx.note("pair series " + series.label1 + " vs " + series.label2);

    bool structure_ok = true;
    for (const auto& row : series.rows) {
        Int dd = digit_sum(f1.prefix(row.m)) - digit_sum(f2.prefix(row.m));
        if (dd < 0) dd = -dd;
        Rat gap = Rat(row.count1) - row.count2;
        if (gap < 0) gap = -gap;
        if (gap != Rat(pow3(row.m) * dd)) structure_ok = false;
    }
    ctx.check(structure_ok, "count gap equals 3^m * |digit-sum difference|");
    if (auto it = cfg.find("min_final_ratio"); it != cfg.end()) {
        Rat want = parse_rational(it->get<std::string>());
        ctx.check(series.rows.back().ratio >= want, "final ratio >= " + rat_to_string(want));
    }
}

// ---- scenario: spectral ----------------------------------------------------

void run_spectral(Ctx& ctx, const Json& cfg) {
    SubstitutionRule rule = resolve_rule(get_string(cfg, "rule", "sigma1"));
    ValidationReport validation = validate_rule(rule);
    ctx.check(validation.ok(), "rule '" + rule.name + "' images tile the inflated prototiles");
    IntMatrix m = substitution_matrix(rule);
    std::vector<Rat> areas;
    for (const auto& p : rule.protos->tiles)
        areas.push_back(Rat(Int(p.size.x2) * p.size.y2, 4));
    ClassifierReport report = bd_lattice_classifier(m, areas, 2);
    Json j;
    j["rule"] = rule.name;
    j["classifier"] = classifier_to_json(report);
    ctx.artifact("spectral_" + rule.name + ".json", j.dump(2) + "\n");

    IntMatrix expected(2, {Int(6), Int(9), Int(1), Int(6)});
    if (m == expected) {
        const PerronData& pd = report.data;
        ctx.check(pd.exact && pd.lambda1_exact && *pd.lambda1_exact == 9,
                  "dominant eigenvalue is exactly 9");
        ctx.check(pd.others.size() == 1 && pd.others[0].exact && *pd.others[0].exact == 3,
                  "subdominant eigenvalue is exactly 3");
        DensityResult density = natural_density(pd);
        ctx.check(density.exact && *density.exact == Rat(2, 3), "natural density is exactly 2/3");
        ctx.check(report.verdict == LatticeVerdict::Boundary,
                  "classifier sits on the critical boundary (|3|^2 == 9)");
    } else {
        ctx.note("verdict for '" + rule.name + "': " + verdict_name(report.verdict));
    }
}

// ---- scenario: matching ---------------------------------------------------

struct PointSource {
    std::string label;
    QuadPointSet pts;
    std::optional<CubeUnion> region;
    bool is_lattice = false;
    int64_t p = 0, q = 0;
};

PointSource parse_point_source(const std::string& spec) {
    PointSource src;
    src.label = spec;
    if (spec.rfind("staircase:", 0) == 0) {
        Word w = Word::from_string(spec.substr(10));
        StaircasePatch sp = subdiagonal_patch(w, SeedAnchor::Centered);
        src.pts = to_quad_points(centers(sp.patch));
        src.region = sp.window;
        return src;
    }
    if (spec.rfind("lattice:", 0) == 0) {
        std::string frac = spec.substr(8);
        auto slash = frac.find('/');
        if (slash == std::string::npos)
            fail(ErrorKind::ConfigParse, "lattice spec must be lattice:p/q");
        src.is_lattice = true;
        src.p = std::stoll(frac.substr(0, slash));
        src.q = std::stoll(frac.substr(slash + 1));
        return src;
    }
    // Otherwise: a patch file; centers become the points.
    Patch patch = patch_from_json(parse_json_text(read_text_file(spec), spec),
                                  square_rect_prototiles());
    src.pts = to_quad_points(centers(patch));
    try {
        src.region = cube_union_of_patch(patch);
    } catch (const Error&) {
        // Not cube-aligned; usable as points but not as a lattice region.
    }
    return src;
}

void run_matching(Ctx& ctx, const Json& cfg) {
    PointSource s1 = parse_point_source(get_string(cfg, "p1", "staircase:22"));
    PointSource s2 = parse_point_source(get_string(cfg, "p2", "lattice:2/3"));
    if (s1.is_lattice && s2.is_lattice)
        fail(ErrorKind::ConfigParse, "at most one side can be a lattice");
    if (s1.is_lattice || s2.is_lattice) {
        PointSource& lat = s1.is_lattice ? s1 : s2;
        PointSource& other = s1.is_lattice ? s2 : s1;
        if (!other.region)
            fail(ErrorKind::ConfigParse,
                 "a lattice side needs the other side to define a cube-aligned region");
        lat.pts = lattice_points_in_region(*other.region, lat.p, lat.q);
    }

    bool equalize = cfg.value("equalize", false);
    uint64_t seed = cfg.value("seed", uint64_t{0});
    if (equalize) {
        size_t n = std::min(s1.pts.size(), s2.pts.size());
        if (s1.pts.size() > n) s1.pts = sample_equal_cardinality(s1.pts, n, seed);
        if (s2.pts.size() > n) s2.pts = sample_equal_cardinality(s2.pts, n, seed);
        ctx.note("equalized both sides to " + std::to_string(n) + " points (seed " +
                 std::to_string(seed) + ")");
    }

    Json j;
    j["p1"] = s1.label;
    j["p2"] = s2.label;
    std::string radius = get_string(cfg, "radius", "auto");
    if (radius == "auto") {
        RadiusResult rr = min_matching_radius(s1.pts, s2.pts);
        j["auto_radius"] = true;
        j["result"] = match_outcome_to_json(rr.outcome);
        ctx.artifact("matching.json", j.dump(2) + "\n");
        size_t want = std::min(s1.pts.size(), s2.pts.size());
        ctx.check(!rr.unbounded && rr.outcome.matched == want,
                  "matching saturates the smaller side at radius " +
                      std::to_string(rr.radius));
        if (sign(rr.radius_sq) > 0) {
            MatchOutcome below =
                hall_window_match(s1.pts, s2.pts, rr.radius_sq * Quad::rational(1023, 1024));
            ctx.check(below.matched < want && below.violator.has_value(),
                      "any smaller radius leaves a Hall violator");
        }
    } else {
        Rat r = parse_rational(radius);
        Int num = numerator(r), den = denominator(r);
        if (abs(num) > INT64_MAX / 2 || den > INT64_MAX / 2)
            fail(ErrorKind::ConfigParse, "radius out of range");
        Quad rq = Quad::rational(static_cast<int64_t>(num), static_cast<int64_t>(den));
        MatchOutcome outcome = hall_window_match(s1.pts, s2.pts, rq * rq);
        j["auto_radius"] = false;
        j["result"] = match_outcome_to_json(outcome);
        ctx.artifact("matching.json", j.dump(2) + "\n");
        ctx.check(outcome.deficiency == 0 || outcome.violator.has_value(),
                  "deficiency certified by a Hall violator when positive");
    }
}

// ---- scenario: periodicity --------------------------------------------------

bool eroded_invariance(const Patch& patch, Vec2 period, int64_t collar2) {
    Rect support = patch.support ? *patch.support : bounding_rect(patch);
    Rect eroded{{support.anchor.x2 + collar2, support.anchor.y2 + collar2},
                {support.size.x2 - 2 * collar2, support.size.y2 - 2 * collar2}};
    if (eroded.size.x2 <= 0 || eroded.size.y2 <= 0) return false;
    std::unordered_set<Vec2, Vec2Hash> anchors_by_type[2];
    std::unordered_set<PlacedTile, decltype([](const PlacedTile& t) {
                           return Vec2Hash{}(t.anchor) * 31 + static_cast<size_t>(t.type);
                       })>
        tiles(patch.tiles.begin(), patch.tiles.end());
    for (const auto& tile : patch.tiles) {
        if (!eroded.contains_rect(tile_rect(patch, tile))) continue;
        for (Vec2 shift : {period, -period}) {
            PlacedTile moved{tile.type, tile.anchor + shift};
            if (support.contains_rect(tile_rect(patch, moved)) && !tiles.count(moved))
                return false;
        }
    }
    return true;
}

void run_periodicity(Ctx& ctx, const Json& cfg) {
    SubstitutionRule rule = resolve_rule(get_string(cfg, "rule", "rho1"));
    auto it = cfg.find("m");
    unsigned m = 3;
    if (it != cfg.end()) {
        if (!it->is_number_integer() || it->get<int64_t>() < 1)
            fail(ErrorKind::ConfigParse, "'m' must be a positive integer");
        m = static_cast<unsigned>(it->get<int64_t>());
    }
    MixedSystem sys = single_rule_system(rule);
    int r_type = sys.protos->index_of("R");
    if (r_type < 0) fail(ErrorKind::ConfigParse, "periodicity scenario needs an 'R' prototile");
    Patch patch = act_left(sys, constant_word(1, m),
                           initial_tile_patch(sys.protos, r_type, SeedAnchor::Corner));

    Vec2 horizontal{6, 0}, vertical{0, 4}; // doubled: periods (3, 0) and (0, 2)
    bool ok_h = eroded_invariance(patch, horizontal, 6);
    bool ok_v = eroded_invariance(patch, vertical, 6);
    ctx.check(ok_h, rule.name + "^" + std::to_string(m) + "(R) is (3,0)-periodic off the collar");
    ctx.check(ok_v, rule.name + "^" + std::to_string(m) + "(R) is (0,2)-periodic off the collar");

    RenderStyle style;
    style.scale = m >= 4 ? 2 : 6;
    style.periods = {{horizontal, vertical}};
    ctx.artifact("periodicity_" + rule.name + ".svg", render_svg(patch, style));
}

// ---- bundles ----------------------------------------------------------------

void run_thm13(Ctx& ctx, const Json& cfg) {
    ctx.note("bundle: spectral criticality + unbounded lattice discrepancy + periodic twin");
    {
        Json sub;
        sub["rule"] = "sigma1";
        run_spectral(ctx, sub);
        sub["rule"] = "sigma2";
        run_spectral(ctx, sub);
        IntMatrix m1 = substitution_matrix(builtin_rule("sigma1"));
        IntMatrix m2 = substitution_matrix(builtin_rule("sigma2"));
        IntMatrix mr = substitution_matrix(builtin_rule("rho1"));
        ctx.check(m1 == m2 && m1 == mr,
                  "all built-in rules share one substitution matrix");
    }
    {
        Json sub;
        sub["word"] = "constant:2";
        sub["alpha"] = "2/3";
        sub["m"] = Json::array({1, cfg.value("m_max", 8)});
        run_lattice_discrepancy(ctx, sub);
    }
    {
        Json sub;
        sub["rule"] = "rho1";
        sub["m"] = 3;
        run_periodicity(ctx, sub);
    }
}

void run_thm14(Ctx& ctx, const Json& cfg) {
    ctx.note("bundle: same matrix, diverging staircase counts between rule words");
    {
        Json sub;
        sub["word1"] = "constant:1";
        sub["word2"] = "constant:2";
        sub["m"] = Json::array({1, cfg.value("m_max", 20)});
        run_pair_discrepancy(ctx, sub);
        // The all-1s/all-2s pair: gap 2m*3^m over 8*3^m - 8 beats m/4.
        DiscrepancySeries series =
            discrepancy_pair(constant_family(1), constant_family(2), 1,
                             static_cast<unsigned>(cfg.value("m_max", 20)));
        bool ok = true;
        for (const auto& row : series.rows)
            if (!(row.ratio > Rat(row.m, 4))) ok = false;
        ctx.check(ok, "extreme pair ratio exceeds m/4 at every length");
    }
    {
        Json sub;
        sub["word1"] = "gamma:1/2";
        sub["word2"] = "gamma:-1/2";
        sub["m"] = Json::array({1, 30});
        run_pair_discrepancy(ctx, sub);
        GammaWord g1(Rat(1, 2)), g2(Rat(-1, 2));
        bool ok = true;
        for (unsigned m = 3; m <= 30; ++m) {
            Int dd = g1.digit_sum_at(m) - g2.digit_sum_at(m);
            if (dd < 0) dd = -dd;
            if (dd < Int(m) - 2) ok = false;
        }
        ctx.check(ok, "slope-1/2 vs slope--1/2 digit sums split at rate >= m - 2");
    }
}

} // namespace

ReportResult run_report(const Json& config, const std::string& out_dir) {
    if (!config.is_object()) fail(ErrorKind::ConfigParse, "report config must be a JSON object");
    std::string scenario = get_string(config, "scenario", "");
    if (scenario.empty()) fail(ErrorKind::ConfigParse, "report config needs a 'scenario' field");

    ReportResult result;
    Ctx ctx{out_dir, &result};
    if (scenario == "lattice-discrepancy")
        run_lattice_discrepancy(ctx, config);
    else if (scenario == "pair-discrepancy")
        run_pair_discrepancy(ctx, config);
    else if (scenario == "spectral")
        run_spectral(ctx, config);
    else if (scenario == "matching")
        run_matching(ctx, config);
    else if (scenario == "periodicity")
        run_periodicity(ctx, config);
    else if (scenario == "thm13")
        run_thm13(ctx, config);
    else if (scenario == "thm14")
        run_thm14(ctx, config);
    else
        fail(ErrorKind::ScenarioUnknown, "no scenario named '" + scenario + "'");
    return result;
}

} // namespace stairtile
