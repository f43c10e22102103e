#include "stairtile/json_io.hpp"
#include "stairtile/report.hpp"
#include "stairtile/svg_render.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace st = stairtile;

namespace {

st::Word parse_word(const std::string& text) { return st::Word::from_string(text); }

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            unsigned m = static_cast<unsigned>(std::stoul(text));
            return {m, m};
        }
        unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
        unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
        return {lo, hi};
    } catch (const std::exception&) {
        st::fail(st::ErrorKind::BadParameters, "range must be 'lo..hi' or 'm', got '" + text + "'");
    }
}

st::SeedAnchor parse_mode(const std::string& mode) {
    if (mode == "corner") return st::SeedAnchor::Corner;
    if (mode == "centered") return st::SeedAnchor::Centered;
    st::fail(st::ErrorKind::BadParameters, "mode must be 'corner' or 'centered'");
}

std::pair<st::Vec2, st::Vec2> parse_periods(const std::string& text) {
    auto cross = text.find('x');
    if (cross == std::string::npos)
        st::fail(st::ErrorKind::BadParameters, "periods must be 'dx,dyxdx,dy' in whole units");
    auto vec = [](const std::string& s) -> st::Vec2 {
        auto comma = s.find(',');
        if (comma == std::string::npos)
            st::fail(st::ErrorKind::BadParameters, "period vector must be 'dx,dy'");
        return {2 * std::stoll(s.substr(0, comma)), 2 * std::stoll(s.substr(comma + 1))};
    };
    return {vec(text.substr(0, cross)), vec(text.substr(cross + 1))};
}

void emit(const st::Json& j) { std::cout << j.dump(2) << "\n"; }

struct CliOptions {
    // rule
    std::string rule = "sigma1";
    bool as_json = false;
    // patch / staircase
    std::string word;
    unsigned iterations = 0;
    std::string tile = "R";
    std::string mode = "corner";
    std::string out;
    std::string svg;
    std::string in;
    int scale = 8;
    bool diagonal = false;
    bool blocks = false;
    std::string periods;
    // words
    std::string gamma = "0";
    int64_t p = 0, q = 1;
    size_t length = 10;
    // spectral
    int dim = 2;
    std::string matrix;
    std::string areas;
    // bd
    std::string word1 = "constant:1";
    std::string word2 = "constant:2";
    std::string alpha = "2/3";
    std::string range = "1..8";
    std::string p1, p2;
    std::string radius = "auto";
    bool equalize = false;
    bool pairs = false;
    double s_value = 1.0;
    // report
    std::string config;
    std::string out_dir = "report_out";
    // global
    uint64_t seed = 0;
};

st::IntMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<st::Int>> rows;
    std::string row_text;
    std::istringstream stream(text);
    while (std::getline(stream, row_text, ';')) {
        std::vector<st::Int> row;
        std::istringstream cells(row_text);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.emplace_back(cell);
        rows.push_back(std::move(row));
    }
    int n = static_cast<int>(rows.size());
    st::IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
            st::fail(st::ErrorKind::BadParameters, "matrix must be square, 'a,b;c,d'");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

std::vector<st::Rat> parse_areas(const std::string& text, int n) {
    std::vector<st::Rat> areas;
    std::istringstream cells(text);
    std::string cell;
    while (std::getline(cells, cell, ',')) areas.push_back(st::parse_rational(cell));
    if (static_cast<int>(areas.size()) != n)
        st::fail(st::ErrorKind::BadParameters, "areas must list one value per prototile");
    return areas;
}

int run_rule_show(const CliOptions& opt) {
    st::SubstitutionRule rule = st::resolve_rule(opt.rule);
    if (opt.as_json) {
        emit(st::rule_to_json(rule));
        return 0;
    }
    st::IntMatrix m = st::substitution_matrix(rule);
    std::cout << "rule " << rule.name << ", inflation " << rule.inflation << "\n";
    for (int i = 0; i < m.n; ++i) {
        std::cout << (i == 0 ? "matrix [" : "       [");
        for (int j = 0; j < m.n; ++j) std::cout << (j ? " " : "") << m.at(i, j).str();
        std::cout << "]\n";
    }
    for (size_t t = 0; t < rule.images.size(); ++t)
        std::cout << rule.protos->tiles[t].id << " -> " << rule.images[t].size() << " tiles\n";
    return 0;
}

int run_rule_validate(const CliOptions& opt) {
    st::SubstitutionRule rule = st::resolve_rule(opt.rule);
    st::ValidationReport report = st::validate_rule(rule);
    if (report.ok()) {
        std::cout << "rule " << rule.name << ": valid\n";
        return 0;
    }
    for (const auto& issue : report.issues) {
        const char* what = issue.check.status == st::CoverCheck::Status::Overlap ? "overlap"
                           : issue.check.status == st::CoverCheck::Status::OutOfBounds
                               ? "out-of-bounds"
                               : "area-gap";
        std::cout << "rule " << rule.name << ": image of '"
                  << rule.protos->tiles[static_cast<size_t>(issue.prototile)].id << "' has "
                  << what;
        if (issue.check.tile_a >= 0) std::cout << " (tile " << issue.check.tile_a;
        if (issue.check.tile_b >= 0) std::cout << " vs " << issue.check.tile_b;
        if (issue.check.tile_a >= 0) std::cout << ")";
        std::cout << "\n";
    }
    return 1;
}

int run_patch_generate(const CliOptions& opt, bool rule_given) {
    st::Patch result;
    if (rule_given) {
        st::MixedSystem sys = st::single_rule_system(st::resolve_rule(opt.rule));
        int type = sys.protos->index_of(opt.tile);
        if (type < 0) st::fail(st::ErrorKind::BadParameters, "unknown tile '" + opt.tile + "'");
        st::Patch seed = st::initial_tile_patch(sys.protos, type, parse_mode(opt.mode));
        unsigned n = opt.iterations;
        if (!opt.word.empty()) {
            for (char c : opt.word)
                if (c != '1')
                    st::fail(st::ErrorKind::BadParameters,
                             "--word with --rule only accepts letter 1; use --iterations");
            n = static_cast<unsigned>(opt.word.size());
        }
        result = st::act_left(sys, st::constant_word(1, n), seed);
    } else {
        st::MixedSystem sys = st::builtin_system();
        int type = sys.protos->index_of(opt.tile);
        if (type < 0) st::fail(st::ErrorKind::BadParameters, "unknown tile '" + opt.tile + "'");
        st::Patch seed = st::initial_tile_patch(sys.protos, type, parse_mode(opt.mode));
        result = st::act_left(sys, parse_word(opt.word), seed);
    }
    st::Json j = st::patch_to_json(result);
    if (opt.out.empty())
        emit(j);
    else
        st::write_text_file(opt.out, j.dump(2) + "\n");
    std::cout << "tiles: " << result.tiles.size() << "\n";
    return 0;
}

int run_patch_render(const CliOptions& opt) {
    st::Patch patch = st::patch_from_json(
        st::parse_json_text(st::read_text_file(opt.in), opt.in), st::square_rect_prototiles());
    st::RenderStyle style;
    style.scale = opt.scale;
    style.diagonal = opt.diagonal;
    if (!opt.periods.empty()) style.periods = parse_periods(opt.periods);
    st::write_text_file(opt.svg, st::render_svg(patch, style));
    std::cout << "wrote " << opt.svg << "\n";
    return 0;
}

int run_staircase(const CliOptions& opt) {
    st::StaircasePatch sp = st::subdiagonal_patch(parse_word(opt.word), parse_mode(opt.mode));
    if (!opt.out.empty()) st::write_text_file(opt.out, st::patch_to_json(sp.patch).dump(2) + "\n");
    if (!opt.svg.empty()) {
        st::RenderStyle style;
        style.scale = opt.scale;
        style.blocks = opt.blocks;
        st::write_text_file(opt.svg, st::render_svg(sp, style));
    }
    std::cout << "tiles: " << sp.patch.tiles.size() << ", window area: " << sp.window.area().str()
              << ", window perimeter: " << st::perimeter(sp.window).str() << "\n";
    return 0;
}

int run_staircase_counts(const CliOptions& opt) {
    st::Word w = parse_word(opt.word);
    unsigned m = static_cast<unsigned>(w.size());
    st::Json j;
    j["word"] = w.to_string();
    j["m"] = m;
    j["digit_sum"] = st::digit_sum(w).str();
    st::Int closed = st::count_closed_form(w);
    j["closed_form"] = closed.str();
    st::Int budget = st::default_tile_budget();
    if (st::pow9(m) <= budget) {
        st::StaircasePatch sp = st::subdiagonal_patch(w, st::SeedAnchor::Corner, budget);
        st::Int brute(sp.patch.tiles.size());
        j["enumerated"] = brute.str();
        j["agree"] = brute == closed;
        std::vector<st::Int> types = st::type_count_vector(sp.patch);
        j["squares"] = types[0].str();
        j["rects"] = types[1].str();
    }
    bool all2 = std::all_of(w.letters.begin(), w.letters.end(),
                            [](uint8_t l) { return l == 2; });
    if (all2 && m > 0) {
        st::TypeCounts tc = st::type_counts_closed_form(m);
        j["squares_closed_form"] = tc.squares.str();
        j["rects_closed_form"] = tc.rects.str();
    }
    j["window_area"] = st::window_area_closed_form(m).str();
    j["window_perimeter"] = st::window_perimeter_closed_form(m).str();
    if (m > 0) j["decomposition"] = st::decomposition_to_json(st::decomposition_counts(w));
    emit(j);
    return 0;
}

int run_word_gamma(const CliOptions& opt) {
    st::Rat gamma = st::parse_rational(opt.gamma);
    st::Word w = st::gamma_word(gamma, opt.length);
    st::Json j;
    j["gamma"] = st::rat_to_string(gamma);
    j["word"] = w.to_string();
    st::Int d = st::digit_sum(w);
    j["digit_sum"] = d.str();
    if (opt.length > 0) {
        st::Rat err = gamma - st::Rat(d, st::Int(opt.length));
        if (err < 0) err = -err;
        j["slope_error"] = st::rat_to_string(err);
        j["slope_bound"] = st::rat_to_string(st::Rat(1, st::Int(opt.length)));
    }
    emit(j);
    return 0;
}

int run_word_periodic(const CliOptions& opt) {
    st::Word w = st::periodic_word(opt.p, opt.q, opt.length);
    st::Json j;
    j["p"] = opt.p;
    j["q"] = opt.q;
    j["slope"] = st::rat_to_string(st::periodic_slope(opt.p, opt.q));
    j["word"] = w.to_string();
    j["digit_sum"] = st::digit_sum(w).str();
    emit(j);
    return 0;
}

int run_spectral_cmd(const CliOptions& opt) {
    st::IntMatrix m;
    std::vector<st::Rat> areas;
    st::Json j;
    if (!opt.matrix.empty()) {
        m = parse_matrix(opt.matrix);
        areas = opt.areas.empty() ? std::vector<st::Rat>(static_cast<size_t>(m.n), st::Rat(1))
                                  : parse_areas(opt.areas, m.n);
        j["matrix"] = opt.matrix;
    } else {
        st::SubstitutionRule rule = st::resolve_rule(opt.rule);
        m = st::substitution_matrix(rule);
        for (const auto& t : rule.protos->tiles)
            areas.push_back(st::Rat(st::Int(t.size.x2) * t.size.y2, st::Int(4)));
        if (!opt.areas.empty()) areas = parse_areas(opt.areas, m.n);
        j["rule"] = rule.name;
    }
    j["primitive"] = st::is_primitive(m);
    if (j["primitive"].get<bool>())
        j["classifier"] = st::classifier_to_json(st::bd_lattice_classifier(m, areas, opt.dim));
    emit(j);
    return 0;
}

int run_bd_lattice(const CliOptions& opt) {
    auto [lo, hi] = parse_range(opt.range);
    st::DiscrepancySeries series = st::discrepancy_vs_lattice(
        st::word_family_from_spec(opt.word.empty() ? "constant:2" : opt.word),
        st::parse_rational(opt.alpha), lo, hi);
    std::string csv = st::series_to_csv(series);
    if (opt.out.empty())
        std::cout << csv;
    else {
        st::write_text_file(opt.out, csv);
        std::cout << "wrote " << opt.out << "\n";
    }
    return 0;
}

int run_bd_pair(const CliOptions& opt) {
    auto [lo, hi] = parse_range(opt.range);
    st::DiscrepancySeries series = st::discrepancy_pair(st::word_family_from_spec(opt.word1),
                                                        st::word_family_from_spec(opt.word2), lo,
                                                        hi);
    std::string csv = st::series_to_csv(series);
    if (opt.out.empty())
        std::cout << csv;
    else {
        st::write_text_file(opt.out, csv);
        std::cout << "wrote " << opt.out << "\n";
    }
    return 0;
}

int run_bd_match(const CliOptions& opt) {
    st::Json cfg;
    cfg["scenario"] = "matching";
    cfg["p1"] = opt.p1;
    cfg["p2"] = opt.p2;
    cfg["radius"] = opt.radius;
    cfg["equalize"] = opt.equalize;
    cfg["seed"] = opt.seed;
    st::ReportResult result = st::run_report(cfg, opt.out_dir);
    for (const auto& line : result.lines) std::cout << line << "\n";
    for (const auto& artifact : result.artifacts) std::cout << "artifact: " << artifact << "\n";
    return result.ok ? 0 : 1;
}

int run_bd_constant(const CliOptions& opt) {
    st::Json j;
    j["s"] = opt.s_value;
    j["dimension"] = opt.dim;
    j["constant"] = st::boundary_constant(opt.s_value, opt.dim);
    emit(j);
    return 0;
}

int run_report_cmd(const CliOptions& opt) {
    st::Json cfg = st::parse_json_text(st::read_text_file(opt.config), opt.config);
    st::ReportResult result = st::run_report(cfg, opt.out_dir);
    for (const auto& line : result.lines) std::cout << line << "\n";
    for (const auto& artifact : result.artifacts) std::cout << "artifact: " << artifact << "\n";
    std::cout << (result.ok ? "report: all checks passed\n" : "report: CHECKS FAILED\n");
    return result.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"substitution staircases, discrepancy series and matching windows"};
    app.require_subcommand(1);
    CliOptions opt;
    app.add_option("--seed", opt.seed, "seed for any randomized sampling")->capture_default_str();

    auto* rule_cmd = app.add_subcommand("rule", "inspect or validate substitution rules");
    rule_cmd->require_subcommand(1);
    auto* rule_show = rule_cmd->add_subcommand("show", "print a rule");
    rule_show->add_option("--rule", opt.rule, "built-in name or JSON file")->capture_default_str();
    rule_show->add_flag("--json", opt.as_json, "emit the JSON form");
    auto* rule_validate = rule_cmd->add_subcommand("validate", "check images tile the inflation");
    rule_validate->add_option("--rule", opt.rule, "built-in name or JSON file")
        ->capture_default_str();

    auto* patch_cmd = app.add_subcommand("patch", "generate or render patches");
    patch_cmd->require_subcommand(1);
    auto* patch_gen = patch_cmd->add_subcommand("generate", "apply rule words to a seed tile");
    auto* patch_gen_rule = patch_gen->add_option("--rule", opt.rule,
                                                 "iterate one rule instead of the built-in pair");
    patch_gen->add_option("--word", opt.word, "letters over {1,2}, applied right-to-left");
    patch_gen->add_option("--iterations", opt.iterations, "iteration count (single rule)");
    patch_gen->add_option("--tile", opt.tile, "seed prototile id")->capture_default_str();
    patch_gen->add_option("--mode", opt.mode, "corner|centered")->capture_default_str();
    patch_gen->add_option("--out", opt.out, "output patch JSON path");
    auto* patch_render = patch_cmd->add_subcommand("render", "patch JSON to SVG");
    patch_render->add_option("--in", opt.in, "patch JSON path")->required();
    patch_render->add_option("--svg", opt.svg, "output SVG path")->required();
    patch_render->add_option("--scale", opt.scale, "SVG units per half-unit")
        ->capture_default_str();
    patch_render->add_flag("--diagonal", opt.diagonal, "draw the NW-SE diagonal");
    patch_render->add_option("--periods", opt.periods, "overlay grid, e.g. '3,0x0,2'");

    auto* stair = app.add_subcommand("staircase", "sub-diagonal patch of a rule word");
    stair->add_option("--word", opt.word, "letters over {1,2}")->required();
    stair->add_option("--mode", opt.mode, "corner|centered")->capture_default_str();
    stair->add_option("--out", opt.out, "output patch JSON path");
    stair->add_option("--svg", opt.svg, "output SVG path");
    stair->add_option("--scale", opt.scale, "SVG units per half-unit")->capture_default_str();
    stair->add_flag("--blocks", opt.blocks, "overlay the generation blocks");

    auto* counts = app.add_subcommand("staircase-counts", "closed forms vs enumeration");
    counts->add_option("--word", opt.word, "letters over {1,2}")->required();

    auto* word_cmd = app.add_subcommand("word", "digit-sum word generators");
    word_cmd->require_subcommand(1);
    auto* word_gamma = word_cmd->add_subcommand("gamma", "greedy word tracking a slope");
    word_gamma->add_option("--gamma", opt.gamma, "target slope in [-1,1]")->required();
    word_gamma->add_option("--length", opt.length, "word length")->capture_default_str();
    auto* word_periodic = word_cmd->add_subcommand("periodic", "prefix of (1^p 2^(q-p))^inf");
    word_periodic->add_option("--p", opt.p, "ones per period")->required();
    word_periodic->add_option("--q", opt.q, "period length")->required();
    word_periodic->add_option("--length", opt.length, "word length")->capture_default_str();

    auto* spectral = app.add_subcommand("spectral", "eigendata and lattice classifier");
    spectral->add_option("--rule", opt.rule, "built-in name or JSON file")->capture_default_str();
    spectral->add_option("--matrix", opt.matrix, "explicit matrix 'a,b;c,d'");
    spectral->add_option("--areas", opt.areas, "tile areas, comma-separated rationals");
    spectral->add_option("--dim", opt.dim, "ambient dimension")->capture_default_str();

    auto* bd = app.add_subcommand("bd", "discrepancy series and matchings");
    bd->require_subcommand(1);
    auto* bd_lattice = bd->add_subcommand("lattice", "staircase counts vs density share");
    bd_lattice->add_option("--word", opt.word, "word family spec (gamma:, periodic:, constant:)");
    bd_lattice->add_option("--alpha", opt.alpha, "density")->capture_default_str();
    bd_lattice->add_option("--m", opt.range, "length range lo..hi")->capture_default_str();
    bd_lattice->add_option("--out", opt.out, "CSV path (stdout if omitted)");
    auto* bd_pair = bd->add_subcommand("pair", "two word families over one window");
    bd_pair->add_option("--word1", opt.word1, "first family")->capture_default_str();
    bd_pair->add_option("--word2", opt.word2, "second family")->capture_default_str();
    bd_pair->add_option("--m", opt.range, "length range lo..hi")->capture_default_str();
    bd_pair->add_option("--out", opt.out, "CSV path (stdout if omitted)");
    auto* bd_match = bd->add_subcommand("match", "Hall matching between point sources");
    bd_match->add_option("--p1", opt.p1, "staircase:WORD, lattice:p/q, or patch JSON")->required();
    bd_match->add_option("--p2", opt.p2, "staircase:WORD, lattice:p/q, or patch JSON")->required();
    bd_match->add_option("--radius", opt.radius, "'auto' or a rational")->capture_default_str();
    bd_match->add_flag("--equalize", opt.equalize, "subsample the larger side (seeded)");
    bd_match->add_option("--out-dir", opt.out_dir, "artifact directory")->capture_default_str();
    auto* bd_constant = bd->add_subcommand("constant", "perimeter constant for radius s");
    bd_constant->add_option("--s", opt.s_value, "displacement radius")->capture_default_str();
    bd_constant->add_option("--dim", opt.dim, "dimension")->capture_default_str();

    auto* report = app.add_subcommand("report", "run a self-checking scenario");
    report->add_option("--config", opt.config, "scenario config JSON")->required();
    report->add_option("--out-dir", opt.out_dir, "artifact directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (rule_show->parsed()) return run_rule_show(opt);
        if (rule_validate->parsed()) return run_rule_validate(opt);
        if (patch_gen->parsed()) return run_patch_generate(opt, patch_gen_rule->count() > 0);
        if (patch_render->parsed()) return run_patch_render(opt);
        if (stair->parsed()) return run_staircase(opt);
        if (counts->parsed()) return run_staircase_counts(opt);
        if (word_gamma->parsed()) return run_word_gamma(opt);
        if (word_periodic->parsed()) return run_word_periodic(opt);
        if (spectral->parsed()) return run_spectral_cmd(opt);
        if (bd_lattice->parsed()) return run_bd_lattice(opt);
        if (bd_pair->parsed()) return run_bd_pair(opt);
        if (bd_match->parsed()) return run_bd_match(opt);
        if (bd_constant->parsed()) return run_bd_constant(opt);
        if (report->parsed()) return run_report_cmd(opt);
    } catch (const st::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
