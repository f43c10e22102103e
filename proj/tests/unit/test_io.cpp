#include "stairtile/json_io.hpp"
#include "stairtile/report.hpp"
#include "stairtile/svg_render.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>
#include <unistd.h>

using namespace stairtile;

namespace {

std::string data_path(const std::string& rel) { return std::string(STAIRTILE_DATA_DIR) + "/" + rel; }

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("stairtile_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("patch json round trip") {
    MixedSystem sys = builtin_system();
    Patch p = act_left(sys, Word::from_string("12"),
                       initial_tile_patch(sys.protos, 1, SeedAnchor::Centered));
    Json j = patch_to_json(p);
    REQUIRE(j.contains("tiles"));
    CHECK(j["tiles"].size() == p.tiles.size());
    Patch q = patch_from_json(j, sys.protos);
    CHECK(same_tiles(p, q));

    Json bad = Json::parse(R"({"tiles": [{"type": "Q", "x2": 0, "y2": 0}]})");
    CHECK_THROWS_AS(patch_from_json(bad, sys.protos), Error);
    Json frac = Json::parse(R"({"tiles": [{"type": "S", "x2": 0.5, "y2": 0}]})");
    CHECK_THROWS_AS(patch_from_json(frac, sys.protos), Error);
}

TEST_CASE("rule json round trip and shipped rule files") {
    for (const char* name : {"sigma1", "sigma2", "rho1"}) {
        SubstitutionRule rule = builtin_rule(name);
        SubstitutionRule back = rule_from_json(rule_to_json(rule));
        CHECK(back.name == rule.name);
        CHECK(back.inflation == rule.inflation);
        CHECK(substitution_matrix(back) == substitution_matrix(rule));
        CHECK(back.images == rule.images);

        // The files under data/rules are the canonical serialized forms.
        std::string text = read_text_file(data_path(std::string("rules/") + name + ".json"));
        SubstitutionRule from_file = rule_from_json(parse_json_text(text, name));
        CHECK(from_file.images == rule.images);
        CHECK(from_file.inflation == rule.inflation);
    }
    CHECK_THROWS_AS(rule_from_json(Json::parse(R"({"name": "x"})")), Error);
}

TEST_CASE("resolve_rule accepts names and paths") {
    CHECK(resolve_rule("sigma2").name == "sigma2");
    SubstitutionRule r = resolve_rule(data_path("rules/rho1.json"));
    CHECK(r.images == builtin_rule("rho1").images);
    CHECK_THROWS_AS(resolve_rule("nonsense"), Error);
    CHECK_THROWS_AS(resolve_rule("./missing_rule.json"), Error);
}

TEST_CASE("csv format is stable") {
    DiscrepancySeries s = discrepancy_pair(constant_family(1), constant_family(2), 1, 2);
    std::string csv = series_to_csv(s);
    CHECK(csv ==
          "m,count1,count2,boundary,ratio,ratio_decimal\n"
          "1,9,3,16,3/8,0.375000\n"
          "2,90,54,64,9/16,0.562500\n");
}

TEST_CASE("series and decomposition json") {
    DiscrepancySeries s = discrepancy_vs_lattice(constant_family(2), Rat(2, 3), 1, 3);
    Json j = series_to_json(s);
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][2]["ratio"] == "81/208");

    Json d = decomposition_to_json(decomposition_counts(Word::from_string("112")));
    CHECK(d["total_tiles"] == "729");
    CHECK(d["rows"].size() == 3);
    CHECK(d["rows"][2]["tiles_per_block"] == "153");
}

TEST_CASE("svg output is deterministic and complete") {
    StaircasePatch sp = subdiagonal_patch(Word::from_string("21"), SeedAnchor::Centered);
    RenderStyle style;
    style.blocks = true;
    std::string a = render_svg(sp, style);
    std::string b = render_svg(sp, style);
    CHECK(a == b);
    CHECK(a.find("<svg") == 0);

    // One rect per tile, plus background and per-generation block outlines.
    size_t rects = 0;
    for (size_t pos = a.find("<rect"); pos != std::string::npos; pos = a.find("<rect", pos + 1))
        ++rects;
    size_t blocks = decomposition_blocks(sp.word).size();
    CHECK(rects == sp.patch.tiles.size() + blocks + 1);
    CHECK(a.find("line") != std::string::npos); // the diagonal is always drawn

    RenderStyle plain;
    plain.periods = std::make_pair(Vec2{6, 0}, Vec2{0, 4});
    MixedSystem sys = builtin_system();
    Patch p = act_left(sys, Word::from_string("1"),
                       initial_tile_patch(sys.protos, 1, SeedAnchor::Corner));
    std::string svg = render_svg(p, plain);
    CHECK(svg.find("dasharray") != std::string::npos);

    RenderStyle skew;
    skew.periods = std::make_pair(Vec2{6, 2}, Vec2{0, 4});
    CHECK_THROWS_AS(render_svg(p, skew), Error);
}

TEST_CASE("file io and json parse errors carry context") {
    TempDir tmp;
    write_text_file(tmp.file("x.json"), "{\n  \"a\": 1,\n}\n");
    CHECK_THROWS_AS(parse_json_text(read_text_file(tmp.file("x.json")), "x.json"), Error);
    try {
        parse_json_text(read_text_file(tmp.file("x.json")), "x.json");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::ConfigParse);
        CHECK(std::string(e.what()).find("x.json") != std::string::npos);
    }
    CHECK_THROWS_AS(read_text_file(tmp.file("missing.json")), Error);

    write_text_file(tmp.file("y.txt"), "payload");
    CHECK(read_text_file(tmp.file("y.txt")) == "payload");
}

TEST_CASE("match outcome json summarizes the certificate") {
    QuadPointSet p1, p2;
    p1.pts.push_back({Quad::rational(0), Quad::rational(0)});
    p1.pts.push_back({Quad::rational(9), Quad::rational(0)});
    p2.pts.push_back({Quad::rational(0), Quad::rational(1)});
    MatchOutcome m = hall_window_match(p1, p2, Quad::rational(1));
    Json j = match_outcome_to_json(m, true);
    CHECK(j["matched"] == 1);
    CHECK(j["size1"] == 2);
    CHECK(j["size2"] == 1);
    CHECK(j["pairs"].size() == 1);
    // p2 is the smaller side here, so no deficiency and no violator.
    CHECK(j["deficiency"] == 0);
    CHECK_FALSE(j.contains("hall_violator"));

    MatchOutcome starved = hall_window_match(p1, p2, Quad::rational(1, 100));
    Json k = match_outcome_to_json(starved);
    CHECK(k["deficiency"] == 1);
    REQUIRE(k.contains("hall_violator"));
    CHECK(k["hall_violator"]["side"] == 2);
}

TEST_CASE("report scenarios run end to end") {
    TempDir tmp;
    Json cfg;
    cfg["scenario"] = "spectral";
    cfg["rule"] = "sigma1";
    ReportResult r = run_report(cfg, tmp.file("out"));
    CHECK(r.ok);
    CHECK_FALSE(r.lines.empty());
    REQUIRE(r.artifacts.size() == 1);
    CHECK(std::filesystem::exists(r.artifacts[0]));

    Json lattice;
    lattice["scenario"] = "lattice-discrepancy";
    lattice["m"] = Json::array({1, 5});
    ReportResult rl = run_report(lattice, tmp.file("out2"));
    CHECK(rl.ok);
    CHECK_THROWS_AS(
        [&] {
            Json broken = lattice;
            broken["m"] = Json::array({4, 2});
            return run_report(broken, tmp.file("out2b"));
        }(),
        Error);

    Json bad;
    bad["scenario"] = "warp-drive";
    CHECK_THROWS_AS(run_report(bad, tmp.file("out3")), Error);
    CHECK_THROWS_AS(run_report(Json::object(), tmp.file("out4")), Error);
}

TEST_CASE("word family specs") {
    CHECK(word_family_from_spec("gamma:1/2").label == "gamma(1/2)");
    CHECK(word_family_from_spec("periodic:1,3").prefix(7).to_string() == "1221221");
    CHECK(word_family_from_spec("constant:2").prefix(2).to_string() == "22");
    CHECK(word_family_from_spec("1221").prefix(3).to_string() == "122");
    CHECK_THROWS_AS(word_family_from_spec("gamma:5"), Error);
    CHECK_THROWS_AS(word_family_from_spec(""), Error);
}
