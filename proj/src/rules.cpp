#include "stairtile/rules.hpp"

#include <algorithm>
#include <cstdlib>

namespace stairtile {

ValidationReport validate_rule(const SubstitutionRule& rule) {
    ValidationReport report;
    if (rule.inflation < 2) fail(ErrorKind::BadParameters, "inflation factor must be >= 2");
    if (rule.images.size() != rule.protos->tiles.size())
        fail(ErrorKind::BadParameters, "rule must provide one image per prototile");

    for (size_t p = 0; p < rule.images.size(); ++p) {
        Patch image{rule.protos, {}, std::nullopt};
        for (const auto& it : rule.images[p]) image.tiles.push_back({it.type, it.offset});
        Vec2 size = rule.protos->tiles[p].size;
        Rect target{{0, 0}, {size.x2 * rule.inflation, size.y2 * rule.inflation}};
        CoverCheck check = check_exact_cover(image, target);
        if (!check.ok()) report.issues.push_back({static_cast<int>(p), check});
    }
    return report;
}

IntMatrix substitution_matrix(const SubstitutionRule& rule) {
    int n = static_cast<int>(rule.protos->tiles.size());
    IntMatrix m(n);
    for (int j = 0; j < n; ++j)
        for (const auto& it : rule.images[static_cast<size_t>(j)]) m.at(it.type, j) += 1;
    return m;
}

const SubstitutionRule& MixedSystem::rule_for_letter(uint8_t letter) const {
    if (letter < 1 || letter > rules.size())
        fail(ErrorKind::BadParameters,
             "letter " + std::to_string(int(letter)) + " outside the system's alphabet");
    return rules[static_cast<size_t>(letter - 1)];
}

namespace {

std::vector<ImageTile> image_from_units(int type_s, int type_r,
                                        const std::vector<std::pair<char, Vec2>>& units) {
    std::vector<ImageTile> image;
    image.reserve(units.size());
    for (const auto& [kind, at] : units)
        image.push_back({kind == 'S' ? type_s : type_r, {2 * at.x2, 2 * at.y2}});
    return image;
}

// Image of the unit square shared by all built-in rules: two S-rows around one R.
const std::vector<std::pair<char, Vec2>> kSquareImage = {
    {'S', {0, 0}}, {'S', {1, 0}}, {'S', {2, 0}},
    {'R', {0, 1}},
    {'S', {0, 2}}, {'S', {1, 2}}, {'S', {2, 2}},
};

const std::vector<std::pair<char, Vec2>> kSigma1RectImage = {
    {'S', {0, 0}}, {'S', {1, 0}}, {'S', {2, 0}}, {'S', {3, 0}}, {'S', {4, 0}}, {'S', {5, 0}},
    {'R', {6, 0}},
    {'S', {0, 1}}, {'S', {1, 1}}, {'S', {2, 1}}, {'R', {3, 1}}, {'R', {6, 1}},
    {'R', {0, 2}}, {'R', {3, 2}}, {'R', {6, 2}},
};

const std::vector<std::pair<char, Vec2>> kSigma2RectImage = {
    {'R', {0, 0}}, {'R', {3, 0}}, {'R', {6, 0}},
    {'R', {0, 1}}, {'R', {3, 1}}, {'S', {6, 1}}, {'S', {7, 1}}, {'S', {8, 1}},
    {'R', {0, 2}}, {'S', {3, 2}}, {'S', {4, 2}}, {'S', {5, 2}},
    {'S', {6, 2}}, {'S', {7, 2}}, {'S', {8, 2}},
};

const std::vector<std::pair<char, Vec2>> kRho1RectImage = {
    {'R', {0, 0}}, {'R', {3, 0}}, {'R', {6, 0}},
    {'S', {0, 1}}, {'S', {1, 1}}, {'S', {2, 1}}, {'S', {3, 1}}, {'S', {4, 1}},
    {'S', {5, 1}}, {'S', {6, 1}}, {'S', {7, 1}}, {'S', {8, 1}},
    {'R', {0, 2}}, {'R', {3, 2}}, {'R', {6, 2}},
};

SubstitutionRule make_builtin(const std::string& name,
                              const std::vector<std::pair<char, Vec2>>& rect_image) {
    PrototileSetPtr protos = square_rect_prototiles();
    int s = protos->index_of("S");
    int r = protos->index_of("R");
    SubstitutionRule rule{name, 3, protos, {}};
    rule.images.resize(2);
    rule.images[static_cast<size_t>(s)] = image_from_units(s, r, kSquareImage);
    rule.images[static_cast<size_t>(r)] = image_from_units(s, r, rect_image);
    return rule;
}

} // namespace

SubstitutionRule builtin_rule(const std::string& name) {
    if (name == "sigma1") return make_builtin("sigma1", kSigma1RectImage);
    if (name == "sigma2") return make_builtin("sigma2", kSigma2RectImage);
    if (name == "rho2") return make_builtin("rho2", kSigma2RectImage);
    if (name == "rho1") return make_builtin("rho1", kRho1RectImage);
    fail(ErrorKind::UnknownRule, "no built-in rule named '" + name + "'");
}

std::vector<std::string> builtin_rule_names() { return {"sigma1", "sigma2", "rho1", "rho2"}; }

MixedSystem builtin_system() {
    MixedSystem sys;
    sys.protos = square_rect_prototiles();
    sys.rules = {builtin_rule("sigma1"), builtin_rule("sigma2")};
    return sys;
}

MixedSystem single_rule_system(SubstitutionRule r) {
    MixedSystem sys;
    sys.protos = r.protos;
    sys.rules = {std::move(r)};
    return sys;
}

Patch initial_tile_patch(const PrototileSetPtr& protos, int type, SeedAnchor anchor) {
    Vec2 size = protos->at(type).size;
    Vec2 at = anchor == SeedAnchor::Corner ? Vec2{0, 0} : Vec2{-size.x2 / 2, -size.y2 / 2};
    Patch patch{protos, {{type, at}}, Rect{at, size}};
    return patch;
}

Int default_tile_budget() {
    if (const char* env = std::getenv("STAIRTILE_TILE_BUDGET")) {
        try {
            Int budget(env);
            if (budget > 0) return budget;
        } catch (const std::exception&) {
        }
        fail(ErrorKind::BadParameters,
             std::string("STAIRTILE_TILE_BUDGET must be a positive integer, got '") + env + "'");
    }
    return Int(10000000);
}

Patch apply_rule(const SubstitutionRule& rule, const Patch& patch) {
    Patch out{patch.protos, {}, std::nullopt};
    size_t total = 0;
    for (const auto& tile : patch.tiles)
        total += rule.images[static_cast<size_t>(tile.type)].size();
    out.tiles.reserve(total);
    for (const auto& tile : patch.tiles) {
        Vec2 base = tile.anchor * rule.inflation;
        for (const auto& it : rule.images[static_cast<size_t>(tile.type)])
            out.tiles.push_back({it.type, base + it.offset});
    }
    if (patch.support)
        out.support = Rect{patch.support->anchor * rule.inflation,
                           patch.support->size * rule.inflation};
    return out;
}

std::vector<Int> type_count_vector(const Patch& patch) {
    std::vector<Int> counts(patch.protos->tiles.size(), Int(0));
    for (const auto& tile : patch.tiles) counts[static_cast<size_t>(tile.type)] += 1;
    return counts;
}

Int predicted_tile_count(const MixedSystem& sys, const Word& w, const Patch& patch) {
    std::vector<Int> counts = type_count_vector(patch);
    // Applied right-to-left, the count vector picks up M_{w1} ... M_{wm} in order.
    for (size_t i = w.size(); i-- > 0;)
        counts = substitution_matrix(sys.rule_for_letter(w.at(i))) * counts;
    return column_sum(counts);
}

namespace {
void enforce_budget(const MixedSystem& sys, const Word& w, const Patch& patch, const Int& budget) {
    Int predicted = predicted_tile_count(sys, w, patch);
    if (predicted > budget)
        fail(ErrorKind::WordTooLong, "action would produce " + predicted.str() +
                                         " tiles, over the budget of " + budget.str());
}
} // namespace

Patch act_left(const MixedSystem& sys, const Word& w, const Patch& patch, const Int& tile_budget) {
    enforce_budget(sys, w, patch, tile_budget);
    Patch out = patch;
    for (size_t i = w.size(); i-- > 0;) out = apply_rule(sys.rule_for_letter(w.at(i)), out);
    return out;
}

Patch act_left(const MixedSystem& sys, const Word& w, const Patch& patch) {
    return act_left(sys, w, patch, default_tile_budget());
}

Patch act_right(const MixedSystem& sys, const Word& w, const Patch& patch, const Int& tile_budget) {
    return act_left(sys, reverse(w), patch, tile_budget);
}

Patch act_right(const MixedSystem& sys, const Word& w, const Patch& patch) {
    return act_right(sys, w, patch, default_tile_budget());
}

SubstitutionRule compose(const MixedSystem& sys, const Word& w, const std::string& name) {
    if (w.empty()) fail(ErrorKind::BadParameters, "cannot compose the empty word");
    int64_t inflation = 1;
    for (size_t i = 0; i < w.size(); ++i) {
        int64_t xi = sys.rule_for_letter(w.at(i)).inflation;
        if (inflation > (int64_t(1) << 62) / xi)
            fail(ErrorKind::BadParameters, "composed inflation factor overflows");
        inflation *= xi;
    }
    SubstitutionRule rule{name, inflation, sys.protos, {}};
    rule.images.resize(sys.protos->tiles.size());
    for (size_t t = 0; t < sys.protos->tiles.size(); ++t) {
        Patch image = act_left(sys, w, initial_tile_patch(sys.protos, static_cast<int>(t),
                                                          SeedAnchor::Corner));
        for (const auto& tile : image.tiles) rule.images[t].push_back({tile.type, tile.anchor});
    }
    return rule;
}

std::optional<int> uniform_primitivity_exponent(const MixedSystem& sys, int cap) {
    const int n = static_cast<int>(sys.protos->tiles.size());
    const size_t k = sys.rules.size();
    if (k == 0) fail(ErrorKind::BadParameters, "empty system");

    // Boolean positivity patterns of all length-m products, grown letter by letter.
    using Pattern = std::vector<char>; // row-major n*n, 0/1
    std::vector<Pattern> base;
    for (const auto& rule : sys.rules) {
        IntMatrix m = substitution_matrix(rule);
        Pattern p(static_cast<size_t>(n) * n, 0);
        for (size_t i = 0; i < p.size(); ++i) p[i] = m.a[i] > 0 ? 1 : 0;
        base.push_back(std::move(p));
    }
    auto bool_mul = [n](const Pattern& x, const Pattern& y) {
        Pattern r(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                if (x[static_cast<size_t>(i) * n + l])
                    for (int j = 0; j < n; ++j)
                        if (y[static_cast<size_t>(l) * n + j]) r[static_cast<size_t>(i) * n + j] = 1;
        return r;
    };
    auto all_positive = [](const Pattern& p) {
        return std::all_of(p.begin(), p.end(), [](char c) { return c != 0; });
    };

    std::vector<Pattern> products{Pattern(static_cast<size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) products[0][static_cast<size_t>(i) * n + i] = 1;
    for (int m = 1; m <= cap; ++m) {
        std::vector<Pattern> next;
        next.reserve(products.size() * k);
        for (const auto& p : products)
            for (const auto& b : base) next.push_back(bool_mul(b, p));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (std::all_of(next.begin(), next.end(), all_positive)) return m;
        products = std::move(next);
    }
    return std::nullopt;
}

std::vector<Vec2> check_suffix_containment(const MixedSystem& sys, const Word& v, const Word& w,
                                           int type, const Int& tile_budget) {
    if (v.size() > w.size())
        fail(ErrorKind::NotASuffix, "candidate suffix is longer than the word");
    size_t shift = w.size() - v.size();
    for (size_t i = 0; i < v.size(); ++i)
        if (v.at(i) != w.at(shift + i))
            fail(ErrorKind::NotASuffix, "'" + v.to_string() + "' is not a suffix of '" +
                                            w.to_string() + "'");
    Patch seed = initial_tile_patch(sys.protos, type, SeedAnchor::Corner);
    Patch small = act_right(sys, v, seed, tile_budget);
    Patch big = act_right(sys, w, seed, tile_budget);
    return find_subpatch(small, big);
}

} // namespace stairtile
