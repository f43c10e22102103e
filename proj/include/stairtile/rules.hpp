#pragma once

#include "stairtile/geometry.hpp"
#include "stairtile/intmatrix.hpp"
#include "stairtile/words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stairtile {

// One tile of a rule image, anchored inside [0, xi*w) x [0, xi*h) of the parent.
struct ImageTile {
    int type = 0;
    Vec2 offset; // doubled

    friend bool operator==(const ImageTile&, const ImageTile&) = default;
};

// Inflate-and-subdivide rule: each prototile T maps to a patch of prototiles
// exactly covering T scaled by the integer inflation factor.
struct SubstitutionRule {
    std::string name;
    int64_t inflation = 0;
    PrototileSetPtr protos;
    std::vector<std::vector<ImageTile>> images; // indexed by prototile
};

struct ValidationIssue {
    int prototile = -1;
    CoverCheck check;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
};

// Checks every image for overlap, out-of-bounds tiles and area gaps against the
// inflated prototile rectangle.
ValidationReport validate_rule(const SubstitutionRule& rule);

// M[i][j] = multiplicity of prototile i in the image of prototile j.
IntMatrix substitution_matrix(const SubstitutionRule& rule);

// Family of rules over one prototile set; a word over {1..k} selects a composition.
struct MixedSystem {
    PrototileSetPtr protos;
    std::vector<SubstitutionRule> rules; // letter j (1-based) is rules[j-1]

    const SubstitutionRule& rule_for_letter(uint8_t letter) const;
};

// Built-in rules on the square/rectangle pair: "sigma1", "sigma2" (point reflections
// of one another), "rho1" (stabilizes a fully periodic tiling), alias "rho2" = "sigma2".
SubstitutionRule builtin_rule(const std::string& name); // Error(UnknownRule)
std::vector<std::string> builtin_rule_names();

MixedSystem builtin_system();                       // rules (sigma1, sigma2)
MixedSystem single_rule_system(SubstitutionRule r); // words become iteration counts

enum class SeedAnchor { Corner, Centered };

// One prototile as a patch: anchored at the origin corner, or centered on the
// origin (anchor -size/2, which keeps cube centers integral for odd sizes).
Patch initial_tile_patch(const PrototileSetPtr& protos, int type, SeedAnchor anchor);

// Everything below that grows patches enforces a tile budget and throws
// Error(WordTooLong) when the predicted result exceeds it.
Int default_tile_budget(); // STAIRTILE_TILE_BUDGET env var, default 10^7

// One substitution step: every anchor is inflated about the origin and replaced
// by the rule image, so supp(sigma(P)) = xi * supp(P).
Patch apply_rule(const SubstitutionRule& rule, const Patch& patch);

// Left action: rules applied right-to-left, act_left(w, P) = s_{w1}(...(s_{wm}(P))).
Patch act_left(const MixedSystem& sys, const Word& w, const Patch& patch);
Patch act_left(const MixedSystem& sys, const Word& w, const Patch& patch, const Int& tile_budget);

// Right action: rules applied left-to-right; equals act_left(reverse(w), .).
Patch act_right(const MixedSystem& sys, const Word& w, const Patch& patch);
Patch act_right(const MixedSystem& sys, const Word& w, const Patch& patch, const Int& tile_budget);

// Tile count of act_left(w, patch), computed from the substitution matrices.
Int predicted_tile_count(const MixedSystem& sys, const Word& w, const Patch& patch);

std::vector<Int> type_count_vector(const Patch& patch);

// Single rule acting like act_left(w, .): images act_left(w, T), inflation xi^|w|.
SubstitutionRule compose(const MixedSystem& sys, const Word& w, const std::string& name);

// Smallest m <= cap such that every length-m product of the system's matrices is
// entrywise positive; nullopt when no such m exists within the cap.
std::optional<int> uniform_primitivity_exponent(const MixedSystem& sys, int cap = 8);

// For v a suffix of w: translations placing act_right(v, T) inside act_right(w, T)
// (nonempty by the structure of the right action). Error(NotASuffix) otherwise.
std::vector<Vec2> check_suffix_containment(const MixedSystem& sys, const Word& v, const Word& w,
                                           int type, const Int& tile_budget = default_tile_budget());

} // namespace stairtile
