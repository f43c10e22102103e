#include "stairtile/discrepancy.hpp"

#include <cmath>

namespace stairtile {

double boundary_constant(double s, int dimension) {
    if (dimension < 1) fail(ErrorKind::BadParameters, "dimension must be >= 1");
    if (!(s >= 0)) fail(ErrorKind::BadParameters, "displacement radius must be >= 0");
    double d = dimension;
    return 2.0 * std::pow(3.0, d - 1) * std::pow(1.0 + 2.0 * (s * std::sqrt(d) + d), d);
}

WordFamily gamma_family(const Rat& gamma) {
    auto shared = std::make_shared<GammaWord>(gamma);
    return {"gamma(" + rat_to_string(gamma) + ")",
            [shared](size_t m) { return shared->prefix(m); }};
}

WordFamily periodic_family(int64_t p, int64_t q) {
    periodic_slope(p, q); // validates
    return {"periodic(" + std::to_string(p) + "," + std::to_string(q) + ")",
            [p, q](size_t m) { return periodic_word(p, q, m); }};
}

WordFamily constant_family(uint8_t letter) {
    return {"constant(" + std::to_string(int(letter)) + ")",
            [letter](size_t m) { return constant_word(letter, m); }};
}

WordFamily fixed_family(const Word& w) {
    return {"word(" + w.to_string() + ")", [w](size_t m) { return w.prefix(m); }};
}

namespace {

Int checked_count(const Word& w, const Int& brute_budget) {
    Int closed = count_closed_form(w);
    if (pow9(static_cast<unsigned>(w.size())) <= brute_budget) {
        Int brute(subdiagonal_patch(w, SeedAnchor::Corner, brute_budget).patch.tiles.size());
        if (brute != closed)
            fail(ErrorKind::AssertionFailed,
                 "closed-form staircase count " + closed.str() + " disagrees with enumeration " +
                     brute.str() + " for word " + w.to_string());
    }
    return closed;
}

} // namespace

DiscrepancySeries discrepancy_vs_lattice(const WordFamily& family, const Rat& alpha,
                                         unsigned m_lo, unsigned m_hi, const Int& brute_budget) {
    if (m_lo < 1 || m_lo > m_hi) fail(ErrorKind::BadParameters, "need 1 <= m_lo <= m_hi");
    DiscrepancySeries series;
    series.label1 = family.label;
    series.label2 = "alpha=" + rat_to_string(alpha);
    for (unsigned m = m_lo; m <= m_hi; ++m) {
        SeriesRow row;
        row.m = m;
        row.count1 = checked_count(family.prefix(m), brute_budget);
        row.count2 = alpha * Rat(window_area_closed_form(m));
        row.boundary = window_perimeter_closed_form(m);
        Rat gap = Rat(row.count1) - row.count2;
        if (gap < 0) gap = -gap;
        row.ratio = gap / Rat(row.boundary);
        series.rows.push_back(std::move(row));
    }
    return series;
}

DiscrepancySeries discrepancy_pair(const WordFamily& first, const WordFamily& second,
                                   unsigned m_lo, unsigned m_hi) {
    if (m_lo < 1 || m_lo > m_hi) fail(ErrorKind::BadParameters, "need 1 <= m_lo <= m_hi");
    DiscrepancySeries series;
    series.label1 = first.label;
    series.label2 = second.label;
    for (unsigned m = m_lo; m <= m_hi; ++m) {
        SeriesRow row;
        row.m = m;
        row.count1 = count_closed_form(first.prefix(m));
        row.count2 = Rat(count_closed_form(second.prefix(m)));
        row.boundary = window_perimeter_closed_form(m);
        Rat gap = Rat(row.count1) - row.count2;
        if (gap < 0) gap = -gap;
        row.ratio = gap / Rat(row.boundary);
        series.rows.push_back(std::move(row));
    }
    return series;
}

DensityVerdict density_compare(const PerronData& a, const PerronData& b) {
    DensityResult da = natural_density(a);
    DensityResult db = natural_density(b);
    if (da.exact && db.exact)
        return *da.exact == *db.exact ? DensityVerdict::SameDensity
                                      : DensityVerdict::NoBDMapPossible;
    double scale = std::max({1.0, std::abs(da.value), std::abs(db.value)});
    return std::abs(da.value - db.value) <= 1e-12 * scale ? DensityVerdict::SameDensity
                                                          : DensityVerdict::NoBDMapPossible;
}

} // namespace stairtile
