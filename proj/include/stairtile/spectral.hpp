#pragma once

#include "stairtile/intmatrix.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace stairtile {

// Some power of the non-negative matrix is entrywise positive (Wielandt bound
// n^2 - 2n + 2 caps the search). Error(BadParameters) on negative entries.
bool is_primitive(const IntMatrix& m);

struct EigenRecord {
    std::complex<double> value;
    double modulus = 0;
    bool is_real = false;
    std::optional<Rat> exact; // set on the 2x2 integer-spectrum path
    // The eigenspace contains a vector with nonzero coordinate sum; only such
    // eigenvalues can steer patch-counting discrepancies.
    bool nonzero_sum_eigenvector = false;
    bool repeated = false; // algebraic multiplicity > 1
};

struct PerronData {
    IntMatrix matrix;
    std::vector<Rat> areas;
    bool exact = false; // dominant eigendata carried as exact rationals
    double lambda1 = 0;
    std::optional<Rat> lambda1_exact;
    std::vector<double> v1;    // right Perron eigenvector, positive
    std::vector<Rat> v1_exact; // coprime integer form when exact, else empty
    bool left_check = false;   // whether areas * M == lambda1 * areas
    std::vector<EigenRecord> others; // remaining spectrum, modulus-descending
};

// Dominant eigendata plus the remaining spectrum. 2x2 matrices with a perfect
// square discriminant take a fully exact path; otherwise power iteration to
// 1e-10 within 10^4 steps (Error(NoConvergence)) plus a dense eigensolve.
// Requires primitivity (Error(NotPrimitive)) and positive areas.
PerronData perron_data(const IntMatrix& m, const std::vector<Rat>& areas);

struct DensityResult {
    double value = 0;
    std::optional<Rat> exact;
};

// Tile frequency per unit area: sum(v1) / <areas, v1>.
DensityResult natural_density(const PerronData& pd);

enum class LatticeVerdict {
    EquivalentToLattice,
    NotEquivalentToLattice,
    Boundary,
    NoApplicableEigenvalue,
};

const char* verdict_name(LatticeVerdict v);

struct ClassifierReport {
    LatticeVerdict verdict = LatticeVerdict::NoApplicableEigenvalue;
    int dimension = 0;
    bool exact_path = false;
    double lambda1 = 0;
    std::optional<size_t> chosen; // index into data.others
    double chosen_modulus = 0;
    double threshold = 0;       // lambda1^((d-1)/d)
    bool repeated_flag = false; // chosen eigenvalue has multiplicity > 1
    PerronData data;
};

// Compares the largest applicable subdominant modulus |t| against the boundary
// value lambda1^((d-1)/d): below means bounded-displacement equivalence to a
// lattice is possible, above rules it out, equality is the critical case.
// Float comparisons get a relative 1e-9 Boundary band.
ClassifierReport bd_lattice_classifier(const IntMatrix& m, const std::vector<Rat>& areas,
                                       int dimension);

} // namespace stairtile
