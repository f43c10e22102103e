#include "stairtile/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace stairtile {

bool is_primitive(const IntMatrix& m) {
    const int n = m.n;
    if (n < 1) fail(ErrorKind::BadParameters, "empty matrix");
    for (const Int& e : m.a)
        if (e < 0) fail(ErrorKind::BadParameters, "substitution matrices are non-negative");

    std::vector<char> p(m.a.size());
    for (size_t i = 0; i < m.a.size(); ++i) p[i] = m.a[i] > 0 ? 1 : 0;
    auto all_pos = [&]() {
        return std::all_of(p.begin(), p.end(), [](char c) { return c != 0; });
    };
    // Wielandt: a primitive matrix has a positive power by exponent n^2 - 2n + 2.
    int bound = n * n - 2 * n + 2;
    std::vector<char> base = p;
    for (int k = 1; k <= bound; ++k) {
        if (all_pos()) return true;
        if (k == bound) break;
        std::vector<char> next(p.size(), 0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                if (p[static_cast<size_t>(i) * n + l])
                    for (int j = 0; j < n; ++j)
                        if (base[static_cast<size_t>(l) * n + j])
                            next[static_cast<size_t>(i) * n + j] = 1;
        p = std::move(next);
    }
    return all_pos();
}

namespace {

constexpr double kRelTol = 1e-9;

std::optional<Int> exact_isqrt(const Int& x) {
    if (x < 0) return std::nullopt;
    Int r = boost::multiprecision::sqrt(x);
    if (r * r == x) return r;
    return std::nullopt;
}

Eigen::MatrixXd to_double_matrix(const IntMatrix& m) {
    Eigen::MatrixXd d(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) d(i, j) = static_cast<double>(m.at(i, j));
    return d;
}

// Largest eigendata by power iteration on the 1-normalized positive cone.
void power_iteration(const Eigen::MatrixXd& m, double& lambda, Eigen::VectorXd& v) {
    const int n = static_cast<int>(m.rows());
    v = Eigen::VectorXd::Constant(n, 1.0 / n);
    lambda = 0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd next = m * v;
        double norm = next.lpNorm<1>();
        if (norm == 0) fail(ErrorKind::NoConvergence, "power iteration hit the zero vector");
        next /= norm;
        double delta = (next - v).lpNorm<Eigen::Infinity>();
        bool lambda_settled = std::abs(norm - lambda) <= 1e-10 * std::max(1.0, norm);
        lambda = norm;
        v = next;
        if (delta <= 1e-10 && lambda_settled) return;
    }
    fail(ErrorKind::NoConvergence, "power iteration did not settle within 10^4 steps");
}

// Whether ker(M - value*I) contains a vector with nonzero coordinate sum:
// appending the all-ones row must raise the rank.
bool eigenspace_has_nonzero_sum(const Eigen::MatrixXd& m, std::complex<double> value) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXcd a = m.cast<std::complex<double>>();
    for (int i = 0; i < n; ++i) a(i, i) -= value;
    Eigen::MatrixXcd stacked(n + 1, n);
    stacked.topRows(n) = a;
    stacked.bottomRows(1) = Eigen::MatrixXcd::Constant(1, n, 1.0);

    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    auto rank_of = [&](const Eigen::MatrixXcd& x) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(x);
        qr.setThreshold(kRelTol * scale);
        return qr.rank();
    };
    return rank_of(stacked) > rank_of(a);
}

bool left_check_exact(const IntMatrix& m, const std::vector<Rat>& areas, const Rat& lambda) {
    for (int j = 0; j < m.n; ++j) {
        Rat s = 0;
        for (int i = 0; i < m.n; ++i) s += areas[static_cast<size_t>(i)] * Rat(m.at(i, j));
        if (s != lambda * areas[static_cast<size_t>(j)]) return false;
    }
    return true;
}

bool left_check_numeric(const IntMatrix& m, const std::vector<Rat>& areas, double lambda) {
    double worst = 0, scale = 1;
    for (int j = 0; j < m.n; ++j) {
        double s = 0;
        for (int i = 0; i < m.n; ++i)
            s += rat_to_double(areas[static_cast<size_t>(i)]) * static_cast<double>(m.at(i, j));
        double target = lambda * rat_to_double(areas[static_cast<size_t>(j)]);
        worst = std::max(worst, std::abs(s - target));
        scale = std::max(scale, std::abs(target));
    }
    return worst <= kRelTol * scale;
}

void sort_records(std::vector<EigenRecord>& records) {
    std::sort(records.begin(), records.end(), [](const EigenRecord& x, const EigenRecord& y) {
        if (x.modulus != y.modulus) return x.modulus > y.modulus;
        if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
        return x.value.imag() > y.value.imag();
    });
}

} // namespace

PerronData perron_data(const IntMatrix& m, const std::vector<Rat>& areas) {
    if (static_cast<int>(areas.size()) != m.n)
        fail(ErrorKind::BadParameters, "areas vector must match the matrix dimension");
    for (const Rat& a : areas)
        if (a <= 0) fail(ErrorKind::BadParameters, "tile areas must be positive");
    if (!is_primitive(m)) fail(ErrorKind::NotPrimitive, "matrix is not primitive");

    PerronData pd;
    pd.matrix = m;
    pd.areas = areas;

    if (m.n == 1) {
        pd.exact = true;
        pd.lambda1_exact = Rat(m.at(0, 0));
        pd.lambda1 = static_cast<double>(m.at(0, 0));
        pd.v1_exact = {Rat(1)};
        pd.v1 = {1.0};
        pd.left_check = left_check_exact(m, areas, *pd.lambda1_exact);
        return pd;
    }

    if (m.n == 2) {
        Int a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 0), d = m.at(1, 1);
        Int tr = a + d;
        Int disc = (a - d) * (a - d) + 4 * b * c; // always >= 0 here
        if (auto sq = exact_isqrt(disc)) {
            // tr and sq share parity, so both eigenvalues are integers.
            Int l1 = (tr + *sq) / 2, l2 = (tr - *sq) / 2;
            pd.exact = true;
            pd.lambda1_exact = Rat(l1);
            pd.lambda1 = static_cast<double>(l1);
            Int v0 = b, v1c = l1 - a; // b > 0 for a primitive 2x2 matrix
            Int g = boost::multiprecision::gcd(v0, v1c);
            if (g > 1) { v0 /= g; v1c /= g; }
            pd.v1_exact = {Rat(v0), Rat(v1c)};
            pd.v1 = {static_cast<double>(v0), static_cast<double>(v1c)};
            pd.left_check = left_check_exact(m, areas, *pd.lambda1_exact);

            EigenRecord sub;
            sub.exact = Rat(l2);
            sub.value = {static_cast<double>(l2), 0.0};
            sub.modulus = std::abs(static_cast<double>(l2));
            sub.is_real = true;
            sub.repeated = (*sq == 0);
            // Eigenvector (b, l2 - a); its coordinate sum decides applicability.
            sub.nonzero_sum_eigenvector = sub.repeated
                                              ? eigenspace_has_nonzero_sum(to_double_matrix(m),
                                                                           sub.value)
                                              : (b + l2 - a) != 0;
            pd.others = {sub};
            return pd;
        }
    }

    Eigen::MatrixXd md = to_double_matrix(m);
    Eigen::VectorXd v;
    power_iteration(md, pd.lambda1, v);
    pd.v1.assign(v.data(), v.data() + v.size());

    Eigen::EigenSolver<Eigen::MatrixXd> solver(md);
    if (solver.info() != Eigen::Success)
        fail(ErrorKind::NoConvergence, "dense eigensolver failed");
    Eigen::VectorXcd eigs = solver.eigenvalues();

    // Identify the Perron eigenvalue (closest to the power-iteration value),
    // cross-checking the two methods against each other.
    int perron = 0;
    for (int i = 1; i < eigs.size(); ++i)
        if (std::abs(eigs(i) - pd.lambda1) < std::abs(eigs(perron) - pd.lambda1)) perron = i;
    if (std::abs(eigs(perron).real() - pd.lambda1) > 1e-6 * std::max(1.0, pd.lambda1) ||
        std::abs(eigs(perron).imag()) > 1e-6 * std::max(1.0, pd.lambda1))
        fail(ErrorKind::NoConvergence, "power iteration and eigensolver disagree");

    // Cluster the remaining eigenvalues so multiplicities are visible.
    double tol = kRelTol * std::max(1.0, pd.lambda1);
    std::vector<int> order;
    for (int i = 0; i < eigs.size(); ++i)
        if (i != perron) order.push_back(i);
    std::vector<char> used(static_cast<size_t>(eigs.size()), 0);
    for (int i : order) {
        if (used[static_cast<size_t>(i)]) continue;
        int multiplicity = 1;
        used[static_cast<size_t>(i)] = 1;
        for (int j : order)
            if (!used[static_cast<size_t>(j)] && std::abs(eigs(j) - eigs(i)) <= tol) {
                used[static_cast<size_t>(j)] = 1;
                ++multiplicity;
            }
        EigenRecord rec;
        rec.value = eigs(i);
        rec.modulus = std::abs(eigs(i));
        rec.is_real = std::abs(eigs(i).imag()) <= tol;
        if (rec.is_real) rec.value.imag(0.0);
        rec.repeated = multiplicity > 1;
        rec.nonzero_sum_eigenvector = eigenspace_has_nonzero_sum(md, rec.value);
        pd.others.push_back(rec);
    }
    sort_records(pd.others);
    pd.left_check = left_check_numeric(m, areas, pd.lambda1);
    return pd;
}

DensityResult natural_density(const PerronData& pd) {
    DensityResult res;
    if (pd.exact) {
        Rat num = 0, den = 0;
        for (size_t i = 0; i < pd.v1_exact.size(); ++i) {
            num += pd.v1_exact[i];
            den += pd.areas[i] * pd.v1_exact[i];
        }
        res.exact = num / den;
        res.value = rat_to_double(*res.exact);
        return res;
    }
    double num = 0, den = 0;
    for (size_t i = 0; i < pd.v1.size(); ++i) {
        num += pd.v1[i];
        den += rat_to_double(pd.areas[i]) * pd.v1[i];
    }
    res.value = num / den;
    return res;
}

const char* verdict_name(LatticeVerdict v) {
    switch (v) {
        case LatticeVerdict::EquivalentToLattice: return "EquivalentToLattice";
        case LatticeVerdict::NotEquivalentToLattice: return "NotEquivalentToLattice";
        case LatticeVerdict::Boundary: return "Boundary";
        case LatticeVerdict::NoApplicableEigenvalue: return "NoApplicableEigenvalue";
    }
    return "?";
}

ClassifierReport bd_lattice_classifier(const IntMatrix& m, const std::vector<Rat>& areas,
                                       int dimension) {
    if (dimension < 1) fail(ErrorKind::BadParameters, "dimension must be >= 1");
    ClassifierReport report;
    report.dimension = dimension;
    report.data = perron_data(m, areas);
    const PerronData& pd = report.data;
    report.lambda1 = pd.lambda1;
    report.exact_path = pd.exact;
    report.threshold = std::pow(pd.lambda1, double(dimension - 1) / dimension);

    for (size_t i = 0; i < pd.others.size(); ++i) {
        if (!pd.others[i].nonzero_sum_eigenvector) continue;
        report.chosen = i;
        break; // records are modulus-descending
    }
    if (!report.chosen) {
        report.verdict = LatticeVerdict::NoApplicableEigenvalue;
        return report;
    }
    const EigenRecord& t = pd.others[*report.chosen];
    report.chosen_modulus = t.modulus;
    report.repeated_flag = t.repeated;

    const unsigned d = static_cast<unsigned>(dimension);
    if (pd.exact && t.exact) {
        // |t|^d versus lambda1^(d-1), entirely in rationals.
        Rat lhs = ipowr(abs(*t.exact), d);
        Rat rhs = ipowr(*pd.lambda1_exact, d - 1);
        report.verdict = lhs == rhs ? LatticeVerdict::Boundary
                         : lhs > rhs ? LatticeVerdict::NotEquivalentToLattice
                                     : LatticeVerdict::EquivalentToLattice;
        return report;
    }
    double lhs = std::pow(t.modulus, dimension);
    double rhs = std::pow(pd.lambda1, dimension - 1);
    if (std::abs(lhs - rhs) <= 1e-9 * std::max(lhs, rhs))
        report.verdict = LatticeVerdict::Boundary;
    else
        report.verdict = lhs > rhs ? LatticeVerdict::NotEquivalentToLattice
                                   : LatticeVerdict::EquivalentToLattice;
    return report;
}

} // namespace stairtile
