#pragma once

// Finite-difference Schrödinger operators H = -(1 - eps) d^2/dx^2 + q on a
// uniform grid, their negative spectrum by Sturm counting, and the rank-one
// perturbation H + gamma |q><q|.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "frontlab/error.hpp"
#include "frontlab/grid.hpp"

namespace frontlab {

/// How the grid ends are closed.
///  - Dirichlet: v = 0 one step beyond either end.
///  - Open: the grid is the interior of an infinite uniform lattice on which
///    q vanishes; the exterior is eliminated exactly through its decaying
///    discrete solution. Only spectral parameters sigma <= 0 are meaningful.
enum class Boundary { Dirichlet, Open };

struct SchrodingerOperator {
    SampledFunction potential;
    double epsilon = 0.0;
    Boundary boundary = Boundary::Dirichlet;

    double h() const { return potential.step(); }
    std::size_t size() const { return potential.size(); }
    /// Off-diagonal magnitude (1 - eps)/h^2.
    double coupling() const { return (1.0 - epsilon) / (h() * h()); }
};

inline SchrodingerOperator build_operator(const SampledFunction& q, double epsilon,
                                          Boundary boundary = Boundary::Dirichlet) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        detail::fail(ErrorKind::DomainError, "spectral", "epsilon must lie in [0, 1)");
    }
    if (q.size() < 3) detail::fail(ErrorKind::DomainError, "spectral", "operator needs at least 3 grid points");
    double qmax = 0.0;
    for (double v : q.values) qmax = std::max(qmax, std::abs(v));
    if (q.step() * q.step() * qmax > 0.1) {
        detail::fail(ErrorKind::ResolutionError, "spectral", "grid too coarse for the potential: h^2 max|q| > 0.1");
    }
    return {q, epsilon, boundary};
}

/// Scale-aware cutoff separating bound states from discretization noise.
inline double default_negative_tolerance(const SchrodingerOperator& op) {
    return op.boundary == Boundary::Dirichlet ? 1e-8 / (op.h() * op.h()) : 0.0;
}

namespace detail {

/// Diagonal of H - sigma after the boundary closure has been folded in.
inline std::vector<double> shifted_diagonal(const SchrodingerOperator& op, double sigma) {
    const double c = op.coupling();
    const auto& q = op.potential.values;
    std::vector<double> d(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) d[i] = 2.0 * c + q[i] - sigma;
    if (op.boundary == Boundary::Open) {
        if (sigma > 0.0) {
            fail(ErrorKind::DomainError, "spectral", "open-lattice closure is only defined for sigma <= 0");
        }
        // Exterior pivots converge to the larger root of p^2 - (2c - sigma) p + c^2.
        const double a = 2.0 * c - sigma;
        const double p = 0.5 * (a + std::sqrt(std::max(a * a - 4.0 * c * c, 0.0)));
        d.front() -= c * c / p;
        d.back() -= c * c / p;
    }
    return d;
}

inline double pivot_floor(const SchrodingerOperator& op) {
    return std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon() * (1.0 + op.coupling());
}

}  // namespace detail

/// Number of eigenvalues strictly below sigma (Sturm count of the LDL^T pivots).
inline std::size_t count_below(const SchrodingerOperator& op, double sigma) {
    const auto d = detail::shifted_diagonal(op, sigma);
    const double c2 = op.coupling() * op.coupling();
    const double floor = detail::pivot_floor(op);
    std::size_t count = 0;
    double pivot = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        pivot = i == 0 ? d[0] : d[i] - c2 / pivot;
        if (std::abs(pivot) < floor) pivot = -floor;
        if (pivot < 0.0) ++count;
    }
    return count;
}

/// Solves (H - sigma) x = rhs with the tridiagonal LDL^T factorization.
inline std::vector<double> solve_shifted(const SchrodingerOperator& op, double sigma, std::span<const double> rhs) {
    auto d = detail::shifted_diagonal(op, sigma);
    const double c = op.coupling();
    const std::size_t n = d.size();
    const double floor = detail::pivot_floor(op);
    auto check = [&](double pivot) {
        if (std::abs(pivot) < floor) {
            detail::fail(ErrorKind::ResolventError, "spectral", "shift coincides with an eigenvalue");
        }
    };
    std::vector<double> y(rhs.begin(), rhs.end());
    for (std::size_t i = 1; i < n; ++i) {
        check(d[i - 1]);
        const double l = -c / d[i - 1];
        d[i] += l * c;
        y[i] -= l * y[i - 1];
    }
    check(d[n - 1]);
    std::vector<double> x(n);
    x[n - 1] = y[n - 1] / d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (y[i] + c * x[i + 1]) / d[i];
    return x;
}

/// Lower bound for the spectrum: -Laplacian is nonnegative.
inline double spectrum_floor(const SchrodingerOperator& op) {
    return *std::min_element(op.potential.values.begin(), op.potential.values.end()) - 1e-12;
}

/// Eigenvalue number k (0-based, ascending) located by Sturm bisection in
/// [lo, hi]; requires count_below(lo) <= k < count_below(hi).
inline double bisect_eigenvalue(const SchrodingerOperator& op, std::size_t k, double lo, double hi,
                                double tol = 1e-13) {
    for (int it = 0; it < 200 && hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(op, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

struct SpectrumReport {
    std::optional<double> nu;
    double epsilon = 0.0;
    std::size_t negative_count = 0;
    /// Every eigenvalue below -tol, ascending, followed by the smallest one
    /// above it (0 for the open lattice, where the continuum starts).
    std::vector<double> eigenvalues;
    std::optional<double> gamma;
    std::optional<double> min_eig_perturbed;
};

inline SpectrumReport count_negative_eigenvalues(const SchrodingerOperator& op, double tol) {
    SpectrumReport r;
    r.epsilon = op.epsilon;
    const double cut = -std::abs(tol);
    r.negative_count = count_below(op, cut);
    const double lo = spectrum_floor(op);
    for (std::size_t k = 0; k < r.negative_count; ++k) r.eigenvalues.push_back(bisect_eigenvalue(op, k, lo, cut));
    if (op.boundary == Boundary::Open) {
        r.eigenvalues.push_back(0.0);
    } else {
        const double top = 4.0 * op.coupling() + *std::max_element(op.potential.values.begin(),
                                                                   op.potential.values.end()) + 1.0;
        if (r.negative_count < op.size()) r.eigenvalues.push_back(bisect_eigenvalue(op, r.negative_count, cut, top));
    }
    return r;
}

inline SpectrumReport count_negative_eigenvalues(const SchrodingerOperator& op) {
    return count_negative_eigenvalues(op, default_negative_tolerance(op));
}

/// R(sigma) = 1 + gamma <q, (H - sigma)^{-1} q> with the trapezoid-weighted
/// inner product (h-weighted sum).
inline double resolvent_form(const SchrodingerOperator& op, double gamma, double sigma) {
    const auto& q = op.potential.values;
    const auto x = solve_shifted(op, sigma, q);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * x[i];
    return 1.0 + gamma * op.h() * s;
}

/// Number of eigenvalues of H_gamma = H + gamma h q q^T below sigma. By the
/// inertia of the bordered matrix [[H - sigma, q], [q^T, -1/(gamma h)]]:
/// n(H_gamma - sigma) = n(H - sigma) - [R(sigma) <= 0].
inline std::size_t rank_one_count_below(const SchrodingerOperator& op, double gamma, double sigma) {
    const std::size_t base = count_below(op, sigma);
    if (gamma == 0.0) return base;
    if (resolvent_form(op, gamma, sigma) > 0.0) return base;
    return base == 0 ? 0 : base - 1;
}

/// Herglotz function R(lambda) for lambda in the gap (lambda_0, 0).
inline double herglotz_R(const SchrodingerOperator& op, double gamma, double lambda, double tol = 1e-10) {
    if (count_below(op, lambda - tol) != count_below(op, lambda + tol)) {
        detail::fail(ErrorKind::ResolventError, "spectral", "lambda lies within tol of an eigenvalue of H0");
    }
    return resolvent_form(op, gamma, lambda);
}

/// Smallest spectral value of H_gamma. For the open lattice this is 0 (the
/// continuum edge) unless a bound state lies below it.
inline double rank_one_min_eigenvalue(const SchrodingerOperator& op, double gamma) {
    if (gamma < 0.0) detail::fail(ErrorKind::DomainError, "spectral", "gamma must be nonnegative");
    double norm2 = 0.0;
    for (double v : op.potential.values) norm2 += v * v;
    double lo = spectrum_floor(op);
    auto count = [&](double s) { return rank_one_count_below(op, gamma, s); };

    double hi;
    if (op.boundary == Boundary::Open) {
        if (count(0.0) == 0) return 0.0;
        hi = 0.0;
    } else {
        const double top = 4.0 * op.coupling() + *std::max_element(op.potential.values.begin(),
                                                                   op.potential.values.end()) + 1.0;
        const double base = bisect_eigenvalue(op, 0, lo, top);
        hi = base + gamma * op.h() * norm2 + 1e-12;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count(mid) >= 1) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Lowest eigenvalue of H_gamma for each gamma while it stays below -tol;
/// empty once it has merged with the continuum.
inline std::vector<std::optional<double>> eigenvalue_vs_gamma(const SchrodingerOperator& op,
                                                              std::span<const double> gammas, double tol) {
    std::vector<std::optional<double>> out;
    const double cut = -std::abs(tol);
    const double lo = spectrum_floor(op);
    for (double g : gammas) {
        if (rank_one_count_below(op, g, cut) == 0) {
            out.emplace_back(std::nullopt);
            continue;
        }
        double a = lo, b = cut;
        for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
            const double mid = 0.5 * (a + b);
            if (rank_one_count_below(op, g, mid) >= 1) b = mid;
            else a = mid;
        }
        out.emplace_back(0.5 * (a + b));
    }
    return out;
}

inline std::vector<std::optional<double>> eigenvalue_vs_gamma(const SchrodingerOperator& op,
                                                              std::span<const double> gammas) {
    return eigenvalue_vs_gamma(op, gammas, default_negative_tolerance(op));
}

/// Number of negative eigenvalues of H_gamma (below -tol).
inline std::size_t rank_one_negative_count(const SchrodingerOperator& op, double gamma, double tol) {
    return rank_one_count_below(op, gamma, -std::abs(tol));
}

}  // namespace frontlab
