#pragma once

// Bargmann's integral tau(q), the monotonization M(phi) of a front, the ideal
// shock S(phi) and the closed-form bounds for monotone KdV–Burgers fronts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "frontlab/error.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/profile.hpp"
#include "frontlab/roots.hpp"

namespace frontlab {

/// Pointwise max(-q, 0).
inline SampledFunction negative_part(const SampledFunction& q) {
    SampledFunction out = q;
    for (auto& v : out.values) v = std::max(-v, 0.0);
    out.left_limit = std::max(-q.left_limit, 0.0);
    out.right_limit = std::max(-q.right_limit, 0.0);
    return out;
}

struct TauResult {
    double tau = 0.0;
    /// Where the left and right moments balance; empty when q^- vanishes.
    std::optional<double> balance_point;
};

/// Left and right first moments of q^- evaluated at every grid node:
/// left[j] = trapezoid of (x_j - x) q^-(x) over x < x_j,
/// right[j] = trapezoid of (x - x_j) q^-(x) over x > x_j.
struct MomentProfiles {
    std::vector<double> left;
    std::vector<double> right;
};

inline MomentProfiles moment_profiles(const SampledFunction& q) {
    const std::size_t n = q.size();
    const double h = q.step();
    MomentProfiles m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    auto neg = [&](std::size_t i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        return w * std::max(-q.values[i], 0.0);
    };
    // left[j+1] = left[j] + h * sum_{i<=j} w_i q^-_i; differences in x are
    // formed from indices so the result does not depend on the grid origin.
    double mass = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        mass += neg(j);
        m.left[j + 1] = m.left[j] + h * h * mass;
    }
    mass = 0.0;
    for (std::size_t j = n - 1; j > 0; --j) {
        mass += neg(j);
        m.right[j - 1] = m.right[j] + h * h * mass;
    }
    return m;
}

/// max over x0 of min(left moment, right moment) of q^-, located at the
/// unique crossing of the increasing left and decreasing right moments.
inline TauResult tau(const SampledFunction& q) {
    if (q.size() < 2) detail::fail(ErrorKind::DomainError, "bargmann", "tau needs at least two samples");
    const auto m = moment_profiles(q);
    const std::size_t n = q.size();
    if (m.right.front() <= 0.0) return {0.0, std::nullopt};

    std::size_t j = 1;
    while (j < n && m.left[j] - m.right[j] < 0.0) ++j;
    if (j == n) j = n - 1;
    const double g0 = m.left[j - 1] - m.right[j - 1];
    const double g1 = m.left[j] - m.right[j];
    const double t = g1 == g0 ? 0.0 : -g0 / (g1 - g0);
    const double value = m.left[j - 1] + t * (m.left[j] - m.left[j - 1]);
    return {value, q.grid.at(j - 1) + t * q.step()};
}

struct Monotonization {
    SampledFunction m;
    double m_infinity = 0.0;
};

/// Non-increasing M(phi) with M' = -(phi')^-, anchored at M(-L) = +M_inf and
/// M(L) = -M_inf. Built from cell increments so it is exactly constant on
/// cells where phi increases.
inline Monotonization monotonize(const SampledFunction& phi) {
    const std::size_t n = phi.size();
    if (n < 2) detail::fail(ErrorKind::DomainError, "bargmann", "monotonize needs at least two samples");
    double drop = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) drop += std::max(phi.values[i] - phi.values[i + 1], 0.0);
    const double m_inf = 0.5 * drop;

    Monotonization out{phi, m_inf};
    out.m.left_limit = m_inf;
    out.m.right_limit = -m_inf;
    double level = m_inf;
    out.m.values[0] = level;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        level -= std::max(phi.values[i] - phi.values[i + 1], 0.0);
        out.m.values[i + 1] = level;
    }
    return out;
}

namespace detail {

/// Areas between a non-increasing m and the levels +M and -M, integrated with
/// the trapezoid rule and split exactly at an arbitrary abscissa.
class ShockAreas {
public:
    ShockAreas(const SampledFunction& m, double m_inf) : m_(m), m_inf_(m_inf) {
        const std::size_t n = m.size();
        upper_.assign(n, 0.0);
        lower_.assign(n, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            upper_[i + 1] = upper_[i] + 0.5 * m.step() * (a(i) + a(i + 1));
        }
        for (std::size_t i = n - 1; i > 0; --i) {
            lower_[i - 1] = lower_[i] + 0.5 * m.step() * (b(i) + b(i - 1));
        }
    }

    /// Integral of |M - m| from -L to x0.
    double left(double x0) const {
        auto [i, t] = locate(x0);
        if (i + 1 >= m_.size()) return upper_.back();
        const double ax = (1 - t) * a(i) + t * a(i + 1);
        return upper_[i] + 0.5 * t * m_.step() * (a(i) + ax);
    }

    /// Integral of |M + m| from x0 to L.
    double right(double x0) const {
        auto [i, t] = locate(x0);
        if (i + 1 >= m_.size()) return 0.0;
        const double bx = (1 - t) * b(i) + t * b(i + 1);
        return lower_[i + 1] + 0.5 * (1 - t) * m_.step() * (bx + b(i + 1));
    }

private:
    double a(std::size_t i) const { return std::abs(m_inf_ - m_.values[i]); }
    double b(std::size_t i) const { return std::abs(m_inf_ + m_.values[i]); }

    std::pair<std::size_t, double> locate(double x0) const {
        const auto& g = m_.grid;
        if (x0 <= g.front()) return {0, 0.0};
        if (x0 >= g.back()) return {g.size - 1, 0.0};
        const double s = (x0 - g.start) / g.step;
        const std::size_t i = std::min(static_cast<std::size_t>(s), g.size - 2);
        return {i, s - static_cast<double>(i)};
    }

    const SampledFunction& m_;
    double m_inf_;
    std::vector<double> upper_;
    std::vector<double> lower_;
};

}  // namespace detail

/// Offset x0 of the ideal shock that balances the areas on either side.
inline double shock_offset(const SampledFunction& m, double m_infinity) {
    const detail::ShockAreas areas(m, m_infinity);
    auto diff = [&](double x0) { return areas.left(x0) - areas.right(x0); };
    return bisect(diff, m.grid.front(), m.grid.back(), 1e-12, "bargmann");
}

/// Half the L1 distance between m and the decreasing step +-M_inf at x0.
inline double l1_distance(const SampledFunction& m, double m_infinity, double x0) {
    const detail::ShockAreas areas(m, m_infinity);
    return 0.5 * (areas.left(x0) + areas.right(x0));
}

/// -2 log|(1 + phi0)/2| + nu/(1 + phi0): bound on the left area of a
/// monotone front at the point where it takes the value phi0.
inline double analytic_bound_minus(double phi0, double nu) {
    if (phi0 == -1.0 || !std::isfinite(phi0)) {
        detail::fail(ErrorKind::DomainError, "bargmann", "analytic_bound_minus is singular at phi0 = -1");
    }
    return -2.0 * std::log(std::abs((1.0 + phi0) / 2.0)) + nu / (1.0 + phi0);
}

/// -2 log|(1 - phi0)/2| + 4 nu/(3 (1 - phi0)^2): the matching right-area bound.
inline double analytic_bound_plus(double phi0, double nu) {
    if (phi0 == 1.0 || !std::isfinite(phi0)) {
        detail::fail(ErrorKind::DomainError, "bargmann", "analytic_bound_plus is singular at phi0 = 1");
    }
    return -2.0 * std::log(std::abs((1.0 - phi0) / 2.0)) + 4.0 * nu / (3.0 * (1.0 - phi0) * (1.0 - phi0));
}

struct AnalyticTauBound {
    double bound = 0.0;  ///< half the common value at the crossing
    double phi_star = 0.0;
};

/// Upper bound on tau(phi'/2) for monotone fronts, 0 <= nu <= 1/4.
inline AnalyticTauBound analytic_tau_bound(double nu) {
    if (!(nu >= 0.0 && nu <= 0.25)) {
        detail::fail(ErrorKind::DomainError, "bargmann", "analytic_tau_bound needs 0 <= nu <= 1/4");
    }
    auto g = [nu](double p) { return analytic_bound_minus(p, nu) - analytic_bound_plus(p, nu); };
    const double lo = -1.0 + 1e-9, hi = 1.0 - 1e-9;
    const double star = bisect(g, lo, hi, 1e-14, "bargmann");
    return {0.5 * analytic_bound_minus(star, nu), star};
}

using ProfileSolver = std::function<FrontProfile(double)>;

/// tau(phi'/2) for a computed front.
inline double front_tau(const FrontProfile& front) { return tau(front.half_derivative()).tau; }

/// Dispersion nu at which tau(phi'/2) reaches `target`, by bisection on nu.
inline double find_tau_crossing(double target, double nu_lo, double nu_hi, const ProfileSolver& solver,
                                double nu_tol = 1e-4) {
    auto f = [&](double nu) { return front_tau(solver(nu)) - target; };
    const double f_lo = f(nu_lo);
    const double f_hi = f(nu_hi);
    if (!(f_lo < 0.0 && f_hi > 0.0)) {
        detail::fail(ErrorKind::BracketError, "bargmann", "target tau is not bracketed by [nu_lo, nu_hi]");
    }
    return bisect(f, nu_lo, nu_hi, nu_tol, f_lo, f_hi, "bargmann");
}

struct BargmannReport {
    double nu = 0.0;
    /// tau(phi'/2)
    double tau = 0.0;
    std::optional<double> balance_point;
    double m_infinity = 0.0;
    double shock_offset = 0.0;
    /// Half the L1 distance between M(phi) and the shifted ideal shock; by
    /// homogeneity this equals tau(phi') = 2 tau(phi'/2).
    double l1_distance = 0.0;
    bool is_sharp = false;
};

inline BargmannReport bargmann_report(const FrontProfile& front) {
    BargmannReport r;
    r.nu = front.nu;
    const auto t = tau(front.half_derivative());
    r.tau = t.tau;
    r.balance_point = t.balance_point;
    const auto mono = monotonize(front.values());
    r.m_infinity = mono.m_infinity;
    r.shock_offset = shock_offset(mono.m, mono.m_infinity);
    r.l1_distance = l1_distance(mono.m, mono.m_infinity, r.shock_offset);
    r.is_sharp = r.tau < 1.0;
    return r;
}

}  // namespace frontlab
