#pragma once

// Stationary KdV–Burgers fronts: phi' + nu phi'' = (phi^2 - 1)/2 with
// phi -> +1 at -inf and phi -> -1 at +inf, computed by shooting along the
// unstable manifold of +1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "frontlab/error.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/ode.hpp"
#include "frontlab/roots.hpp"

namespace frontlab {

struct FrontProfile {
    double nu = 0.0;
    UniformGrid grid;
    std::vector<double> phi;
    std::vector<double> dphi;
    std::vector<double> ddphi;
    double half_length = 0.0;
    double residual = 0.0;
    double ode_tol = 0.0;
    /// Abscissa of the normalizing zero crossing (0 after translation).
    double phase = 0.0;
    /// |phi(-L) - 1| + |phi(L) + 1|: what the truncated domain leaves out.
    double tail_magnitude = 0.0;

    std::size_t size() const { return phi.size(); }
    double h() const { return grid.step; }

    SampledFunction values() const { return {grid, phi, 1.0, -1.0}; }
    SampledFunction derivative() const { return {grid, dphi, 0.0, 0.0}; }
    /// q = phi'/2, the potential of the linearized energy operator.
    SampledFunction half_derivative() const {
        SampledFunction q{grid, dphi, 0.0, 0.0};
        for (auto& v : q.values) v *= 0.5;
        return q;
    }

    HermiteInterpolant phi_interpolant() const { return {grid, phi, dphi, 1.0, -1.0}; }
    HermiteInterpolant dphi_interpolant() const { return {grid, dphi, ddphi, 0.0, 0.0}; }
};

/// Domain half-length used when the caller does not pick one. Grows linearly
/// with nu because the oscillatory tail at -1 decays like exp(-x / (2 nu)).
inline double default_half_length(double nu) { return 40.0 * std::max(1.0, std::abs(nu)); }

/// Grid size giving spacing of about 0.01 on [-L, L].
inline std::size_t default_grid_points(double half_length) {
    return static_cast<std::size_t>(std::ceil(2.0 * half_length / 0.01)) + 1;
}

/// Positive root of nu mu^2 + mu - 1 = 0: growth rate of the unstable
/// direction at phi = +1.
inline double unstable_rate(double nu) {
    if (nu == 0.0) return 1.0;
    return (-1.0 + std::sqrt(1.0 + 4.0 * nu)) / (2.0 * nu);
}

/// max_i |phi' + nu phi'' - (phi^2 - 1)/2| over the stored samples.
inline double front_residual(const FrontProfile& p) {
    if (p.phi.size() < 5 || p.dphi.size() != p.phi.size() || p.ddphi.size() != p.phi.size()) {
        detail::fail(ErrorKind::DomainError, "profile", "front residual needs at least 5 consistent samples");
    }
    double r = 0.0;
    for (std::size_t i = 0; i < p.phi.size(); ++i) {
        r = std::max(r, std::abs(p.dphi[i] + p.nu * p.ddphi[i] - 0.5 * (p.phi[i] * p.phi[i] - 1.0)));
    }
    return r;
}

/// The front for -nu via (x, phi) -> (-x, -phi). Requires a grid symmetric
/// about 0, which every solver output has.
inline FrontProfile reflect_front(const FrontProfile& p) {
    FrontProfile r = p;
    const std::size_t n = p.phi.size();
    r.nu = -p.nu;
    r.grid = {-p.grid.back(), p.grid.step, n};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        r.phi[i] = -p.phi[j];
        r.dphi[i] = p.dphi[j];
        r.ddphi[i] = -p.ddphi[j];
    }
    r.phase = -p.phase;
    return r;
}

/// Traveling front of the KdV–Burgers equation sampled on `grid_points`
/// uniform points of [-half_length, half_length], translated so the front's
/// zero crossing sits at x = 0.
inline FrontProfile solve_front(double nu, double half_length, double ode_tol, std::size_t grid_points) {
    if (!std::isfinite(nu) || !(half_length > 0.0) || !(ode_tol > 0.0) || grid_points < 64) {
        detail::fail(ErrorKind::DomainError, "profile",
                     "solve_front needs finite nu, L > 0, ode_tol > 0 and at least 64 grid points");
    }
    if (nu < 0.0) return reflect_front(solve_front(-nu, half_length, ode_tol, grid_points));

    constexpr double delta = 1e-8;
    const double mu = unstable_rate(nu);
    using S = ode::State<2>;

    // Second component is phi' in both cases; at nu = 0 it is carried along
    // through phi'' = phi phi' and never fed back.
    auto rhs = [nu](double, const S& y) -> S {
        if (nu == 0.0) {
            const double d = 0.5 * (y[0] * y[0] - 1.0);
            return {d, y[0] * d};
        }
        return {y[1], (0.5 * (y[0] * y[0] - 1.0) - y[1]) / nu};
    };

    const double s_end = (std::log(1.0 / delta) + 25.0) / mu + half_length + 10.0;
    ode::Options opt;
    opt.rtol = ode_tol;
    opt.atol = ode_tol * 1e-2;
    opt.initial_step = 1e-2;
    opt.max_step = 0.5;

    std::vector<ode::DenseStep<2>> steps;
    ode::integrate<2>(rhs, 0.0, S{1.0 - delta, -delta * mu}, s_end, opt, [&](const ode::DenseStep<2>& st) {
        steps.push_back(st);
        return std::abs(st.y_new[0]) < 10.0;
    });
    if (steps.empty() || !std::isfinite(steps.back().y_new[0])) {
        detail::fail(ErrorKind::NonFiniteState, "profile", "front integration produced a non-finite state");
    }
    if (std::abs(steps.back().y_new[0] + 1.0) > 0.5 || steps.back().t_new < s_end) {
        detail::fail(ErrorKind::NoConnection, "profile",
                     "trajectory did not settle near -1; increase half_length or tighten ode_tol");
    }

    // Last + to - crossing before the trajectory stays within 0.5 of -1.
    std::size_t settle = steps.size();
    while (settle > 0 && std::abs(steps[settle - 1].y_new[0] + 1.0) < 0.5) --settle;
    std::size_t crossing = steps.size();
    for (std::size_t k = 0; k < settle && k < steps.size(); ++k) {
        if (steps[k].y_old[0] > 0.0 && steps[k].y_new[0] <= 0.0) crossing = k;
    }
    if (crossing == steps.size()) {
        detail::fail(ErrorKind::NoConnection, "profile", "trajectory never crossed zero");
    }
    const auto& cs = steps[crossing];
    const double s_zero = bisect([&](double s) { return cs(s)[0]; }, cs.t_old, cs.t_new, 1e-14, cs.y_old[0],
                                 cs.y_new[0], "profile");
    if (s_zero + half_length > steps.back().t_new) {
        detail::fail(ErrorKind::NoConnection, "profile", "integration span shorter than the requested domain");
    }

    FrontProfile p;
    p.nu = nu;
    p.grid = UniformGrid::symmetric(half_length, grid_points);
    p.half_length = half_length;
    p.ode_tol = ode_tol;
    p.phase = 0.0;
    p.phi.resize(grid_points);
    p.dphi.resize(grid_points);
    p.ddphi.resize(grid_points);

    std::size_t k = 0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double s = s_zero + p.grid.at(i);
        double f, df;
        if (s <= 0.0) {
            const double e = std::exp(mu * s);
            f = 1.0 - delta * e;
            df = -delta * mu * e;
            if (nu == 0.0) df = 0.5 * (f * f - 1.0);
        } else {
            while (k + 1 < steps.size() && steps[k].t_new < s) ++k;
            const S y = steps[k](s);
            f = y[0];
            df = nu == 0.0 ? 0.5 * (f * f - 1.0) : y[1];
        }
        p.phi[i] = f;
        p.dphi[i] = df;
        p.ddphi[i] = nu == 0.0 ? f * df : (0.5 * (f * f - 1.0) - df) / nu;
    }
    if (!all_finite(p.phi) || !all_finite(p.dphi)) {
        detail::fail(ErrorKind::NonFiniteState, "profile", "non-finite samples in the front");
    }
    p.residual = front_residual(p);
    p.tail_magnitude = std::abs(p.phi.front() - 1.0) + std::abs(p.phi.back() + 1.0);
    return p;
}

/// solve_front with the default domain and grid for this nu.
inline FrontProfile solve_front(double nu, double ode_tol = 1e-10) {
    const double L = default_half_length(nu);
    return solve_front(nu, L, ode_tol, default_grid_points(L));
}

/// phi = -tanh(x/2) sampled exactly; the nu = 0 front.
inline FrontProfile exact_burgers_front(double half_length, std::size_t grid_points) {
    FrontProfile p;
    p.grid = UniformGrid::symmetric(half_length, grid_points);
    p.half_length = half_length;
    p.phi.resize(grid_points);
    p.dphi.resize(grid_points);
    p.ddphi.resize(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = p.grid.at(i);
        const double t = std::tanh(0.5 * x);
        p.phi[i] = -t;
        p.dphi[i] = -0.5 * (1.0 - t * t);
        p.ddphi[i] = 0.5 * t * (1.0 - t * t);
    }
    p.residual = front_residual(p);
    p.tail_magnitude = std::abs(p.phi.front() - 1.0) + std::abs(p.phi.back() + 1.0);
    return p;
}

/// Checks of the identities every KdV–Burgers front satisfies.
struct FrontDiagnostics {
    double boundary_error = 0.0;
    double residual = 0.0;
    double min_dphi = 0.0;
    double max_dphi = 0.0;
    /// Trapezoid of (phi')^2; the exact value is 2/3.
    double dphi_energy = 0.0;
    /// Trapezoid of (phi')^- : twice the monotonized amplitude.
    double dphi_negative_mass = 0.0;
};

inline FrontDiagnostics diagnose(const FrontProfile& p) {
    FrontDiagnostics d;
    d.boundary_error = std::abs(p.phi.front() - 1.0) + std::abs(p.phi.back() + 1.0);
    d.residual = front_residual(p);
    d.min_dphi = *std::min_element(p.dphi.begin(), p.dphi.end());
    d.max_dphi = *std::max_element(p.dphi.begin(), p.dphi.end());
    d.dphi_energy = trapezoid_product(p.dphi, p.dphi, p.h());
    std::vector<double> neg(p.dphi.size());
    std::transform(p.dphi.begin(), p.dphi.end(), neg.begin(), [](double v) { return std::max(-v, 0.0); });
    d.dphi_negative_mass = trapezoid(neg, p.h());
    return d;
}

}  // namespace frontlab
