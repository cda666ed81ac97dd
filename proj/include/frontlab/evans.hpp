#pragma once

// Rescaled Evans function for -w'' + q w = lambda w with q = phi'/2, computed
// by shooting the decaying solutions in from both ends with their exponential
// rates scaled out.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "frontlab/error.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/ode.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/profile.hpp"
#include "frontlab/roots.hpp"

namespace frontlab {

struct EvansCurve {
    double nu = 0.0;
    /// Ascending; the last entry is the origin.
    std::vector<double> lambdas;
    /// Delta_0 / |Delta_0(-2)|.
    std::vector<double> deltas;
    double half_length = 0.0;
    /// Roots refined by bisection between bracketing samples.
    std::vector<double> negative_roots;
    double delta_at_zero = 0.0;
    /// |Delta_0(-2)|, the normalization applied to deltas.
    double scale = 1.0;
};

struct EvansOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double root_tol = 1e-8;
};

/// The potential phi'/2 with slope phi''/2, cubic between samples and zero
/// beyond the sampled range.
inline HermiteInterpolant evans_potential(const FrontProfile& front) {
    std::vector<double> q(front.dphi), dq(front.ddphi);
    for (auto& v : q) v *= 0.5;
    for (auto& v : dq) v *= 0.5;
    return {front.grid, std::move(q), std::move(dq), 0.0, 0.0};
}

/// Delta_0(lambda) = w2 w1' - w2' w1 at x = 0, where w1 decays at +L and w2 at
/// -L after scaling out exp(-+ sqrt(-lambda) x). A zero potential gives
/// 2 sqrt(-lambda).
template <class Potential>
double shoot_evans(const Potential& q, double lambda, double L, const EvansOptions& eo = {}) {
    if (!(lambda <= 0.0) || !(L > 0.0)) {
        detail::fail(ErrorKind::DomainError, "evans", "shoot_evans needs lambda <= 0 and L > 0");
    }
    const double k = std::sqrt(-lambda);
    using S = ode::State<2>;
    ode::Options opt;
    opt.rtol = eo.rtol;
    opt.atol = eo.atol;
    opt.initial_step = 1e-2;
    opt.max_step = 0.25;
    auto plus = [&](double x, const S& w) -> S { return {w[1] + k * w[0], (q(x) - lambda) * w[0] + k * w[1]}; };
    auto minus = [&](double x, const S& w) -> S { return {w[1] - k * w[0], (q(x) - lambda) * w[0] - k * w[1]}; };
    const S w1 = ode::integrate<2>(plus, L, S{-1.0, k}, 0.0, opt);
    const S w2 = ode::integrate<2>(minus, -L, S{1.0, k}, 0.0, opt);
    const double d = w2[0] * w1[1] - w2[1] * w1[0];
    if (!std::isfinite(d)) {
        detail::fail(ErrorKind::NonFiniteState, "evans", "shooting blew up; reduce L for this lambda");
    }
    return d;
}

inline double shoot_evans(const FrontProfile& front, double lambda, double L, const EvansOptions& eo = {}) {
    if (L > front.half_length * (1.0 + 1e-12)) {
        detail::fail(ErrorKind::DomainError, "evans", "shooting length exceeds the front's domain");
    }
    return shoot_evans(evans_potential(front), lambda, L, eo);
}

/// n log-spaced points from lo to hi (both negative), ascending.
inline std::vector<double> evans_lambda_grid(std::size_t n = 200, double lo = -2.0, double hi = -1e-4) {
    if (n < 2 || !(lo < hi && hi < 0.0)) {
        detail::fail(ErrorKind::DomainError, "evans", "lambda grid needs n >= 2 and lo < hi < 0");
    }
    std::vector<double> out(n);
    const double a = std::log(-lo), b = std::log(-hi);
    for (std::size_t i = 0; i < n; ++i) out[i] = -std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
    return out;
}

namespace detail {

inline bool sign_changes(double a, double b) { return (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0); }

}  // namespace detail

/// Number of sign changes of the sampled Delta_0, the origin included.
inline std::size_t count_negative_roots(const EvansCurve& curve) {
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < curve.deltas.size(); ++i) {
        if (detail::sign_changes(curve.deltas[i], curve.deltas[i + 1])) ++n;
    }
    return n;
}

/// Delta_0 on `lambdas` (negative, ascending) and at the origin, with every
/// sign change refined to a root.
inline EvansCurve evans_curve(const FrontProfile& front, double L, std::vector<double> lambdas,
                              const EvansOptions& eo = {}) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] < 0.0) || (i > 0 && !(lambdas[i] > lambdas[i - 1]))) {
            detail::fail(ErrorKind::DomainError, "evans", "lambdas must be negative and strictly ascending");
        }
    }
    const auto q = evans_potential(front);
    if (L > front.half_length * (1.0 + 1e-12)) {
        detail::fail(ErrorKind::DomainError, "evans", "shooting length exceeds the front's domain");
    }
    EvansCurve c;
    c.nu = front.nu;
    c.half_length = L;
    c.lambdas = std::move(lambdas);
    c.lambdas.push_back(0.0);
    std::vector<double> raw(c.lambdas.size());
    parallel_for(raw.size(), [&](std::size_t i) { raw[i] = shoot_evans(q, c.lambdas[i], L, eo); });
    c.scale = std::abs(shoot_evans(q, -2.0, L, eo));
    if (!(c.scale > 0.0)) c.scale = 1.0;
    c.deltas.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) c.deltas[i] = raw[i] / c.scale;
    c.delta_at_zero = c.deltas.back();

    std::vector<std::size_t> brackets;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        if (detail::sign_changes(raw[i], raw[i + 1])) brackets.push_back(i);
    }
    c.negative_roots.resize(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t r) {
        const std::size_t i = brackets[r];
        auto f = [&](double lam) { return shoot_evans(q, lam, L, eo); };
        c.negative_roots[r] = bisect(f, c.lambdas[i], c.lambdas[i + 1], eo.root_tol, raw[i], raw[i + 1], "evans");
    });
    return c;
}

inline EvansCurve evans_curve(const FrontProfile& front) {
    return evans_curve(front, front.half_length, evans_lambda_grid());
}

/// Dispersion at which Delta_0(0) changes sign, by bisection on nu with the
/// front recomputed at every iterate.
inline double find_nu_critical(double nu_lo, double nu_hi, const std::function<FrontProfile(double)>& solver,
                               double nu_tol = 1e-3) {
    auto sign_at = [&](double nu) {
        const auto front = solver(nu);
        const double d = shoot_evans(front, 0.0, front.half_length);
        return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    };
    const double s_lo = sign_at(nu_lo), s_hi = sign_at(nu_hi);
    if (s_lo * s_hi > 0.0) {
        detail::fail(ErrorKind::BracketError, "evans", "Delta_0(0) has the same sign at both ends of the nu bracket");
    }
    return bisect(sign_at, nu_lo, nu_hi, nu_tol, s_lo, s_hi, "evans");
}

}  // namespace frontlab
