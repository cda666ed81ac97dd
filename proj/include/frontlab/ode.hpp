#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "frontlab/error.hpp"

namespace frontlab::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 1e-3;
    double max_step = 0.5;
    std::size_t max_steps = 2'000'000;
};

/// One accepted Dormand–Prince step with its quartic continuous extension.
template <std::size_t N>
struct DenseStep {
    double t_old = 0.0;
    double t_new = 0.0;
    State<N> y_old{};
    State<N> y_new{};
    std::array<State<N>, 5> coeff{};

    State<N> operator()(double t) const {
        const double h = t_new - t_old;
        const double theta = h == 0.0 ? 0.0 : (t - t_old) / h;
        const double theta1 = 1.0 - theta;
        State<N> y{};
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = coeff[0][i] +
                   theta * (coeff[1][i] + theta1 * (coeff[2][i] + theta * (coeff[3][i] + theta1 * coeff[4][i])));
        }
        return y;
    }
};

namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

/// Adaptive Dormand–Prince 5(4) integration of y' = rhs(t, y) from t0 to t1
/// (either direction). `observer(const DenseStep&)` sees every accepted step
/// and may return false to stop early. Returns the final (t, y).
template <std::size_t N, class Rhs, class Observer>
std::pair<double, State<N>> integrate(Rhs&& rhs, double t0, State<N> y0, double t1, const Options& opt,
                                      Observer&& observer) {
    using namespace dp;
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    double t = t0;
    State<N> y = y0;
    double h = dir * std::min(std::abs(opt.initial_step), std::abs(t1 - t0));
    State<N> k1 = rhs(t, y), k2, k3, k4, k5, k6, k7, tmp;
    std::size_t steps = 0;

    auto stage = [&](auto&& combine) -> const State<N>& {
        for (std::size_t i = 0; i < N; ++i) tmp[i] = combine(i);
        return tmp;
    };

    while (dir * (t1 - t) > 0.0) {
        if (++steps > opt.max_steps) {
            detail::fail(ErrorKind::NonFiniteState, "ode", "step budget exhausted");
        }
        if (dir * (t + h - t1) > 0.0) h = t1 - t;

        k2 = rhs(t + c2 * h, stage([&](std::size_t i) { return y[i] + h * a21 * k1[i]; }));
        k3 = rhs(t + c3 * h, stage([&](std::size_t i) { return y[i] + h * (a31 * k1[i] + a32 * k2[i]); }));
        k4 = rhs(t + c4 * h, stage([&](std::size_t i) { return y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]); }));
        k5 = rhs(t + c5 * h, stage([&](std::size_t i) {
            return y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        }));
        k6 = rhs(t + h, stage([&](std::size_t i) {
            return y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        }));
        State<N> y_new;
        for (std::size_t i = 0; i < N; ++i) {
            y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        }
        k7 = rhs(t + h, y_new);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / sc) * (e / sc);
            finite = finite && std::isfinite(y_new[i]);
        }
        err = std::sqrt(err / static_cast<double>(N));
        if (!finite || !std::isfinite(err)) {
            if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
                detail::fail(ErrorKind::NonFiniteState, "ode", "integrator produced a non-finite state");
            }
            h *= 0.25;
            continue;
        }

        if (err <= 1.0) {
            DenseStep<N> step;
            step.t_old = t;
            step.t_new = t + h;
            step.y_old = y;
            step.y_new = y_new;
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = y_new[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                step.coeff[0][i] = y[i];
                step.coeff[1][i] = ydiff;
                step.coeff[2][i] = bspl;
                step.coeff[3][i] = ydiff - h * k7[i] - bspl;
                step.coeff[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            t = step.t_new;
            y = y_new;
            k1 = k7;
            if (!observer(step)) break;
        }
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h = dir * std::min(std::abs(h * fac), opt.max_step);
    }
    return {t, y};
}

template <std::size_t N, class Rhs>
State<N> integrate(Rhs&& rhs, double t0, State<N> y0, double t1, const Options& opt) {
    return integrate<N>(std::forward<Rhs>(rhs), t0, y0, t1, opt, [](const DenseStep<N>&) { return true; }).second;
}

}  // namespace frontlab::ode
