#pragma once

// Modulated-front dynamics for u_t + u u_x = u_xx + L u. The perturbation v of
// u = phi(x + x0(t)) + v is evolved on a periodic domain with absorbing
// layers; x0 follows dx0/dt = gamma <phi', v>.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "frontlab/error.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/profile.hpp"

namespace frontlab {

using Complex = std::complex<double>;

/// Fourier symbol l(k) of the linear operator L.
struct MultiplierSpec {
    std::function<Complex(double)> symbol;
    std::string description;
};

inline MultiplierSpec kdvb_multiplier(double nu) {
    return {[nu](double k) { return Complex(0.0, -nu * k * k * k); }, "nu d^3/dx^3, nu=" + std::to_string(nu)};
}

inline MultiplierSpec zero_multiplier() {
    return {[](double) { return Complex(0.0, 0.0); }, "zero"};
}

/// Symbol values on the wavenumbers `k`; rejects Re l > 0 or l(0) != 0.
inline std::vector<Complex> admissible_symbol(const MultiplierSpec& m, const std::vector<double>& k) {
    if (!m.symbol) detail::fail(ErrorKind::ConfigError, "dynamics", "multiplier has no symbol");
    std::vector<Complex> out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        out[i] = m.symbol(k[i]);
        if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag())) {
            detail::fail(ErrorKind::ConfigError, "dynamics", "multiplier is not finite on the frequency grid");
        }
        if (out[i].real() > 0.0) {
            detail::fail(ErrorKind::ConfigError, "dynamics", "multiplier violates Re l(k) <= 0");
        }
    }
    if (m.symbol(0.0) != Complex(0.0, 0.0)) {
        detail::fail(ErrorKind::ConfigError, "dynamics", "multiplier violates l(0) = 0");
    }
    return out;
}

/// Real-to-complex FFT pair of fixed even size. Plans are made once; execution
/// on caller buffers is thread-safe.
class PeriodicFft {
public:
    explicit PeriodicFft(std::size_t n) : n_(n) {
        if (n < 8 || n % 2 != 0) detail::fail(ErrorKind::DomainError, "dynamics", "FFT size must be even and >= 8");
        std::vector<double> r(n);
        std::vector<Complex> c(n / 2 + 1);
        std::lock_guard lock(planner_mutex());
        forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), r.data(), reinterpret_cast<fftw_complex*>(c.data()),
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
        inverse_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(c.data()), r.data(),
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    PeriodicFft(const PeriodicFft&) = delete;
    PeriodicFft& operator=(const PeriodicFft&) = delete;
    ~PeriodicFft() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(inverse_);
    }

    std::size_t size() const { return n_; }

    std::vector<Complex> forward(std::vector<double> x) const {
        std::vector<Complex> c(n_ / 2 + 1);
        fftw_execute_dft_r2c(forward_, x.data(), reinterpret_cast<fftw_complex*>(c.data()));
        return c;
    }

    /// Normalized inverse; the input is consumed.
    std::vector<double> inverse(std::vector<Complex> c) const {
        std::vector<double> x(n_);
        fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(c.data()), x.data());
        for (auto& v : x) v /= static_cast<double>(n_);
        return x;
    }

private:
    static std::mutex& planner_mutex() {
        static std::mutex m;
        return m;
    }

    std::size_t n_;
    fftw_plan forward_{};
    fftw_plan inverse_{};
};

/// Periodic grid of `points` nodes on [-D, D).
inline UniformGrid periodic_grid(double D, std::size_t points) {
    if (!(D > 0.0) || points < 8 || points % 2 != 0) {
        detail::fail(ErrorKind::DomainError, "dynamics", "periodic grid needs D > 0 and an even number of points");
    }
    return {-D, 2.0 * D / static_cast<double>(points), points};
}

/// Domain for simulating near `front`: D = 2L.
inline UniformGrid simulation_grid(const FrontProfile& front, std::size_t points) {
    return periodic_grid(2.0 * front.half_length, points);
}

/// Power-of-two grid size giving spacing of at most about 0.08 on [-D, D).
inline std::size_t default_simulation_points(double D) {
    std::size_t n = 64;
    while (2.0 * D / static_cast<double>(n) > 0.08 + 1e-12) n *= 2;
    return n;
}

/// amplitude * exp(-(x - center)^2 / (2 width^2)) on `grid`.
inline SampledFunction gaussian(const UniformGrid& grid, double amplitude, double center = 0.0, double width = 1.0) {
    SampledFunction f{grid, std::vector<double>(grid.size), 0.0, 0.0};
    for (std::size_t i = 0; i < grid.size; ++i) {
        const double z = (grid.at(i) - center) / width;
        f.values[i] = amplitude * std::exp(-0.5 * z * z);
    }
    return f;
}

struct SimState {
    double t = 0.0;
    /// Perturbation on a periodic grid (the last node's neighbor is the first).
    SampledFunction v;
    double x0 = 0.0;
    /// Reference front; null gives a zero background, a test hook.
    std::shared_ptr<const FrontProfile> front;
    double gamma = 0.0;
};

struct SimTrace {
    std::vector<double> times;
    /// ||v||^2
    std::vector<double> l2_v;
    /// ||v_x||^2
    std::vector<double> l2_vx;
    std::vector<double> x0_series;
    std::vector<double> energy_residual;
    /// -gamma <phi', v>^2
    std::vector<double> modulation_term;
    std::vector<double> sup_v;
    std::vector<double> sup_bound;
    double dt = 0.0;
};

/// Right side of the energy identity, term by term.
struct EnergyBudget {
    double dissipation = 0.0;  ///< -||v_x||^2
    double potential = 0.0;    ///< -(1/2) <phi', v^2>
    double modulation = 0.0;   ///< -gamma <phi', v>^2
    double multiplier = 0.0;   ///< <v, L v>
    double sponge = 0.0;       ///< -<sigma, v^2>
    double total() const { return dissipation + potential + modulation + multiplier + sponge; }
};

struct SimOptions {
    /// Peak damping rate of the absorbing layers.
    double sponge_strength = 1.0;
    /// Absorbing layer width as a fraction of the half-period D.
    double sponge_fraction = 0.125;
    /// Largest allowed dt max|u| / h for the explicit terms.
    double cfl_limit = 1.0;
    std::size_t record_every = 1;
};

namespace detail {

/// phi(x + x0) and phi'(x + x0) on the simulation grid.
struct Background {
    std::vector<double> phi;
    std::vector<double> dphi;
};

inline Background background(const SimState& s) {
    const std::size_t n = s.v.size();
    Background b{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    if (!s.front) return b;
    const auto f = s.front->phi_interpolant();
    const auto df = s.front->dphi_interpolant();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s.v.grid.at(i) + s.x0;
        b.phi[i] = f(x);
        b.dphi[i] = df(x);
    }
    return b;
}

inline double periodic_sum(const std::vector<double>& a, const std::vector<double>& b, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return h * s;
}

}  // namespace detail

/// dx0/dt = gamma <phi'(. + x0), v>.
inline double modulation_rhs(const SimState& s) {
    if (!s.front) return 0.0;
    return s.gamma * detail::periodic_sum(detail::background(s).dphi, s.v.values, s.v.step());
}

/// Spectral integrator for one periodic grid and multiplier.
class Simulator {
public:
    Simulator(const UniformGrid& grid, const MultiplierSpec& multiplier, SimOptions options = {})
        : grid_(grid), fft_(grid.size), options_(options) {
        const std::size_t n = grid.size;
        const double period = grid.step * static_cast<double>(n);
        k_.resize(n / 2 + 1);
        for (std::size_t j = 0; j <= n / 2; ++j) k_[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / period;
        ell_ = admissible_symbol(multiplier, k_);
        // Nyquist mode carries no odd derivative.
        ik_.resize(k_.size());
        for (std::size_t j = 0; j < k_.size(); ++j) ik_[j] = j == n / 2 ? Complex(0.0) : Complex(0.0, k_[j]);
        linear_.resize(k_.size());
        for (std::size_t j = 0; j < k_.size(); ++j) linear_[j] = -k_[j] * k_[j] + ell_[j];

        sigma_.assign(n, 0.0);
        const double D = 0.5 * period;
        const double width = options_.sponge_fraction * D;
        for (std::size_t i = 0; i < n; ++i) {
            const double into = std::abs(grid.at(i) + 0.5 * grid.step - grid.start - D) - (D - width);
            if (width > 0.0 && into > 0.0) {
                const double xi = std::min(into / width, 1.0);
                sigma_[i] = options_.sponge_strength * 0.5 * (1.0 - std::cos(std::numbers::pi * xi));
            }
        }
    }

    const UniformGrid& grid() const { return grid_; }
    const std::vector<double>& sponge() const { return sigma_; }

    std::vector<double> derivative(const std::vector<double>& v) const {
        auto c = fft_.forward(v);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] *= ik_[j];
        return fft_.inverse(std::move(c));
    }

    /// L v in physical space.
    std::vector<double> apply_multiplier(const std::vector<double>& v) const {
        auto c = fft_.forward(v);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] *= ell_[j];
        return fft_.inverse(std::move(c));
    }

    EnergyBudget energy_budget(const SimState& s) const {
        const double h = grid_.step;
        const auto& v = s.v.values;
        const auto bg = detail::background(s);
        const auto vx = derivative(v);
        std::vector<double> v2(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) v2[i] = v[i] * v[i];
        EnergyBudget e;
        e.dissipation = -detail::periodic_sum(vx, vx, h);
        e.potential = -0.5 * detail::periodic_sum(bg.dphi, v2, h);
        const double proj = detail::periodic_sum(bg.dphi, v, h);
        e.modulation = -s.gamma * proj * proj;
        e.multiplier = detail::periodic_sum(v, apply_multiplier(v), h);
        e.sponge = -detail::periodic_sum(sigma_, v2, h);
        return e;
    }

    /// Default step: dt = min(0.5 h / max|u|, 0.1).
    double default_dt(const SimState& s) const { return std::min(0.5 * grid_.step / max_speed(s), 0.1); }

    /// One IMEX step: Crank–Nicolson on v_xx + L v, explicit midpoint on the
    /// rest and on x0.
    SimState step(const SimState& s, double dt) const {
        check(s);
        if (!(dt > 0.0)) detail::fail(ErrorKind::DomainError, "dynamics", "dt must be positive");
        if (dt * max_speed(s) / grid_.step > options_.cfl_limit) {
            detail::fail(ErrorKind::CFLViolation, "dynamics", "dt exceeds the transport CFL limit");
        }
        const auto vhat = fft_.forward(s.v.values);

        double rate0 = 0.0;
        const auto n0 = fft_.forward(explicit_terms(s, vhat, rate0));
        SimState half = s;
        half.t = s.t + 0.5 * dt;
        half.x0 = s.x0 + 0.5 * dt * rate0;
        std::vector<Complex> hhat(vhat.size());
        for (std::size_t j = 0; j < vhat.size(); ++j) {
            const Complex a = 0.25 * dt * linear_[j];
            hhat[j] = ((1.0 + a) * vhat[j] + 0.5 * dt * n0[j]) / (1.0 - a);
        }
        half.v.values = fft_.inverse(hhat);

        double rate1 = 0.0;
        const auto n1 = fft_.forward(explicit_terms(half, hhat, rate1));
        SimState next = s;
        next.t = s.t + dt;
        next.x0 = s.x0 + dt * rate1;
        std::vector<Complex> nhat(vhat.size());
        for (std::size_t j = 0; j < vhat.size(); ++j) {
            const Complex a = 0.5 * dt * linear_[j];
            nhat[j] = ((1.0 + a) * vhat[j] + dt * n1[j]) / (1.0 - a);
        }
        next.v.values = fft_.inverse(std::move(nhat));
        if (!all_finite(next.v.values) || !std::isfinite(next.x0)) {
            detail::fail(ErrorKind::NonFiniteState, "dynamics", "perturbation blew up");
        }
        return next;
    }

private:
    void check(const SimState& s) const {
        if (s.v.size() != grid_.size || s.v.grid.step != grid_.step || s.v.grid.start != grid_.start) {
            detail::fail(ErrorKind::DomainError, "dynamics", "state is not on the simulator's grid");
        }
    }

    double max_speed(const SimState& s) const {
        const auto bg = detail::background(s);
        double m = 1e-12;
        for (std::size_t i = 0; i < s.v.size(); ++i) m = std::max(m, std::abs(bg.phi[i] + s.v.values[i]));
        return m;
    }

    /// -v v_x - x0' phi' - phi' v - phi v_x - sigma v, with x0' returned.
    std::vector<double> explicit_terms(const SimState& s, const std::vector<Complex>& vhat, double& rate) const {
        const auto bg = detail::background(s);
        const auto& v = s.v.values;
        std::vector<Complex> c(vhat);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] *= ik_[j];
        const auto vx = fft_.inverse(std::move(c));
        rate = s.front ? s.gamma * detail::periodic_sum(bg.dphi, v, grid_.step) : 0.0;
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = -v[i] * vx[i] - rate * bg.dphi[i] - bg.dphi[i] * v[i] - bg.phi[i] * vx[i] - sigma_[i] * v[i];
        }
        return out;
    }

    UniformGrid grid_;
    PeriodicFft fft_;
    SimOptions options_;
    std::vector<double> k_;
    std::vector<Complex> ik_;
    std::vector<Complex> ell_;
    std::vector<Complex> linear_;
    std::vector<double> sigma_;
};

inline SimState step(const SimState& s, double dt, const MultiplierSpec& multiplier, SimOptions options = {}) {
    return Simulator(s.v.grid, multiplier, options).step(s, dt);
}

struct SupNorm {
    /// sqrt(2 ||v|| ||v_x||)
    double bound = 0.0;
    double max_abs = 0.0;
};

inline SupNorm sup_norm_diagnostic(const SampledFunction& v) {
    const PeriodicFft fft(v.size());
    auto c = fft.forward(v.values);
    const std::size_t n = v.size();
    const double period = v.step() * static_cast<double>(n);
    for (std::size_t j = 0; j < c.size(); ++j) {
        c[j] *= j == n / 2 ? Complex(0.0) : Complex(0.0, 2.0 * std::numbers::pi * static_cast<double>(j) / period);
    }
    const auto vx = fft.inverse(std::move(c));
    const double a = std::sqrt(detail::periodic_sum(v.values, v.values, v.step()));
    const double b = std::sqrt(detail::periodic_sum(vx, vx, v.step()));
    SupNorm out;
    out.bound = std::sqrt(2.0 * a * b);
    for (double x : v.values) out.max_abs = std::max(out.max_abs, std::abs(x));
    return out;
}

inline SupNorm sup_norm_diagnostic(const SimState& s) { return sup_norm_diagnostic(s.v); }

/// Runs to time T and records diagnostics every `record_every` steps. dt <= 0
/// picks the default from the initial state. The energy residual at t_n is
/// |(E_{n+1} - E_n)/dt - (RHS_n + RHS_{n+1})/2| with E = ||v||^2/2.
inline SimTrace simulate(const FrontProfile& front, const SampledFunction& v0, double gamma,
                         const MultiplierSpec& multiplier, double T, double dt, SimOptions options = {}) {
    if (!(T >= 0.0) || !(gamma >= 0.0)) detail::fail(ErrorKind::DomainError, "dynamics", "need T >= 0 and gamma >= 0");
    if (options.record_every == 0) options.record_every = 1;
    const Simulator sim(v0.grid, multiplier, options);
    SimState s;
    s.v = v0;
    s.front = std::make_shared<const FrontProfile>(front);
    s.gamma = gamma;
    if (!(dt > 0.0)) dt = sim.default_dt(s);
    const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
    if (steps > 0) dt = T / static_cast<double>(steps);

    SimTrace tr;
    tr.dt = dt;
    const double h = v0.step();
    auto energy = [&](const SimState& x) { return 0.5 * detail::periodic_sum(x.v.values, x.v.values, h); };
    auto record = [&](const SimState& x, const EnergyBudget& e, double residual) {
        tr.times.push_back(x.t);
        tr.l2_v.push_back(2.0 * energy(x));
        tr.l2_vx.push_back(-e.dissipation);
        tr.x0_series.push_back(x.x0);
        tr.energy_residual.push_back(residual);
        tr.modulation_term.push_back(e.modulation);
        const auto sup = sup_norm_diagnostic(x);
        tr.sup_v.push_back(sup.max_abs);
        tr.sup_bound.push_back(sup.bound);
    };

    EnergyBudget e = sim.energy_budget(s);
    double last_residual = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        SimState next = sim.step(s, dt);
        const EnergyBudget e_next = sim.energy_budget(next);
        last_residual = std::abs((energy(next) - energy(s)) / dt - 0.5 * (e.total() + e_next.total()));
        if (n % options.record_every == 0) record(s, e, last_residual);
        s = std::move(next);
        e = e_next;
    }
    record(s, e, last_residual);
    return tr;
}

}  // namespace frontlab
