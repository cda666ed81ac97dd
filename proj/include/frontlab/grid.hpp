#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "frontlab/error.hpp"

namespace frontlab {

/// Uniform abscissae x_i = start + i * step, i = 0 .. size-1.
struct UniformGrid {
    double start = 0.0;
    double step = 1.0;
    std::size_t size = 0;

    static UniformGrid symmetric(double half_length, std::size_t points) {
        return {-half_length, 2.0 * half_length / static_cast<double>(points - 1), points};
    }

    double at(std::size_t i) const { return start + step * static_cast<double>(i); }
    double front() const { return start; }
    double back() const { return at(size - 1); }

    std::vector<double> abscissae() const {
        std::vector<double> xs(size);
        for (std::size_t i = 0; i < size; ++i) xs[i] = at(i);
        return xs;
    }

    UniformGrid shifted(double a) const { return {start + a, step, size}; }
};

/// Real samples on a uniform grid together with the asserted limits at ±∞.
struct SampledFunction {
    UniformGrid grid;
    std::vector<double> values;
    double left_limit = 0.0;
    double right_limit = 0.0;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return grid.at(i); }
    double step() const { return grid.step; }

    /// Largest discrepancy between the end samples and the declared limits.
    double tail_mismatch() const {
        if (values.empty()) return 0.0;
        return std::max(std::abs(values.front() - left_limit), std::abs(values.back() - right_limit));
    }

    void validate(double tail_tolerance) const {
        if (values.size() != grid.size || grid.size < 2 || !(grid.step > 0.0)) {
            detail::fail(ErrorKind::DomainError, "grid", "sampled function needs >= 2 samples on an increasing grid");
        }
        if (tail_mismatch() > tail_tolerance) {
            detail::fail(ErrorKind::DomainError, "grid", "sampled function tails disagree with the declared limits");
        }
    }
};

/// Composite trapezoid rule on a uniform grid.
inline double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double sum = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
    return sum * h;
}

inline double trapezoid(const SampledFunction& f) { return trapezoid(f.values, f.step()); }

/// Trapezoid of the pointwise product f*g.
inline double trapezoid_product(std::span<const double> f, std::span<const double> g, double h) {
    const std::size_t n = std::min(f.size(), g.size());
    if (n < 2) return 0.0;
    double sum = 0.5 * (f[0] * g[0] + f[n - 1] * g[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) sum += f[i] * g[i];
    return sum * h;
}

/// Piecewise cubic Hermite interpolant of samples with known derivatives on a
/// uniform grid. Outside the grid it returns the constant end limits (and zero
/// slope), which is how front profiles are continued to ±∞.
class HermiteInterpolant {
public:
    HermiteInterpolant() = default;
    HermiteInterpolant(UniformGrid grid, std::vector<double> values, std::vector<double> slopes,
                       double left_limit, double right_limit)
        : grid_(grid), f_(std::move(values)), df_(std::move(slopes)), left_(left_limit), right_(right_limit) {}

    double operator()(double x) const {
        if (x <= grid_.front()) return x == grid_.front() ? f_.front() : left_;
        if (x >= grid_.back()) return x == grid_.back() ? f_.back() : right_;
        const double s = (x - grid_.start) / grid_.step;
        std::size_t i = std::min(static_cast<std::size_t>(s), grid_.size - 2);
        const double t = s - static_cast<double>(i);
        const double h = grid_.step;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * f_[i] + h10 * h * df_[i] + h01 * f_[i + 1] + h11 * h * df_[i + 1];
    }

    const UniformGrid& grid() const { return grid_; }

private:
    UniformGrid grid_{};
    std::vector<double> f_;
    std::vector<double> df_;
    double left_ = 0.0;
    double right_ = 0.0;
};

/// Linear interpolation of uniform samples; constant continuation outside.
inline double interpolate_linear(const SampledFunction& f, double x) {
    const auto& g = f.grid;
    if (x <= g.front()) return x == g.front() ? f.values.front() : f.left_limit;
    if (x >= g.back()) return x == g.back() ? f.values.back() : f.right_limit;
    const double s = (x - g.start) / g.step;
    std::size_t i = std::min(static_cast<std::size_t>(s), g.size - 2);
    const double t = s - static_cast<double>(i);
    return (1 - t) * f.values[i] + t * f.values[i + 1];
}

inline bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

}  // namespace frontlab
