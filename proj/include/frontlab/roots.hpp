#pragma once

#include <cmath>
#include <string>

#include "frontlab/error.hpp"

namespace frontlab {

/// Bisection on a sign change of `f` over [lo, hi] until the bracket is
/// narrower than `tol`. `f_lo`/`f_hi` may be passed to avoid re-evaluation.
template <class F>
double bisect(F&& f, double lo, double hi, double tol, double f_lo, double f_hi, const std::string& module) {
    if (!(f_lo * f_hi <= 0.0) || std::isnan(f_lo) || std::isnan(f_hi)) {
        detail::fail(ErrorKind::BracketError, module, "no sign change between the bracket endpoints");
    }
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    while (std::abs(hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <class F>
double bisect(F&& f, double lo, double hi, double tol, const std::string& module) {
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    return bisect(f, lo, hi, tol, f_lo, f_hi, module);
}

}  // namespace frontlab
