#pragma once

#include <cmath>
#include <utility>

#include "adsplit/errors.hpp"

namespace adsplit::num {

// Central difference with one Richardson extrapolation step. Error O(h^4).
template <class F>
double deriv_central(F&& f, double x, double h) {
    auto d = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Second-order one-sided difference (dir = +1 forward, -1 backward), with one
// Richardson step. Used at the ends of closed intervals.
template <class F>
double deriv_one_sided(F&& f, double x, double h, int dir) {
    auto d = [&](double step) {
        const double s = dir * step;
        return (-3.0 * f(x) + 4.0 * f(x + s) - f(x + 2.0 * s)) / (2.0 * s);
    };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Derivative of f at x keeping every evaluation inside [lo, hi].
template <class F>
double deriv_within(F&& f, double x, double lo, double hi, double h) {
    if (x - h >= lo && x + h <= hi) return deriv_central(f, x, h);
    if (x + 2.0 * h <= hi) return deriv_one_sided(f, x, h, +1);
    if (x - 2.0 * h >= lo) return deriv_one_sided(f, x, h, -1);
    throw StepError("derivative step too large for interval");
}

// Bisection on [lo, hi]; requires a sign change. Stops when the bracket is
// narrower than xtol and returns its midpoint.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol, int maxit = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError("bisect: no sign change on the given interval");
    for (int i = 0; i < maxit && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace adsplit::num
