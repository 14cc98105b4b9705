#ifndef SCALEFN_INTERVAL_HPP
#define SCALEFN_INTERVAL_HPP

#include <algorithm>
#include <cmath>

namespace scalefn {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    bool contains(double x, double tol = 0.0) const {
        return x >= lo - tol && x <= hi + tol;
    }
    bool contains(const Interval& other, double tol = 0.0) const {
        return other.lo >= lo - tol && other.hi <= hi + tol;
    }
};

// Interval with its length carried separately.  Endpoint subtraction loses
// all precision once the interval is much smaller than its coordinates, so
// the pullback engine updates `len` through cancellation-free per-branch
// formulas instead of recomputing hi - lo.
struct SizedInterval {
    double lo = 0.0;
    double hi = 0.0;
    double len = 0.0;

    Interval iv() const { return {lo, hi}; }
    double log_len() const { return std::log(len); }

    static SizedInterval of(const Interval& i) { return {i.lo, i.hi, i.hi - i.lo}; }
};

inline double clamp_to(double x, const Interval& i) {
    return std::min(std::max(x, i.lo), i.hi);
}

} // namespace scalefn

#endif
