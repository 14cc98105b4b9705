#ifndef SCALEFN_TESTS_ORACLE_HPP
#define SCALEFN_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>

#include "scalefn/markov_map.hpp"

// Test-only oracles that stay independent of the inverse-branch pullback
// machinery: interval endpoints are located by bisection against forward
// evaluation only.
namespace scalefn::oracle {

inline double solve_forward(const Branch& b, double target) {
    double lo = b.domain().lo, hi = b.domain().hi;
    const bool inc = b.orientation() > 0;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((b.eval(mid) < target) == inc) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline Interval word_interval(const MarkovMap& map, const Word& w) {
    const Branch& b = map.branch(w.front().branch);
    if (w.size() == 1) return b.domain();
    const Interval rest = word_interval(map, Word(w.begin() + 1, w.end()));
    const Interval im = b.image();
    const double ylo = std::max(rest.lo, im.lo);
    const double yhi = std::min(rest.hi, im.hi);
    const double x1 = solve_forward(b, ylo);
    const double x2 = solve_forward(b, yhi);
    return {std::min(x1, x2), std::max(x1, x2)};
}

// raw-endpoint pullback: same composition as the library but without the
// cancellation-free length bookkeeping
inline Interval raw_pullback(const MarkovMap& map, const Word& w) {
    const Branch& last = map.branch(w.back().branch);
    double lo = last.domain().lo, hi = last.domain().hi;
    for (size_t i = w.size() - 1; i-- > 0;) {
        const Branch& b = map.branch(w[i].branch);
        const double a = b.inverse(lo), c = b.inverse(hi);
        lo = std::min(a, c);
        hi = std::max(a, c);
    }
    return {lo, hi};
}

} // namespace scalefn::oracle

#endif
