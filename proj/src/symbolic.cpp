#include "scalefn/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "scalefn/errors.hpp"

namespace scalefn {

CodingResult coding_map(const MarkovMap& map, const ForwardAddress& a, int depth) {
    if (depth < 1) throw Error("coding_map needs depth >= 1");
    a.require_admissible(map);
    const Word w = a.prefix(depth);
    map.require_suitable(w);
    const WordInterval wi = word_interval(map, w);
    return CodingResult{wi.interval, depth, wi.length()};
}

PeriodicPoint periodic_point(const MarkovMap& map, const DualAddress& a, double tol) {
    if (!a.purely_periodic())
        throw Error("periodic_point needs a purely periodic dual address");
    a.require_admissible(map);
    const Word block = a.block_word();
    const int k = static_cast<int>(block.size());

    // iterate the composed inverse branch of the block; it contracts the
    // interval of the leading symbol into itself
    const Branch& first = map.branch(block.front().branch);
    double x = first.domain().mid();
    bool settled = false;
    for (int it = 0; it < 2000; ++it) {
        double z = x;
        for (int i = k; i-- > 0;) {
            const Branch& b = map.branch(block[static_cast<size_t>(i)].branch);
            z = clamp_to(b.inverse(z), b.domain());
        }
        const double delta = std::abs(z - x);
        x = z;
        if (delta <= 0.01 * tol) {
            settled = true;
            break;
        }
    }
    if (!settled)
        throw NoConvergence("inverse-branch iteration did not contract; decay assumption violated");

    PeriodicPoint out;
    out.p = x;
    out.period = k;
    double y = x;
    for (int i = 0; i < k; ++i) {
        const Branch& b = map.branch(block[static_cast<size_t>(i)].branch);
        out.orbit.push_back(y);
        out.branches.push_back(b.index());
        y = b.eval(clamp_to(y, b.domain()));
    }
    if (std::abs(y - x) > tol)
        throw NoConvergence("periodic point residual exceeds tolerance");
    return out;
}

const char* to_string(AddressClass c) {
    switch (c) {
    case AddressClass::Recurrent: return "recurrent";
    case AddressClass::TotallyNonrecurrent: return "totally_nonrecurrent";
    case AddressClass::Wandering: return "wandering";
    case AddressClass::Undetermined: return "undetermined";
    }
    return "undetermined";
}

CriticalRegion critical_region(const MarkovMap& map) {
    CriticalRegion region;
    if (map.critical_points().empty()) return region;

    std::vector<double> orbit_points;
    for (const CriticalOrbit& orbit : map.critical_orbit())
        for (double p : orbit.points) orbit_points.push_back(p);
    auto on_orbit = [&](double x) {
        for (double p : orbit_points)
            if (std::abs(x - p) <= MarkovMap::kPointTol) return true;
        return false;
    };

    // grow a word keeping the interval adjacent to c on the given side
    auto adjacent_word = [&](const CriticalPoint& cp, Side side, int len) {
        const int b0 = side == Side::Left ? cp.left_branch : cp.right_branch;
        Word w{map.symbol(b0)};
        WordInterval cur = word_interval(map, w);
        const double tol = 1e-7 * std::max(1.0, map.ambient().length());
        while (static_cast<int>(w.size()) < len) {
            bool extended = false;
            for (int r = 0; r < map.branch_count() && !extended; ++r) {
                if (!map.admissible(w.back().branch, r)) continue;
                Word child = w;
                child.push_back(map.symbol(r));
                WordInterval ci = word_interval(map, child);
                const double edge = side == Side::Left ? ci.interval.hi : ci.interval.lo;
                if (std::abs(edge - cp.c) <= tol) {
                    w = std::move(child);
                    cur = std::move(ci);
                    extended = true;
                }
            }
            if (!extended) throw Error("could not extend a critical-adjacent word");
        }
        return cur;
    };

    for (int n = 2; n <= 24; ++n) {
        std::vector<WordInterval> intervals;
        bool ok = true;
        for (const CriticalPoint& cp : map.critical_points()) {
            for (Side side : {Side::Left, Side::Right}) {
                WordInterval wi = adjacent_word(cp, side, n);
                const double free_end = side == Side::Left ? wi.interval.lo : wi.interval.hi;
                if (on_orbit(free_end)) ok = false;
                intervals.push_back(std::move(wi));
            }
        }
        if (ok) {
            region.level = n;
            region.intervals = std::move(intervals);
            return region;
        }
    }
    throw Error("no admissible critical-neighborhood level found");
}

namespace {

// symbols reachable in the incidence digraph from the ends of critical words
std::vector<int> reachable_from_critical(const MarkovMap& map, const CriticalRegion& region,
                                          int cap) {
    std::vector<char> seen(static_cast<size_t>(map.branch_count()), 0);
    std::vector<int> frontier;
    for (const WordInterval& wi : region.intervals) {
        const int t = wi.word.back().branch;
        if (!seen[static_cast<size_t>(t)]) {
            seen[static_cast<size_t>(t)] = 1;
            frontier.push_back(t);
        }
    }
    for (int step = 0; step < cap && !frontier.empty(); ++step) {
        std::vector<int> next;
        for (int t : frontier)
            for (int u = 0; u < map.branch_count(); ++u)
                if (map.admissible(t, u) && !seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    next.push_back(u);
                }
        frontier = std::move(next);
    }
    std::vector<int> out;
    for (int t = 0; t < map.branch_count(); ++t)
        if (seen[static_cast<size_t>(t)]) out.push_back(t);
    return out;
}

} // namespace

AddressClass classify_address(const MarkovMap& map, const DualAddress& a, int depth) {
    a.require_admissible(map);
    if (map.critical_points().empty()) return AddressClass::TotallyNonrecurrent;

    std::string reason;
    if (!map.geometrically_finite(&reason))
        throw NotGeometricallyFinite("classification needs a geometrically finite map: " + reason);

    // standing hypothesis: critical points stay off the post-critical orbits
    for (const CriticalOrbit& orbit : map.critical_orbit())
        for (size_t j = 1; j < orbit.points.size(); ++j)
            for (const CriticalPoint& cp : map.critical_points())
                if (std::abs(orbit.points[j] - cp.c) <= MarkovMap::kPointTol)
                    throw HypothesisViolated("a critical point lies on a post-critical orbit");

    const CriticalRegion region = critical_region(map);
    const int n1 = region.level;
    const DualAddress shift = a.shifted();
    const double tol = 1e-9 * std::max(1.0, map.ambient().length());

    // beyond tail + period + n1 the truncation windows repeat
    const int certify_bound = shift.tail_length() + shift.period() + n1 + 1;
    const int j_max = std::min(depth, certify_bound);

    // incremental truncation intervals of the shifted address
    SizedInterval iv = SizedInterval::of(map.branch(shift.at(0).branch).domain());
    for (int j = 2; j <= j_max; ++j) {
        iv = map.branch(shift.at(j - 1).branch).pull(iv);
        if (j < n1) continue;
        for (const WordInterval& u : region.intervals)
            if (u.interval.iv().contains(iv.iv(), tol)) return AddressClass::Recurrent;
    }
    if (j_max < certify_bound) return AddressClass::Undetermined;

    // condition (b): do preimages of the truncation intervals meet the
    // critical region?  Decided symbolically through the incidence digraph.
    const std::vector<int> reach = reachable_from_critical(map, region, 12);
    auto long_route = [&](int first_branch) {
        for (int t : reach)
            if (map.admissible(t, first_branch)) return true;
        return false;
    };
    // words u with |u| < n1 prepended to the truncation can straddle into a
    // critical word; enumerate them directly.  The window adjacency is
    // automatic because the critical word itself is suitable.
    auto short_route = [&](int j) {
        for (const WordInterval& cw : region.intervals) {
            const Word& w = cw.word; // length n1
            for (int ulen = 1; ulen < n1; ++ulen) {
                bool match = true;
                for (int t = 0; t + ulen < n1 && match; ++t)
                    match = shift.at(j - 1 - t) == w[static_cast<size_t>(ulen + t)];
                if (match) return true;
            }
        }
        return false;
    };

    // every truncation's preimages meet the region: wandering; one truncation
    // whose preimages all avoid it certifies total nonrecurrence
    for (int j = n1; j <= certify_bound; ++j)
        if (!long_route(shift.at(j - 1).branch) && !short_route(j))
            return AddressClass::TotallyNonrecurrent;
    return AddressClass::Wandering;
}

} // namespace scalefn
