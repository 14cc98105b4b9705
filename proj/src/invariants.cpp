#include "scalefn/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "scalefn/errors.hpp"
#include "scalefn/parallel.hpp"

namespace scalefn {

double eigenvalue_direct(const MarkovMap& map, const DualAddress& a) {
    const PeriodicPoint pp = periodic_point(map, a, 1e-12);
    double e = 1.0;
    for (size_t i = 0; i < pp.orbit.size(); ++i) {
        const Branch& b = map.branch(pp.branches[i]);
        const double d = b.deriv(clamp_to(pp.orbit[i], b.domain()));
        if (d == 0.0) throw CriticalOnOrbit("zero derivative on the periodic orbit");
        e *= d;
    }
    return e;
}

double eigenvalue_via_scaling(const MarkovMap& map, const DualAddress& a, double tol) {
    if (!a.purely_periodic()) throw Error("eigenvalue needs a purely periodic address");
    const int k = a.period();
    DualAddress cur = a;
    double product = 1.0;
    for (int l = 0; l < k; ++l) {
        const ScalingEstimate est = scaling_function(map, cur, tol, 80);
        if (!est.converged)
            throw NotConverged("scaling estimate did not converge at " + cur.format(), est);
        product *= est.value;
        cur = cur.shifted();
    }
    return 1.0 / product;
}

EigenvalueRecord eigenvalue_record(const MarkovMap& map, const DualAddress& a, double tol) {
    EigenvalueRecord rec;
    rec.address = a;
    const PeriodicPoint pp = periodic_point(map, a, std::min(tol, 1e-10));
    rec.p = pp.p;
    rec.period = pp.period;
    rec.direct = eigenvalue_direct(map, a);
    rec.via_scaling = eigenvalue_via_scaling(map, a, tol);
    return rec;
}

// ---------------------------------------------------------------------------

namespace {

// word of length `len` whose interval has x as an endpoint on `side`
Word endpoint_adjacent_word(const MarkovMap& map, double x, Side side, int len) {
    const double tol = 1e-7 * std::max(1.0, map.ambient().length());
    int b0 = -1;
    for (const Branch& b : map.branches()) {
        if (side == Side::Left && std::abs(b.domain().hi - x) <= tol) b0 = b.index();
        if (side == Side::Right && std::abs(b.domain().lo - x) <= tol) b0 = b.index();
    }
    if (b0 < 0) throw ChainUnresolved("no partition interval adjacent to the target point");
    Word w{map.symbol(b0)};
    while (static_cast<int>(w.size()) < len) {
        bool extended = false;
        for (int r = 0; r < map.branch_count() && !extended; ++r) {
            if (!map.admissible(w.back().branch, r)) continue;
            Word child = w;
            child.push_back(map.symbol(r));
            const WordInterval ci = word_interval(map, child);
            const double edge = side == Side::Left ? ci.interval.hi : ci.interval.lo;
            if (std::abs(edge - x) <= tol) {
                w = std::move(child);
                extended = true;
            }
        }
        if (!extended) throw ChainUnresolved("could not extend the endpoint-adjacent word");
    }
    return w;
}

} // namespace

ExponentEstimate exponent_via_scaling(const MarkovMap& map, double c, int depth, Side side) {
    if (map.critical_points().empty())
        throw ChainUnresolved("map has no critical points");
    const CriticalPoint& cp = map.critical_near(c);
    std::string reason;
    if (!map.geometrically_finite(&reason))
        throw ChainUnresolved("chain needs a geometrically finite map: " + reason);
    if (depth < 8) throw Error("exponent_via_scaling needs depth >= 8");

    // walk the orbit of c to the next chain element: another critical point
    // or the first periodic point
    const auto orbits = map.critical_orbit();
    const CriticalOrbit* orbit = nullptr;
    for (const CriticalOrbit& o : orbits)
        if (std::abs(o.c - cp.c) <= MarkovMap::kPointTol) orbit = &o;
    if (!orbit) throw ChainUnresolved("no orbit recorded for the critical point");
    int m1 = -1;
    for (size_t t = 1; t < orbit->points.size(); ++t) {
        bool is_crit = false;
        for (const CriticalPoint& other : map.critical_points())
            if (std::abs(orbit->points[t] - other.c) <= MarkovMap::kPointTol) is_crit = true;
        if (is_crit || static_cast<int>(t) >= orbit->cycle_start) {
            m1 = static_cast<int>(t);
            break;
        }
    }
    if (m1 < 0) throw ChainUnresolved("orbit of the critical point has no chain target");

    // average the last `window` log-scales; the target may be periodic
    const int window = std::max(1, std::min(orbit->period, 4));
    if (depth <= m1 + window + 2) throw Error("depth too small for the chain step");

    ExponentEstimate est;
    est.c = cp.c;
    est.side = side;
    est.depth = depth;
    est.steps_to_target = m1;

    double l_c = 0.0, l_target = 0.0;
    for (int t = 0; t < window; ++t) {
        const int m = depth - t;
        const Word w = endpoint_adjacent_word(map, cp.c, side, m);
        l_c += std::log(std::abs(signed_scale(map, w).value));
        const Word suffix(w.begin() + m1, w.end());
        l_target += std::log(std::abs(signed_scale(map, suffix).value));
    }
    l_c /= window;
    l_target /= window;
    est.log_scale_at_c = l_c;
    est.log_scale_at_target = l_target;
    est.gamma = l_target / l_c;
    return est;
}

// ---------------------------------------------------------------------------

std::vector<DualAddress> periodic_addresses(const MarkovMap& map, int max_period) {
    std::vector<DualAddress> out;
    const int m = map.branch_count();
    for (int k = 1; k <= max_period; ++k) {
        std::vector<int> idx(static_cast<size_t>(k), 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i + 1 < k && ok; ++i)
                ok = map.admissible(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(i + 1)]);
            ok = ok && map.admissible(idx[static_cast<size_t>(k - 1)], idx[0]);
            if (ok) {
                DualAddress a(Word{}, map.word_from_branches(idx));
                if (a.period() == k && std::find(out.begin(), out.end(), a) == out.end())
                    out.push_back(std::move(a));
            }
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - 1) idx[static_cast<size_t>(pos--)] = 0;
            if (pos < 0) break;
            ++idx[static_cast<size_t>(pos)];
        }
    }
    return out;
}

std::vector<DualAddress> default_address_sample(const MarkovMap& map, int max_period, int n_random,
                                                unsigned long long seed) {
    std::vector<DualAddress> out = periodic_addresses(map, max_period);
    const size_t target = out.size() + static_cast<size_t>(n_random);
    std::mt19937_64 rng(seed);
    const int m = map.branch_count();
    std::uniform_int_distribution<int> pick(0, m - 1);
    std::uniform_int_distribution<int> tail_len(0, 3);
    std::uniform_int_distribution<int> block_len(1, 3);
    int guard = 0;
    while (out.size() < target && guard++ < 100000) {
        const int tl = tail_len(rng), bl = block_len(rng);
        std::vector<int> rev;
        rev.push_back(pick(rng));
        bool dead = false;
        while (static_cast<int>(rev.size()) < tl + bl && !dead) {
            std::vector<int> options;
            for (int t = 0; t < m; ++t)
                if (map.admissible(t, rev.back())) options.push_back(t);
            if (options.empty()) dead = true;
            else rev.push_back(options[static_cast<size_t>(pick(rng)) % options.size()]);
        }
        if (dead) continue;
        std::vector<int> tail_idx(rev.rend() - tl, rev.rend());
        std::vector<int> block_idx;
        for (int i = tl + bl; i-- > tl;) block_idx.push_back(rev[static_cast<size_t>(i)]);
        // block must repeat and attach to its right neighbor
        if (!map.admissible(block_idx.back(), block_idx.front())) continue;
        const int right = tl > 0 ? tail_idx.front() : block_idx.front();
        if (tl > 0 && !map.admissible(block_idx.back(), right)) continue;
        DualAddress a(map.word_from_branches(tail_idx), map.word_from_branches(block_idx));
        if (!a.admissible(map)) continue;
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    }
    return out;
}

ComparisonResult compare_invariants(const MarkovMap& f, const MarkovMap& g,
                                    const std::vector<DualAddress>& addresses,
                                    const ComparisonOptions& opts) {
    if (f.branch_count() != g.branch_count() || f.incidence() != g.incidence())
        throw IncompatibleCombinatorics("maps do not share incidence combinatorics");
    for (int i = 0; i < f.branch_count(); ++i)
        if (f.branch(i).orientation() != g.branch(i).orientation())
            throw IncompatibleCombinatorics("branch orientations differ");
    if (f.critical_points().size() != g.critical_points().size())
        throw IncompatibleCombinatorics("maps have different numbers of critical points");

    ComparisonResult res;
    res.first.scaling.resize(addresses.size());
    res.second.scaling.resize(addresses.size());

    parallel_for(addresses.size(), [&](size_t i) {
        const DualAddress& a = addresses[i];
        res.first.scaling[i] =
            ScalingSample{a, scaling_function(f, a, opts.estimator_tol, opts.max_depth)};
        res.second.scaling[i] =
            ScalingSample{a, scaling_function(g, a, opts.estimator_tol, opts.max_depth)};
    });

    auto complain = [&res](const std::string& what) { res.disagreements.push_back(what); };

    for (size_t i = 0; i < addresses.size(); ++i) {
        const ScalingEstimate& ef = res.first.scaling[i].estimate;
        const ScalingEstimate& eg = res.second.scaling[i].estimate;
        std::ostringstream os;
        if (!ef.converged || !eg.converged) {
            os << "scaling estimate not converged at " << addresses[i].format();
            complain(os.str());
        } else if (std::abs(ef.value - eg.value) > opts.tol) {
            os << "scaling value at " << addresses[i].format() << ": " << ef.value << " vs "
               << eg.value;
            complain(os.str());
        }
    }

    for (size_t c = 0; c < f.critical_points().size(); ++c) {
        const CriticalPoint& cf = f.critical_points()[c];
        const CriticalPoint& cg = g.critical_points()[c];
        res.first.asymmetries.push_back({cf.c, cf.gamma, cf.a_left / cf.b_right});
        res.second.asymmetries.push_back({cg.c, cg.gamma, cg.a_left / cg.b_right});
        if (std::abs(cf.gamma - cg.gamma) > opts.tol) {
            std::ostringstream os;
            os << "exponent at critical pair " << c << ": " << cf.gamma << " vs " << cg.gamma;
            complain(os.str());
        }
        const double tf = cf.a_left / cf.b_right, tg = cg.a_left / cg.b_right;
        if (std::abs(tf - tg) > opts.tol) {
            std::ostringstream os;
            os << "asymmetry at critical pair " << c << ": " << tf << " vs " << tg;
            complain(os.str());
        }
    }

    if (opts.check_eigenvalues) {
        for (const DualAddress& a : addresses) {
            if (!a.purely_periodic()) continue;
            const EigenvalueRecord rf = eigenvalue_record(f, a, opts.estimator_tol);
            const EigenvalueRecord rg = eigenvalue_record(g, a, opts.estimator_tol);
            res.first.eigenvalues.push_back(rf);
            res.second.eigenvalues.push_back(rg);
            if (std::abs(rf.direct - rg.direct) > opts.tol * std::max(1.0, std::abs(rf.direct))) {
                std::ostringstream os;
                os << "eigenvalue at " << a.format() << ": " << rf.direct << " vs " << rg.direct;
                complain(os.str());
            }
        }
    }

    res.verdict = res.disagreements.empty() ? "invariants-match" : "mismatch";
    return res;
}

} // namespace scalefn
