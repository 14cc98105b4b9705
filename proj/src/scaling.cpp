#include "scalefn/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scalefn/partition.hpp"
#include "scalefn/symbolic.hpp"

namespace scalefn {

namespace {

void require_scaling_hypotheses(const MarkovMap& map) {
    if (map.critical_points().empty()) return; // good Markov case
    std::string reason;
    if (!map.geometrically_finite(&reason))
        throw NotGeometricallyFinite("scaling function needs a geometrically finite map: " +
                                     reason);
}

double check_scale_range(double value) {
    const double mag = std::abs(value);
    if (!(mag > 0.0) || mag > 1.0 + 1e-12)
        throw Error("signed scale " + std::to_string(value) + " is outside (0,1]");
    return value;
}

} // namespace

SignedScale signed_scale(const MarkovMap& map, const Word& w) {
    if (w.size() < 2) throw UnsuitableWord("signed scale needs a word of length >= 2");
    map.require_suitable(w);
    const WordInterval child = word_interval(map, w);
    Word parent_word(w.begin(), w.end() - 1);
    const WordInterval parent = word_interval(map, parent_word);
    const double value = w.back().sign * child.length() / parent.length();
    return SignedScale{check_scale_range(value), w};
}

ScalingEstimate scaling_function(const MarkovMap& map, const DualAddress& a, double tol,
                                 int max_depth) {
    if (!(tol > 0.0) || max_depth < 3) throw Error("scaling_function needs tol > 0, max_depth >= 3");
    a.require_admissible(map);
    require_scaling_hypotheses(map);

    const int sign = a.at(0).sign;
    // incremental truncation intervals: prepending a symbol is one pull
    SizedInterval parent = SizedInterval::of(map.branch(a.at(1).branch).domain());
    SizedInterval child = map.branch(a.at(1).branch).pull(
        SizedInterval::of(map.branch(a.at(0).branch).domain()));

    ScalingEstimate est;
    est.value = check_scale_range(sign * child.len / parent.len);
    est.depth = 2;
    int small_gaps = 0;
    double last_gap = 0.0;
    for (int n = 3; n <= max_depth; ++n) {
        const Branch& b = map.branch(a.at(n - 1).branch);
        child = b.pull(child);
        parent = b.pull(parent);
        const double value = check_scale_range(sign * child.len / parent.len);
        last_gap = std::abs(value - est.value);
        est.value = value;
        est.depth = n;
        small_gaps = last_gap <= tol ? small_gaps + 1 : 0;
        if (small_gaps >= 3) {
            est.error_bound = 10.0 * last_gap;
            est.converged = true;
            return est;
        }
    }
    est.error_bound = 10.0 * last_gap;
    est.converged = false;
    return est;
}

namespace {

// random suitable word of the given length, built right to left
Word random_word(const MarkovMap& map, int len, std::mt19937_64& rng) {
    const int m = map.branch_count();
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> rev;
        rev.push_back(pick(rng));
        while (static_cast<int>(rev.size()) < len) {
            std::vector<int> options;
            for (int t = 0; t < m; ++t)
                if (map.admissible(t, rev.back())) options.push_back(t);
            if (options.empty()) break;
            rev.push_back(options[static_cast<size_t>(pick(rng)) % options.size()]);
        }
        if (static_cast<int>(rev.size()) == len) {
            std::reverse(rev.begin(), rev.end());
            return map.word_from_branches(rev);
        }
    }
    throw Error("could not sample a suitable word");
}

// random block that can repeat and attach to the left of `tail_first`
Word random_block(const MarkovMap& map, int tail_first, int max_len, std::mt19937_64& rng) {
    const int m = map.branch_count();
    std::uniform_int_distribution<int> len_pick(1, max_len);
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        const int len = len_pick(rng);
        std::vector<int> b(static_cast<size_t>(len));
        for (int& v : b) v = pick(rng);
        bool ok = true;
        for (int i = 0; i + 1 < len; ++i) ok = ok && map.admissible(b[static_cast<size_t>(i)], b[static_cast<size_t>(i + 1)]);
        ok = ok && map.admissible(b[static_cast<size_t>(len - 1)], b[0]);
        ok = ok && map.admissible(b[static_cast<size_t>(len - 1)], tail_first);
        if (ok) return map.word_from_branches(b);
    }
    throw Error("could not sample an admissible block");
}

} // namespace

HolderFit holder_modulus(const MarkovMap& map, int depth, int samples, unsigned long long seed) {
    if (!map.critical_points().empty())
        throw NotGoodMarkov("holder_modulus expects a map without critical points");
    if (depth < 3 || samples < 1) throw Error("holder_modulus needs depth >= 3, samples >= 1");

    std::mt19937_64 rng(seed);
    HolderFit fit;
    for (int n = 2; n <= depth; ++n) {
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            const Word w = random_word(map, n, rng);
            const int first = w.front().branch;
            const DualAddress a1(w, random_block(map, first, 3, rng));
            const DualAddress a2(w, random_block(map, first, 3, rng));
            if (a1 == a2) continue;
            const double v1 = scaling_function(map, a1, 1e-11, 72).value;
            const double v2 = scaling_function(map, a2, 1e-11, 72).value;
            worst = std::max(worst, std::abs(v1 - v2));
        }
        fit.max_gap.push_back(worst);
    }

    // all-zero gaps: scales are locally constant, report mu = 0
    bool any = false;
    for (double g : fit.max_gap) any = any || g > 1e-13;
    if (!any) {
        fit.K = 0.0;
        fit.mu = 0.0;
        fit.worst_residual = 0.0;
        return fit;
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (size_t i = 0; i < fit.max_gap.size(); ++i) {
        if (fit.max_gap[i] <= 1e-300) continue;
        const double x = static_cast<double>(i) + 2.0;
        const double y = std::log(fit.max_gap[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / count;
    fit.mu = std::exp(slope);
    // lift K so the fit is an upper bound
    double shift = 0.0;
    for (size_t i = 0; i < fit.max_gap.size(); ++i) {
        if (fit.max_gap[i] <= 1e-300) continue;
        const double x = static_cast<double>(i) + 2.0;
        shift = std::max(shift, std::log(fit.max_gap[i]) - (intercept + slope * x));
    }
    fit.K = std::exp(intercept + shift);
    double worst = 0.0;
    for (size_t i = 0; i < fit.max_gap.size(); ++i) {
        if (fit.max_gap[i] <= 1e-300) continue;
        const double x = static_cast<double>(i) + 2.0;
        worst = std::max(worst, fit.max_gap[i] - fit.K * std::pow(fit.mu, x));
    }
    fit.worst_residual = worst;
    return fit;
}

bool in_discontinuity_class(const MarkovMap& map, const DualAddress& a0) {
    if (map.critical_points().empty()) return false;
    // shift until purely periodic (tail strictly shrinks)
    DualAddress a = a0;
    for (int guard = 0; guard < 10000 && !a.purely_periodic(); ++guard) a = a.shifted();
    if (!a.purely_periodic()) return false;
    PeriodicPoint pp;
    try {
        pp = periodic_point(map, a, 1e-11);
    } catch (const Error&) {
        return false;
    }
    const auto orbits = map.critical_orbit();
    for (const CriticalOrbit& orbit : orbits)
        for (size_t j = static_cast<size_t>(orbit.cycle_start); j < orbit.points.size(); ++j)
            for (double q : pp.orbit)
                if (std::abs(q - orbit.points[j]) <= 1e-8) return true;
    return false;
}

std::vector<DualAddress> probe_family(const MarkovMap& map, const DualAddress& a0,
                                      const Word& deviation_block, int k_min, int k_max) {
    if (k_min < 1 || k_max < k_min) throw Error("probe_family needs 1 <= k_min <= k_max");
    std::vector<DualAddress> family;
    for (int k = k_min; k <= k_max; ++k) {
        DualAddress member(a0.truncate(k), deviation_block);
        member.require_admissible(map);
        family.push_back(std::move(member));
    }
    return family;
}

ProbeResult discontinuity_probe(const MarkovMap& map, const DualAddress& a0,
                                const std::vector<DualAddress>& family, double tol) {
    ProbeResult out;
    if (map.critical_points().empty()) {
        out.jump_ratio = 1.0;
        out.note = "map has no critical points: the discontinuity class is empty";
        return out;
    }
    out.base_in_discontinuity_class = in_discontinuity_class(map, a0);
    if (!out.base_in_discontinuity_class)
        out.note = "base address is not in the discontinuity class; continuity expected";
    if (family.empty()) throw FamilyNotConvergent("empty probe family");

    const int cap = 400;
    int prev = -1;
    for (const DualAddress& m : family) {
        int agree = 0;
        while (agree < cap && m.at(agree) == a0.at(agree)) ++agree;
        out.agreement.push_back(agree);
        if (agree <= prev)
            throw FamilyNotConvergent("rightmost-prefix agreement with the base is not growing");
        prev = agree;
    }

    const double est_tol = std::min(tol, 1e-9);
    out.base_value = scaling_function(map, a0, est_tol, 96).value;
    for (const DualAddress& m : family)
        out.member_values.push_back(scaling_function(map, m, est_tol, 96).value);
    out.jump_ratio = out.member_values.back() / out.base_value;
    return out;
}

} // namespace scalefn
