#include "scalefn/partition.hpp"

#include <algorithm>
#include <cmath>

#include "scalefn/errors.hpp"

namespace scalefn {

WordInterval word_interval(const MarkovMap& map, const Word& w) {
    map.require_suitable(w);
    const size_t n = w.size();
    SizedInterval j = SizedInterval::of(map.branch(w[n - 1].branch).domain());
    for (size_t i = n - 1; i-- > 0;) j = map.branch(w[i].branch).pull(j);
    return WordInterval{w, j};
}

namespace {

bool word_less(const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Symbol& x, const Symbol& y) {
                                            return x.branch < y.branch;
                                        });
}

} // namespace

void for_each_word(const MarkovMap& map, int n_max,
                   const std::function<void(const Word&, const SizedInterval&)>& fn) {
    const int m = map.branch_count();
    // rev holds the word from its rightmost symbol; extending a word on the
    // left is one pull through the prepended inverse branch.
    std::vector<Symbol> rev;
    Word scratch;
    std::function<void(int, const SizedInterval&, int)> walk = [&](int first, const SizedInterval& iv,
                                                                   int depth) {
        scratch.assign(rev.rbegin(), rev.rend());
        fn(scratch, iv);
        if (depth >= n_max) return;
        for (int t = 0; t < m; ++t) {
            if (!map.admissible(t, first)) continue;
            rev.push_back(map.symbol(t));
            walk(t, map.branch(t).pull(iv), depth + 1);
            rev.pop_back();
        }
    };
    for (int s = 0; s < m; ++s) {
        rev.assign(1, map.symbol(s));
        walk(s, SizedInterval::of(map.branch(s).domain()), 1);
    }
}

std::vector<double> lambda_sequence(const MarkovMap& map, int n_max) {
    const int m = map.branch_count();
    std::vector<double> lambdas(static_cast<size_t>(n_max), 0.0);
    struct Node {
        int first;
        SizedInterval iv;
    };
    std::vector<Node> level;
    for (int s = 0; s < m; ++s) level.push_back({s, SizedInterval::of(map.branch(s).domain())});
    for (int n = 1; n <= n_max; ++n) {
        double lam = 0.0;
        for (const Node& nd : level) lam = std::max(lam, nd.iv.len);
        lambdas[static_cast<size_t>(n - 1)] = lam;
        if (n == n_max) break;
        std::vector<Node> next;
        next.reserve(level.size() * static_cast<size_t>(m));
        for (const Node& nd : level)
            for (int t = 0; t < m; ++t)
                if (map.admissible(t, nd.first)) next.push_back({t, map.branch(t).pull(nd.iv)});
        level = std::move(next);
    }
    return lambdas;
}

PartitionLevel partition_level(const MarkovMap& map, int n) {
    PartitionLevel out;
    out.n = n;
    for_each_word(map, n, [&](const Word& w, const SizedInterval& iv) {
        if (static_cast<int>(w.size()) == n) out.entries.push_back(WordInterval{w, iv});
    });
    std::sort(out.entries.begin(), out.entries.end(),
              [](const WordInterval& a, const WordInterval& b) { return word_less(a.word, b.word); });
    for (const WordInterval& e : out.entries) out.lambda = std::max(out.lambda, e.length());
    return out;
}

PartitionLevel refine(const MarkovMap& map, const PartitionLevel& level) {
    PartitionLevel out;
    out.n = level.n + 1;
    for (const WordInterval& e : level.entries) {
        const int last = e.word.back().branch;
        for (int r = 0; r < map.branch_count(); ++r) {
            if (!map.admissible(last, r)) continue;
            Word child = e.word;
            child.push_back(map.symbol(r));
            out.entries.push_back(word_interval(map, child));
        }
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const WordInterval& a, const WordInterval& b) { return word_less(a.word, b.word); });
    for (const WordInterval& e : out.entries) out.lambda = std::max(out.lambda, e.length());
    return out;
}

DecayFit decay_fit(const MarkovMap& map, int n_max) {
    if (n_max < 4) throw Error("decay_fit needs n_max >= 4");
    DecayFit fit;
    fit.lambdas = lambda_sequence(map, n_max);
    // least squares on log lambda_n = log K + n log mu
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = n_max;
    for (int i = 1; i <= n; ++i) {
        const double x = i;
        const double y = std::log(fit.lambdas[static_cast<size_t>(i - 1)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    fit.mu = std::exp(slope);
    fit.K = std::exp(intercept);
    if (!(fit.mu < 1.0))
        throw NotDecaying("partition diameters do not decay: fitted mu = " + std::to_string(fit.mu));
    return fit;
}

double distortion_ratio(const MarkovMap& map, const Word& w, double x, double y) {
    map.require_suitable(w);
    if (x == y) return 1.0;
    const Interval dom = map.branch(w.back().branch).image();
    const double tol = MarkovMap::kAlignTol * std::max(1.0, map.ambient().length());
    if (!dom.contains(x, tol) || !dom.contains(y, tol))
        throw OutOfDomain("point is outside the domain of the inverse branch composition");
    double zx = clamp_to(x, dom), zy = clamp_to(y, dom);
    double lx = 0.0, ly = 0.0;
    for (size_t i = w.size(); i-- > 0;) {
        const Branch& b = map.branch(w[i].branch);
        zx = clamp_to(b.inverse(zx), b.domain());
        zy = clamp_to(b.inverse(zy), b.domain());
        const double dx = b.deriv(zx), dy = b.deriv(zy);
        if (dx == 0.0 || dy == 0.0)
            throw OutOfDomain("inverse-branch derivative is singular along the word");
        lx -= std::log(std::abs(dx));
        ly -= std::log(std::abs(dy));
    }
    return std::exp(lx - ly);
}

} // namespace scalefn
