#ifndef SCALEFN_PARTITION_HPP
#define SCALEFN_PARTITION_HPP

#include <functional>
#include <utility>
#include <vector>

#include "scalefn/markov_map.hpp"

namespace scalefn {

struct WordInterval {
    Word word;
    SizedInterval interval;

    double length() const { return interval.len; }
    double log_length() const { return interval.log_len(); }
};

// I_w by pulling f(I_last) back through the inverse branches of the word.
WordInterval word_interval(const MarkovMap& map, const Word& w);

struct PartitionLevel {
    int n = 0;                        // generation (= word length)
    std::vector<WordInterval> entries; // sorted lexicographically by branch index
    double lambda = 0.0;               // max interval length
};

// All intervals named by suitable words of length n.
PartitionLevel partition_level(const MarkovMap& map, int n);

// All suitable one-symbol right-extensions of each word of `level`.
PartitionLevel refine(const MarkovMap& map, const PartitionLevel& level);

// Visit every suitable word of each length 1..n_max once, with its interval.
// The enumeration extends words on the left so each step is a single
// inverse-branch application.
void for_each_word(const MarkovMap& map, int n_max,
                   const std::function<void(const Word&, const SizedInterval&)>& fn);

// lambda_n for n = 1..n_max.
std::vector<double> lambda_sequence(const MarkovMap& map, int n_max);

struct DecayFit {
    double K = 0.0;
    double mu = 0.0;
    std::vector<double> lambdas;
};

// Least-squares fit lambda_n ~ K mu^n over generations 1..n_max.
// Throws NotDecaying when the fitted mu is >= 1.
DecayFit decay_fit(const MarkovMap& map, int n_max);

// |g_w'(x)| / |g_w'(y)|, evaluated in log space along the word.
double distortion_ratio(const MarkovMap& map, const Word& w, double x, double y);

} // namespace scalefn

#endif
