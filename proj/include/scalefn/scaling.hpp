#ifndef SCALEFN_SCALING_HPP
#define SCALEFN_SCALING_HPP

#include <string>
#include <vector>

#include "scalefn/dual_address.hpp"
#include "scalefn/errors.hpp"
#include "scalefn/markov_map.hpp"

namespace scalefn {

struct SignedScale {
    double value = 0.0;
    Word word;
};

// Signed length ratio of I_w to its parent (w minus its rightmost symbol).
// The sign equals the orientation of the rightmost symbol.
SignedScale signed_scale(const MarkovMap& map, const Word& w);

struct ScalingEstimate {
    double value = 0.0;
    int depth = 0;
    double error_bound = 0.0;
    bool converged = false;
};

struct NotConverged : Error {
    ScalingEstimate partial;
    NotConverged(const std::string& msg, ScalingEstimate p) : Error(msg), partial(p) {}
};

// Limit of the signed scales along the truncations of a dual address.
// Accepts once three consecutive gaps fall below tol; the error bound is the
// last gap times a safety factor of 10 (heuristic, not certified).
ScalingEstimate scaling_function(const MarkovMap& map, const DualAddress& a, double tol,
                                 int max_depth);

struct HolderFit {
    double K = 0.0;
    double mu = 0.0;
    double worst_residual = 0.0;
    std::vector<double> max_gap; // max |Delta s| per prefix length, starting at n = 2
};

// Sampled Hoelder modulus of the scaling function: over random address pairs
// agreeing in their rightmost n symbols, fits max |Delta s| <= K mu^n.
// Maps with critical points are rejected (NotGoodMarkov).
HolderFit holder_modulus(const MarkovMap& map, int depth, int samples,
                         unsigned long long seed = 0x5CA1Eu);

struct ProbeResult {
    double jump_ratio = 1.0;
    double base_value = 0.0;
    std::vector<double> member_values;
    std::vector<int> agreement; // rightmost-prefix agreement length per member
    bool base_in_discontinuity_class = false;
    std::string note;
};

// Limit of s_f over a family of addresses converging to a0, divided by
// s_f(a0).  A ratio bounded away from 1 certifies a discontinuity.
ProbeResult discontinuity_probe(const MarkovMap& map, const DualAddress& a0,
                                const std::vector<DualAddress>& family, double tol);

// Family members tail = truncate(a0, k), block = deviation, for k in
// [k_min, k_max].  Throws UnsuitableWord when a junction is inadmissible.
std::vector<DualAddress> probe_family(const MarkovMap& map, const DualAddress& a0,
                                      const Word& deviation_block, int k_min, int k_max);

// Whether the address reaches, under shift iteration, a purely periodic
// address whose periodic point lies on a post-critical cycle.
bool in_discontinuity_class(const MarkovMap& map, const DualAddress& a0);

} // namespace scalefn

#endif
