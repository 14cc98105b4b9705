#ifndef SCALEFN_INVARIANTS_HPP
#define SCALEFN_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "scalefn/scaling.hpp"
#include "scalefn/symbolic.hpp"

namespace scalefn {

struct EigenvalueRecord {
    DualAddress address;
    double p = 0.0;
    int period = 0;
    double direct = 0.0;
    double via_scaling = 0.0;
};

// (f^k)'(p) as a chain-rule product along the periodic orbit.
double eigenvalue_direct(const MarkovMap& map, const DualAddress& a);

// Reciprocal of the product of the k scaling values along the shift orbit.
double eigenvalue_via_scaling(const MarkovMap& map, const DualAddress& a, double tol);

EigenvalueRecord eigenvalue_record(const MarkovMap& map, const DualAddress& a, double tol);

struct ExponentEstimate {
    double gamma = 0.0;
    double c = 0.0;
    Side side = Side::Left;
    int depth = 0;
    int steps_to_target = 0; // iterates from c to the next chain element
    double log_scale_at_c = 0.0;
    double log_scale_at_target = 0.0;
};

// Exponent at a critical point recovered from ratios of log-scales along the
// words having c (resp. its chain target) as an endpoint on `side`.
ExponentEstimate exponent_via_scaling(const MarkovMap& map, double c, int depth,
                                      Side side = Side::Left);

struct ScalingSample {
    DualAddress address;
    ScalingEstimate estimate;
};

struct AsymmetryRecord {
    double c = 0.0;
    double gamma = 0.0;
    double tau = 0.0;
};

struct InvariantReport {
    std::vector<ScalingSample> scaling;
    std::vector<AsymmetryRecord> asymmetries;
    std::vector<EigenvalueRecord> eigenvalues;
};

struct ComparisonOptions {
    double tol = 1e-6;
    bool check_eigenvalues = false; // Theorem C mode
    double estimator_tol = 1e-8;
    int max_depth = 80;
};

struct ComparisonResult {
    std::string verdict; // "invariants-match" or "mismatch"
    std::vector<std::string> disagreements;
    InvariantReport first;
    InvariantReport second;

    bool match() const { return verdict == "invariants-match"; }
};

// All purely periodic addresses of period <= max_period (rotations counted
// separately) plus `n_random` pseudo-random eventually periodic addresses.
std::vector<DualAddress> default_address_sample(const MarkovMap& map, int max_period = 3,
                                                int n_random = 20,
                                                unsigned long long seed = 0x5CA1Eu);

std::vector<DualAddress> periodic_addresses(const MarkovMap& map, int max_period);

// Sampled scaling values, asymmetries and (optionally) eigenvalues of two
// combinatorially identical maps, with a match verdict.
ComparisonResult compare_invariants(const MarkovMap& f, const MarkovMap& g,
                                    const std::vector<DualAddress>& addresses,
                                    const ComparisonOptions& opts = {});

} // namespace scalefn

#endif
