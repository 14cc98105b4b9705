#ifndef SCALEFN_SYMBOLIC_HPP
#define SCALEFN_SYMBOLIC_HPP

#include <vector>

#include "scalefn/dual_address.hpp"
#include "scalefn/markov_map.hpp"
#include "scalefn/partition.hpp"

namespace scalefn {

// Nested interval containing the point coded by a forward address.
struct CodingResult {
    SizedInterval interval;
    int depth = 0;
    double diameter = 0.0;
};
CodingResult coding_map(const MarkovMap& map, const ForwardAddress& a, int depth);

struct PeriodicPoint {
    double p = 0.0;
    int period = 0;
    std::vector<double> orbit;    // p, f(p), ..., f^{k-1}(p)
    std::vector<int> branches;    // branch housing each orbit point
};

// Periodic point of a purely periodic dual address, located by iterating the
// composed inverse branch of the block (a contraction).
PeriodicPoint periodic_point(const MarkovMap& map, const DualAddress& a, double tol);

enum class AddressClass { Recurrent, TotallyNonrecurrent, Wandering, Undetermined };
const char* to_string(AddressClass c);

struct CriticalRegion {
    int level = 0;                          // n_1
    std::vector<WordInterval> intervals;    // critical intervals of eta_{n_1}
};

// Critical intervals of the first level at which each has a free endpoint
// off the critical orbits.  Empty region when the map has no critical points.
CriticalRegion critical_region(const MarkovMap& map);

// Trichotomy of a dual address by how the truncation intervals of its shift
// meet the critical region.  `depth` caps the truncations examined.
AddressClass classify_address(const MarkovMap& map, const DualAddress& a, int depth);

} // namespace scalefn

#endif
