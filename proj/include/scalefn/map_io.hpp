#ifndef SCALEFN_MAP_IO_HPP
#define SCALEFN_MAP_IO_HPP

#include <string>

#include "scalefn/markov_map.hpp"

namespace scalefn {

// Map description format:
// {
//   "ambient": [lo, hi],
//   "branches": [
//     { "domain": [a, b],
//       "model": {"kind": "affine", "slope": s, "intercept": t}
//              | {"kind": "powerlaw", "c": c, "gamma": g, "coeff": A,
//                 "value_at_c": v, "direction": 1|-1} }
//   ],
//   "conjugacy": {"kind": "sin", "epsilon": e, "k": k}       (optional;
//                "identity" and {"kind":"poly","coeffs":[..]} also accepted)
// }
MarkovMap load_map(const std::string& path);
MarkovMap map_from_json_text(const std::string& text);

} // namespace scalefn

#endif
