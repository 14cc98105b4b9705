#ifndef SCALEFN_TESTS_FIXTURES_HPP
#define SCALEFN_TESTS_FIXTURES_HPP

#include <cmath>
#include <string>

#include "scalefn/markov_map.hpp"

namespace scalefn::fixtures {

inline std::string config_path(const std::string& name) {
    return std::string(SCALEFN_CONFIG_DIR) + "/" + name;
}

// three affine branches on [0,1] with lengths l0, l1, l2
inline MarkovMap example1(double l0 = 0.2, double l1 = 0.3, double l2 = 0.5) {
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{0.0, l0}, AffineModel{(l1 + l2) / l0, l0});
    branches.emplace_back(1, Interval{l0, l0 + l1},
                          AffineModel{-1.0 / l1, 1.0 + l0 / l1});
    branches.emplace_back(2, Interval{l0 + l1, 1.0},
                          AffineModel{(l0 + l1) / l2, -(l0 + l1) * (l0 + l1) / l2});
    return build_map(Interval{0.0, 1.0}, std::move(branches));
}

// unimodal power-law map value_at_c - coeff |x|^gamma on [-2, 2]
inline MarkovMap unimodal(double gamma, double coeff) {
    PowerLawModel m{0.0, gamma, coeff, 2.0, -1};
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{-2.0, 0.0}, m);
    branches.emplace_back(1, Interval{0.0, 2.0}, m);
    return build_map(Interval{-2.0, 2.0}, std::move(branches));
}

inline MarkovMap quadratic() { return unimodal(2.0, 1.0); }
inline MarkovMap cubic() { return unimodal(3.0, 0.5); }

inline MarkovMap tent() {
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{0.0, 0.5}, AffineModel{2.0, 0.0});
    branches.emplace_back(1, Interval{0.5, 1.0}, AffineModel{-2.0, 2.0});
    return build_map(Interval{0.0, 1.0}, std::move(branches));
}

inline MarkovMap identity_map() {
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{0.0, 1.0}, AffineModel{1.0, 0.0});
    return build_map(Interval{0.0, 1.0}, std::move(branches));
}

// smooth unimodal map whose turning point lies on a 2-cycle
inline MarkovMap cycle_tent() {
    PowerLawModel m{0.5, 2.0, 2.0, 1.0, -1};
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{0.0, 0.5}, m);
    branches.emplace_back(1, Interval{0.5, 1.0}, m);
    return build_map(Interval{0.0, 1.0}, std::move(branches));
}

// expanding two-branch piecewise-affine map of [0,1]
inline MarkovMap twobranch() {
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{0.0, 0.4}, AffineModel{2.5, 0.0});
    branches.emplace_back(1, Interval{0.4, 1.0}, AffineModel{-1.0 / 0.6, 1.0 / 0.6});
    return build_map(Interval{0.0, 1.0}, std::move(branches));
}

// fold with one-sided power-law coefficients 3 (left) and 1 (right); the
// ambient is sized so both images align with the partition
inline MarkovMap lopsided_fold() {
    const double t = 1.0 + 1.0 / std::sqrt(3.0);
    const double L = t * t;
    const double c = L - t;
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{0.0, c}, PowerLawModel{c, 2.0, 3.0, L, -1});
    branches.emplace_back(1, Interval{c, L}, PowerLawModel{c, 2.0, 1.0, L, -1});
    return build_map(Interval{0.0, L}, std::move(branches));
}

// bimodal map with critical points 1/4 and 3/4 where f(1/4) = 3/4: the
// second critical point sits on the post-critical orbit of the first
inline MarkovMap chained_bimodal() {
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{0.0, 0.25}, PowerLawModel{0.25, 2.0, 12.0, 0.75, -1});
    branches.emplace_back(1, Interval{0.25, 0.5}, PowerLawModel{0.25, 2.0, 12.0, 0.75, -1});
    branches.emplace_back(2, Interval{0.5, 0.75}, PowerLawModel{0.75, 2.0, 12.0, 0.0, +1});
    branches.emplace_back(3, Interval{0.75, 1.0}, PowerLawModel{0.75, 2.0, 16.0, 0.0, +1});
    return build_map(Interval{0.0, 1.0}, std::move(branches));
}

// quadratic-style map with mismatched one-sided exponents at the fold
inline MarkovMap mixed_exponents() {
    std::vector<Branch> branches;
    branches.emplace_back(0, Interval{-2.0, 0.0}, PowerLawModel{0.0, 2.0, 1.0, 2.0, -1});
    branches.emplace_back(1, Interval{0.0, 2.0}, PowerLawModel{0.0, 3.0, 0.5, 2.0, -1});
    return build_map(Interval{-2.0, 2.0}, std::move(branches));
}

} // namespace scalefn::fixtures

#endif
