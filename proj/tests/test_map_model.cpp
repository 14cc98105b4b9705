#include <doctest.h>

#include <cmath>
#include <random>

#include "scalefn/map_io.hpp"
#include "scalefn/markov_map.hpp"

#include "fixtures.hpp"

using namespace scalefn;

TEST_CASE("example 1 builds with the printed incidence matrix") {
    const MarkovMap map = fixtures::example1();
    REQUIRE(map.branch_count() == 3);
    const IncidenceMatrix want{{0, 1, 1}, {1, 1, 1}, {1, 1, 0}};
    CHECK(map.incidence() == want);
    CHECK(map.branch(0).orientation() == +1);
    CHECK(map.branch(1).orientation() == -1);
    CHECK(map.branch(2).orientation() == +1);
    CHECK(map.critical_points().empty());

    double total = 0.0;
    for (const Branch& b : map.branches()) total += b.domain().length();
    CHECK(std::abs(total - map.ambient().length()) < 1e-12);
}

TEST_CASE("single full affine branch is accepted") {
    const MarkovMap map = fixtures::identity_map();
    REQUIRE(map.branch_count() == 1);
    CHECK(map.incidence() == IncidenceMatrix{{1}});
}

TEST_CASE("non-Markov configurations are rejected") {
    SUBCASE("gap") {
        std::vector<Branch> b;
        b.emplace_back(0, Interval{0.0, 0.2}, AffineModel{4.0, 0.2});
        b.emplace_back(1, Interval{0.2, 0.45}, AffineModel{-10.0 / 3.0, 1.0 + 2.0 / 3.0});
        b.emplace_back(2, Interval{0.5, 1.0}, AffineModel{1.0, -0.5});
        CHECK_THROWS_AS(build_map(Interval{0.0, 1.0}, std::move(b)), GapError);
    }
    SUBCASE("overlap") {
        std::vector<Branch> b;
        b.emplace_back(0, Interval{0.0, 0.25}, AffineModel{4.0, 0.0});
        b.emplace_back(1, Interval{0.2, 1.0}, AffineModel{1.0, 0.0});
        CHECK_THROWS_AS(build_map(Interval{0.0, 1.0}, std::move(b)), OverlapError);
    }
    SUBCASE("misaligned image") {
        std::vector<Branch> b;
        b.emplace_back(0, Interval{0.0, 0.2}, AffineModel{3.9, 0.2});
        b.emplace_back(1, Interval{0.2, 0.5}, AffineModel{-10.0 / 3.0, 1.0 + 2.0 / 3.0});
        b.emplace_back(2, Interval{0.5, 1.0}, AffineModel{1.0, -0.5});
        CHECK_THROWS_AS(build_map(Interval{0.0, 1.0}, std::move(b)), AlignmentError);
    }
    SUBCASE("zero slope") {
        std::vector<Branch> b;
        b.emplace_back(0, Interval{0.0, 1.0}, AffineModel{0.0, 0.5});
        CHECK_THROWS_AS(build_map(Interval{0.0, 1.0}, std::move(b)), NonMonotoneError);
    }
}

TEST_CASE("evaluate uses the branch containing the point") {
    const MarkovMap e1 = fixtures::example1();
    CHECK(e1.evaluate(0.1, Side::Right) == doctest::Approx(0.6).epsilon(1e-14));
    // continuity at the shared breakpoint
    CHECK(e1.evaluate(0.2, Side::Left) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e1.evaluate(0.2, Side::Right) == doctest::Approx(1.0).epsilon(1e-14));

    const MarkovMap q = fixtures::quadratic();
    CHECK(q.evaluate(0.0, Side::Left) == doctest::Approx(2.0));
    CHECK(q.evaluate(0.0, Side::Right) == doctest::Approx(2.0));
    CHECK_THROWS_AS(q.evaluate(3.0, Side::Left), OutOfDomain);
}

TEST_CASE("derivative is the analytic one, one-sided at breakpoints") {
    const MarkovMap e1 = fixtures::example1();
    CHECK(e1.derivative(0.3, Side::Right) == doctest::Approx(-10.0 / 3.0).epsilon(1e-14));

    const MarkovMap q = fixtures::quadratic();
    CHECK(q.derivative(0.0, Side::Left) == 0.0);
    CHECK(q.derivative(0.0, Side::Right) == 0.0);
    CHECK(q.derivative(1.0, Side::Right) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("derivative near a power-law end follows the one-sided limits") {
    const MarkovMap q = fixtures::quadratic();
    const CriticalPoint& cp = q.critical_points().at(0);
    CHECK(cp.a_left == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cp.b_right == doctest::Approx(-2.0).epsilon(1e-12));
    for (double h : {1e-2, 1e-4, 1e-6}) {
        const double left = q.derivative(-h, Side::Left) / std::pow(h, cp.gamma - 1.0);
        const double right = q.derivative(h, Side::Right) / std::pow(h, cp.gamma - 1.0);
        if (h == 1e-6) {
            CHECK(std::abs(left - cp.a_left) / std::abs(cp.a_left) < 1e-3);
            CHECK(std::abs(right - cp.b_right) / std::abs(cp.b_right) < 1e-3);
        }
    }
}

TEST_CASE("inverse branches invert") {
    const MarkovMap e1 = fixtures::example1();
    CHECK(e1.inverse_branch(0, 0.6, 1e-12) == doctest::Approx(0.1).epsilon(1e-13));

    const MarkovMap id = fixtures::identity_map();
    CHECK(id.inverse_branch(0, 0.37, 1e-12) == doctest::Approx(0.37).epsilon(1e-14));

    const MarkovMap q = fixtures::quadratic();
    CHECK(q.inverse_branch(1, 1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(e1.inverse_branch(0, 0.1, 1e-12), NotInImage);
}

TEST_CASE("inverse o evaluate is the identity on branch interiors") {
    std::mt19937_64 rng(17);
    auto check_map = [&](const MarkovMap& map) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (const Branch& b : map.branches()) {
            for (int i = 0; i < 1000; ++i) {
                const double x = b.domain().lo + b.domain().length() * (0.001 + 0.998 * u(rng));
                const double y = b.eval(x);
                const double back = map.inverse_branch(b.index(), y, 1e-12);
                CHECK(std::abs(back - x) < 1e-10);
            }
        }
    };
    check_map(fixtures::example1());
    check_map(fixtures::quadratic());
    check_map(conjugate_map(fixtures::example1(),
                            Diffeo::sinusoidal(0.03, 1, Interval{0.0, 1.0})));
}

TEST_CASE("critical orbits") {
    SUBCASE("quadratic: {0, 2, -2} with -2 fixed") {
        const auto orbits = fixtures::quadratic().critical_orbit();
        REQUIRE(orbits.size() == 1);
        REQUIRE(orbits[0].points.size() == 3);
        CHECK(orbits[0].points[0] == doctest::Approx(0.0));
        CHECK(orbits[0].points[1] == doctest::Approx(2.0));
        CHECK(orbits[0].points[2] == doctest::Approx(-2.0));
        CHECK(orbits[0].cycle_start == 2);
        CHECK(orbits[0].period == 1);
        CHECK(fixtures::quadratic().geometrically_finite());
    }
    SUBCASE("affine maps have no critical orbits") {
        CHECK(fixtures::example1().critical_orbit().empty());
    }
    SUBCASE("turning point on a 2-cycle is rejected") {
        CHECK_THROWS_AS(fixtures::cycle_tent().critical_orbit(), CycleThroughCritical);
    }
}

TEST_CASE("asymmetry") {
    CHECK(fixtures::quadratic().asymmetry(0.0) == doctest::Approx(-1.0).epsilon(1e-12));

    // symmetric fold: |tau| = 1
    CHECK(std::abs(fixtures::cubic().asymmetry(0.0)) == doctest::Approx(1.0).epsilon(1e-12));

    const MarkovMap fold = fixtures::lopsided_fold();
    REQUIRE(fold.critical_points().size() == 1);
    CHECK(fold.asymmetry(fold.critical_points()[0].c) == doctest::Approx(-3.0).epsilon(1e-12));

    CHECK_THROWS_AS(fixtures::mixed_exponents().asymmetry(0.0), ExponentMismatch);
    CHECK_THROWS_AS(fixtures::quadratic().asymmetry(1.0), OutOfDomain);
}

TEST_CASE("conjugation") {
    const MarkovMap e1 = fixtures::example1();
    SUBCASE("identity leaves the map unchanged") {
        const MarkovMap same = conjugate_map(e1, Diffeo::identity(e1.ambient()));
        CHECK(same.incidence() == e1.incidence());
        for (int i = 0; i < e1.branch_count(); ++i) {
            CHECK(same.branch(i).domain().lo == e1.branch(i).domain().lo);
            CHECK(same.branch(i).domain().hi == e1.branch(i).domain().hi);
        }
    }
    SUBCASE("sinusoidal conjugate keeps the incidence matrix") {
        const MarkovMap g = conjugate_map(e1, Diffeo::sinusoidal(0.03, 1, e1.ambient()));
        CHECK(g.incidence() == e1.incidence());
        CHECK(g.branch(0).domain().hi != doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("orientation-reversing perturbations are rejected") {
        CHECK_THROWS_AS(conjugate_map(e1, Diffeo::poly({-10.0}, e1.ambient())), NonDiffeo);
        CHECK_THROWS_AS(conjugate_map(e1, Diffeo::sinusoidal(0.2, 1, e1.ambient())), NonDiffeo);
    }
}

TEST_CASE("exponent and asymmetry survive conjugation") {
    const MarkovMap q = fixtures::quadratic();
    const MarkovMap g = conjugate_map(q, Diffeo::sinusoidal(0.03, 1, q.ambient()));
    REQUIRE(g.critical_points().size() == 1);
    const CriticalPoint& cq = q.critical_points()[0];
    const CriticalPoint& cg = g.critical_points()[0];
    CHECK(cg.gamma == doctest::Approx(cq.gamma).epsilon(1e-12));
    CHECK(g.asymmetry(cg.c) == doctest::Approx(q.asymmetry(cq.c)).epsilon(1e-9));

    // the transformed one-sided coefficient matches a numerical limit
    const double h = 1e-6;
    const double num = g.derivative(cg.c - h, Side::Left) / std::pow(h, cg.gamma - 1.0);
    CHECK(std::abs(num - cg.a_left) / std::abs(cg.a_left) < 1e-3);
}

TEST_CASE("JSON map descriptions round through the loader") {
    const MarkovMap fromfile = load_map(fixtures::config_path("example1.json"));
    const MarkovMap built = fixtures::example1();
    CHECK(fromfile.incidence() == built.incidence());
    CHECK(fromfile.evaluate(0.1, Side::Right) == doctest::Approx(0.6).epsilon(1e-14));

    CHECK_THROWS_AS(map_from_json_text("{"), ParseError);
    CHECK_THROWS_AS(map_from_json_text("{\"ambient\":[0,1]}"), ParseError);
    CHECK_THROWS_AS(
        map_from_json_text("{\"ambient\":[0,1],\"branches\":[{\"domain\":[0,1],"
                           "\"model\":{\"kind\":\"mystery\"}}]}"),
        ParseError);

    const MarkovMap conj = load_map(fixtures::config_path("example1_sin.json"));
    CHECK(conj.incidence() == built.incidence());
}

TEST_CASE("maps with critical points must fix the boundary setwise") {
    std::vector<Branch> b;
    b.emplace_back(0, Interval{0.0, 0.5}, PowerLawModel{0.5, 2.0, 2.0, 1.0, -1});
    b.emplace_back(1, Interval{0.5, 1.0}, PowerLawModel{0.5, 2.0, 1.0, 1.0, -1});
    CHECK_THROWS_AS(build_map(Interval{0.0, 1.0}, std::move(b)), ConfigError);
}
