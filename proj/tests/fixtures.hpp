#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "proxima/instance.hpp"

namespace fixtures {

using namespace proxima;

inline expr::Expression E(const std::string& s) { return expr::Expression::parse(s); }

inline MappingBranch branch(std::vector<std::string> values, std::string guard = {}) {
    MappingBranch b;
    if (!guard.empty()) b.guard = E(guard);
    for (const auto& v : values) b.values.push_back(E(v));
    return b;
}

// re = omega = {(0, 2^-k) : k = 0..36} followed by (0,0); phi = a2 - b2;
// F(x, y) = (0, y/2). Every antecedent pair has ratio exactly 1/3. eps_eq sits
// below the smallest spacing so tolerance never pairs distinct members.
inline ProblemInstance halving_instance() {
    std::vector<Point> pts;
    for (int k = 0; k <= 36; ++k) pts.push_back({0.0, std::ldexp(1.0, -k)});
    pts.push_back({0.0, 0.0});
    return make_instance("halving", PointSet::from_points("Re", pts), PointSet::from_points("Omega", pts),
                         ProximityFunction(E("a2 - b2"), 2), Mapping({branch({"0", "a2/2"})}, 2), 1e-12);
}

// F swaps the two points of re = omega = {(0,0), (0,1)}.
inline ProblemInstance swap_instance() {
    std::vector<Point> pts{{0.0, 0.0}, {0.0, 1.0}};
    return make_instance("swap", PointSet::from_points("Re", pts), PointSet::from_points("Omega", pts),
                         ProximityFunction(E("abs(a1 - b1) + abs(a2 - b2)"), 2),
                         Mapping({branch({"0", "1 - a2"})}, 2));
}

// F constant: every antecedent pair shares alpha = (0,0).
inline ProblemInstance constant_map_instance() {
    auto re = PointSet::segment("Re", {0.0, 0.0}, {0.0, 1.0}, 11);
    auto om = PointSet::segment("Omega", {0.0, 0.0}, {0.0, 1.0}, 11);
    return make_instance("constant", std::move(re), std::move(om), ProximityFunction(E("a2 - b2"), 2),
                         Mapping({branch({"0", "0"})}, 2));
}

// D = 1/2 but every |phi(alpha, F(beta))| >= 5/2: no antecedent pair.
inline ProblemInstance unreachable_instance() {
    auto re = PointSet::from_points("Re", {{0.0}, {0.5}});
    auto om = PointSet::from_points("Omega", {{1.0}, {1.5}});
    return make_instance("unreachable", std::move(re), std::move(om), ProximityFunction(E("a1 - b1"), 1),
                         Mapping({branch({"a1 + 3"})}, 1));
}

}  // namespace fixtures
