#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "proxima/instance.hpp"
#include "proxima/parallel.hpp"

namespace proxima {

/// min over (a, b) in re x omega of |phi(a, b)|.
double d_phi(const PointSet& re, const PointSet& omega, const ProximityFunction& phi,
             const ScanOptions& options = {});

inline double d_phi(const ProblemInstance& inst, const ScanOptions& options = {}) {
    return d_phi(inst.re, inst.omega, inst.phi, options);
}

/// Members of each set that attain D against some partner in the other set,
/// within eps_eq. Parent order is preserved. Either side may be empty.
struct ProximalSubsets {
    double distance = 0.0;
    std::vector<std::size_t> re_indices;
    std::vector<std::size_t> omega_indices;

    std::vector<Point> re_points(const ProblemInstance& inst) const;
    std::vector<Point> omega_points(const ProblemInstance& inst) const;
};

ProximalSubsets proximal_subsets(const ProblemInstance& inst, const ScanOptions& options = {});

/// Outcome of one sampled axiom. A failing verdict always names its points.
struct AxiomVerdict {
    bool holds = true;
    std::vector<Point> witness;  // (x, y) or (x, y, z)
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Zero-iff-equal, symmetry and triangle inequality of |phi| over the sample
/// re u omega u F(re) (F(re) omitted when the instance has no mapping).
struct AxiomReport {
    AxiomVerdict zero_iff_equal;
    AxiomVerdict symmetric;
    AxiomVerdict triangle;
    std::size_t sample_size = 0;

    bool all_hold() const { return zero_iff_equal.holds && symmetric.holds && triangle.holds; }
};

AxiomReport check_phi_axioms(const ProblemInstance& inst, const ScanOptions& options = {});

/// F(x), first active branch. Throws MappingError / EvalError.
Point apply_F(const ProblemInstance& inst, const Point& x);

/// Point of re whose image lands farther than the range tolerance from omega.
struct RangeWarning {
    std::size_t re_index = 0;
    Point image;
    double distance = 0.0;  // Chebyshev distance to the nearest member of omega
};

std::vector<RangeWarning> range_warnings(const ProblemInstance& inst);

/// Chebyshev distance from p to the nearest point of `set`.
double distance_to(const Point& p, const std::vector<Point>& set);

}  // namespace proxima
