#include "proxima/proximity.hpp"

#include <cmath>
#include <limits>

namespace proxima {

double d_phi(const PointSet& re, const PointSet& omega, const ProximityFunction& phi,
             const ScanOptions& options) {
    const auto partial = parallel_chunks<double>(re.size(), options, [&](std::size_t lo, std::size_t hi) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = lo; i < hi; ++i)
            for (const Point& b : omega) best = std::fmin(best, std::fabs(phi(re[i], b)));
        return best;
    });
    double best = std::numeric_limits<double>::infinity();
    for (double v : partial) best = std::fmin(best, v);
    return best;
}

std::vector<Point> ProximalSubsets::re_points(const ProblemInstance& inst) const {
    std::vector<Point> out;
    for (auto i : re_indices) out.push_back(inst.re[i]);
    return out;
}

std::vector<Point> ProximalSubsets::omega_points(const ProblemInstance& inst) const {
    std::vector<Point> out;
    for (auto i : omega_indices) out.push_back(inst.omega[i]);
    return out;
}

ProximalSubsets proximal_subsets(const ProblemInstance& inst, const ScanOptions& options) {
    ProximalSubsets out;
    out.distance = d_phi(inst, options);
    const double D = out.distance;
    const double eps = inst.eps_eq;

    std::vector<char> re_hit(inst.re.size(), 0);
    std::vector<char> om_hit(inst.omega.size(), 0);
    for (std::size_t i = 0; i < inst.re.size(); ++i)
        for (std::size_t j = 0; j < inst.omega.size(); ++j)
            if (std::fabs(std::fabs(inst.phi(inst.re[i], inst.omega[j])) - D) <= eps) {
                re_hit[i] = 1;
                om_hit[j] = 1;
            }
    for (std::size_t i = 0; i < re_hit.size(); ++i)
        if (re_hit[i]) out.re_indices.push_back(i);
    for (std::size_t j = 0; j < om_hit.size(); ++j)
        if (om_hit[j]) out.omega_indices.push_back(j);
    return out;
}

namespace {

std::vector<Point> axiom_sample(const ProblemInstance& inst) {
    std::vector<Point> sample;
    auto push = [&](const Point& p) {
        for (const auto& q : sample)
            if (same_point(p, q)) return;
        sample.push_back(p);
    };
    for (const auto& p : inst.re) push(p);
    for (const auto& p : inst.omega) push(p);
    if (inst.mapping)
        for (const auto& p : inst.re) push((*inst.mapping)(p));
    return sample;
}

}  // namespace

AxiomReport check_phi_axioms(const ProblemInstance& inst, const ScanOptions& options) {
    const auto sample = axiom_sample(inst);
    const std::size_t n = sample.size();
    const double eps = inst.eps_eq;

    // |phi| table, row-major
    std::vector<double> table(n * n);
    parallel_chunks<int>(n, options, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = 0; j < n; ++j) table[i * n + j] = std::fabs(inst.phi(sample[i], sample[j]));
        return 0;
    });
    auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

    AxiomReport report;
    report.sample_size = n;

    for (std::size_t i = 0; i < n && report.zero_iff_equal.holds; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool equal = i == j;  // the sample holds no duplicates
            if (equal != (at(i, j) <= eps)) {
                report.zero_iff_equal = {false, {sample[i], sample[j]}, at(i, j), eps};
                break;
            }
        }

    for (std::size_t i = 0; i < n && report.symmetric.holds; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(at(i, j) - at(j, i)) > eps) {
                report.symmetric = {false, {sample[i], sample[j]}, at(i, j), at(j, i)};
                break;
            }

    struct Hit {
        bool found = false;
        std::size_t x = 0, y = 0, z = 0;
    };
    const auto hits = parallel_chunks<Hit>(n, options, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t x = lo; x < hi; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (at(x, z) > at(x, y) + at(y, z) + eps) return Hit{true, x, y, z};
        return Hit{};
    });
    for (const auto& h : hits)
        if (h.found) {
            report.triangle = {false,
                               {sample[h.x], sample[h.y], sample[h.z]},
                               at(h.x, h.z),
                               at(h.x, h.y) + at(h.y, h.z)};
            break;
        }
    return report;
}

Point apply_F(const ProblemInstance& inst, const Point& x) { return inst.F()(x); }

double distance_to(const Point& p, const std::vector<Point>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : set) best = std::fmin(best, chebyshev_distance(p, q));
    return best;
}

std::vector<RangeWarning> range_warnings(const ProblemInstance& inst) {
    std::vector<RangeWarning> out;
    if (!inst.mapping) return out;
    const double tol = inst.range_tolerance();
    for (std::size_t i = 0; i < inst.re.size(); ++i) {
        Point image = (*inst.mapping)(inst.re[i]);
        const double d = distance_to(image, inst.omega.points());
        if (d > tol) out.push_back({i, std::move(image), d});
    }
    return out;
}

}  // namespace proxima
