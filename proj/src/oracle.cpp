#include "proxima/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "proxima/checkers.hpp"
#include "proxima/proximity.hpp"

namespace proxima {

OracleResult brute_force_bpp(const ProblemInstance& inst) {
    OracleResult result;

    double D = std::numeric_limits<double>::infinity();
    for (const auto& a : inst.re)
        for (const auto& b : inst.omega) D = std::fmin(D, std::fabs(inst.phi(a, b)));
    result.d_phi_value = D;

    std::vector<OracleCandidate> all;
    all.reserve(inst.re.size());
    for (std::size_t i = 0; i < inst.re.size(); ++i) {
        const Point& a = inst.re[i];
        const Point image = inst.F()(a);
        all.push_back({a, i, std::fabs(std::fabs(inst.phi(a, image)) - D)});
    }

    for (const auto& c : all)
        if (c.residual <= inst.eps_eq) result.candidates.push_back(c);
    result.exact = !result.candidates.empty();
    if (!result.exact) {
        const auto best = std::min_element(all.begin(), all.end(), [](const auto& x, const auto& y) {
            return x.residual < y.residual;
        });
        result.candidates.push_back(*best);
    }
    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [](const OracleCandidate& x, const OracleCandidate& y) {
                         if (x.residual != y.residual) return x.residual < y.residual;
                         return x.re_index < y.re_index;
                     });
    result.is_unique = result.exact && result.candidates.size() == 1;
    return result;
}

bool uniqueness_hypotheses_hold(const ProblemInstance& inst, const ScanOptions& options) {
    return check_phi_axioms(inst, options).all_hold() &&
           check_p_proximal_contraction(inst, options).verdict == Verdict::holds &&
           check_range_condition(inst, options).verdict == Verdict::holds;
}

AgreementReport oracle_vs_solver(const ProblemInstance& inst, const SolverOptions& options) {
    AgreementReport report;
    report.oracle = brute_force_bpp(inst);
    report.trace = iterate(inst, std::nullopt, options);
    report.solver_converged = report.trace.status == IterationStatus::converged;
    if (!report.solver_converged) {
        report.message = "solver did not converge (" + std::string(to_string(report.trace.status)) + ")";
        return report;
    }

    const Point& x = report.trace.final_point();
    const bool member =
        std::any_of(report.oracle.candidates.begin(), report.oracle.candidates.end(),
                    [&](const OracleCandidate& c) { return same_point(c.point, x); });
    report.uniqueness_required = uniqueness_hypotheses_hold(inst, options.scan);

    if (!member) {
        report.message = "solver point " + to_string(x) + " is not an oracle candidate; oracle best is " +
                         to_string(report.oracle.candidates.front().point);
        return report;
    }
    if (report.uniqueness_required && !report.oracle.is_unique) {
        report.message = "uniqueness hypotheses hold but the oracle found " +
                         std::to_string(report.oracle.candidates.size()) + " candidate(s)";
        return report;
    }
    report.agree = true;
    report.message = "solver point " + to_string(x) + " is an oracle candidate";
    return report;
}

namespace {

// Bit-exact across standard libraries, unlike std::uniform_real_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

std::string literal(double v) {
    const auto text = expr::format_real(v);
    return v < 0 ? "(" + text + ")" : text;
}

double l1(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

}  // namespace

ProblemInstance random_instance(std::uint64_t seed, std::size_t points) {
    std::mt19937_64 rng(seed);
    std::vector<Point> pts;
    while (pts.size() < points) {
        Point p{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
        if (std::none_of(pts.begin(), pts.end(), [&](const Point& q) { return same_point(p, q); }))
            pts.push_back(std::move(p));
    }

    const Point& centre = pts[static_cast<std::size_t>(rng() % pts.size())];
    const double l1x = uniform(rng, 0.05, 0.45);
    const double l2x = uniform(rng, 0.05, 0.45);

    std::vector<MappingBranch> branches;
    for (const auto& p : pts) {
        const Point pulled{centre[0] + l1x * (p[0] - centre[0]), centre[1] + l2x * (p[1] - centre[1])};
        std::size_t snap = 0;
        for (std::size_t k = 1; k < pts.size(); ++k)
            if (l1(pts[k], pulled) < l1(pts[snap], pulled)) snap = k;
        const Point& target = pts[snap];
        MappingBranch b;
        b.guard = expr::Expression::parse("-(abs(a1 - " + literal(p[0]) + ") + abs(a2 - " +
                                          literal(p[1]) + "))");
        b.values = {expr::Expression::parse(literal(target[0])),
                    expr::Expression::parse(literal(target[1]))};
        branches.push_back(std::move(b));
    }

    auto re = PointSet::from_points("Re", pts);
    auto omega = PointSet::from_points("Omega", std::move(pts));
    ProximityFunction phi(expr::Expression::parse("abs(a1 - b1) + abs(a2 - b2)"), 2);
    return make_instance("random-" + std::to_string(seed), std::move(re), std::move(omega),
                         std::move(phi), Mapping(std::move(branches), 2));
}

}  // namespace proxima
