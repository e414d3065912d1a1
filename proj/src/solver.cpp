#include "proxima/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "proxima/error.hpp"
#include "proxima/proximity.hpp"

namespace proxima {

std::string_view to_string(IterationStatus s) {
    switch (s) {
        case IterationStatus::converged: return "converged";
        case IterationStatus::max_iters: return "max_iters";
        case IterationStatus::infeasible_step: return "infeasible_step";
    }
    return "unknown";
}

namespace {

struct StepContext {
    const ProblemInstance& inst;
    double D;
    std::vector<std::size_t> candidates;  // re_phi indices
    double feas_tol;
    ScanOptions scan;
};

std::optional<StepResult> step_from(const StepContext& ctx, const Point& xi) {
    const Point target = ctx.inst.F()(xi);
    const auto& cand = ctx.candidates;
    std::vector<double> errors(cand.size());
    parallel_chunks<int>(cand.size(), ctx.scan, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k)
            errors[k] = std::fabs(std::fabs(ctx.inst.phi(ctx.inst.re[cand[k]], target)) - ctx.D);
        return 0;
    });
    const double best = *std::min_element(errors.begin(), errors.end());
    if (best > ctx.feas_tol) return std::nullopt;
    for (std::size_t k = 0; k < cand.size(); ++k)
        if (errors[k] <= best + ctx.feas_tol) return StepResult{ctx.inst.re[cand[k]], cand[k], errors[k]};
    return std::nullopt;  // unreachable: best itself qualifies
}

StepContext make_context(const ProblemInstance& inst, const SolverOptions& options) {
    auto subsets = proximal_subsets(inst, options.scan);
    return StepContext{inst, subsets.distance, std::move(subsets.re_indices),
                       options.step_feas_tol.value_or(inst.eps_eq), options.scan};
}

double set_gap(const ProblemInstance& inst, const Point& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : inst.omega) best = std::fmin(best, std::fabs(inst.phi(x, b)));
    return best;
}

}  // namespace

std::optional<StepResult> proximal_step(const ProblemInstance& inst, const Point& xi,
                                        const SolverOptions& options) {
    const auto ctx = make_context(inst, options);
    if (ctx.candidates.empty()) throw InstanceError("re_phi is empty");
    return step_from(ctx, xi);
}

IterationTrace iterate(const ProblemInstance& inst, const std::optional<Point>& start,
                       const SolverOptions& options) {
    const auto ctx = make_context(inst, options);
    if (ctx.candidates.empty()) throw InstanceError("re_phi is empty; the iteration has no start");

    Point xi = inst.re[ctx.candidates.front()];
    if (start) {
        const bool member = std::any_of(ctx.candidates.begin(), ctx.candidates.end(),
                                        [&](std::size_t i) { return same_point(inst.re[i], *start); });
        if (!member) throw InstanceError("start point " + to_string(*start) + " is not in re_phi");
        xi = *start;
    }

    IterationTrace trace;
    trace.distance = ctx.D;
    trace.points.push_back(xi);
    trace.status = IterationStatus::max_iters;
    for (std::size_t n = 0; n < options.max_iters; ++n) {
        const auto next = step_from(ctx, trace.points.back());
        if (!next) {
            trace.status = IterationStatus::infeasible_step;
            break;
        }
        const double gap = std::fabs(inst.phi(trace.points.back(), next->point));
        trace.points.push_back(next->point);
        trace.step_gaps.push_back(gap);
        trace.feasibility_errors.push_back(next->feasibility_error);
        if (gap <= options.conv_tol) {
            trace.status = IterationStatus::converged;
            break;
        }
    }
    trace.final_residual = residual(inst, trace.final_point());
    trace.final_set_gap = set_gap(inst, trace.final_point());
    return trace;
}

double residual(const ProblemInstance& inst, const Point& x) {
    return std::fabs(std::fabs(inst.phi(x, inst.F()(x))) - d_phi(inst));
}

RateCheck rate_check(const IterationTrace& trace, double c, double tolerance) {
    RateCheck result;
    if (trace.step_gaps.empty()) return result;
    const double q = 2.0 * c / (1.0 + c);
    const double g0 = trace.step_gaps.front();
    double factor = 1.0;
    for (std::size_t n = 0; n < trace.step_gaps.size(); ++n) {
        if (trace.step_gaps[n] > factor * g0 + tolerance) {
            result.holds = false;
            result.first_violation = n;
            return result;
        }
        factor *= q;
    }
    return result;
}

CauchyProfile cauchy_check(const ProblemInstance& inst, const IterationTrace& trace,
                           std::size_t p_max, double conv_tol) {
    CauchyProfile profile;
    const std::size_t len = trace.points.size();
    if (len < 2) {
        profile.consistent = true;
        return profile;
    }
    for (std::size_t n = 0; n + 1 < len; ++n) {
        double t = 0.0;
        for (std::size_t p = 1; p <= p_max && n + p < len; ++p)
            t = std::fmax(t, std::fabs(inst.phi(trace.points[n], trace.points[n + p])));
        profile.tail.push_back(t);
    }
    const std::size_t from = (3 * profile.tail.size()) / 4;
    profile.consistent = std::all_of(profile.tail.begin() + static_cast<std::ptrdiff_t>(from),
                                     profile.tail.end(), [&](double t) { return t <= conv_tol; });
    return profile;
}

}  // namespace proxima
