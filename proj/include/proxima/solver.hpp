#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "proxima/instance.hpp"
#include "proxima/parallel.hpp"

namespace proxima {

struct SolverOptions {
    std::size_t max_iters = 10000;
    double conv_tol = 1e-9;
    /// Largest accepted | |phi(next, F(current))| - D |. Defaults to eps_eq.
    std::optional<double> step_feas_tol;
    ScanOptions scan;
};

enum class IterationStatus { converged, max_iters, infeasible_step };

std::string_view to_string(IterationStatus s);

/// Proximal Picard sequence xi_0, xi_1, ... inside re_phi, with per-step
/// diagnostics. `step_gaps[n]` is |phi(xi_n, xi_{n+1})| and
/// `feasibility_errors[n]` is | |phi(xi_{n+1}, F(xi_n))| - D |.
struct IterationTrace {
    std::vector<Point> points;
    std::vector<double> step_gaps;
    std::vector<double> feasibility_errors;
    IterationStatus status = IterationStatus::max_iters;
    double distance = 0.0;        // D for the instance
    double final_residual = 0.0;  // | |phi(x*, F(x*))| - D |
    double final_set_gap = 0.0;   // min over omega of |phi(x*, b)|

    std::size_t iterations() const { return step_gaps.size(); }
    const Point& final_point() const { return points.back(); }
};

struct StepResult {
    Point point;
    std::size_t re_index = 0;
    double feasibility_error = 0.0;
};

/// Next iterate from xi: the member of re_phi minimising | |phi(a, F(xi))| - D |.
/// Candidates within step_feas_tol of the minimum tie; the lowest index wins.
/// Returns nullopt when the minimum exceeds step_feas_tol.
std::optional<StepResult> proximal_step(const ProblemInstance& inst, const Point& xi,
                                        const SolverOptions& options = {});

/// Throws InstanceError when re_phi is empty or `start` is not a member of re_phi.
IterationTrace iterate(const ProblemInstance& inst, const std::optional<Point>& start = std::nullopt,
                       const SolverOptions& options = {});

/// | |phi(x, F(x))| - D |; zero certifies a best proximity point of the sample.
double residual(const ProblemInstance& inst, const Point& x);

struct RateCheck {
    bool holds = true;
    std::optional<std::size_t> first_violation;
};

/// step_gaps[n] <= (2c / (1 + c))^n * step_gaps[0] + tolerance for every n.
RateCheck rate_check(const IterationTrace& trace, double c, double tolerance = 1e-9);

struct CauchyProfile {
    std::vector<double> tail;  // t_n = max_{1 <= p <= p_max} |phi(xi_n, xi_{n+p})|
    bool consistent = false;   // t_n <= conv_tol over the final quarter
};

CauchyProfile cauchy_check(const ProblemInstance& inst, const IterationTrace& trace,
                           std::size_t p_max, double conv_tol = 1e-9);

}  // namespace proxima
