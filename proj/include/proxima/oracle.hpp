#pragma once

// Brute-force ground truth for best proximity points. Nothing here calls the
// solver's step or iteration code; D and the residuals are recomputed with
// plain double loops over the sets.

#include <cstdint>
#include <string>
#include <vector>

#include "proxima/instance.hpp"
#include "proxima/solver.hpp"

namespace proxima {

struct OracleCandidate {
    Point point;
    std::size_t re_index = 0;
    double residual = 0.0;
};

struct OracleResult {
    std::vector<OracleCandidate> candidates;  // sorted by residual, then index
    bool exact = false;      // at least one candidate has residual <= eps_eq
    bool is_unique = false;  // exactly one candidate and it is exact
    double d_phi_value = 0.0;
};

OracleResult brute_force_bpp(const ProblemInstance& inst);

/// The uniqueness hypotheses that can be decided on a sample: the |phi|
/// axioms, the p-proximal contraction, and the range condition.
bool uniqueness_hypotheses_hold(const ProblemInstance& inst, const ScanOptions& options = {});

struct AgreementReport {
    bool agree = false;
    bool solver_converged = false;
    bool uniqueness_required = false;
    IterationTrace trace;
    OracleResult oracle;
    std::string message;
};

/// Runs the solver from the default start and compares with the oracle.
AgreementReport oracle_vs_solver(const ProblemInstance& inst, const SolverOptions& options = {});

/// Seeded random instance: 2-D, re = omega = `points` points uniform in
/// [-1, 1]^2, phi the l1 distance, and F the per-coordinate affine contraction
/// x -> c + L (x - c) (c a random member, L diagonal in [0.05, 0.45]) snapped to
/// the nearest member, encoded as one guarded branch per point.
ProblemInstance random_instance(std::uint64_t seed, std::size_t points = 20);

}  // namespace proxima
