#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proxima/checkers.hpp"
#include "proxima/instance.hpp"
#include "proxima/parallel.hpp"

namespace proxima {

/// One expected outcome of a built-in instance.
///
/// `operation` selects what is computed:
///   d_phi                 value[0] = D
///   verdict:<definition>  text = holds | fails | vacuous
///   min_c:<definition>    value[0] = upper bound on the reported constant
///   witness:<definition>  points = alpha1, alpha2, beta1, beta2; value = {lhs, rhs}
///   found:<definition>    points = certificate points in report order
///   phi                   points = {x, y}; value[0] = |phi(x, y)|
///   apply_F               points = {x}; value = coordinates of F(x)
///   residual              points = {x}; value[0]
///   re_phi, omega_phi     points = the exact proximal subset, in order
///   re_phi_size, omega_phi_size   value[0] = member count
///   solve                 text = iteration status; value = final point
///   oracle_unique         points = {the single candidate}
struct Expectation {
    std::string operation;
    std::vector<Point> points;
    std::string text;
    std::vector<double> values;
    double tolerance = 1e-12;
    std::string provenance;
};

struct CorpusEntry {
    std::string name;
    ProblemInstance instance;
    std::vector<Expectation> expected;
    std::vector<std::string> discrepancies;
};

const std::vector<std::string>& builtin_names();

/// Throws UnknownNameError.
CorpusEntry load_builtin(std::string_view name);

std::vector<CorpusEntry> builtin_corpus();

struct ExpectationResult {
    std::string operation;
    bool passed = false;
    std::string expected;
    std::string actual;
};

struct EntryResult {
    std::string name;
    bool passed = true;
    std::vector<ExpectationResult> results;
    std::vector<std::string> discrepancies;
};

struct RegressionSummary {
    std::vector<EntryResult> entries;
    bool all_passed() const;
};

/// Evaluates one expectation. Evaluation errors become failed results.
ExpectationResult evaluate_expectation(const ProblemInstance& inst, const Expectation& e,
                                       const ScanOptions& options = {});

RegressionSummary run_regressions(std::span<const CorpusEntry> entries, const ScanOptions& options = {});

}  // namespace proxima
