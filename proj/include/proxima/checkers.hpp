#pragma once

// Exhaustive verification of the proximal contraction families on a finite
// instance. Every quantifier "for all a1, a2, b1, b2" becomes a scan over
// ordered pairs of antecedent pairs; equalities |phi| = D are taken within
// the instance's eps_eq.
//
// Verdicts:
//   holds   - no violating quadruple; min_c (where the family has a constant)
//             is the exact supremum of the scanned ratios, floored at 1e-6.
//   fails   - a concrete witness is attached whenever a counterexample exists.
//   vacuous - the antecedent equalities are never satisfied, or the family
//             needs two distinct points of re and there are none.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proxima/instance.hpp"
#include "proxima/parallel.hpp"

namespace proxima {

/// Reported constant when every scanned ratio is zero.
inline constexpr double kMinContraction = 1e-6;

enum class Verdict { holds, fails, vacuous };

std::string_view to_string(Verdict v);

struct NamedPoint {
    std::string role;
    Point point;
};

/// Points of a violated inequality and its two sides. For the contraction
/// families `rhs` is the bracket that the constant multiplies.
struct Witness {
    std::vector<NamedPoint> points;
    double lhs = 0.0;
    double rhs = 0.0;

    const Point& at(std::string_view role) const;
};

struct CheckReport {
    std::string definition;
    Verdict verdict = Verdict::vacuous;
    std::optional<double> min_c;
    std::optional<Witness> witness;
    std::size_t pairs_scanned = 0;
    std::vector<NamedPoint> found;  // existence certificates, e.g. xi and lambda
    std::vector<std::string> notes;
};

/// (alpha, beta) in re x re with | |phi(alpha, F(beta))| - D | <= eps_eq.
struct AntecedentPair {
    std::size_t alpha = 0;  // index into re
    std::size_t beta = 0;   // index into re
    friend bool operator==(const AntecedentPair&, const AntecedentPair&) = default;
};

/// All antecedent pairs, alpha-major index order.
std::vector<AntecedentPair> antecedent_pairs(const ProblemInstance& inst,
                                             const ScanOptions& options = {});

CheckReport check_p_property(const ProblemInstance& inst, const ScanOptions& options = {});
CheckReport check_proximal_contraction(const ProblemInstance& inst, const ScanOptions& options = {});
CheckReport check_modified_proximal_contraction(const ProblemInstance& inst,
                                                const ScanOptions& options = {});
CheckReport check_p_proximal_contraction(const ProblemInstance& inst,
                                         const ScanOptions& options = {});
CheckReport check_p_proximal_contractive(const ProblemInstance& inst,
                                         const ScanOptions& options = {});

/// Hypotheses of the existence result for p-proximal contractive maps:
/// the p-property, F(re_phi) inside omega_phi, and a pair xi, lambda in re_phi
/// with |phi(xi, F(lambda))| = D and |phi(xi, lambda)| <= |phi(F xi, F lambda)|.
CheckReport check_contractive_existence(const ProblemInstance& inst,
                                        const ScanOptions& options = {});

/// re_phi non-empty and F(re_phi) inside omega_phi (Chebyshev, range tolerance).
CheckReport check_range_condition(const ProblemInstance& inst, const ScanOptions& options = {});

/// The sampled axioms of |phi| folded into a single report.
CheckReport check_phi_axioms_report(const ProblemInstance& inst, const ScanOptions& options = {});

enum class Definition {
    p_property,
    proximal_contraction,
    modified_proximal_contraction,
    p_proximal_contraction,
    p_proximal_contractive,
    contractive_existence,
    range_condition,
    phi_axioms,
};

std::string_view definition_name(Definition d);

/// Throws UnknownNameError.
Definition parse_definition(std::string_view name);

const std::vector<Definition>& all_definitions();

CheckReport run_check(Definition d, const ProblemInstance& inst, const ScanOptions& options = {});

}  // namespace proxima
