#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxima/expr.hpp"
#include "proxima/geometry.hpp"

namespace proxima {

/// Variable names for the coordinates of the first argument: a1..ak.
std::vector<std::string> first_argument_names(std::size_t dimension);

/// Variable names a1..ak followed by b1..bk.
std::vector<std::string> pair_argument_names(std::size_t dimension);

/// Real-valued function of two points, declared as an expression over a1..ak
/// (first argument) and b1..bk (second argument).
class ProximityFunction {
public:
    /// Throws BindError when the expression uses a name outside a1..ak, b1..bk.
    ProximityFunction(expr::Expression expression, std::size_t dimension);

    double operator()(const Point& a, const Point& b) const;

    const expr::Expression& expression() const { return bound_.expression(); }
    std::size_t dimension() const noexcept { return dimension_; }

private:
    expr::BoundExpression bound_;
    std::size_t dimension_;
};

/// One piece of a piecewise mapping: active when `guard` evaluates to >= 0
/// (always active when absent); `values` gives one expression per coordinate.
struct MappingBranch {
    std::optional<expr::Expression> guard;
    std::vector<expr::Expression> values;
};

/// Piecewise mapping F over a1..ak. The first active branch wins.
class Mapping {
public:
    Mapping(std::vector<MappingBranch> branches, std::size_t dimension);

    /// Throws MappingError when no branch is active, EvalError on evaluation failure.
    Point operator()(const Point& x) const;

    const std::vector<MappingBranch>& branches() const noexcept { return branches_; }
    std::size_t dimension() const noexcept { return dimension_; }

private:
    struct Compiled {
        std::optional<expr::BoundExpression> guard;
        std::vector<expr::BoundExpression> values;
    };

    std::vector<MappingBranch> branches_;
    std::vector<Compiled> compiled_;
    std::size_t dimension_;
};

/// Hypotheses that cannot be decided on a finite sample; recorded, not checked.
struct Assumptions {
    bool phi_complete = false;
    bool approx_phi_compact = false;
    friend bool operator==(const Assumptions&, const Assumptions&) = default;
};

inline constexpr double kDefaultEqualityTolerance = 1e-9;

/// Everything the checks and the solver operate on.
struct ProblemInstance {
    std::string name;
    PointSet re;
    PointSet omega;
    ProximityFunction phi;
    std::optional<Mapping> mapping;
    /// Slack on |phi| = D equalities.
    double eps_eq = kDefaultEqualityTolerance;
    /// Coordinate (Chebyshev) slack for "F(x) lies in a set" tests. Falls back to eps_eq.
    std::optional<double> eps_range;
    Assumptions assumptions;

    std::size_t dimension() const { return re.dimension(); }
    double range_tolerance() const { return eps_range.value_or(eps_eq); }

    /// Throws MappingError when the instance declares no mapping.
    const Mapping& F() const;

    /// Re-checks cross-field invariants; throws InstanceError.
    void validate() const;
};

/// Builds and validates an instance in one go.
ProblemInstance make_instance(std::string name, PointSet re, PointSet omega,
                              ProximityFunction phi, std::optional<Mapping> mapping,
                              double eps_eq = kDefaultEqualityTolerance,
                              std::optional<double> eps_range = std::nullopt,
                              Assumptions assumptions = {});

/// Structural equality: same points, same expression trees, same tolerances.
bool equivalent(const ProblemInstance& a, const ProblemInstance& b);

/// Same instance with phi replaced by k * (phi).
ProblemInstance scale_phi(const ProblemInstance& instance, double factor);

}  // namespace proxima
