#include "proxima/corpus.hpp"

#include <cmath>
#include <sstream>

#include "proxima/error.hpp"
#include "proxima/oracle.hpp"
#include "proxima/proximity.hpp"
#include "proxima/solver.hpp"

namespace proxima {

namespace {

using expr::Expression;

constexpr std::size_t kSamples = 101;

Expression E(std::string_view s) { return Expression::parse(s); }

MappingBranch branch(std::vector<std::string_view> values, std::string_view guard = {}) {
    MappingBranch b;
    if (!guard.empty()) b.guard = E(guard);
    for (auto v : values) b.values.push_back(E(v));
    return b;
}

Expectation value_of(std::string op, double v, std::string provenance, std::vector<Point> points = {}) {
    return {std::move(op), std::move(points), {}, {v}, 1e-12, std::move(provenance)};
}

Expectation verdict_of(Definition d, Verdict v, std::string provenance) {
    return {"verdict:" + std::string(definition_name(d)), {}, std::string(to_string(v)), {}, 0.0,
            std::move(provenance)};
}

Expectation min_c_of(Definition d, double bound, std::string provenance) {
    return {"min_c:" + std::string(definition_name(d)), {}, {}, {bound}, 1e-9, std::move(provenance)};
}

Expectation points_of(std::string op, std::vector<Point> points, std::string provenance) {
    return {std::move(op), std::move(points), {}, {}, 1e-12, std::move(provenance)};
}

Expectation mapped(Point x, Point image, std::string provenance) {
    const auto c = image.coords();
    return {"apply_F", {std::move(x)}, {}, std::vector<double>(c.begin(), c.end()), 1e-12,
            std::move(provenance)};
}

Expectation solved(Point final_point, std::string provenance) {
    const auto c = final_point.coords();
    return {"solve", {}, "converged", std::vector<double>(c.begin(), c.end()), 1e-9, std::move(provenance)};
}

// Two segments on the vertical line x = 2, shared by both phi variants.
CorpusEntry vertical_pair(std::string name, std::string_view phi) {
    auto re = PointSet::segment("Re", {2.0, -2.0}, {2.0, 0.0}, kSamples);
    auto om = PointSet::segment("Omega", {2.0, 0.0}, {2.0, 2.0}, kSamples);
    auto inst = make_instance(std::move(name), std::move(re), std::move(om), ProximityFunction(E(phi), 2),
                              std::nullopt);
    return {inst.name, std::move(inst), {}, {}};
}

CorpusEntry ex1_7_F1() {
    auto e = vertical_pair("ex1_7_F1", "a2^2 - b2^2");
    e.expected = {
        value_of("d_phi", 0.0, "reference: D = 0 for the squared-difference functional"),
        verdict_of(Definition::p_property, Verdict::holds,
                   "reference: the pair has the p-property for the squared-difference functional"),
    };
    return e;
}

CorpusEntry ex1_7_F2() {
    auto e = vertical_pair("ex1_7_F2", "a2*b2");
    const double third = 1.0 / 3.0;
    e.expected = {
        value_of("d_phi", 0.0, "reference: D = 0 for the product functional"),
        verdict_of(Definition::p_property, Verdict::fails,
                   "reference: the pair lacks the p-property for the product functional"),
        value_of("phi", 0.0, "reference: (2,-1/2) attains D against (2,0)", {{2.0, -0.5}, {2.0, 0.0}}),
        value_of("phi", 0.0, "reference: (2,-1/3) attains D against (2,0)", {{2.0, -third}, {2.0, 0.0}}),
        value_of("phi", 1.0 / 6.0, "reference: the two first components differ by 1/6 in |phi|",
                 {{2.0, -0.5}, {2.0, -third}}),
        value_of("phi", 0.0, "reference: the second components coincide", {{2.0, 0.0}, {2.0, 0.0}}),
    };
    e.discrepancies.push_back(
        "the reference witnesses use first coordinate 1, outside re = {2} x [-2, 0]; the product "
        "functional ignores first coordinates, so they are encoded with first coordinate 2");
    e.discrepancies.push_back(
        "-1/3 is not a grid point of the 101-sample segment; it appears only in the phi value checks");
    return e;
}

CorpusEntry ex1_10() {
    // re listed as {(0,1/2), (0,-1/2)}: the scan's first violating quadruple is then
    // alpha1 = (0,1/2), alpha2 = (0,-1/2).
    auto re = PointSet::from_points("Re", {{0.0, 0.5}, {0.0, -0.5}});
    auto om = PointSet::from_points("Omega", {{0.0, 0.0}, {1.0, 0.75}, {1.0, 5.0}});
    Mapping F({branch({"0", "1 - 2*a2"}, "min(a2, 1 - a2)"),
               branch({"1", "1 + a2/2"}, "min(a2 + 1, -a2)")},
              2);
    auto inst = make_instance("ex1_10", std::move(re), std::move(om),
                              ProximityFunction(E("(a1 - b1) + (a2 - b2)"), 2), std::move(F));
    CorpusEntry e{inst.name, std::move(inst), {}, {}};
    const std::string anchor = "reference: two-point re, three-point omega example";
    e.expected = {
        value_of("d_phi", 0.5, anchor + ", D = 1/2"),
        verdict_of(Definition::proximal_contraction, Verdict::fails, anchor + ", not a proximal contraction"),
        {"witness:proximal-contraction",
         {{0.0, 0.5}, {0.0, -0.5}, {0.0, 0.5}, {0.0, 0.5}},
         {},
         {1.0, 0.0},
         1e-12,
         anchor + ", |phi(alpha1, alpha2)| = 1 against beta1 = beta2"},
        verdict_of(Definition::modified_proximal_contraction, Verdict::holds,
                   anchor + ", modified proximal contraction"),
        mapped({0.0, 0.5}, {0.0, 0.0}, anchor + ", second branch at y = 1/2"),
        mapped({0.0, -0.5}, {1.0, 0.75}, anchor + ", first branch at y = -1/2"),
    };
    e.discrepancies.push_back(
        "the modified family holds because no two distinct beta satisfy the antecedent while "
        "antecedent pairs exist; it is reported as holds, not vacuous");
    return e;
}

CorpusEntry example_2_2(std::string name, std::string_view phi) {
    auto re = PointSet::segment("Re", {0.0, 0.0}, {0.0, 0.5}, kSamples);
    auto om = PointSet::segment("Omega", {2.0 / 3.0, 0.0}, {2.0 / 3.0, 0.5}, kSamples);
    Mapping F({branch({"1", "(a2 - 1)/4"}, "-abs(a1)"), branch({"1", "a2/2"}, "-abs(a1 - 2/3)")}, 2);
    auto inst = make_instance(std::move(name), std::move(re), std::move(om), ProximityFunction(E(phi), 2),
                              std::move(F));
    return {inst.name, std::move(inst), {}, {}};
}

CorpusEntry ex2_2_phi() {
    auto e = example_2_2("ex2_2_phi", "a2 - b2");
    e.expected = {
        value_of("d_phi", 0.0, "reference: D = 0 for the second-coordinate difference"),
        verdict_of(Definition::p_proximal_contraction, Verdict::vacuous,
                   "derived: |a - (b - 1)/4| >= 1/8 on re, so the antecedent is never met"),
    };
    e.discrepancies.push_back(
        "reference verdict: p-proximal contraction with c = 2/3. On re = {0} x [0, 1/2], F has "
        "second coordinate (y - 1)/4 in [-1/4, -1/8], so |phi(alpha, F(beta))| >= 1/8 > D = 0 and "
        "the claim holds only vacuously");
    e.discrepancies.push_back("F maps re to {1} x [-1/4, -1/8], outside omega = {2/3} x [0, 1/2]");
    return e;
}

CorpusEntry ex2_2_g() {
    auto e = example_2_2("ex2_2_g", "a2 + b2");
    e.expected = {
        value_of("d_phi", 0.0, "reference: D = 0 for the second-coordinate sum"),
        verdict_of(Definition::p_proximal_contraction, Verdict::fails,
                   "reference: not a p-proximal contraction for the sum functional"),
    };
    e.discrepancies.push_back(
        "the reference witness alpha1 = (0,1/2), beta1 = (0,0) gives |g(alpha1, F(beta1))| = 1/4, not 0; "
        "the verdict is confirmed by the scan with genuine antecedent pairs a = (1 - b)/4");
    return e;
}

CorpusEntry ex2_3() {
    auto re = PointSet::segment("Re", {0.0}, {1.0}, kSamples);
    auto om = PointSet::segment("Omega", {0.0}, {2.0}, kSamples);
    auto inst = make_instance("ex2_3", std::move(re), std::move(om), ProximityFunction(E("a1^2 - b1^2"), 1),
                              Mapping({branch({"a1/2"})}, 1), kDefaultEqualityTolerance, 0.01);
    CorpusEntry e{inst.name, std::move(inst), {}, {}};
    e.expected = {
        value_of("d_phi", 0.0, "reference: D = 0 for u^2 - v^2 on [0,1] x [0,2]"),
        verdict_of(Definition::p_proximal_contraction, Verdict::holds,
                   "reference: p-proximal contraction for u^2 - v^2"),
        min_c_of(Definition::p_proximal_contraction, 0.25, "reference: c = 1/4 is feasible"),
        value_of("phi", 3.0 / 16.0, "reference: |phi(1/2, 1/4)| = 3/16", {{0.5}, {0.25}}),
    };
    e.discrepancies.push_back(
        "the reference quadruple (1/2, 1/4, 1, 1/4) does not satisfy the second antecedent "
        "(F(1/4) = 1/8); 3/16 is kept as a phi regression value only");
    e.discrepancies.push_back("the final inequality is written with g although only phi is defined; read as phi");
    e.discrepancies.push_back("range tolerance 0.01 (half the omega grid spacing) so F(re) = [0, 1/2] lands on omega");
    return e;
}

CorpusEntry ex_thm1() {
    auto re = PointSet::segment("Re", {0.0, -1.0}, {0.0, 0.0}, kSamples);
    auto om = PointSet::segment("Omega", {0.0, 0.0}, {0.0, 1.0}, kSamples);
    auto inst = make_instance("ex_thm1", std::move(re), std::move(om), ProximityFunction(E("b2 - a2"), 2),
                              Mapping({branch({"0", "a2/4"})}, 2), kDefaultEqualityTolerance, std::nullopt,
                              Assumptions{true, true});
    CorpusEntry e{inst.name, std::move(inst), {}, {}};
    const std::string anchor = "reference: quarter-map example for the contraction existence result";
    e.expected = {
        value_of("d_phi", 0.0, anchor + ", D = 0"),
        points_of("re_phi", {{0.0, 0.0}}, anchor + ", re_phi = {(0,0)}"),
        points_of("omega_phi", {{0.0, 0.0}}, anchor + ", omega_phi = {(0,0)}"),
        verdict_of(Definition::p_proximal_contraction, Verdict::holds, anchor + ", p-proximal contraction"),
        min_c_of(Definition::p_proximal_contraction, 0.25, anchor + ", c = 1/4"),
        verdict_of(Definition::range_condition, Verdict::holds, anchor + ", F(re_phi) in omega_phi"),
        mapped({0.0, -1.0}, {0.0, -0.25}, anchor + ", F(x, y) = (0, y/4)"),
        value_of("residual", 0.75, "derived: |phi((0,-1), (0,-1/4))| = 3/4", {{0.0, -1.0}}),
        value_of("residual", 0.0, anchor + ", (0,0) is a best proximity point", {{0.0, 0.0}}),
        solved({0.0, 0.0}, anchor + ", unique best proximity point (0,0)"),
        points_of("oracle_unique", {{0.0, 0.0}}, anchor + ", unique best proximity point (0,0)"),
    };
    e.discrepancies.push_back(
        "F(0, y) = (0, y/4) lies in {0} x [-1/4, 0], outside omega = {0} x [0, 1] for y < 0; "
        "range warnings are expected and every phi-level conclusion is unaffected");
    return e;
}

CorpusEntry ex_thm2() {
    auto re = PointSet::segment("Re", {0.0, -1.0}, {0.0, 0.0}, kSamples);
    auto om = PointSet::segment("Omega", {1.0, 0.0}, {1.0, 1.0}, kSamples);
    auto inst = make_instance("ex_thm2", std::move(re), std::move(om), ProximityFunction(E("a2^2 - b2^2"), 2),
                              Mapping({branch({"1", "-a2/5"})}, 2), kDefaultEqualityTolerance, 0.005,
                              Assumptions{true, false});
    CorpusEntry e{inst.name, std::move(inst), {}, {}};
    const std::string anchor = "reference: contractive example with F(0, t) = (1, -t/5)";
    e.expected = {
        value_of("d_phi", 0.0, anchor + ", D = 0"),
        verdict_of(Definition::p_proximal_contractive, Verdict::holds, anchor + ", p-proximal contractive"),
        verdict_of(Definition::p_property, Verdict::holds, anchor + ", p-property"),
        verdict_of(Definition::contractive_existence, Verdict::holds, anchor + ", conditions hold at (0,0)"),
        points_of("found:contractive-existence", {{0.0, 0.0}, {0.0, 0.0}}, anchor + ", xi = lambda = (0,0)"),
        verdict_of(Definition::range_condition, Verdict::holds, "derived: F(re_phi) within half a grid step of omega_phi"),
        mapped({0.0, 0.0}, {1.0, 0.0}, anchor + ", F(0,0) = (1,0)"),
        value_of("residual", 0.0, anchor + ", (0,0) is a best proximity point", {{0.0, 0.0}}),
        points_of("oracle_unique", {{0.0, 0.0}}, anchor + ", unique best proximity point"),
        value_of("re_phi_size", 101.0, "derived: every (0,-t) pairs with (1,t) since t^2 - t^2 = 0"),
        value_of("omega_phi_size", 101.0, "derived: every (1,t) pairs with (0,-t)"),
    };
    e.discrepancies.push_back(
        "reference re_phi = omega_phi = {(0,0)}; by definition |xi^2 - lambda^2| = 0 whenever "
        "|xi| = |lambda|, so re_phi = re and omega_phi = omega, and (0,0) is not a member of omega");
    e.discrepancies.push_back(
        "F(re) = {1} x [0, 1/5] is not closed on a uniform grid; range tolerance 0.005 (half the "
        "omega grid spacing) is used for the inclusion F(re_phi) in omega_phi");
    return e;
}

using Builder = CorpusEntry (*)();

const std::vector<std::pair<std::string, Builder>>& builders() {
    static const std::vector<std::pair<std::string, Builder>> all{
        {"ex1_7_F1", ex1_7_F1}, {"ex1_7_F2", ex1_7_F2}, {"ex1_10", ex1_10}, {"ex2_2_phi", ex2_2_phi},
        {"ex2_2_g", ex2_2_g},   {"ex2_3", ex2_3},       {"ex_thm1", ex_thm1}, {"ex_thm2", ex_thm2},
    };
    return all;
}

std::string format_values(std::span<const double> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + expr::format_real(v[i]);
    return s + "]";
}

std::string format_points(const std::vector<Point>& pts) {
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + to_string(pts[i]);
    return s + "}";
}

bool close(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(std::fabs(a[i] - b[i]) <= tol)) return false;
    return true;
}

bool same_points(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].dimension() != b[i].dimension() || !same_point(a[i], b[i], tol)) return false;
    return true;
}

std::pair<std::string_view, std::string_view> split_op(std::string_view op) {
    const auto colon = op.find(':');
    if (colon == std::string_view::npos) return {op, {}};
    return {op.substr(0, colon), op.substr(colon + 1)};
}

void need_points(const Expectation& e, std::size_t n) {
    if (e.points.size() != n)
        throw InstanceError("expectation '" + e.operation + "' needs " + std::to_string(n) + " point(s)");
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, _] : builders()) out.push_back(name);
        return out;
    }();
    return names;
}

CorpusEntry load_builtin(std::string_view name) {
    for (const auto& [n, build] : builders())
        if (n == name) return build();
    throw UnknownNameError("unknown built-in instance '" + std::string(name) + "'");
}

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> out;
    for (const auto& [_, build] : builders()) out.push_back(build());
    return out;
}

bool RegressionSummary::all_passed() const {
    for (const auto& e : entries)
        if (!e.passed) return false;
    return true;
}

ExpectationResult evaluate_expectation(const ProblemInstance& inst, const Expectation& e,
                                       const ScanOptions& options) {
    ExpectationResult r;
    r.operation = e.operation;
    try {
        const auto [op, arg] = split_op(e.operation);
        if (op == "d_phi") {
            const double v = d_phi(inst, options);
            r.expected = format_values(e.values);
            r.actual = format_values(std::vector{v});
            r.passed = close(std::vector{v}, e.values, e.tolerance);
        } else if (op == "verdict") {
            const auto report = run_check(parse_definition(arg), inst, options);
            r.expected = e.text;
            r.actual = std::string(to_string(report.verdict));
            r.passed = r.actual == r.expected;
        } else if (op == "min_c") {
            const auto report = run_check(parse_definition(arg), inst, options);
            r.expected = "<= " + format_values(e.values);
            r.actual = report.min_c ? format_values(std::vector{*report.min_c}) : "none";
            r.passed = report.min_c && *report.min_c <= e.values.at(0) + e.tolerance;
        } else if (op == "witness") {
            need_points(e, 4);
            const auto report = run_check(parse_definition(arg), inst, options);
            r.expected = format_points(e.points) + " " + format_values(e.values);
            if (!report.witness) {
                r.actual = "no witness";
            } else {
                const auto& w = *report.witness;
                std::vector<Point> got;
                for (const auto& np : w.points) got.push_back(np.point);
                const std::vector<double> sides{w.lhs, w.rhs};
                r.actual = format_points(got) + " " + format_values(sides);
                r.passed = same_points(got, e.points, e.tolerance) && close(sides, e.values, e.tolerance);
            }
        } else if (op == "found") {
            const auto report = run_check(parse_definition(arg), inst, options);
            std::vector<Point> got;
            for (const auto& np : report.found) got.push_back(np.point);
            r.expected = format_points(e.points);
            r.actual = format_points(got);
            r.passed = same_points(got, e.points, e.tolerance);
        } else if (op == "phi") {
            need_points(e, 2);
            const double v = std::fabs(inst.phi(e.points[0], e.points[1]));
            r.expected = format_values(e.values);
            r.actual = format_values(std::vector{v});
            r.passed = close(std::vector{v}, e.values, e.tolerance);
        } else if (op == "apply_F") {
            need_points(e, 1);
            const Point image = apply_F(inst, e.points[0]);
            r.expected = format_values(e.values);
            r.actual = format_values(image.coords());
            r.passed = close(image.coords(), e.values, e.tolerance);
        } else if (op == "residual") {
            need_points(e, 1);
            const double v = residual(inst, e.points[0]);
            r.expected = format_values(e.values);
            r.actual = format_values(std::vector{v});
            r.passed = close(std::vector{v}, e.values, e.tolerance);
        } else if (op == "re_phi" || op == "omega_phi" || op == "re_phi_size" || op == "omega_phi_size") {
            const auto subsets = proximal_subsets(inst, options);
            const bool re_side = op.starts_with("re_");
            const auto pts = re_side ? subsets.re_points(inst) : subsets.omega_points(inst);
            if (op.ends_with("_size")) {
                const std::vector<double> n{static_cast<double>(pts.size())};
                r.expected = format_values(e.values);
                r.actual = format_values(n);
                r.passed = close(n, e.values, 0.0);
            } else {
                r.expected = format_points(e.points);
                r.actual = format_points(pts);
                r.passed = same_points(pts, e.points, e.tolerance);
            }
        } else if (op == "solve") {
            SolverOptions so;
            so.scan = options;
            const auto trace = iterate(inst, std::nullopt, so);
            const auto& x = trace.final_point();
            r.expected = e.text + " " + format_values(e.values);
            r.actual = std::string(to_string(trace.status)) + " " + format_values(x.coords());
            r.passed = to_string(trace.status) == e.text && close(x.coords(), e.values, e.tolerance) &&
                       trace.final_residual <= inst.eps_eq;
        } else if (op == "oracle_unique") {
            need_points(e, 1);
            const auto oracle = brute_force_bpp(inst);
            std::vector<Point> got;
            for (const auto& c : oracle.candidates) got.push_back(c.point);
            r.expected = "unique " + format_points(e.points);
            r.actual = std::string(oracle.is_unique ? "unique " : "not unique ") + format_points(got);
            r.passed = oracle.is_unique && same_points(got, e.points, e.tolerance);
        } else {
            throw UnknownNameError("unknown expectation operation '" + e.operation + "'");
        }
    } catch (const Error& err) {
        r.passed = false;
        r.actual = std::string("error: ") + err.what();
    }
    return r;
}

RegressionSummary run_regressions(std::span<const CorpusEntry> entries, const ScanOptions& options) {
    RegressionSummary summary;
    for (const auto& entry : entries) {
        EntryResult er;
        er.name = entry.name;
        er.discrepancies = entry.discrepancies;
        for (const auto& e : entry.expected) {
            er.results.push_back(evaluate_expectation(entry.instance, e, options));
            er.passed = er.passed && er.results.back().passed;
        }
        summary.entries.push_back(std::move(er));
    }
    return summary;
}

}  // namespace proxima
