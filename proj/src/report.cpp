#include "proxima/report.hpp"

#include <algorithm>
#include <sstream>

namespace proxima::report {

namespace {

using expr::format_real;

json optional_real(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json named_points(const std::vector<NamedPoint>& pts) {
    json out = json::array();
    for (const auto& np : pts) out.push_back({{"role", np.role}, {"point", point_json(np.point)}});
    return out;
}

json axiom_json(const AxiomVerdict& v) {
    json w = json::array();
    for (const auto& p : v.witness) w.push_back(point_json(p));
    return {{"holds", v.holds}, {"witness", v.holds ? json(nullptr) : w}, {"lhs", v.lhs}, {"rhs", v.rhs}};
}

json candidate_json(const OracleCandidate& c) {
    return {{"point", point_json(c.point)}, {"re_index", c.re_index}, {"residual", c.residual}};
}

std::string point_text(const std::vector<NamedPoint>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i)
        s += (i ? ", " : "") + pts[i].role + " = " + to_string(pts[i].point);
    return s;
}

}  // namespace

json point_json(const Point& p) {
    json out = json::array();
    for (double c : p.coords()) out.push_back(c);
    return out;
}

json to_json(const CheckReport& r) {
    json out{
        {"definition", r.definition},
        {"verdict", std::string(to_string(r.verdict))},
        {"min_c", optional_real(r.min_c)},
        {"pairs_scanned", r.pairs_scanned},
        {"notes", r.notes},
    };
    if (r.witness) {
        out["witness"] = named_points(r.witness->points);
        out["lhs"] = r.witness->lhs;
        out["rhs"] = r.witness->rhs;
    } else {
        out["witness"] = nullptr;
        out["lhs"] = nullptr;
        out["rhs"] = nullptr;
    }
    out["found"] = named_points(r.found);
    return out;
}

json to_json(const AxiomReport& r) {
    return {{"zero_iff_equal", axiom_json(r.zero_iff_equal)},
            {"symmetric", axiom_json(r.symmetric)},
            {"triangle", axiom_json(r.triangle)},
            {"sample_size", r.sample_size},
            {"all_hold", r.all_hold()}};
}

json to_json(const IterationTrace& t) {
    return {{"status", std::string(to_string(t.status))},
            {"iterations", t.iterations()},
            {"start", point_json(t.points.front())},
            {"final_point", point_json(t.final_point())},
            {"final_residual", t.final_residual},
            {"final_set_gap", t.final_set_gap},
            {"distance", t.distance},
            {"last_step_gap", t.step_gaps.empty() ? json(nullptr) : json(t.step_gaps.back())}};
}

json to_json(const OracleResult& r) {
    json c = json::array();
    for (const auto& x : r.candidates) c.push_back(candidate_json(x));
    return {{"candidates", c}, {"exact", r.exact}, {"is_unique", r.is_unique}, {"d_phi", r.d_phi_value}};
}

json to_json(const AgreementReport& r) {
    return {{"agree", r.agree},
            {"solver_converged", r.solver_converged},
            {"uniqueness_required", r.uniqueness_required},
            {"solver", to_json(r.trace)},
            {"oracle", to_json(r.oracle)},
            {"message", r.message}};
}

json to_json(const RegressionSummary& s) {
    json entries = json::array();
    for (const auto& e : s.entries) {
        json results = json::array();
        for (const auto& r : e.results)
            results.push_back(
                {{"operation", r.operation}, {"passed", r.passed}, {"expected", r.expected}, {"actual", r.actual}});
        entries.push_back(
            {{"name", e.name}, {"passed", e.passed}, {"results", results}, {"discrepancies", e.discrepancies}});
    }
    return {{"entries", entries}, {"all_passed", s.all_passed()}};
}

json to_json(const std::vector<RangeWarning>& warnings) {
    json out = json::array();
    for (const auto& w : warnings)
        out.push_back({{"re_index", w.re_index}, {"image", point_json(w.image)}, {"distance", w.distance}});
    return out;
}

json document(std::string kind, const std::string& instance, json body) {
    body["schema_version"] = kReportSchemaVersion;
    body["kind"] = std::move(kind);
    body["instance"] = instance;
    return body;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string to_text(const CheckReport& r) {
    std::ostringstream out;
    out << r.definition << ": " << to_string(r.verdict);
    if (r.min_c) out << " (min_c = " << format_real(*r.min_c) << ")";
    out << ", " << r.pairs_scanned << " quadruple(s) scanned\n";
    if (r.witness) {
        out << "  witness: " << point_text(r.witness->points) << "\n";
        out << "  lhs = " << format_real(r.witness->lhs) << ", rhs = " << format_real(r.witness->rhs) << "\n";
    }
    if (!r.found.empty()) out << "  found: " << point_text(r.found) << "\n";
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    return out.str();
}

std::string to_text(const IterationTrace& t) {
    std::ostringstream out;
    out << "status: " << to_string(t.status) << " after " << t.iterations() << " step(s)\n";
    out << "start: " << to_string(t.points.front()) << "\n";
    out << "final point: " << to_string(t.final_point()) << "\n";
    out << "final residual: " << format_real(t.final_residual) << "\n";
    out << "D: " << format_real(t.distance) << "\n";
    return out.str();
}

std::string to_text(const OracleResult& r) {
    std::ostringstream out;
    out << "oracle: D = " << format_real(r.d_phi_value) << ", " << r.candidates.size() << " candidate(s)"
        << (r.exact ? "" : " (no exact candidate; best residual shown)") << (r.is_unique ? ", unique" : "") << "\n";
    for (const auto& c : r.candidates)
        out << "  " << to_string(c.point) << " residual " << format_real(c.residual) << "\n";
    return out.str();
}

std::string to_text(const AgreementReport& r) {
    std::ostringstream out;
    out << (r.agree ? "agree: " : "disagree: ") << r.message << "\n";
    out << to_text(r.oracle);
    return out.str();
}

std::string to_text(const RegressionSummary& s) {
    std::ostringstream out;
    for (const auto& e : s.entries) {
        out << (e.passed ? "PASS " : "FAIL ") << e.name << "\n";
        for (const auto& r : e.results)
            if (!r.passed) out << "  " << r.operation << ": expected " << r.expected << ", got " << r.actual << "\n";
        for (const auto& d : e.discrepancies) out << "  discrepancy: " << d << "\n";
    }
    out << (s.all_passed() ? "all entries passed\n" : "some entries failed\n");
    return out.str();
}

std::string to_text(const std::vector<RangeWarning>& warnings, std::size_t limit) {
    std::string out;
    const std::size_t shown = std::min(limit, warnings.size());
    for (std::size_t k = 0; k < shown; ++k) {
        const auto& w = warnings[k];
        out += "warning: F(re[" + std::to_string(w.re_index) + "]) = " + to_string(w.image) +
               " lies outside omega (distance " + format_real(w.distance) + ")\n";
    }
    if (shown < warnings.size())
        out += "warning: " + std::to_string(warnings.size() - shown) + " more point(s) of F(re) lie outside omega\n";
    return out;
}

std::string trace_csv(const IterationTrace& t) {
    std::ostringstream out;
    const std::size_t dim = t.points.front().dimension();
    out << "n";
    for (std::size_t i = 1; i <= dim; ++i) out << ",x" << i;
    out << ",step_gap,feasibility_error\n";
    for (std::size_t n = 0; n < t.points.size(); ++n) {
        out << n;
        for (double c : t.points[n].coords()) out << "," << format_real(c);
        if (n == 0)
            out << ",,";
        else
            out << "," << format_real(t.step_gaps[n - 1]) << "," << format_real(t.feasibility_errors[n - 1]);
        out << "\n";
    }
    return out.str();
}

}  // namespace proxima::report
