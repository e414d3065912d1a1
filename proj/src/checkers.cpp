#include "proxima/checkers.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "proxima/error.hpp"
#include "proxima/proximity.hpp"

namespace proxima {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::vacuous: return "vacuous";
    }
    return "unknown";
}

const Point& Witness::at(std::string_view role) const {
    for (const auto& p : points)
        if (p.role == role) return p.point;
    throw UnknownNameError("witness has no point named '" + std::string(role) + "'");
}

namespace {

/// |phi| over all ordered pairs of one set.
class AbsTable {
public:
    AbsTable(const PointSet& set, const ProximityFunction& phi, const ScanOptions& options)
        : n_(set.size()), values_(n_ * n_) {
        parallel_chunks<int>(n_, options, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = 0; j < n_; ++j) values_[i * n_ + j] = std::fabs(phi(set[i], set[j]));
            return 0;
        });
    }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

struct Quad {
    double lhs = 0.0;
    double rhs = 0.0;
    bool counted = false;  // passed the definition's restriction
    bool violated = false;
    double ratio = -1.0;   // < 0 when no ratio applies
};

struct ScanResult {
    bool violated = false;
    std::size_t i = 0;
    std::size_t j = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double max_ratio = 0.0;
    std::size_t scanned = 0;
};

/// Scans ordered pairs (i, j) of an m-element list. The first violation in
/// (i, j) lexicographic order wins, the ratio maximum is order-independent.
template <typename Classify>
ScanResult scan_pairs(std::size_t m, const ScanOptions& options, Classify classify) {
    const auto parts = parallel_chunks<ScanResult>(m, options, [&](std::size_t lo, std::size_t hi) {
        ScanResult r;
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const Quad q = classify(i, j);
                if (!q.counted) continue;
                ++r.scanned;
                if (q.ratio > r.max_ratio) r.max_ratio = q.ratio;
                if (q.violated && !r.violated) {
                    r.violated = true;
                    r.i = i;
                    r.j = j;
                    r.lhs = q.lhs;
                    r.rhs = q.rhs;
                }
            }
        return r;
    });
    ScanResult total;
    for (const auto& p : parts) {
        total.scanned += p.scanned;
        total.max_ratio = std::fmax(total.max_ratio, p.max_ratio);
        if (p.violated && !total.violated) {
            total.violated = true;
            total.i = p.i;
            total.j = p.j;
            total.lhs = p.lhs;
            total.rhs = p.rhs;
        }
    }
    return total;
}

std::vector<AntecedentPair> compute_antecedent_pairs(const ProblemInstance& inst, double D,
                                                     const ScanOptions& options) {
    const auto& re = inst.re;
    const Mapping& F = inst.F();
    std::vector<Point> images;
    images.reserve(re.size());
    for (const auto& p : re) images.push_back(F(p));

    const auto parts = parallel_chunks<std::vector<AntecedentPair>>(
        re.size(), options, [&](std::size_t lo, std::size_t hi) {
            std::vector<AntecedentPair> out;
            for (std::size_t a = lo; a < hi; ++a)
                for (std::size_t b = 0; b < re.size(); ++b)
                    if (std::fabs(std::fabs(inst.phi(re[a], images[b])) - D) <= inst.eps_eq)
                        out.push_back({a, b});
            return out;
        });
    std::vector<AntecedentPair> pairs;
    for (const auto& p : parts) pairs.insert(pairs.end(), p.begin(), p.end());
    return pairs;
}

enum class Family { proximal, modified_proximal, p_proximal, p_proximal_contractive };

std::string_view family_name(Family f) {
    switch (f) {
        case Family::proximal: return definition_name(Definition::proximal_contraction);
        case Family::modified_proximal: return definition_name(Definition::modified_proximal_contraction);
        case Family::p_proximal: return definition_name(Definition::p_proximal_contraction);
        case Family::p_proximal_contractive: return definition_name(Definition::p_proximal_contractive);
    }
    return "";
}

CheckReport check_family(Family family, const ProblemInstance& inst, const ScanOptions& options) {
    CheckReport report;
    report.definition = std::string(family_name(family));

    const double D = d_phi(inst, options);
    const auto pairs = compute_antecedent_pairs(inst, D, options);
    const bool distinct_beta = family != Family::proximal;

    if (pairs.empty()) {
        report.verdict = Verdict::vacuous;
        report.notes.push_back("no (alpha, beta) satisfies |phi(alpha, F(beta))| = D");
        return report;
    }
    if (distinct_beta && inst.re.size() < 2) {
        report.verdict = Verdict::vacuous;
        report.notes.push_back("re has no two distinct points");
        return report;
    }

    const AbsTable phi_abs(inst.re, inst.phi, options);
    const double eps = inst.eps_eq;

    const auto scan = scan_pairs(pairs.size(), options, [&](std::size_t i, std::size_t j) {
        const auto& p = pairs[i];
        const auto& q = pairs[j];
        Quad quad;
        if (distinct_beta && p.beta == q.beta) return quad;
        quad.counted = true;
        quad.lhs = phi_abs(p.alpha, q.alpha);
        const double beta_gap = phi_abs(p.beta, q.beta);
        switch (family) {
            case Family::proximal:
            case Family::modified_proximal:
                quad.rhs = beta_gap;
                break;
            case Family::p_proximal:
            case Family::p_proximal_contractive:
                quad.rhs = beta_gap + std::fabs(phi_abs(p.alpha, p.beta) - phi_abs(q.alpha, q.beta));
                break;
        }
        if (family == Family::p_proximal_contractive) {
            quad.violated = quad.lhs > quad.rhs - eps;
        } else {
            quad.violated = quad.lhs > eps && quad.lhs >= quad.rhs;
            if (quad.rhs > eps) quad.ratio = quad.lhs / quad.rhs;
        }
        return quad;
    });

    report.pairs_scanned = scan.scanned;
    if (scan.violated) {
        const auto& p = pairs[scan.i];
        const auto& q = pairs[scan.j];
        report.verdict = Verdict::fails;
        report.witness = Witness{{{"alpha1", inst.re[p.alpha]},
                                  {"alpha2", inst.re[q.alpha]},
                                  {"beta1", inst.re[p.beta]},
                                  {"beta2", inst.re[q.beta]}},
                                 scan.lhs,
                                 scan.rhs};
        return report;
    }

    report.verdict = Verdict::holds;
    if (family != Family::p_proximal_contractive)
        report.min_c = std::fmax(scan.max_ratio, kMinContraction);
    if (scan.scanned == 0)
        report.notes.push_back("no quadruple with distinct beta1, beta2 satisfies the antecedent");
    return report;
}

}  // namespace

std::vector<AntecedentPair> antecedent_pairs(const ProblemInstance& inst, const ScanOptions& options) {
    return compute_antecedent_pairs(inst, d_phi(inst, options), options);
}

CheckReport check_p_property(const ProblemInstance& inst, const ScanOptions& options) {
    CheckReport report;
    report.definition = std::string(definition_name(Definition::p_property));

    const double D = d_phi(inst, options);
    const double eps = inst.eps_eq;
    std::vector<AntecedentPair> pairs;  // alpha in re, beta in omega
    for (std::size_t a = 0; a < inst.re.size(); ++a)
        for (std::size_t b = 0; b < inst.omega.size(); ++b)
            if (std::fabs(std::fabs(inst.phi(inst.re[a], inst.omega[b])) - D) <= eps)
                pairs.push_back({a, b});

    if (pairs.empty()) {
        report.verdict = Verdict::vacuous;
        report.notes.push_back("re_phi is empty");
        return report;
    }

    const AbsTable re_abs(inst.re, inst.phi, options);
    const AbsTable om_abs(inst.omega, inst.phi, options);
    const auto scan = scan_pairs(pairs.size(), options, [&](std::size_t i, std::size_t j) {
        Quad q;
        q.counted = true;
        q.lhs = re_abs(pairs[i].alpha, pairs[j].alpha);
        q.rhs = om_abs(pairs[i].beta, pairs[j].beta);
        q.violated = std::fabs(q.lhs - q.rhs) > eps;
        return q;
    });

    report.pairs_scanned = scan.scanned;
    if (!scan.violated) {
        report.verdict = Verdict::holds;
        return report;
    }
    const auto& p = pairs[scan.i];
    const auto& q = pairs[scan.j];
    report.verdict = Verdict::fails;
    report.witness = Witness{{{"alpha1", inst.re[p.alpha]},
                              {"alpha2", inst.re[q.alpha]},
                              {"beta1", inst.omega[p.beta]},
                              {"beta2", inst.omega[q.beta]}},
                             scan.lhs,
                             scan.rhs};
    return report;
}

CheckReport check_proximal_contraction(const ProblemInstance& inst, const ScanOptions& options) {
    return check_family(Family::proximal, inst, options);
}

CheckReport check_modified_proximal_contraction(const ProblemInstance& inst,
                                                const ScanOptions& options) {
    return check_family(Family::modified_proximal, inst, options);
}

CheckReport check_p_proximal_contraction(const ProblemInstance& inst, const ScanOptions& options) {
    return check_family(Family::p_proximal, inst, options);
}

CheckReport check_p_proximal_contractive(const ProblemInstance& inst, const ScanOptions& options) {
    return check_family(Family::p_proximal_contractive, inst, options);
}

CheckReport check_range_condition(const ProblemInstance& inst, const ScanOptions& options) {
    CheckReport report;
    report.definition = std::string(definition_name(Definition::range_condition));
    const auto subsets = proximal_subsets(inst, options);
    if (subsets.re_indices.empty()) {
        report.verdict = Verdict::fails;
        report.notes.push_back("re_phi is empty");
        return report;
    }
    const auto omega_phi = subsets.omega_points(inst);
    const double tol = inst.range_tolerance();
    for (auto i : subsets.re_indices) {
        ++report.pairs_scanned;
        Point image = inst.F()(inst.re[i]);
        const double d = distance_to(image, omega_phi);
        if (d > tol) {
            report.verdict = Verdict::fails;
            report.witness = Witness{{{"alpha", inst.re[i]}, {"image", std::move(image)}}, d, tol};
            report.notes.push_back("F(alpha) lies outside omega_phi");
            return report;
        }
    }
    report.verdict = Verdict::holds;
    return report;
}

CheckReport check_contractive_existence(const ProblemInstance& inst, const ScanOptions& options) {
    CheckReport report;
    report.definition = std::string(definition_name(Definition::contractive_existence));

    const auto subsets = proximal_subsets(inst, options);
    if (subsets.re_indices.empty()) {
        report.verdict = Verdict::fails;
        report.notes.push_back("re_phi is empty");
        return report;
    }

    const auto property = check_p_property(inst, options);
    if (property.verdict != Verdict::holds) {
        report.verdict = Verdict::fails;
        report.witness = property.witness;
        report.notes.push_back("p-property " + std::string(to_string(property.verdict)));
        return report;
    }

    const auto range = check_range_condition(inst, options);
    if (range.verdict != Verdict::holds) {
        report.verdict = Verdict::fails;
        report.witness = range.witness;
        report.notes.push_back("F(re_phi) is not contained in omega_phi");
        return report;
    }

    const double D = subsets.distance;
    const double eps = inst.eps_eq;
    const Mapping& F = inst.F();
    std::vector<Point> images;
    for (auto i : subsets.re_indices) images.push_back(F(inst.re[i]));

    for (std::size_t x = 0; x < subsets.re_indices.size(); ++x) {
        const Point& xi = inst.re[subsets.re_indices[x]];
        for (std::size_t y = 0; y < subsets.re_indices.size(); ++y) {
            const Point& lambda = inst.re[subsets.re_indices[y]];
            ++report.pairs_scanned;
            if (std::fabs(std::fabs(inst.phi(xi, images[y])) - D) > eps) continue;
            if (std::fabs(inst.phi(xi, lambda)) > std::fabs(inst.phi(images[x], images[y])) + eps)
                continue;
            report.verdict = Verdict::holds;
            report.found = {{"xi", xi}, {"lambda", lambda}};
            return report;
        }
    }
    report.verdict = Verdict::fails;
    report.notes.push_back("no xi, lambda in re_phi satisfy both existence conditions");
    return report;
}

CheckReport check_phi_axioms_report(const ProblemInstance& inst, const ScanOptions& options) {
    const auto axioms = check_phi_axioms(inst, options);
    CheckReport report;
    report.definition = std::string(definition_name(Definition::phi_axioms));
    const auto n = axioms.sample_size;
    report.pairs_scanned = n * n;
    const std::array<std::pair<const char*, const AxiomVerdict*>, 3> parts{{
        {"zero-iff-equal", &axioms.zero_iff_equal},
        {"symmetric", &axioms.symmetric},
        {"triangle", &axioms.triangle},
    }};
    static const char* roles[] = {"x", "y", "z"};
    for (const auto& [name, verdict] : parts) {
        if (verdict->holds) continue;
        report.notes.push_back(std::string(name) + " fails");
        if (!report.witness) {
            Witness w;
            for (std::size_t k = 0; k < verdict->witness.size(); ++k)
                w.points.push_back({roles[k], verdict->witness[k]});
            w.lhs = verdict->lhs;
            w.rhs = verdict->rhs;
            report.witness = std::move(w);
        }
    }
    report.verdict = axioms.all_hold() ? Verdict::holds : Verdict::fails;
    return report;
}

std::string_view definition_name(Definition d) {
    switch (d) {
        case Definition::p_property: return "p-property";
        case Definition::proximal_contraction: return "proximal-contraction";
        case Definition::modified_proximal_contraction: return "modified-proximal-contraction";
        case Definition::p_proximal_contraction: return "p-proximal-contraction";
        case Definition::p_proximal_contractive: return "p-proximal-contractive";
        case Definition::contractive_existence: return "contractive-existence";
        case Definition::range_condition: return "range-condition";
        case Definition::phi_axioms: return "phi-axioms";
    }
    return "";
}

const std::vector<Definition>& all_definitions() {
    static const std::vector<Definition> all{
        Definition::phi_axioms,
        Definition::p_property,
        Definition::proximal_contraction,
        Definition::modified_proximal_contraction,
        Definition::p_proximal_contraction,
        Definition::p_proximal_contractive,
        Definition::range_condition,
        Definition::contractive_existence,
    };
    return all;
}

Definition parse_definition(std::string_view name) {
    for (auto d : all_definitions())
        if (definition_name(d) == name) return d;
    throw UnknownNameError("unknown definition '" + std::string(name) + "'");
}

CheckReport run_check(Definition d, const ProblemInstance& inst, const ScanOptions& options) {
    switch (d) {
        case Definition::p_property: return check_p_property(inst, options);
        case Definition::proximal_contraction: return check_proximal_contraction(inst, options);
        case Definition::modified_proximal_contraction:
            return check_modified_proximal_contraction(inst, options);
        case Definition::p_proximal_contraction: return check_p_proximal_contraction(inst, options);
        case Definition::p_proximal_contractive: return check_p_proximal_contractive(inst, options);
        case Definition::contractive_existence: return check_contractive_existence(inst, options);
        case Definition::range_condition: return check_range_condition(inst, options);
        case Definition::phi_axioms: return check_phi_axioms_report(inst, options);
    }
    throw UnknownNameError("unknown definition");
}

}  // namespace proxima
