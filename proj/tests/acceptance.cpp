// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion, with the
// failing sub-checks indented below it. Exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "expr_cases.hpp"
#include "fixtures.hpp"
#include "proxima/checkers.hpp"
#include "proxima/corpus.hpp"
#include "proxima/error.hpp"
#include "proxima/oracle.hpp"
#include "proxima/proximity.hpp"
#include "proxima/report.hpp"
#include "proxima/solver.hpp"

using namespace proxima;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Criterion {
public:
    explicit Criterion(std::string title) : title_(std::move(title)) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
        ++checks_;
    }

    bool report(int number) const {
        const bool ok = failures_.empty();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title_ << " (" << checks_ - failures_.size()
                  << "/" << checks_ << " checks)\n";
        for (const auto& f : failures_) std::cout << "    failed: " << f << "\n";
        return ok;
    }

private:
    std::string title_;
    std::vector<std::string> failures_;
    std::size_t checks_ = 0;
};

std::string fmt(double v) { return expr::format_real(v); }

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

ProblemInstance inst(const char* name) { return load_builtin(name).instance; }

bool c1() {
    Criterion c("D_phi values");
    const struct {
        const char* name;
        double value;
    } cases[] = {{"ex1_10", 0.5}, {"ex2_2_phi", 0.0}, {"ex2_2_g", 0.0}, {"ex_thm1", 0.0}};
    for (const auto& k : cases) {
        const auto i = inst(k.name);
        const auto t0 = Clock::now();
        const double d = d_phi(i);
        const double dt = seconds_since(t0);
        c.expect(near(d, k.value, 1e-12), std::string(k.name) + ": D = " + fmt(d) + ", expected " + fmt(k.value));
        c.expect(dt < 1.0, std::string(k.name) + ": took " + fmt(dt) + " s");
    }
    return c.report(1);
}

bool c2() {
    Criterion c("p-property separation");
    c.expect(check_p_property(inst("ex1_7_F1")).verdict == Verdict::holds, "ex1_7_F1 holds");
    const auto r = check_p_property(inst("ex1_7_F2"));
    c.expect(r.verdict == Verdict::fails, "ex1_7_F2 fails");
    c.expect(r.witness && std::fabs(r.witness->lhs - r.witness->rhs) >= 1.0 / 6.0 - 1e-9,
             "ex1_7_F2 witness sides differ by at least 1/6");
    return c.report(2);
}

bool c3() {
    Criterion c("contraction-class separation on ex1_10");
    const auto i = inst("ex1_10");
    c.expect(check_modified_proximal_contraction(i).verdict == Verdict::holds, "modified proximal contraction holds");
    const auto r = check_proximal_contraction(i);
    c.expect(r.verdict == Verdict::fails, "proximal contraction fails");
    if (r.witness) {
        const auto& w = *r.witness;
        c.expect(w.at("alpha1") == Point{0.0, 0.5}, "alpha1 = (0,1/2), got " + to_string(w.at("alpha1")));
        c.expect(w.at("alpha2") == Point{0.0, -0.5}, "alpha2 = (0,-1/2), got " + to_string(w.at("alpha2")));
        c.expect(w.at("beta1") == Point{0.0, 0.5}, "beta1 = (0,1/2), got " + to_string(w.at("beta1")));
        c.expect(w.at("beta2") == Point{0.0, 0.5}, "beta2 = (0,1/2), got " + to_string(w.at("beta2")));
        c.expect(w.lhs == 1.0, "lhs = 1, got " + fmt(w.lhs));
        c.expect(w.rhs == 0.0, "rhs = 0, got " + fmt(w.rhs));
    } else {
        c.expect(false, "witness present");
    }
    return c.report(3);
}

bool c4() {
    Criterion c("p-proximal verdicts");
    const auto phi = check_p_proximal_contraction(inst("ex2_2_phi"));
    c.expect(phi.verdict == Verdict::holds,
             "ex2_2_phi holds: got " + std::string(to_string(phi.verdict)) +
                 " (no (alpha, beta) reaches |phi(alpha, F(beta))| = D = 0; min over re is 1/8)");
    c.expect(phi.min_c && *phi.min_c <= 2.0 / 3.0 + 1e-9,
             "ex2_2_phi min_c <= 2/3: got " + (phi.min_c ? fmt(*phi.min_c) : std::string("none")));
    c.expect(check_p_proximal_contraction(inst("ex2_2_g")).verdict == Verdict::fails, "ex2_2_g fails");
    const auto ex23 = inst("ex2_3");
    const auto r23 = check_p_proximal_contraction(ex23);
    c.expect(r23.verdict == Verdict::holds && r23.min_c && *r23.min_c <= 0.25 + 1e-9,
             "ex2_3 holds with min_c <= 1/4");
    c.expect(near(std::fabs(ex23.phi({0.5}, {0.25})), 3.0 / 16.0, 1e-12), "ex2_3 |phi(1/2, 1/4)| = 3/16");
    const auto thm1 = check_p_proximal_contraction(inst("ex_thm1"));
    c.expect(thm1.verdict == Verdict::holds && thm1.min_c && *thm1.min_c <= 0.25 + 1e-9,
             "ex_thm1 holds with min_c <= 1/4");
    return c.report(4);
}

bool c5() {
    Criterion c("solver on ex_thm1");
    const auto i = inst("ex_thm1");
    const auto t = iterate(i);
    c.expect(t.status == IterationStatus::converged, "default start converges");
    c.expect(t.final_point() == Point{0.0, 0.0}, "default start reaches (0,0)");
    c.expect(t.final_residual <= 1e-9, "final residual <= 1e-9");
    for (const auto& s : proximal_subsets(i).re_points(i)) {
        const auto ts = iterate(i, s);
        c.expect(ts.status == IterationStatus::converged && ts.final_point() == Point{0.0, 0.0} &&
                     ts.final_residual <= 1e-9,
                 "start " + to_string(s) + " reaches (0,0)");
    }
    const auto o = brute_force_bpp(i);
    c.expect(o.is_unique && o.candidates.front().point == Point{0.0, 0.0}, "oracle: unique candidate (0,0)");
    return c.report(5);
}

bool c6() {
    Criterion c("contractive pipeline on ex_thm2");
    const auto i = inst("ex_thm2");
    c.expect(check_p_proximal_contractive(i).verdict == Verdict::holds, "p-proximal contractive holds");
    c.expect(check_p_property(i).verdict == Verdict::holds, "p-property holds");
    const auto ex = check_contractive_existence(i);
    c.expect(ex.verdict == Verdict::holds, "existence hypotheses hold");
    c.expect(ex.found.size() == 2 && ex.found[0].point == Point{0.0, 0.0} && ex.found[1].point == Point{0.0, 0.0},
             "xi = lambda = (0,0)");
    const auto o = brute_force_bpp(i);
    c.expect(o.is_unique && o.candidates.front().point == Point{0.0, 0.0}, "oracle: unique candidate (0,0)");
    return c.report(6);
}

bool c7() {
    Criterion c("rate bound on the halving instance (c = 1/3)");
    const auto i = fixtures::halving_instance();
    const auto pc = check_p_proximal_contraction(i);
    c.expect(pc.min_c && near(*pc.min_c, 1.0 / 3.0, 1e-12), "p-proximal constant is 1/3");
    std::size_t traces = 0;
    for (const auto& s : proximal_subsets(i).re_points(i)) {
        const auto t = iterate(i, s);
        if (t.step_gaps.empty()) continue;
        ++traces;
        bool ok = true;
        double factor = 1.0;
        const std::size_t last = t.status == IterationStatus::converged ? t.step_gaps.size() : 0;
        for (std::size_t n = 0; n < last; ++n, factor *= 0.5)
            ok = ok && t.step_gaps[n] <= factor * t.step_gaps[0] + 1e-9;
        c.expect(t.status == IterationStatus::converged, "start " + to_string(s) + " converges");
        c.expect(ok, "start " + to_string(s) + " satisfies the bound");
        c.expect(rate_check(t, 1.0 / 3.0).holds, "rate_check agrees for start " + to_string(s));
    }
    c.expect(traces >= 30, "at least 30 non-trivial traces, got " + std::to_string(traces));
    return c.report(7);
}

bool c8() {
    Criterion c("oracle equivalence on 100 random instances");
    const auto t0 = Clock::now();
    std::size_t accepted = 0;
    std::uint64_t seed = 0;
    for (; accepted < 100 && seed < 5000; ++seed) {
        const auto i = random_instance(seed, 20);
        if (check_p_proximal_contraction(i).verdict != Verdict::holds) continue;
        ++accepted;
        const auto r = oracle_vs_solver(i);
        c.expect(r.solver_converged, "seed " + std::to_string(seed) + ": solver converged");
        c.expect(r.agree, "seed " + std::to_string(seed) + ": " + r.message);
    }
    const double dt = seconds_since(t0);
    c.expect(accepted == 100, "found 100 instances where the contraction holds (" + std::to_string(accepted) + " in " +
                                  std::to_string(seed) + " seeds)");
    c.expect(dt < 30.0, "total runtime " + fmt(dt) + " s < 30 s");
    return c.report(8);
}

bool c9() {
    Criterion c("determinism of structured corpus reports");
    const auto run = [](unsigned threads) {
        const auto entries = builtin_corpus();
        return report::dump(
            report::document("corpus", "builtin", report::to_json(run_regressions(entries, ScanOptions{threads}))));
    };
    const auto a = run(1);
    c.expect(a == run(1), "two single-thread runs are byte-identical");
    c.expect(a == run(4), "1 thread vs 4 threads byte-identical");
    c.expect(a == run(0), "1 thread vs hardware concurrency byte-identical");
    return c.report(9);
}

bool c10() {
    Criterion c("expression engine");
    using namespace expr_cases;
    c.expect(kPrecedence.size() + kRoundTrip.size() >= 50, "at least 50 cases");
    for (const auto& k : kPrecedence) {
        bool ok = false;
        try {
            const auto e = expr::Expression::parse(k.source);
            ok = near(expr::evaluate(e, kVars), k.value, 1e-15 * std::fmax(1.0, std::fabs(k.value))) &&
                 e.structurally_equal(expr::Expression::parse(e.to_string()));
        } catch (const Error&) {
        }
        c.expect(ok, std::string("precedence case '") + k.source + "'");
    }
    for (const auto& s : kRoundTrip) {
        bool ok = false;
        try {
            const auto e = expr::Expression::parse(s);
            ok = e.structurally_equal(expr::Expression::parse(e.to_string()));
        } catch (const Error&) {
        }
        c.expect(ok, "round trip '" + s + "'");
    }
    // every phi and F form in the corpus parses and reproduces its expected values
    const auto summary = run_regressions(builtin_corpus());
    for (const auto& e : summary.entries)
        for (const auto& r : e.results) c.expect(r.passed, e.name + " " + r.operation + ": got " + r.actual);
    return c.report(10);
}

}  // namespace

int main() {
    const std::vector<std::function<bool()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    int failed = 0;
    for (const auto& c : criteria) {
        try {
            if (!c()) ++failed;
        } catch (const std::exception& e) {
            std::cout << "FAIL criterion (exception): " << e.what() << "\n";
            ++failed;
        }
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
