#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "proxima/checkers.hpp"
#include "proxima/corpus.hpp"
#include "proxima/error.hpp"
#include "proxima/oracle.hpp"
#include "proxima/proximity.hpp"

using namespace proxima;

namespace {

// Naive re-implementation of the contraction checks: named evaluation, no
// tables, no threads. Used as the reference the fast checker must match.
struct Reference {
    Verdict verdict = Verdict::vacuous;
    std::optional<double> min_c;
    std::vector<Point> witness;
    double lhs = 0.0;
    double rhs = 0.0;
};

double phi_abs(const ProblemInstance& inst, const Point& a, const Point& b) {
    std::map<std::string, double> env;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        env["a" + std::to_string(i + 1)] = a[i];
        env["b" + std::to_string(i + 1)] = b[i];
    }
    return std::fabs(expr::evaluate(inst.phi.expression(), env));
}

Reference reference_check(Definition d, const ProblemInstance& inst) {
    const double eps = inst.eps_eq;
    double D = INFINITY;
    for (const auto& a : inst.re)
        for (const auto& b : inst.omega) D = std::fmin(D, phi_abs(inst, a, b));

    std::vector<std::pair<Point, Point>> pairs;
    for (const auto& a : inst.re)
        for (const auto& b : inst.re)
            if (std::fabs(phi_abs(inst, a, inst.F()(b)) - D) <= eps) pairs.emplace_back(a, b);

    Reference r;
    if (pairs.empty()) return r;
    const bool distinct = d != Definition::proximal_contraction;
    if (distinct && inst.re.size() < 2) return r;
    const bool corrected = d == Definition::p_proximal_contraction || d == Definition::p_proximal_contractive;

    double sup = 0.0;
    for (const auto& [a1, b1] : pairs)
        for (const auto& [a2, b2] : pairs) {
            if (distinct && b1 == b2) continue;
            const double lhs = phi_abs(inst, a1, a2);
            double rhs = phi_abs(inst, b1, b2);
            if (corrected) rhs += std::fabs(phi_abs(inst, a1, b1) - phi_abs(inst, a2, b2));
            const bool bad = d == Definition::p_proximal_contractive ? lhs > rhs - eps : lhs > eps && lhs >= rhs;
            if (bad) {
                r.verdict = Verdict::fails;
                r.witness = {a1, a2, b1, b2};
                r.lhs = lhs;
                r.rhs = rhs;
                return r;
            }
            if (rhs > eps) sup = std::fmax(sup, lhs / rhs);
        }
    r.verdict = Verdict::holds;
    if (d != Definition::p_proximal_contractive) r.min_c = std::fmax(sup, kMinContraction);
    return r;
}

const Definition kFamilies[] = {Definition::proximal_contraction, Definition::modified_proximal_contraction,
                                Definition::p_proximal_contraction, Definition::p_proximal_contractive};

void agree_with_reference(const ProblemInstance& inst) {
    for (auto d : kFamilies) {
        CAPTURE(definition_name(d));
        const auto fast = run_check(d, inst);
        const auto ref = reference_check(d, inst);
        CHECK(fast.verdict == ref.verdict);
        CHECK(fast.min_c.has_value() == ref.min_c.has_value());
        if (fast.min_c && ref.min_c) CHECK(*fast.min_c == doctest::Approx(*ref.min_c).epsilon(1e-12));
        CHECK(fast.witness.has_value() == !ref.witness.empty());
        if (fast.witness && !ref.witness.empty()) {
            for (std::size_t k = 0; k < 4; ++k) CHECK(fast.witness->points[k].point == ref.witness[k]);
            CHECK(fast.witness->lhs == doctest::Approx(ref.lhs).epsilon(1e-12));
            CHECK(fast.witness->rhs == doctest::Approx(ref.rhs).epsilon(1e-12));
        }
    }
}

}  // namespace

TEST_CASE("contraction checks agree with the naive reference") {
    for (const auto& e : builtin_corpus()) {
        if (!e.instance.mapping) continue;
        CAPTURE(e.name);
        agree_with_reference(e.instance);
    }
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        CAPTURE(seed);
        agree_with_reference(random_instance(seed, 12));
    }
    agree_with_reference(fixtures::halving_instance());
    agree_with_reference(fixtures::swap_instance());
    agree_with_reference(fixtures::constant_map_instance());
}

TEST_CASE("witness soundness: the reported quadruple reproduces the violation") {
    for (const auto& e : builtin_corpus()) {
        const auto& inst = e.instance;
        if (!inst.mapping) continue;
        const double D = d_phi(inst);
        for (auto d : kFamilies) {
            const auto r = run_check(d, inst);
            if (r.verdict != Verdict::fails) continue;
            CAPTURE(e.name);
            CAPTURE(definition_name(d));
            const auto& w = *r.witness;
            const Point &a1 = w.at("alpha1"), &a2 = w.at("alpha2"), &b1 = w.at("beta1"), &b2 = w.at("beta2");
            CHECK(std::fabs(std::fabs(inst.phi(a1, inst.F()(b1))) - D) <= inst.eps_eq);
            CHECK(std::fabs(std::fabs(inst.phi(a2, inst.F()(b2))) - D) <= inst.eps_eq);
            CHECK(w.lhs == std::fabs(inst.phi(a1, a2)));
            double rhs = std::fabs(inst.phi(b1, b2));
            if (d == Definition::p_proximal_contraction || d == Definition::p_proximal_contractive)
                rhs += std::fabs(std::fabs(inst.phi(a1, b1)) - std::fabs(inst.phi(a2, b2)));
            CHECK(w.rhs == rhs);
            CHECK(w.lhs >= w.rhs - inst.eps_eq);
        }
    }
}

TEST_CASE("reports are identical for every thread count") {
    for (const auto& e : builtin_corpus()) {
        CAPTURE(e.name);
        for (auto d : all_definitions()) {
            if (!e.instance.mapping && d != Definition::p_property && d != Definition::phi_axioms) continue;
            const auto one = run_check(d, e.instance, ScanOptions{1});
            for (unsigned t : {2u, 3u, 8u}) {
                const auto many = run_check(d, e.instance, ScanOptions{t});
                CHECK(one.verdict == many.verdict);
                CHECK(one.min_c == many.min_c);
                CHECK(one.pairs_scanned == many.pairs_scanned);
                REQUIRE(one.witness.has_value() == many.witness.has_value());
                if (one.witness) {
                    CHECK(one.witness->lhs == many.witness->lhs);
                    for (std::size_t k = 0; k < one.witness->points.size(); ++k)
                        CHECK(one.witness->points[k].point == many.witness->points[k].point);
                }
            }
        }
    }
}

TEST_CASE("verdicts and constants are invariant under positive scaling of phi") {
    for (const char* name : {"ex2_3", "ex_thm1", "ex1_10", "ex2_2_g"}) {
        CAPTURE(name);
        const auto inst = load_builtin(name).instance;
        const auto scaled = scale_phi(inst, 4.0);  // power of two keeps the scan exact
        for (auto d : kFamilies) {
            const auto a = run_check(d, inst);
            const auto b = run_check(d, scaled);
            CHECK(a.verdict == b.verdict);
            if (a.min_c && b.min_c) CHECK(*a.min_c == doctest::Approx(*b.min_c).epsilon(1e-12));
        }
    }
}

TEST_CASE("p-property examples") {
    const auto f1 = check_p_property(load_builtin("ex1_7_F1").instance);
    CHECK(f1.verdict == Verdict::holds);
    const auto f2 = check_p_property(load_builtin("ex1_7_F2").instance);
    REQUIRE(f2.verdict == Verdict::fails);
    CHECK(f2.witness->at("alpha1") == Point{2.0, -2.0});
    CHECK(f2.witness->lhs == 4.0);
    CHECK(f2.witness->rhs == 0.0);
    CHECK(check_p_property(fixtures::unreachable_instance()).verdict == Verdict::holds);
}

TEST_CASE("proximal contraction separation") {
    const auto inst = load_builtin("ex1_10").instance;
    const auto pairs = antecedent_pairs(inst);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == AntecedentPair{0, 0});  // (0,1/2) with beta (0,1/2)
    CHECK(pairs[1] == AntecedentPair{1, 0});  // (0,-1/2) with beta (0,1/2)
    const auto plain = check_proximal_contraction(inst);
    CHECK(plain.verdict == Verdict::fails);
    const auto mod = check_modified_proximal_contraction(inst);
    CHECK(mod.verdict == Verdict::holds);
    CHECK(mod.pairs_scanned == 0);
    CHECK(mod.min_c == kMinContraction);
}

TEST_CASE("p-proximal constants") {
    const auto ex23 = check_p_proximal_contraction(load_builtin("ex2_3").instance);
    CHECK(ex23.verdict == Verdict::holds);
    CHECK(*ex23.min_c == doctest::Approx(1.0 / 7.0).epsilon(1e-6));
    const auto thm1 = check_p_proximal_contraction(load_builtin("ex_thm1").instance);
    CHECK(*thm1.min_c <= 0.25);
    const auto halving = check_p_proximal_contraction(fixtures::halving_instance());
    CHECK(*halving.min_c == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(check_p_proximal_contraction(load_builtin("ex2_2_g").instance).verdict == Verdict::fails);
}

TEST_CASE("constant map: min_c reported as the positive floor") {
    const auto r = check_proximal_contraction(fixtures::constant_map_instance());
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.min_c == kMinContraction);
}

TEST_CASE("vacuous cases") {
    const auto inst = fixtures::unreachable_instance();
    CHECK(antecedent_pairs(inst).empty());
    for (auto d : kFamilies) CHECK(run_check(d, inst).verdict == Verdict::vacuous);
    CHECK(check_p_proximal_contraction(load_builtin("ex2_2_phi").instance).verdict == Verdict::vacuous);

    auto single = PointSet::from_points("Re", {{0.0}});
    const auto one = make_instance("one", single, single, ProximityFunction(fixtures::E("a1 - b1"), 1),
                                   Mapping({fixtures::branch({"a1"})}, 1));
    CHECK(check_proximal_contraction(one).verdict == Verdict::holds);
    CHECK(check_modified_proximal_contraction(one).verdict == Verdict::vacuous);
}

TEST_CASE("contractive check and existence") {
    const auto inst = load_builtin("ex_thm2").instance;
    CHECK(check_p_proximal_contractive(inst).verdict == Verdict::holds);
    CHECK_FALSE(check_p_proximal_contractive(inst).min_c.has_value());
    const auto ex = check_contractive_existence(inst);
    REQUIRE(ex.verdict == Verdict::holds);
    REQUIRE(ex.found.size() == 2);
    CHECK(ex.found[0].role == "xi");
    CHECK(ex.found[0].point == Point{0.0, 0.0});
    CHECK(ex.found[1].point == Point{0.0, 0.0});

    auto tight = inst;
    tight.eps_range.reset();
    CHECK(check_range_condition(tight).verdict == Verdict::fails);
    CHECK(check_contractive_existence(tight).verdict == Verdict::fails);

    // swap: |phi(x, y)| = 1 = |phi(F x, F y)| is not strictly smaller
    CHECK(check_p_proximal_contractive(fixtures::swap_instance()).verdict == Verdict::fails);
}

TEST_CASE("range condition") {
    const auto thm1 = check_range_condition(load_builtin("ex_thm1").instance);
    CHECK(thm1.verdict == Verdict::holds);
    CHECK(thm1.pairs_scanned == 1);
    const auto ex22 = check_range_condition(load_builtin("ex2_2_phi").instance);
    CHECK(ex22.verdict == Verdict::fails);
    CHECK(ex22.witness->at("alpha") == Point{0.0, 0.0});
    CHECK(ex22.witness->at("image") == Point{1.0, -0.25});
}

TEST_CASE("phi axioms report") {
    const auto r = check_phi_axioms_report(load_builtin("ex_thm1").instance);
    CHECK(r.definition == "phi-axioms");
    CHECK(r.verdict == Verdict::holds);  // every sample point lies on x = 0, where |b2 - a2| is a metric
    const auto sq = check_phi_axioms_report(load_builtin("ex2_2_phi").instance);  // (0,y) and (2/3,y) give 0
    CHECK(sq.verdict == Verdict::fails);
    REQUIRE(sq.witness.has_value());
}

TEST_CASE("definition names") {
    for (auto d : all_definitions()) CHECK(parse_definition(definition_name(d)) == d);
    CHECK_THROWS_AS(parse_definition("thm3"), UnknownNameError);
    CHECK(all_definitions().size() == 8);
}
