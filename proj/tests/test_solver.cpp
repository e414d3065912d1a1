#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "proxima/corpus.hpp"
#include "proxima/error.hpp"
#include "proxima/oracle.hpp"
#include "proxima/proximity.hpp"
#include "proxima/solver.hpp"

using namespace proxima;
using fixtures::E;

TEST_CASE("halving instance follows the closed-form geometric trace") {
    const auto inst = fixtures::halving_instance();
    const auto t = iterate(inst);
    REQUIRE(t.status == IterationStatus::converged);
    REQUIRE(t.iterations() == 30);  // first gap <= 1e-9 is 2^-30
    for (std::size_t n = 0; n < t.points.size(); ++n) CHECK(t.points[n] == Point{0.0, std::ldexp(1.0, -int(n))});
    for (std::size_t n = 0; n < t.step_gaps.size(); ++n) {
        CHECK(t.step_gaps[n] == std::ldexp(1.0, -int(n) - 1));
        CHECK(t.feasibility_errors[n] == 0.0);
    }
    CHECK(rate_check(t, 1.0 / 3.0).holds);
    const auto tight = rate_check(t, 0.1);
    CHECK_FALSE(tight.holds);
    CHECK(tight.first_violation == std::optional<std::size_t>{1});
}

TEST_CASE("halving: every start satisfies the rate bound") {
    const auto inst = fixtures::halving_instance();
    for (const auto& start : proximal_subsets(inst).re_points(inst)) {
        CAPTURE(to_string(start));
        const auto t = iterate(inst, start);
        if (start[1] > 0x1p-36) CHECK(t.status == IterationStatus::converged);
        if (t.status == IterationStatus::converged) CHECK(rate_check(t, 1.0 / 3.0).holds);
    }
}

TEST_CASE("default tolerance: ties repeat the current point") {
    auto inst = fixtures::halving_instance();
    inst.eps_eq = 1e-9;
    const auto t = iterate(inst);
    REQUIRE(t.status == IterationStatus::converged);
    CHECK(t.final_point() == Point{0.0, 0x1p-29});
    CHECK(t.step_gaps.back() == 0.0);
}

TEST_CASE("ex_thm1 converges to (0,0) from every start in re_phi") {
    const auto inst = load_builtin("ex_thm1").instance;
    const auto starts = proximal_subsets(inst).re_points(inst);
    REQUIRE(!starts.empty());
    for (const auto& s : starts) {
        const auto t = iterate(inst, s);
        CHECK(t.status == IterationStatus::converged);
        CHECK(t.final_point() == Point{0.0, 0.0});
        CHECK(t.final_residual <= 1e-9);
    }
    CHECK_THROWS_AS(iterate(inst, Point{0.0, -1.0}), InstanceError);
}

TEST_CASE("thm2 example: the grid truncates the iteration") {
    const auto inst = load_builtin("ex_thm2").instance;
    CHECK(iterate(inst, Point{0.0, 0.0}).status == IterationStatus::converged);
    // F(0, -t) = (1, t/5): 1 -> 0.2 -> 0.04 -> 0.008, and -0.008 is not a grid point
    const auto t = iterate(inst);
    CHECK(t.status == IterationStatus::infeasible_step);
    REQUIRE(t.points.size() == 3);
    CHECK(t.points[1][1] == doctest::Approx(-0.2));
    CHECK(t.points[2][1] == doctest::Approx(-0.04));
}

TEST_CASE("oscillation is reported by the Cauchy profile") {
    const auto inst = fixtures::swap_instance();
    SolverOptions o;
    o.max_iters = 40;
    const auto t = iterate(inst, std::nullopt, o);
    CHECK(t.status == IterationStatus::max_iters);
    CHECK(t.iterations() == 40);
    CHECK(t.points[1] == Point{0.0, 1.0});
    CHECK(t.points[2] == Point{0.0, 0.0});
    const auto profile = cauchy_check(inst, t, 3);
    CHECK_FALSE(profile.consistent);
    CHECK(profile.tail.size() == 40);

    const auto good = iterate(fixtures::halving_instance());
    CHECK(cauchy_check(fixtures::halving_instance(), good, 3, 1e-8).tail.front() == doctest::Approx(0.875));
}

TEST_CASE("infeasible step") {
    auto re = PointSet::from_points("Re", {{0.0}, {1.0}});
    const auto inst = make_instance("gap", re, re, ProximityFunction(E("a1 - b1"), 1),
                                    Mapping({fixtures::branch({"a1 + 0.5"})}, 1));
    const auto t = iterate(inst);
    CHECK(t.status == IterationStatus::infeasible_step);
    CHECK(t.iterations() == 0);
    CHECK_FALSE(proximal_step(inst, Point{0.0}).has_value());
}

TEST_CASE("ties go to the lowest index") {
    auto re = PointSet::from_points("Re", {{-1.0}, {0.0}, {1.0}});
    const auto inst = make_instance("tie", re, re, ProximityFunction(E("a1^2 - b1^2"), 1),
                                    Mapping({fixtures::branch({"1"})}, 1));
    const auto step = proximal_step(inst, Point{0.0});
    REQUIRE(step.has_value());
    CHECK(step->re_index == 0);
    CHECK(step->point == Point{-1.0});
}

TEST_CASE("residual") {
    const auto inst = load_builtin("ex_thm1").instance;
    CHECK(residual(inst, {0.0, 0.0}) == 0.0);
    CHECK(residual(inst, {0.0, -1.0}) == 0.75);
}

TEST_CASE("solver traces are identical for every thread count") {
    const auto inst = fixtures::halving_instance();
    const auto a = iterate(inst);
    SolverOptions o;
    o.scan.threads = 4;
    const auto b = iterate(inst, std::nullopt, o);
    CHECK(a.points == b.points);
    CHECK(a.step_gaps == b.step_gaps);
}
