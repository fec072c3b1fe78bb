#include "bailout/errors.hpp"
#include "bailout/instances.hpp"
#include "bailout/io.hpp"
#include "bailout/optimize.hpp"

#include <doctest.h>

#include <cmath>

using namespace bailout;

namespace {

GeneratorSpec spec_of(GeneratorKind kind, std::size_t n = 10) {
    GeneratorSpec s;
    s.kind = kind;
    s.n = n;
    return s;
}

double solvent_count(const Instance &inst, const std::vector<std::size_t> &rescued) {
    const BailoutProblem prob(inst.net, inst.stimulus, inst.budget, Objective::absolute_solvency(), inst.shocks);
    const auto alloc = Allocation::from_set(rescued, prob);
    return allocation_value(prob, alloc.z, inst.shocks.point());
}

} // namespace

TEST_CASE("star construction") {
    const auto inst = generate(spec_of(GeneratorKind::StarPof, 5));
    const auto &net = inst.net;
    CHECK(net.size() == 5);
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK(net.b()[j] == 1.0);
        CHECK(net.c()[j] == (j == 0 ? 5.0 : 0.0));
        CHECK(inst.stimulus[j] == 5.0);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(net.liability(j, i) == ((j == 0 && i != 0) ? 1.0 : 0.0));
    }
    CHECK(inst.budget == 5.0);
    CHECK(inst.shocks.point() == net.c());
}

TEST_CASE("complete-gap construction") {
    auto s = spec_of(GeneratorKind::CompleteGap, 10);
    s.k = 2;
    s.epsilon = 0.5;
    const auto inst = generate(s);
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(inst.net.b()[j] == 1.0);
        CHECK(inst.net.c()[j] == 1.0);
        CHECK(inst.shocks.point()[j] == 0.5);
        CHECK(inst.stimulus[j] == doctest::Approx(2.5));
        for (std::size_t i = 0; i < 10; ++i)
            CHECK(inst.net.liability(j, i) == (i == j ? 0.0 : 1.0));
    }
}

TEST_CASE("two-clique construction") {
    auto s = spec_of(GeneratorKind::TwoClique, 8);
    s.r = 0.4;
    s.seed = 3;
    const auto inst = generate(s);
    CHECK(inst.net.liability_matrix().is_symmetric(0.0));
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(inst.q[j] == (j < 4 ? 1.0 : 0.0));
        CHECK(inst.shocks.point()[j] == (j < 4 ? 1.0 : 0.0));
        CHECK(inst.stimulus[j] == 4.0);
        CHECK(inst.net.c()[j] == 8.0);
        for (std::size_t i = 0; i < 4; ++i)
            if (j < 4 && i != j)
                CHECK(inst.net.liability(j, i) == 1.0);
    }
    CHECK(inst.budget == 8.0);
}

TEST_CASE("set-cover gadget: a cover rescues every item") {
    const auto inst = generate(spec_of(GeneratorKind::SetCoverGadget));
    CHECK(inst.net.beta_max() == doctest::Approx(2.0 / 3.0));
    CHECK(solvent_count(inst, {0, 1}) == 6.0);
    CHECK(solvent_count(inst, {}) == 0.0);
    // spending the budget on items instead of sets rescues fewer nodes
    CHECK(solvent_count(inst, {2, 3}) < 6.0);
}

TEST_CASE("layered gadget: a cover rescues every layer") {
    auto s = spec_of(GeneratorKind::LayeredGadget);
    s.layers = 3;
    const auto inst = generate(s);
    CHECK(inst.net.beta_max() < 1.0);
    CHECK(solvent_count(inst, {}) == 0.0);
    CHECK(solvent_count(inst, {0, 1}) >= 2.0 + 3.0 * 4.0);
}

TEST_CASE("path-threshold gap grows with n") {
    double last = 0;
    for (std::size_t n : {5, 10, 20}) {
        const auto inst = generate(spec_of(GeneratorKind::PathThreshold, n));
        const BailoutProblem prob(inst.net, inst.stimulus, inst.budget,
                                  Objective::linear(std::vector<double>(n, 1.0)), inst.shocks);
        const ShockBatch batch{inst.shocks.point()};
        SeededRng rng(0);
        const auto wealth = heuristic(HeuristicKind::WealthAscending, prob, rng);
        const double w = allocation_value(prob, wealth.z, batch[0]);
        const double best = brute_force(prob, batch).value;
        CHECK(best / w > last);
        last = best / w;
    }
}

TEST_CASE("random-er follows the synthesis recipe and is reproducible") {
    auto s = spec_of(GeneratorKind::RandomEr, 40);
    s.edge_probability = 0.05;
    s.seed = 17;
    const auto a = generate(s);
    const auto b = generate(s);
    CHECK(format_instance(a) == format_instance(b));
    for (std::size_t j = 0; j < 40; ++j) {
        CHECK(a.net.b()[j] == doctest::Approx(0.9 * a.net.c()[j]));
        CHECK(a.net.p()[j] > 0);
    }
    CHECK(a.budget == 20.0);
    s.seed = 18;
    CHECK(format_instance(generate(s)) != format_instance(a));
    CHECK(describe(s).find("seed=18") != std::string::npos);
}

TEST_CASE("generator parameter ranges") {
    auto s = spec_of(GeneratorKind::TwoClique, 7);
    CHECK_THROWS_AS(generate(s), InvalidInput);
    s = spec_of(GeneratorKind::CompleteGap);
    s.epsilon = 1.5;
    CHECK_THROWS_AS(generate(s), InvalidInput);
    s = spec_of(GeneratorKind::SetCoverGadget);
    s.alpha = 3.0;
    CHECK_THROWS_AS(generate(s), InvalidInput);
    s = spec_of(GeneratorKind::PathThreshold, 10);
    s.epsilon = 0.2;
    CHECK_THROWS_AS(generate(s), InvalidInput);
    CHECK(parse_generator_kind("random-er") == GeneratorKind::RandomEr);
    CHECK_THROWS_AS(parse_generator_kind("lattice"), InvalidInput);
}

TEST_CASE("synthetic property values lie in the unit interval") {
    SeededRng rng(1);
    const auto q = synthetic_property(1000, rng);
    double mean = 0;
    for (double v : q) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        mean += v;
    }
    CHECK(mean / 1000 == doctest::Approx(2.0 / 7.0).epsilon(0.1));
}
