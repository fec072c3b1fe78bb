#include "bailout/errors.hpp"
#include "bailout/objectives.hpp"
#include "bailout/shocks.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace bailout;
using namespace fixtures;

TEST_CASE("welfare values after the two-bank bailout") {
    const auto net = example1();
    const std::vector<double> pbar{1.5, 1.0};
    auto value = [&](LinearKind k) {
        return Objective::linear(linear_coefficients(k, net, CoefficientUse::EvaluationOnly), false)
            .evaluate(pbar, net);
    };
    CHECK(value(LinearKind::SoP) == doctest::Approx(2.5));
    CHECK(value(LinearKind::SoT) == doctest::Approx(1.5));
    CHECK(value(LinearKind::SoIP) == doctest::Approx(1.0));
    CHECK(value(LinearKind::FS) == doctest::Approx(2.0));
    CHECK(Objective::absolute_solvency().evaluate(pbar, net) == 2.0);

    const std::vector<double> shocked{0.5, 1.0 / 3.0};
    CHECK(Objective::linear({1, 1}).evaluate(shocked, net) == doctest::Approx(5.0 / 6.0));
    CHECK(Objective::absolute_solvency().evaluate(shocked, net) == 0.0);
}

TEST_CASE("coefficient vectors and their spread") {
    const auto net = example1();
    const auto sot = linear_coefficients(LinearKind::SoT, net);
    CHECK(sot[0] == doctest::Approx(1.0 / 3.0));
    CHECK(sot[1] == doctest::Approx(1.0));
    CHECK(zeta(sot) == doctest::Approx(3.0));
    const auto fs = linear_coefficients(LinearKind::FS, net);
    CHECK(fs[0] == doctest::Approx(2.0 / 3.0));
    CHECK(fs[1] == doctest::Approx(1.0));
    CHECK(Objective::linear(linear_coefficients(LinearKind::SoP, net)).zeta() == 1.0);
    // beta_2 = 0 makes the SoIP weight vanish, which clearing cannot use
    CHECK_THROWS_AS(linear_coefficients(LinearKind::SoIP, net), InvalidInput);
    CHECK_NOTHROW(linear_coefficients(LinearKind::SoIP, net, CoefficientUse::EvaluationOnly));
}

TEST_CASE("augmented solvency coefficient") {
    const auto net = example1();
    const auto aug = Objective::epsilon_augment(Objective::absolute_solvency(), 0.1, 1.0, net.beta_max());
    CHECK(aug.augmentation() == doctest::Approx(1.0 / 60.0));
    const std::vector<double> pbar{1.5, 1.0};
    CHECK(aug.evaluate(pbar, net) == doctest::Approx(2.0 + 2.5 / 60.0));
}

TEST_CASE("objective names parse") {
    CHECK(parse_linear_kind("sop") == LinearKind::SoP);
    CHECK(parse_linear_kind("fs") == LinearKind::FS);
    CHECK_THROWS_AS(parse_linear_kind("bogus"), InvalidInput);
    CHECK_THROWS_AS(Objective::linear({1, 0}), InvalidInput);
}

TEST_CASE("seeded streams are reproducible and distinct") {
    SeededRng a(42), b(42), c(43);
    for (int i = 0; i < 10; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x != c.uniform());
    }
    const SeededRng base(1);
    std::set<double> firsts;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto sub = base.substream(s);
        firsts.insert(sub.uniform());
    }
    CHECK(firsts.size() == 100);
}

TEST_CASE("uniform and beta shocks have the right means") {
    const std::vector<double> c{2.0, 4.0};
    const auto uni = ShockDistribution::uniform(c);
    const auto beta = ShockDistribution::scaled_beta(c, 2.0, 5.0);
    const auto ub = uni.sample_batch(SeededRng(3), 20000);
    const auto bb = beta.sample_batch(SeededRng(4), 20000);
    for (std::size_t j = 0; j < 2; ++j) {
        double su = 0, sb = 0;
        for (std::size_t i = 0; i < ub.size(); ++i) {
            CHECK(ub[i][j] >= 0.0);
            CHECK(ub[i][j] <= c[j]);
            CHECK(bb[i][j] <= c[j]);
            su += ub[i][j];
            sb += bb[i][j];
        }
        su /= 20000;
        sb /= 20000;
        // 5 standard errors
        CHECK(std::abs(su - c[j] / 2) <= 5 * c[j] / std::sqrt(12.0 * 20000));
        const double var = 2.0 * 5.0 / (49.0 * 8.0);
        CHECK(std::abs(sb - c[j] * 2.0 / 7.0) <= 5 * c[j] * std::sqrt(var / 20000));
    }
}

TEST_CASE("batches do not depend on draw order") {
    const auto uni = ShockDistribution::uniform({1.0, 1.0, 1.0});
    const SeededRng rng(9);
    const auto a = uni.sample_batch(rng, 10);
    const auto b = uni.sample_batch(rng, 20);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(a[i] == b[i]);
}

TEST_CASE("point and zero shocks are deterministic") {
    const auto p = ShockDistribution::point_mass({1.5, 0.0}, {1.0, 0.0});
    SeededRng rng(1);
    CHECK(p.sample(rng) == std::vector<double>{1.0, 0.0});
    CHECK(p.deterministic());
    CHECK(ShockDistribution::zero({1, 2}).sample(rng) == std::vector<double>{0.0, 0.0});
    CHECK_THROWS_AS(ShockDistribution::point_mass({1.0}, {2.0}), InvalidInput);
    CHECK_THROWS_AS(ShockDistribution::scaled_beta({1.0}, 0.0, 1.0), InvalidInput);
}
