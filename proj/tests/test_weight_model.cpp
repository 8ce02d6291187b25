#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "vaxnet/config.hpp"
#include "vaxnet/error.hpp"
#include "vaxnet/weight_model.hpp"

using namespace vaxnet;

namespace {

TabulatedWeights fixture_table() {
    return TabulatedWeights{{0.0, 0.5, 1.0}, {0.0, 0.8, 1.0}};
}

ThresholdStrengthWeights strength(StrengthLaw::Kind kind, double shape, double scale,
                                  ThresholdStrengthWeights::Rule rule, double parameter) {
    return {{kind, shape, scale}, rule, parameter};
}

std::vector<WeightModel> sampleable_models() {
    using Rule = ThresholdStrengthWeights::Rule;
    using Kind = StrengthLaw::Kind;
    return {
        WeightModel(UniformWeights{}),
        WeightModel(BetaWeights{0.5, 2.5}),
        WeightModel(BetaWeights{3.0, 1.5}),
        WeightModel(fixture_table()),
        WeightModel(TwoPointWeights{0.1, 1.0, 0.9}),
        WeightModel(ContactCountWeights{poisson(3.0), 0.2}),
        WeightModel(strength(Kind::Exponential, 1.0, 1.0, Rule::Indicator, 0.5)),
        WeightModel(strength(Kind::Gamma, 2.0, 0.5, Rule::Indicator, 1.5)),
        WeightModel(strength(Kind::Gamma, 2.0, 1.0, Rule::Decay, 0.8)),
        WeightModel(strength(Kind::Exponential, 1.0, 2.0, Rule::Decay, 0.3)),
    };
}

} // namespace

TEST_SUITE("weight_model") {

TEST_CASE("closed-form means") {
    CHECK(mean_weight(WeightModel(UniformWeights{})) == 0.5);
    CHECK(mean_weight(WeightModel(TwoPointWeights{0.1, 1.0, 0.9})) == doctest::Approx(0.19).epsilon(1e-14));
    CHECK(mean_weight(WeightModel(BetaWeights{0.5, 2.5})) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(mean_weight(WeightModel(fixture_table())) == doctest::Approx(0.35).epsilon(1e-14));
}

TEST_CASE("contact-count mean equals one minus the pgf of N at 1-p") {
    // Poisson pgf: G(z) = exp(lambda (z - 1))
    for (double lambda : {0.5, 3.0, 8.0})
        for (double p : {0.0, 0.05, 0.2, 1.0}) {
            const WeightModel m(ContactCountWeights{poisson(lambda), p});
            CHECK(std::abs(mean_weight(m) - (1.0 - std::exp(-lambda * p))) < 1e-10);
        }
}

TEST_CASE("strength-derived means") {
    using Rule = ThresholdStrengthWeights::Rule;
    using Kind = StrengthLaw::Kind;
    // P(X >= 0.5) for X ~ Exp(1)
    CHECK(mean_weight(WeightModel(strength(Kind::Exponential, 1.0, 1.0, Rule::Indicator, 0.5))) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    // 1 - E[alpha^X] for X ~ Gamma(2, 1): E[alpha^X] = (1 - log alpha)^-2
    CHECK(mean_weight(WeightModel(strength(Kind::Gamma, 2.0, 1.0, Rule::Decay, 0.8))) ==
          doctest::Approx(1.0 - std::pow(1.0 - std::log(0.8), -2.0)).epsilon(1e-12));
}

TEST_CASE("degree-dependent weights have no mean or sampler") {
    const WeightModel m(DegreeDependentWeights{WeightFunctionG::power_decay(0.5)});
    CHECK_THROWS_AS(mean_weight(m), UnsupportedKindError);
    Rng rng(1);
    CHECK_THROWS_AS(sample_weight(m, rng), UnsupportedKindError);
}

TEST_CASE("two-point draws take only the two values") {
    const WeightModel m(TwoPointWeights{0.1, 1.0, 0.9});
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double w = sample_weight(m, rng);
        CHECK((w == 0.1 || w == 1.0));
    }
}

TEST_CASE("zero contacts give zero weight") {
    const WeightModel m(ContactCountWeights{point_mass(0), 0.4});
    Rng rng(5);
    for (int i = 0; i < 1000; ++i)
        CHECK(sample_weight(m, rng) == 0.0);
    CHECK(mean_weight(m) == 0.0);
}

TEST_CASE("sample means agree with mean_weight within 4 standard errors") {
    const int n = 1'000'000;
    std::uint64_t seed = 11;
    for (const WeightModel& m : sampleable_models()) {
        Rng rng(seed++);
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = sample_weight(m, rng);
            REQUIRE(w >= 0.0);
            REQUIRE(w <= 1.0);
            sum += w;
            sum_sq += w * w;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum_sq / n - mean * mean) / n);
        INFO(m.describe());
        CHECK(std::abs(mean - mean_weight(m)) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("eval_g examples") {
    const auto ind = WeightFunctionG::indicator_ge(2);
    CHECK(eval_g(ind, 1) == 0.0);
    CHECK(eval_g(ind, 2) == 1.0);
    CHECK(eval_g(WeightFunctionG::power_decay(1.0), 4) == doctest::Approx(0.25));
    CHECK(eval_g(WeightFunctionG::geometric_decay(0.3), 0) == 1.0);
    CHECK(eval_g(WeightFunctionG::geometric_decay(0.5), 3) == doctest::Approx(0.125));
    CHECK(eval_g(WeightFunctionG::tabulated({0.0, 0.5, 0.25}), 7) == 0.25);
}

TEST_CASE("weight function parameter domains") {
    CHECK_THROWS_AS(WeightFunctionG::power_decay(1.5), ParameterError);
    CHECK_THROWS_AS(WeightFunctionG::power_decay(-0.1), ParameterError);
    CHECK_THROWS_AS(WeightFunctionG::geometric_decay(0.0), ParameterError);
    CHECK_THROWS_AS(WeightFunctionG::geometric_decay(1.0), ParameterError);
    CHECK_THROWS_AS(WeightFunctionG::indicator_ge(-1), ParameterError);
    CHECK_THROWS_AS(WeightFunctionG::tabulated({0.5, 1.2}), ParameterError);
    CHECK_THROWS_AS(eval_g(WeightFunctionG::power_decay(0.5), -1), ParameterError);
}

TEST_CASE("every evaluated g lies in [0,1]") {
    std::vector<WeightFunctionG> gs;
    for (double tau = 0.0; tau <= 1.0; tau += 0.1)
        gs.push_back(WeightFunctionG::power_decay(tau));
    for (double alpha = 0.05; alpha < 1.0; alpha += 0.1)
        gs.push_back(WeightFunctionG::geometric_decay(alpha));
    for (int theta = 0; theta < 10; ++theta)
        gs.push_back(WeightFunctionG::indicator_ge(theta));
    for (const auto& g : gs)
        for (int k = 0; k < 500; ++k) {
            const double v = eval_g(g, k);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
}

TEST_CASE("law parameter validation") {
    CHECK_THROWS_AS(WeightModel(TwoPointWeights{1.0, 0.1, 0.5}), ParameterError);
    CHECK_THROWS_AS(WeightModel(TwoPointWeights{0.5, 0.5, 0.5}), ParameterError);
    CHECK_THROWS_AS(WeightModel(TwoPointWeights{0.1, 1.5, 0.5}), ParameterError);
    CHECK_THROWS_AS(WeightModel(BetaWeights{0.0, 1.0}), ParameterError);
    CHECK_THROWS_AS(WeightModel(ContactCountWeights{poisson(2.0), 1.5}), ParameterError);
    CHECK_THROWS_AS(WeightModel(TabulatedWeights{{0.0, 0.5}, {0.0, 1.0}}), ParameterError);
    CHECK_THROWS_AS(WeightModel(TabulatedWeights{{0.0, 0.5, 1.0}, {0.0, 0.9, 0.8}}), ParameterError);
}

TEST_CASE("continuity flags") {
    CHECK(WeightModel(UniformWeights{}).is_continuous());
    CHECK(WeightModel(BetaWeights{0.5, 2.5}).is_continuous());
    CHECK(WeightModel(fixture_table()).is_continuous());
    CHECK_FALSE(WeightModel(TwoPointWeights{0.1, 1.0, 0.9}).is_continuous());
    CHECK(WeightModel(TwoPointWeights{0.1, 1.0, 0.9}).is_two_point());
    CHECK_FALSE(WeightModel(ContactCountWeights{poisson(2.0), 0.3}).is_continuous());
}

TEST_CASE("continuous pdf and cdf are consistent") {
    using Rule = ThresholdStrengthWeights::Rule;
    using Kind = StrengthLaw::Kind;
    const std::vector<WeightModel> models{WeightModel(BetaWeights{2.0, 3.0}), WeightModel(fixture_table()),
                                          WeightModel(strength(Kind::Gamma, 2.0, 1.0, Rule::Decay, 0.8))};
    for (const WeightModel& m : models) {
        // midpoint rule on a fine grid away from the endpoints
        const int steps = 20000;
        const double lo = 0.1;
        const double hi = 0.9;
        const double h = (hi - lo) / steps;
        double mass = 0.0;
        for (int i = 0; i < steps; ++i)
            mass += m.pdf(lo + (i + 0.5) * h) * h;
        INFO(m.describe());
        CHECK(mass == doctest::Approx(m.cdf(hi) - m.cdf(lo)).epsilon(1e-6));
    }
}

}
