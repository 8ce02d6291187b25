#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "vaxnet/error.hpp"
#include "vaxnet/thresholds.hpp"

using namespace vaxnet;

namespace {

// P(Po(mu) >= theta) from the regularized incomplete gamma function.
double poisson_tail(double mu, int theta) {
    return theta <= 0 ? 1.0 : boost::math::gamma_p(static_cast<double>(theta), mu);
}

DegreeDist random_law(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size(2, 25);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    const int n = size(rng);
    std::vector<std::pair<int, double>> rows;
    for (int k = 0; k <= n; ++k)
        rows.emplace_back(k, weight(rng) < 0.3 ? 0.0 : weight(rng));
    rows.emplace_back(n + 1, 0.5);
    return empirical(rows);
}

std::vector<double> random_monotone_table(std::mt19937_64& rng, int size, bool increasing) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(size));
    for (double& v : values)
        v = u(rng);
    std::sort(values.begin(), values.end());
    if (!increasing)
        std::reverse(values.begin(), values.end());
    return values;
}

} // namespace

TEST_SUITE("thresholds") {

TEST_CASE("iid reproduction number examples") {
    CHECK(r0_iid(poisson(6.0), 0.5) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(r0_iid(power_law(3.5, 4.0), 0.0) == 0.0);
    const std::vector<std::pair<int, double>> rows{{1, 0.5}, {3, 0.5}};
    CHECK(r0_iid(empirical(rows), 1.0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(r0_iid(point_mass(0), 0.5), ParameterError);
    CHECK_THROWS_AS(r0_iid(poisson(2.0), 1.5), ParameterError);
}

TEST_CASE("iid reproduction number is linear in gamma") {
    const DegreeDist d = power_law(3.5, 14.0);
    const double base = r0_iid(d, 1.0);
    for (double gamma : {0.0, 0.1, 0.37, 0.5, 0.99})
        CHECK(r0_iid(d, gamma) == doctest::Approx(gamma * base).epsilon(1e-12));
}

TEST_CASE("poisson closed forms for the indicator weight function") {
    for (double mu : {1.0, 2.0, 6.0, 14.0}) {
        const DegreeDist d = poisson(mu);
        for (int theta = 0; theta <= 8; ++theta) {
            const auto g = WeightFunctionG::indicator_ge(theta);
            INFO("mu=" << mu << " theta=" << theta);
            CHECK(std::abs(r0_h2(d, g) - mu * poisson_tail(mu, theta)) < 1e-9);
            CHECK(std::abs(r0_h1(d, g) - mu * poisson_tail(mu, theta - 1)) < 1e-9);
            CHECK(std::abs(r0_degree_dep(d, g) - mu * poisson_tail(mu, theta - 2)) < 1e-9);
        }
    }
}

TEST_CASE("poisson closed forms for the geometric weight function") {
    for (double mu : {1.0, 2.0, 6.0, 14.0})
        for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const DegreeDist d = poisson(mu);
            const auto g = WeightFunctionG::geometric_decay(alpha);
            const double base = mu * std::exp(-mu * (1.0 - alpha));
            INFO("mu=" << mu << " alpha=" << alpha);
            CHECK(std::abs(r0_h2(d, g) - base) < 1e-9);
            CHECK(std::abs(r0_h1(d, g) - alpha * base) < 1e-9);
            CHECK(std::abs(r0_degree_dep(d, g) - alpha * alpha * base) < 1e-9);
        }
}

TEST_CASE("constant g factorizes") {
    const std::vector<DegreeDist> laws{poisson(3.0), power_law(3.5, 4.0), point_mass(4)};
    for (const DegreeDist& d : laws) {
        const auto one = WeightFunctionG::indicator_ge(0);
        CHECK(r0_h1(d, one) == doctest::Approx(excess_mean(d)).epsilon(1e-12));
        CHECK(r0_degree_dep(d, one) == doctest::Approx(excess_mean(d)).epsilon(1e-12));
        const auto c = WeightFunctionG::tabulated({0.35});
        CHECK(r0_h2(d, c) == doctest::Approx(0.35 * excess_mean(d)).epsilon(1e-12));
        CHECK(r0_degree_dep(d, c) == doctest::Approx(0.35 * excess_mean(d)).epsilon(1e-12));
    }
}

TEST_CASE("power decay with tau = 1 is subcritical for any degree law") {
    const auto g = WeightFunctionG::power_decay(1.0);
    std::mt19937_64 rng(42);
    std::vector<DegreeDist> laws{poisson(6.0), poisson(14.0), power_law(3.5, 4.0), power_law(3.2, 30.0)};
    for (int i = 0; i < 50; ++i)
        laws.push_back(random_law(rng));
    for (const DegreeDist& d : laws) {
        const SizeBiasedDist b = size_bias(d);
        double oracle = 0.0;
        for (int k = 1; k <= b.cutoff(); ++k)
            oracle += (k - 1.0) / k * b[k];
        CHECK(r0_degree_dep(d, g) == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(r0_degree_dep(d, g) < 1.0);
    }
}

TEST_CASE("correlation ordering for monotone g") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const DegreeDist d = random_law(rng);
        const bool increasing = trial % 2 == 0;
        const auto g = WeightFunctionG::tabulated(random_monotone_table(rng, d.cutoff() + 1, increasing));
        const double deg = r0_degree_dep(d, g);
        const double h1 = r0_h1(d, g);
        if (increasing)
            CHECK(deg >= h1 - 1e-12);
        else
            CHECK(deg <= h1 + 1e-12);
    }
}

TEST_CASE("tau sweep") {
    const DegreeDist d = power_law(3.5, 4.0);
    std::vector<double> taus;
    for (int i = 0; i <= 50; ++i)
        taus.push_back(i * 0.02);
    const auto rows = sweep_tau(d, taus);
    REQUIRE(rows.size() == taus.size());
    CHECK(rows.front().r0_h2 == doctest::Approx(excess_mean(d)).epsilon(1e-12));
    CHECK(rows.front().r0_h1 == doctest::Approx(excess_mean(d)).epsilon(1e-12));
    CHECK(rows.front().r0_deg == doctest::Approx(excess_mean(d)).epsilon(1e-12));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].r0_h2 >= rows[i].r0_h1);
        CHECK(rows[i].r0_h1 >= rows[i].r0_deg);
    }
    CHECK(rows.back().r0_deg < 1.0);
    CHECK(sweep_tau(d, std::vector<double>{}).empty());
}

TEST_CASE("threshold report picks the regime") {
    const DegreeDist d = poisson(6.0);
    const ThresholdReport iid = threshold_report(d, WeightModel(UniformWeights{}));
    CHECK(iid.regime == Regime::IidWeights);
    CHECK(iid.r0 == doctest::Approx(3.0));
    CHECK(iid.degree_spec == "poisson(6)");
    CHECK(iid.weight_spec == "uniform");

    const ThresholdReport dep =
        threshold_report(d, WeightModel(DegreeDependentWeights{WeightFunctionG::indicator_ge(0)}));
    CHECK(dep.regime == Regime::DegreeDep);
    CHECK(dep.r0 == doctest::Approx(6.0));
    CHECK(to_string(Regime::DegreeDepH2) == "degree_dep_h2");
}

}
