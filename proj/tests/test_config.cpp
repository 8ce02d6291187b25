#include <doctest.h>

#include <cmath>
#include <string>

#include "vaxnet/config.hpp"
#include "vaxnet/error.hpp"

using namespace vaxnet;

namespace {

const std::string kData = VAXNET_TEST_DATA;

int parse_error_line(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("terms split on top-level commas only") {
    const SpecTerm t = parse_term("contacts(poisson(3), p=0.2)");
    CHECK(t.name == "contacts");
    REQUIRE(t.args.size() == 2);
    CHECK(t.args[0].key.empty());
    CHECK(t.args[0].value == "poisson(3)");
    CHECK(t.args[1].key == "p");
    CHECK(t.args[1].value == "0.2");
    CHECK(*t.find(1, "p") == "0.2");
    CHECK(t.find(5, "q") == nullptr);

    const SpecTerm bare = parse_term("  uniform ");
    CHECK(bare.name == "uniform");
    CHECK_FALSE(bare.has_parens);
    CHECK(bare.args.empty());

    CHECK_THROWS_AS(parse_term("beta(0.5, 2.5"), ParseError);
    CHECK_THROWS_AS(parse_term("beta 0.5)"), ParseError);
    CHECK_THROWS_AS(parse_term(""), ParseError);
}

TEST_CASE("degree specifications") {
    CHECK(parse_degree_spec("poisson(6)").label() == poisson(6.0).label());
    CHECK(parse_degree_spec("poisson(mu=6)").label() == "poisson(6)");
    CHECK(std::abs(parse_degree_spec("powerlaw(3.5, mean=4)").mean() - 4.0) < 1e-9);
    CHECK(std::abs(parse_degree_spec("power_law(3.5, 14)").mean() - 14.0) < 1e-9);
    CHECK(parse_degree_spec("fixed(3)")[3] == 1.0);
    const DegreeDist d = parse_degree_spec("empirical(" + kData + "/degrees.csv)");
    CHECK(d[2] == doctest::Approx(0.5));
    CHECK_THROWS_AS(parse_degree_spec("binomial(10, 0.3)"), ParseError);
    CHECK_THROWS_AS(parse_degree_spec("poisson()"), ParseError);
    CHECK_THROWS_AS(parse_degree_spec("poisson(six)"), ParseError);
    CHECK_THROWS_AS(parse_degree_spec("fixed(2.5)"), ParseError);
    CHECK_THROWS_AS(parse_degree_spec("poisson(-1)"), ParameterError);
}

TEST_CASE("weight function specifications") {
    CHECK(eval_g(parse_g_spec("power(1.0)"), 4) == doctest::Approx(0.25));
    CHECK(eval_g(parse_g_spec("indicator(2)"), 1) == 0.0);
    CHECK(eval_g(parse_g_spec("geom(0.5)"), 2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(parse_g_spec("log(2)"), ParseError);
    CHECK_THROWS_AS(parse_g_spec("power(1.5)"), ParameterError);
}

TEST_CASE("weight law specifications") {
    CHECK(std::holds_alternative<UniformWeights>(parse_weight_spec("uniform").law()));

    const WeightModel beta_model = parse_weight_spec("beta(0.5,2.5)");
    const auto& beta = std::get<BetaWeights>(beta_model.law());
    CHECK(beta.a == 0.5);
    CHECK(beta.b == 2.5);

    const WeightModel two_model = parse_weight_spec("twopoint(a=0.1, b=1.0, pa=0.9)");
    const auto& two = std::get<TwoPointWeights>(two_model.law());
    CHECK(two.a == 0.1);
    CHECK(two.b == 1.0);
    CHECK(two.pa == 0.9);
    CHECK(std::get<TwoPointWeights>(parse_weight_spec("twopoint(0.1, 1, pb=0.5)").law()).pa == 0.5);
    CHECK_THROWS_AS(parse_weight_spec("twopoint(0.1, 1)"), ParseError);

    const WeightModel contacts_model = parse_weight_spec("contacts(poisson(3), p=0.2)");
    const auto& contacts = std::get<ContactCountWeights>(contacts_model.law());
    CHECK(contacts.p == 0.2);
    CHECK(contacts.contacts.label() == "poisson(3)");

    const WeightModel ind = parse_weight_spec("strength(exp(1), indicator=0.5)");
    CHECK(mean_weight(ind) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    const WeightModel decay_model = parse_weight_spec("strength(gamma(2,1), decay=0.8)");
    const auto& decay = std::get<ThresholdStrengthWeights>(decay_model.law());
    CHECK(decay.rule == ThresholdStrengthWeights::Rule::Decay);
    CHECK(decay.parameter == 0.8);
    CHECK_THROWS_AS(parse_weight_spec("strength(exp(1))"), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("strength(lognormal(1), decay=0.5)"), ParseError);

    const WeightModel table = parse_weight_spec("table(" + kData + "/weights_table.csv)");
    CHECK(mean_weight(table) == doctest::Approx(0.35).epsilon(1e-12));

    const WeightModel dep = parse_weight_spec("g=power(0.7)");
    CHECK(dep.is_degree_dependent());
    CHECK(parse_weight_spec("g = indicator(3)").is_degree_dependent());

    CHECK_THROWS_AS(parse_weight_spec("normal(0,1)"), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("beta(0, 1)"), ParameterError);
}

TEST_CASE("numbers") {
    CHECK(parse_number("0.25") == 0.25);
    CHECK(parse_number(" 1e-3 ") == 0.001);
    CHECK(parse_number("-2") == -2.0);
    CHECK_THROWS_AS(parse_number("1.5x"), ParseError);
    CHECK_THROWS_AS(parse_number(""), ParseError);
}

TEST_CASE("config files") {
    const ConfigFile cfg = parse_config(R"(# analysis of Example runs
degree = poisson(14)
weights = beta(0.5, 2.5)   # right-skewed
seed = 7

[uniform]
strategy = uniform
parameter = 0.3

[acq]
strategy = acq
degree = poisson(6)
)");
    CHECK(cfg.global.at("degree").value == "poisson(14)");
    CHECK(cfg.global.at("weights").value == "beta(0.5, 2.5)");
    CHECK(cfg.global.at("weights").line == 3);
    REQUIRE(cfg.sections.size() == 2);
    CHECK(cfg.sections[0].first == "uniform");
    const auto first = cfg.merged(0);
    CHECK(first.at("degree").value == "poisson(14)");
    CHECK(first.at("parameter").value == "0.3");
    const auto second = cfg.merged(1);
    CHECK(second.at("degree").value == "poisson(6)");
    CHECK(second.at("seed").value == "7");
    CHECK(second.count("parameter") == 0);
    CHECK_THROWS(cfg.merged(2));
}

TEST_CASE("config errors carry line numbers") {
    CHECK(parse_error_line("a = 1\nb = 2\nthis line is wrong\n") == 3);
    CHECK(parse_error_line("a = 1\n\n[open\n") == 3);
    CHECK(parse_error_line("# comment\n = 4\n") == 2);
    CHECK(parse_error_line("a = 1\n") == -1);
    CHECK_THROWS_AS(load_config("/nonexistent/vaxnet.cfg"), ParseError);
}

TEST_CASE("grids") {
    const auto range = parse_grid("0:1:0.25");
    REQUIRE(range.size() == 5);
    CHECK(range.back() == doctest::Approx(1.0));
    CHECK(parse_grid("0:1:0.02").size() == 51);
    CHECK(parse_grid("0.1, 0.5,0.9") == std::vector<double>{0.1, 0.5, 0.9});
    CHECK(parse_grid("3") == std::vector<double>{3.0});
    CHECK(parse_grid("").empty());
    CHECK(parse_grid("  ").empty());
    CHECK_THROWS_AS(parse_grid("0:1"), ParseError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ParseError);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), ParseError);
    CHECK_THROWS_AS(parse_grid("0.1,,0.2"), ParseError);
}

}
