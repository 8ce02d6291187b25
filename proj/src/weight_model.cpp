#include "vaxnet/weight_model.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vaxnet/error.hpp"

namespace vaxnet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::string strength_text(const StrengthLaw& x) {
    std::ostringstream os;
    if (x.kind == StrengthLaw::Kind::Exponential)
        os << "exp(" << 1.0 / x.scale << ")";
    else
        os << "gamma(" << x.shape << "," << x.scale << ")";
    return os.str();
}

double strength_cdf(const StrengthLaw& x, double value) {
    if (value <= 0.0)
        return 0.0;
    return boost::math::gamma_p(x.shape, value / x.scale);
}

double strength_pdf(const StrengthLaw& x, double value) {
    if (value < 0.0)
        return 0.0;
    return boost::math::pdf(boost::math::gamma_distribution<double>(x.shape, x.scale), value);
}

void validate(const WeightLaw& law) {
    std::visit(overloaded{
                   [](const UniformWeights&) {},
                   [](const BetaWeights& w) {
                       if (!(w.a > 0.0) || !(w.b > 0.0) || !std::isfinite(w.a) || !std::isfinite(w.b))
                           throw ParameterError("beta weights need positive shape parameters");
                   },
                   [](const TabulatedWeights& w) {
                       if (w.x.size() < 2 || w.x.size() != w.cdf.size())
                           throw ParameterError("tabulated weights need matching x and cdf columns");
                       if (w.x.front() != 0.0 || w.x.back() != 1.0)
                           throw ParameterError("tabulated weights must span [0,1]");
                       if (std::abs(w.cdf.front()) > 1e-12 || std::abs(w.cdf.back() - 1.0) > 1e-12)
                           throw ParameterError("tabulated cdf must run from 0 to 1");
                       for (std::size_t i = 1; i < w.x.size(); ++i) {
                           if (!(w.x[i] > w.x[i - 1]))
                               throw ParameterError("tabulated x must be strictly increasing");
                           if (w.cdf[i] < w.cdf[i - 1])
                               throw ParameterError("tabulated cdf must be non-decreasing");
                       }
                   },
                   [](const TwoPointWeights& w) {
                       if (!is_probability(w.a) || !is_probability(w.b) || !(w.a < w.b))
                           throw ParameterError("two-point weights need 0 <= a < b <= 1");
                       if (!is_probability(w.pa))
                           throw ParameterError("two-point probability pa must lie in [0,1]");
                   },
                   [](const ContactCountWeights& w) {
                       if (!is_probability(w.p))
                           throw ParameterError("per-contact probability must lie in [0,1]");
                   },
                   [](const ThresholdStrengthWeights& w) {
                       if (!(w.strength.shape > 0.0) || !(w.strength.scale > 0.0))
                           throw ParameterError("strength law needs positive shape and scale");
                       if (w.rule == ThresholdStrengthWeights::Rule::Indicator && !(w.parameter >= 0.0))
                           throw ParameterError("strength threshold must be non-negative");
                       if (w.rule == ThresholdStrengthWeights::Rule::Decay &&
                           !(w.parameter > 0.0 && w.parameter < 1.0))
                           throw ParameterError("strength decay alpha must lie in (0,1)");
                   },
                   [](const DegreeDependentWeights& w) { w.g.validate(); },
               },
               law);
}

} // namespace

WeightFunctionG WeightFunctionG::indicator_ge(int theta) {
    WeightFunctionG g{Form::IndicatorGe, static_cast<double>(theta), {}};
    g.validate();
    return g;
}

WeightFunctionG WeightFunctionG::geometric_decay(double alpha) {
    WeightFunctionG g{Form::GeometricDecay, alpha, {}};
    g.validate();
    return g;
}

WeightFunctionG WeightFunctionG::power_decay(double tau) {
    WeightFunctionG g{Form::PowerDecay, tau, {}};
    g.validate();
    return g;
}

WeightFunctionG WeightFunctionG::tabulated(std::vector<double> values) {
    WeightFunctionG g{Form::Table, 0.0, std::move(values)};
    g.validate();
    return g;
}

void WeightFunctionG::validate() const {
    switch (form) {
    case Form::IndicatorGe:
        if (!(parameter >= 0.0))
            throw ParameterError("indicator threshold must be non-negative");
        break;
    case Form::GeometricDecay:
        if (!(parameter > 0.0 && parameter < 1.0))
            throw ParameterError("geometric decay alpha must lie in (0,1)");
        break;
    case Form::PowerDecay:
        if (!(parameter >= 0.0 && parameter <= 1.0))
            throw ParameterError("power decay tau must lie in [0,1]");
        break;
    case Form::Table:
        if (table.empty())
            throw ParameterError("tabulated g needs at least one value");
        for (double v : table)
            if (!is_probability(v))
                throw ParameterError("tabulated g values must lie in [0,1]");
        break;
    }
}

std::string WeightFunctionG::describe() const {
    std::ostringstream os;
    switch (form) {
    case Form::IndicatorGe: os << "indicator(" << parameter << ")"; break;
    case Form::GeometricDecay: os << "geom(" << parameter << ")"; break;
    case Form::PowerDecay: os << "power(" << parameter << ")"; break;
    case Form::Table:
        os << "table(";
        for (std::size_t i = 0; i < table.size(); ++i)
            os << (i ? "," : "") << table[i];
        os << ")";
        break;
    }
    return os.str();
}

double eval_g(const WeightFunctionG& g, int degree) {
    if (degree < 0)
        throw ParameterError("eval_g: degree must be non-negative");
    g.validate();
    switch (g.form) {
    case WeightFunctionG::Form::IndicatorGe:
        return degree >= g.parameter ? 1.0 : 0.0;
    case WeightFunctionG::Form::GeometricDecay:
        return std::pow(g.parameter, degree);
    case WeightFunctionG::Form::PowerDecay:
        // degree-0 vertices have no out-edges; 1 keeps g inside [0,1]
        return degree == 0 ? 1.0 : std::pow(static_cast<double>(degree), -g.parameter);
    case WeightFunctionG::Form::Table:
        return g.table[std::min<std::size_t>(static_cast<std::size_t>(degree), g.table.size() - 1)];
    }
    return 0.0;
}

WeightModel::WeightModel(WeightLaw law) : law_(std::move(law)) { validate(law_); }

bool WeightModel::is_continuous() const noexcept {
    return std::visit(overloaded{
                          [](const UniformWeights&) { return true; },
                          [](const BetaWeights&) { return true; },
                          [](const TabulatedWeights&) { return true; },
                          [](const ThresholdStrengthWeights& w) {
                              return w.rule == ThresholdStrengthWeights::Rule::Decay;
                          },
                          [](const auto&) { return false; },
                      },
                      law_);
}

bool WeightModel::is_degree_dependent() const noexcept {
    return std::holds_alternative<DegreeDependentWeights>(law_);
}

bool WeightModel::is_two_point() const noexcept { return std::holds_alternative<TwoPointWeights>(law_); }

std::string WeightModel::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const UniformWeights&) { os << "uniform"; },
                   [&](const BetaWeights& w) { os << "beta(" << w.a << "," << w.b << ")"; },
                   [&](const TabulatedWeights& w) {
                       os << "table(";
                       for (std::size_t i = 0; i < w.x.size(); ++i)
                           os << (i ? ";" : "") << w.x[i] << ":" << w.cdf[i];
                       os << ")";
                   },
                   [&](const TwoPointWeights& w) {
                       os << "twopoint(a=" << w.a << ",b=" << w.b << ",pa=" << w.pa << ")";
                   },
                   [&](const ContactCountWeights& w) {
                       os << "contacts(" << w.contacts.label() << ",p=" << w.p << ")";
                   },
                   [&](const ThresholdStrengthWeights& w) {
                       os << "strength(" << strength_text(w.strength) << ","
                          << (w.rule == ThresholdStrengthWeights::Rule::Indicator ? "indicator=" : "decay=")
                          << w.parameter << ")";
                   },
                   [&](const DegreeDependentWeights& w) { os << "g=" << w.g.describe(); },
               },
               law_);
    return os.str();
}

double WeightModel::pdf(double x) const {
    if (x < 0.0 || x > 1.0)
        return 0.0;
    return std::visit(
        overloaded{
            [](const UniformWeights&) { return 1.0; },
            [x](const BetaWeights& w) {
                if ((x == 0.0 && w.a < 1.0) || (x == 1.0 && w.b < 1.0))
                    return std::numeric_limits<double>::infinity();
                return boost::math::pdf(boost::math::beta_distribution<double>(w.a, w.b), x);
            },
            [x](const TabulatedWeights& w) {
                auto it = std::upper_bound(w.x.begin(), w.x.end(), x);
                std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - w.x.begin()), w.x.size() - 1);
                i = std::max<std::size_t>(i, 1);
                return (w.cdf[i] - w.cdf[i - 1]) / (w.x[i] - w.x[i - 1]);
            },
            [x](const ThresholdStrengthWeights& w) -> double {
                if (w.rule != ThresholdStrengthWeights::Rule::Decay)
                    throw UnsupportedKindError("pdf: indicator strength weights are discrete");
                if (x >= 1.0)
                    return 0.0;
                const double log_alpha = std::log(w.parameter);
                const double strength = std::log1p(-x) / log_alpha;
                return strength_pdf(w.strength, strength) / ((1.0 - x) * -log_alpha);
            },
            [](const auto&) -> double { throw UnsupportedKindError("pdf: weight law is not continuous"); },
        },
        law_);
}

double WeightModel::cdf(double x) const {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    return std::visit(
        overloaded{
            [x](const UniformWeights&) { return x; },
            [x](const BetaWeights& w) { return boost::math::ibeta(w.a, w.b, x); },
            [x](const TabulatedWeights& w) {
                auto it = std::upper_bound(w.x.begin(), w.x.end(), x);
                const auto i = static_cast<std::size_t>(it - w.x.begin());
                const double t = (x - w.x[i - 1]) / (w.x[i] - w.x[i - 1]);
                return w.cdf[i - 1] + t * (w.cdf[i] - w.cdf[i - 1]);
            },
            [x](const ThresholdStrengthWeights& w) -> double {
                if (w.rule != ThresholdStrengthWeights::Rule::Decay)
                    throw UnsupportedKindError("cdf: indicator strength weights are discrete");
                return strength_cdf(w.strength, std::log1p(-x) / std::log(w.parameter));
            },
            [](const auto&) -> double { throw UnsupportedKindError("cdf: weight law is not continuous"); },
        },
        law_);
}

std::vector<double> WeightModel::breakpoints() const {
    if (const auto* table = std::get_if<TabulatedWeights>(&law_))
        return table->x;
    return {0.0, 1.0};
}

double mean_weight(const WeightModel& m) {
    return std::visit(
        overloaded{
            [](const UniformWeights&) { return 0.5; },
            [](const BetaWeights& w) { return w.a / (w.a + w.b); },
            [](const TabulatedWeights& w) {
                // E[W] = integral of the survival function; exact for linear pieces.
                double mean = 0.0;
                for (std::size_t i = 1; i < w.x.size(); ++i)
                    mean += (w.x[i] - w.x[i - 1]) * (1.0 - 0.5 * (w.cdf[i] + w.cdf[i - 1]));
                return mean;
            },
            [](const TwoPointWeights& w) { return w.mean(); },
            [](const ContactCountWeights& w) {
                // 1 - G_N(1 - p)
                const Eigen::ArrayXd& pmf = w.contacts.pmf();
                double pgf = 0.0;
                double power = 1.0;
                for (Eigen::Index n = 0; n < pmf.size(); ++n, power *= 1.0 - w.p)
                    pgf += pmf[n] * power;
                return 1.0 - pgf;
            },
            [](const ThresholdStrengthWeights& w) {
                const StrengthLaw& x = w.strength;
                if (w.rule == ThresholdStrengthWeights::Rule::Indicator)
                    return w.parameter <= 0.0 ? 1.0 : boost::math::gamma_q(x.shape, w.parameter / x.scale);
                // E[alpha^X] is the Laplace transform of X at -log(alpha).
                return 1.0 - std::pow(1.0 - x.scale * std::log(w.parameter), -x.shape);
            },
            [](const DegreeDependentWeights&) -> double {
                throw UnsupportedKindError("mean weight is undefined for degree-dependent weights");
            },
        },
        m.law());
}

double sample_weight(const WeightModel& m, Rng& rng) {
    return std::visit(
        overloaded{
            [&](const UniformWeights&) { return uniform01(rng); },
            [&](const BetaWeights& w) {
                const double x = std::gamma_distribution<double>(w.a, 1.0)(rng);
                const double y = std::gamma_distribution<double>(w.b, 1.0)(rng);
                return (x + y) > 0.0 ? x / (x + y) : (w.a >= w.b ? 1.0 : 0.0);
            },
            [&](const TabulatedWeights& w) {
                const double u = uniform01(rng);
                auto it = std::upper_bound(w.cdf.begin(), w.cdf.end(), u);
                auto i = static_cast<std::size_t>(it - w.cdf.begin());
                i = std::clamp<std::size_t>(i, 1, w.cdf.size() - 1);
                const double span = w.cdf[i] - w.cdf[i - 1];
                const double t = span > 0.0 ? (u - w.cdf[i - 1]) / span : 0.0;
                return std::clamp(w.x[i - 1] + t * (w.x[i] - w.x[i - 1]), 0.0, 1.0);
            },
            [&](const TwoPointWeights& w) { return uniform01(rng) < w.pa ? w.a : w.b; },
            [&](const ContactCountWeights& w) {
                const Eigen::ArrayXd& pmf = w.contacts.pmf();
                double u = uniform01(rng);
                Eigen::Index n = 0;
                for (; n + 1 < pmf.size(); ++n) {
                    u -= pmf[n];
                    if (u < 0.0)
                        break;
                }
                return 1.0 - std::pow(1.0 - w.p, static_cast<double>(n));
            },
            [&](const ThresholdStrengthWeights& w) {
                const double x = std::gamma_distribution<double>(w.strength.shape, w.strength.scale)(rng);
                if (w.rule == ThresholdStrengthWeights::Rule::Indicator)
                    return x >= w.parameter ? 1.0 : 0.0;
                return 1.0 - std::pow(w.parameter, x);
            },
            [](const DegreeDependentWeights&) -> double {
                throw UnsupportedKindError("degree-dependent weights are assigned from the graph, not sampled");
            },
        },
        m.law());
}

} // namespace vaxnet
