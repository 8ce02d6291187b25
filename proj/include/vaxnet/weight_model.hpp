#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vaxnet/degree_dist.hpp"
#include "vaxnet/rng.hpp"

namespace vaxnet {

struct UniformWeights {};

struct BetaWeights {
    double a = 1.0;
    double b = 1.0;
};

/// Custom continuous law given by a piecewise-linear CDF on [0,1].
struct TabulatedWeights {
    std::vector<double> x;   // strictly increasing, x.front() == 0, x.back() == 1
    std::vector<double> cdf; // non-decreasing, cdf.front() == 0, cdf.back() == 1
};

/// W = a with probability pa, W = b otherwise.
struct TwoPointWeights {
    double a = 0.0;
    double b = 1.0;
    double pa = 0.5;

    double pb() const noexcept { return 1.0 - pa; }
    double mean() const noexcept { return a * pa + b * pb(); }
};

/// W = 1 - (1 - p)^N with N the number of contacts along the edge.
struct ContactCountWeights {
    DegreeDist contacts;
    double p = 0.0;
};

/// Law of the connection strength X used by ThresholdStrengthWeights.
struct StrengthLaw {
    enum class Kind { Exponential, Gamma };
    Kind kind = Kind::Exponential;
    double shape = 1.0; // Gamma shape; 1 for Exponential
    double scale = 1.0; // 1/rate
};

/// W = 1{X >= theta} (Indicator) or W = 1 - alpha^X (Decay).
struct ThresholdStrengthWeights {
    enum class Rule { Indicator, Decay };
    StrengthLaw strength;
    Rule rule = Rule::Indicator;
    double parameter = 0.0; // theta or alpha
};

/// Per-vertex transmission probability g(degree).
struct WeightFunctionG {
    enum class Form { IndicatorGe, GeometricDecay, PowerDecay, Table };
    Form form = Form::IndicatorGe;
    double parameter = 0.0;    // theta, alpha or tau
    std::vector<double> table; // g(k) for k < table.size(); last entry repeats beyond

    static WeightFunctionG indicator_ge(int theta);
    static WeightFunctionG geometric_decay(double alpha);
    static WeightFunctionG power_decay(double tau);
    static WeightFunctionG tabulated(std::vector<double> values);

    /// Throws ParameterError for out-of-domain parameters.
    void validate() const;
    std::string describe() const;
};

/// W_(u,v) = g(D_u).
struct DegreeDependentWeights {
    WeightFunctionG g;
};

using WeightLaw = std::variant<UniformWeights, BetaWeights, TabulatedWeights, TwoPointWeights,
                               ContactCountWeights, ThresholdStrengthWeights, DegreeDependentWeights>;

/// Law of a directed edge weight W in [0,1].
class WeightModel {
public:
    WeightModel() = default;
    /// Validates parameters; throws ParameterError.
    WeightModel(WeightLaw law); // NOLINT(google-explicit-constructor)

    const WeightLaw& law() const noexcept { return law_; }

    /// Absolutely continuous on [0,1]: ties between weights have probability zero.
    bool is_continuous() const noexcept;
    bool is_degree_dependent() const noexcept;
    bool is_two_point() const noexcept;

    /// Canonical text form; doubles as the memoization key in order_stats.
    std::string describe() const;

    // Continuous kinds only; UnsupportedKindError otherwise.
    double pdf(double x) const;
    double cdf(double x) const;
    /// Points where pdf is not smooth, including 0 and 1.
    std::vector<double> breakpoints() const;

private:
    WeightLaw law_ = UniformWeights{};
};

/// gamma = E[W]. UnsupportedKindError for degree-dependent weights.
double mean_weight(const WeightModel& m);

double sample_weight(const WeightModel& m, Rng& rng);

double eval_g(const WeightFunctionG& g, int degree);

} // namespace vaxnet
