#include "vaxnet/thresholds.hpp"

#include "vaxnet/error.hpp"

namespace vaxnet {

namespace {

Eigen::ArrayXd g_table(const WeightFunctionG& g, Eigen::Index size) {
    Eigen::ArrayXd values(size);
    for (Eigen::Index k = 0; k < size; ++k)
        values[k] = eval_g(g, static_cast<int>(k));
    return values;
}

void require_positive_mean(const DegreeDist& d) {
    if (!(d.mean() > 0.0))
        throw ParameterError("reproduction numbers need a positive mean degree");
}

} // namespace

std::string to_string(Regime r) {
    switch (r) {
    case Regime::IidWeights: return "iid_weights";
    case Regime::DegreeDep: return "degree_dep";
    case Regime::DegreeDepH1: return "degree_dep_h1";
    case Regime::DegreeDepH2: return "degree_dep_h2";
    }
    return "unknown";
}

double r0_iid(const DegreeDist& d, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ParameterError("mean weight gamma must lie in [0,1]");
    return gamma * excess_mean(d);
}

double r0_degree_dep(const DegreeDist& d, const WeightFunctionG& g) {
    require_positive_mean(d);
    const SizeBiasedDist biased = size_bias(d);
    const Eigen::ArrayXd k = d.support();
    return ((k - 1.0) * g_table(g, k.size()) * biased.pmf).sum();
}

double r0_h1(const DegreeDist& d, const WeightFunctionG& g) {
    require_positive_mean(d);
    const SizeBiasedDist biased = size_bias(d);
    return (g_table(g, biased.pmf.size()) * biased.pmf).sum() * excess_mean(d);
}

double r0_h2(const DegreeDist& d, const WeightFunctionG& g) {
    require_positive_mean(d);
    return excess_mean(d) * (g_table(g, d.pmf().size()) * d.pmf()).sum();
}

ThresholdReport threshold_report(const DegreeDist& d, const WeightModel& m) {
    ThresholdReport report;
    report.degree_spec = d.label();
    report.weight_spec = m.describe();
    if (const auto* dep = std::get_if<DegreeDependentWeights>(&m.law())) {
        report.r0 = r0_degree_dep(d, dep->g);
        report.regime = Regime::DegreeDep;
    } else {
        report.r0 = r0_iid(d, mean_weight(m));
        report.regime = Regime::IidWeights;
    }
    return report;
}

std::vector<TauRow> sweep_tau(const DegreeDist& d, std::span<const double> taus) {
    std::vector<TauRow> rows;
    rows.reserve(taus.size());
    for (double tau : taus) {
        const auto g = WeightFunctionG::power_decay(tau);
        rows.push_back({tau, r0_h2(d, g), r0_h1(d, g), r0_degree_dep(d, g)});
    }
    return rows;
}

} // namespace vaxnet
