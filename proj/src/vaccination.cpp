#include "vaxnet/vaccination.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "vaxnet/error.hpp"
#include "vaxnet/order_stats.hpp"

namespace vaxnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Poisson(beta) terms past this are dropped from the sampling sums.
constexpr double kNegligible = 1e-18;

// Terms of the weight-based R below this are dropped; at most a few thousand
// degrees contribute, so the total error stays far below test tolerances.
constexpr double kTermCutoff = 1e-15;

double poisson_pmf(int i, double beta) {
    if (beta == 0.0)
        return i == 0 ? 1.0 : 0.0;
    return std::exp(i * std::log(beta) - beta - std::lgamma(i + 1.0));
}

// Smallest index past the mode whose Poisson(beta) mass is negligible.
int poisson_support_end(double beta) {
    int i = static_cast<int>(std::ceil(beta));
    while (poisson_pmf(i, beta) > kNegligible)
        ++i;
    return i;
}

// Poisson(beta) pmf over its non-negligible range with prefix sums of
// P(V=i) and i P(V=i), so that r_k costs O(1) per degree.
struct SamplingTable {
    std::vector<double> pmf;
    std::vector<double> mass_prefix; // sum_{i<m} P(V=i)
    std::vector<double> mean_prefix; // sum_{i<m} i P(V=i)

    explicit SamplingTable(double beta) {
        const int end = poisson_support_end(beta);
        pmf.resize(static_cast<std::size_t>(end));
        mass_prefix.assign(static_cast<std::size_t>(end) + 1, 0.0);
        mean_prefix.assign(static_cast<std::size_t>(end) + 1, 0.0);
        for (int i = 0; i < end; ++i) {
            const auto u = static_cast<std::size_t>(i);
            pmf[u] = poisson_pmf(i, beta);
            mass_prefix[u + 1] = mass_prefix[u] + pmf[u];
            mean_prefix[u + 1] = mean_prefix[u] + i * pmf[u];
        }
    }

    int end() const { return static_cast<int>(pmf.size()); }

    double r_k(int k) const {
        const auto m = static_cast<std::size_t>(std::min(k, end()));
        return mass_prefix[m] - mean_prefix[m] / k;
    }
};

void check_beta(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw ParameterError("sampling rate beta must be finite and non-negative");
}

void check_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw ParameterError(std::string(name) + " must lie in [0,1]");
}

// 1 - sum_j alpha^j p_j
double coverage_from_escape(const DegreeDist& d, double alpha) {
    double unvaccinated = 0.0;
    double power = 1.0;
    for (Eigen::Index j = 0; j < d.pmf().size(); ++j, power *= alpha)
        unvaccinated += d.pmf()[j] * power;
    return std::clamp(1.0 - unvaccinated, 0.0, 1.0);
}

const TwoPointWeights& require_two_point(const WeightModel& m) {
    const auto* w = std::get_if<TwoPointWeights>(&m.law());
    if (w == nullptr)
        throw StrategyMismatchError("two-point strategy needs two-point weights, got " + m.describe());
    return *w;
}

void require_continuous(const WeightModel& m) {
    if (!m.is_continuous())
        throw StrategyMismatchError("weight-based acquaintance strategy needs a continuous weight law, got " +
                                    m.describe());
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double target, double tol) {
    const double sign = f(lo) - target > 0.0 ? 1.0 : -1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = f(mid) - target;
        if (std::abs(g_mid) < tol || hi - lo < 1e-15 * std::max(1.0, hi))
            return mid;
        if (sign * g_mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::string to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::Uniform: return "uniform";
    case StrategyKind::AcqStandard: return "acq";
    case StrategyKind::AcqWeightContinuous: return "weight";
    case StrategyKind::WeightTwoPoint: return "twopoint";
    }
    return "unknown";
}

StrategyKind strategy_from_string(const std::string& name) {
    if (name == "uniform")
        return StrategyKind::Uniform;
    if (name == "acq" || name == "acquaintance")
        return StrategyKind::AcqStandard;
    if (name == "weight")
        return StrategyKind::AcqWeightContinuous;
    if (name == "twopoint")
        return StrategyKind::WeightTwoPoint;
    throw ParameterError("unknown strategy '" + name + "' (expected uniform, acq, weight or twopoint)");
}

void StrategySpec::validate(const WeightModel& m) const {
    switch (kind) {
    case StrategyKind::Uniform: check_unit(parameter, "vaccination probability v"); break;
    case StrategyKind::AcqStandard: check_beta(parameter); break;
    case StrategyKind::AcqWeightContinuous:
        check_beta(parameter);
        require_continuous(m);
        break;
    case StrategyKind::WeightTwoPoint:
        check_unit(parameter, "sampling probability s");
        require_two_point(m);
        break;
    }
}

VaccinationPlan empty_plan(std::size_t n) {
    VaccinationPlan plan;
    plan.mask.assign(n, 0);
    return plan;
}

double coverage_uniform(double v) {
    check_unit(v, "vaccination probability v");
    return v;
}

double r_uniform(const DegreeDist& d, double gamma, double v) {
    check_unit(v, "vaccination probability v");
    return (1.0 - v) * gamma * excess_mean(d);
}

double escape_prob_given_degree(int k, double beta) {
    check_beta(beta);
    if (k < 1)
        throw ParameterError("escape probability needs degree >= 1");
    const int end = std::min(k, poisson_support_end(beta));
    double r = 0.0;
    for (int i = 0; i < end; ++i)
        r += poisson_pmf(i, beta) * (1.0 - static_cast<double>(i) / k);
    return r;
}

double escape_prob_weighted(const DegreeDist& d, double beta) {
    check_beta(beta);
    const SizeBiasedDist biased = size_bias(d);
    const SamplingTable sampling(beta);
    double alpha = 0.0;
    for (int k = 1; k <= biased.cutoff(); ++k)
        alpha += sampling.r_k(k) * biased[k];
    return alpha;
}

double coverage_weighted(const DegreeDist& d, double beta) {
    if (beta == 0.0)
        return 0.0;
    return coverage_from_escape(d, escape_prob_weighted(d, beta));
}

std::vector<double> conditional_sampling_law(int k, double beta) {
    const double r_k = escape_prob_given_degree(k, beta);
    std::vector<double> law(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        law[static_cast<std::size_t>(i)] = (1.0 - static_cast<double>(i) / k) * poisson_pmf(i, beta) / r_k;
    return law;
}

double expected_dangerous_edges(const WeightModel& m, int k, int i) {
    if (k < 1 || i < 0 || i >= k)
        throw ParameterError("dangerous-edge mean needs 0 <= i < k");
    const int remaining = k - i;
    if (std::holds_alternative<UniformWeights>(m.law()))
        return static_cast<double>(remaining - 1) * (remaining + 1) / (2.0 * (k + 1));
    return (1.0 - 1.0 / remaining) * partial_sum_order_means(m, k, remaining);
}

double r_weighted(const DegreeDist& d, const WeightModel& m, double beta) {
    check_beta(beta);
    require_continuous(m);
    const SizeBiasedDist biased = size_bias(d);
    const double alpha = escape_prob_weighted(d, beta);
    const SamplingTable sampling(beta);

    double r = 0.0;
    double alpha_power = alpha; // alpha^(k-1)
    for (int k = 2; k <= biased.cutoff(); ++k, alpha_power *= alpha) {
        if (biased[k] == 0.0)
            continue;
        const double r_k = sampling.r_k(k);
        const double degree_given_a = r_k * biased[k] / alpha;
        // E[H | i] <= k - 1 bounds every term below.
        const double term_bound = degree_given_a * alpha_power * (k - 1);
        if (term_bound < kTermCutoff)
            continue;
        double dangerous = 0.0;
        for (int i = 0; i <= std::min(k - 2, sampling.end() - 1); ++i) {
            const double p_i = (1.0 - static_cast<double>(i) / k) * sampling.pmf[static_cast<std::size_t>(i)] / r_k;
            if (p_i * term_bound < kTermCutoff)
                continue;
            dangerous += p_i * expected_dangerous_edges(m, k, i);
        }
        r += degree_given_a * alpha_power * dangerous;
    }
    return r;
}

double escape_prob_standard(const DegreeDist& d, double beta) {
    check_beta(beta);
    const SizeBiasedDist biased = size_bias(d);
    double alpha = 0.0;
    for (int k = 1; k <= biased.cutoff(); ++k)
        alpha += std::exp(-beta / k) * biased[k];
    return alpha;
}

double coverage_standard(const DegreeDist& d, double beta) {
    if (beta == 0.0)
        return 0.0;
    return coverage_from_escape(d, escape_prob_standard(d, beta));
}

double r_acq_standard(const DegreeDist& d, double gamma, double beta) {
    check_unit(gamma, "mean weight gamma");
    const SizeBiasedDist biased = size_bias(d);
    const double alpha = escape_prob_standard(d, beta);
    double sum = 0.0;
    double alpha_power = 1.0; // alpha^(k-2)
    for (int k = 2; k <= biased.cutoff(); ++k, alpha_power *= alpha)
        sum += (k - 1) * alpha_power * std::exp(-2.0 * beta / k) * biased[k];
    return gamma * sum;
}

double escape_prob_twopoint(const TwoPointWeights& w, double s) {
    check_unit(s, "sampling probability s");
    return 1.0 - s * w.pb();
}

double coverage_twopoint(const DegreeDist& d, const TwoPointWeights& w, double s) {
    if (s == 0.0)
        return 0.0;
    return coverage_from_escape(d, escape_prob_twopoint(w, s));
}

double r_twopoint(const DegreeDist& d, const TwoPointWeights& w, double s) {
    check_unit(s, "sampling probability s");
    if (!(w.a <= w.b) || w.a < 0.0 || w.b > 1.0)
        throw ParameterError("two-point weights need 0 <= a <= b <= 1");
    check_unit(w.pa, "two-point probability pa");
    const SizeBiasedDist biased = size_bias(d);
    const double alpha = escape_prob_twopoint(w, s);
    if (alpha <= 0.0)
        return 0.0; // every vertex with a neighbor is vaccinated
    const double nu = w.pa * s / alpha;
    double sum = 0.0;
    double alpha_power = alpha; // alpha^(k-1)
    for (int k = 2; k <= biased.cutoff(); ++k, alpha_power *= alpha)
        sum += biased[k] * alpha_power * (k - 1);
    return (nu * w.a * w.pa + (1.0 - nu) * w.mean()) * sum;
}

StrategyPoint evaluate(const StrategySpec& spec, const DegreeDist& d, const WeightModel& m) {
    spec.validate(m);
    const double p = spec.parameter;
    switch (spec.kind) {
    case StrategyKind::Uniform: return {r_uniform(d, mean_weight(m), p), coverage_uniform(p)};
    case StrategyKind::AcqStandard: return {r_acq_standard(d, mean_weight(m), p), coverage_standard(d, p)};
    case StrategyKind::AcqWeightContinuous: return {r_weighted(d, m, p), coverage_weighted(d, p)};
    case StrategyKind::WeightTwoPoint: {
        const auto& w = require_two_point(m);
        return {r_twopoint(d, w, p), coverage_twopoint(d, w, p)};
    }
    }
    return {};
}

double parameter_limit(StrategyKind kind, const CriticalOptions& opts) {
    switch (kind) {
    case StrategyKind::Uniform:
    case StrategyKind::WeightTwoPoint: return 1.0;
    case StrategyKind::AcqStandard:
    case StrategyKind::AcqWeightContinuous: return opts.beta_max;
    }
    return 1.0;
}

CriticalResult critical_coverage(StrategyKind kind, const DegreeDist& d, const WeightModel& m,
                                 const CriticalOptions& opts) {
    const auto at = [&](double p) { return evaluate({kind, p}, d, m); };
    double lo = 0.0;
    double hi = parameter_limit(kind, opts);
    StrategyPoint p_lo = at(lo);
    if (p_lo.r <= 1.0)
        return {true, 0.0, 0.0, p_lo.r};
    StrategyPoint p_hi = at(hi);
    if (p_hi.r > 1.0)
        return {false, p_hi.coverage, hi, p_hi.r};

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const StrategyPoint p_mid = at(mid);
        const double slack = 1e-12 * std::max(1.0, p_lo.r);
        if (p_mid.r > p_lo.r + slack || p_mid.r < p_hi.r - slack)
            throw NonMonotoneError(to_string(kind) + ": R is not decreasing in the strategy parameter near " +
                                   std::to_string(mid));
        if (std::abs(p_mid.r - 1.0) < opts.tol || hi - lo < 1e-15 * std::max(1.0, hi))
            return {true, p_mid.coverage, mid, p_mid.r};
        if (p_mid.r > 1.0) {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
            p_hi = p_mid;
        }
    }
    const double mid = 0.5 * (lo + hi);
    const StrategyPoint p_mid = at(mid);
    return {true, p_mid.coverage, mid, p_mid.r};
}

std::optional<double> parameter_for_coverage(StrategyKind kind, const DegreeDist& d, const WeightModel& m,
                                             double coverage, const CriticalOptions& opts) {
    check_unit(coverage, "coverage");
    if (kind == StrategyKind::Uniform)
        return coverage;
    if (coverage == 0.0)
        return 0.0;
    const double hi = parameter_limit(kind, opts);
    const auto cov = [&](double p) { return evaluate({kind, p}, d, m).coverage; };
    if (cov(hi) < coverage)
        return std::nullopt;
    return find_root(cov, 0.0, hi, coverage, 1e-13);
}

std::optional<double> parameter_for_r(StrategyKind kind, const DegreeDist& d, const WeightModel& m,
                                      double target_r, const CriticalOptions& opts) {
    const double hi = parameter_limit(kind, opts);
    const auto r = [&](double p) { return evaluate({kind, p}, d, m).r; };
    const double r_lo = r(0.0);
    const double r_hi = r(hi);
    if (target_r > r_lo || target_r < r_hi)
        return std::nullopt;
    return find_root(r, 0.0, hi, target_r, 1e-12);
}

std::vector<CoverageRow> coverage_sweep(const DegreeDist& d, const WeightModel& m, std::span<const double> coverages,
                                        const CriticalOptions& opts) {
    std::optional<StrategyKind> weight_kind;
    if (m.is_continuous())
        weight_kind = StrategyKind::AcqWeightContinuous;
    else if (m.is_two_point())
        weight_kind = StrategyKind::WeightTwoPoint;

    const auto r_at_coverage = [&](StrategyKind kind, double c) {
        const auto p = parameter_for_coverage(kind, d, m, c, opts);
        return p ? evaluate({kind, *p}, d, m).r : kNaN;
    };

    std::vector<CoverageRow> rows;
    rows.reserve(coverages.size());
    for (double c : coverages) {
        CoverageRow row;
        row.coverage = c;
        row.r_uniform = r_at_coverage(StrategyKind::Uniform, c);
        row.r_acq = r_at_coverage(StrategyKind::AcqStandard, c);
        row.r_weight = weight_kind ? r_at_coverage(*weight_kind, c) : kNaN;
        rows.push_back(row);
    }
    return rows;
}

VaccinationPlan apply_plan(const WeightedGraph& g, const WeightModel& m, const StrategySpec& spec,
                           std::uint64_t seed) {
    spec.validate(m);
    const std::size_t n = g.num_vertices();
    VaccinationPlan plan = empty_plan(n);
    plan.strategy = spec;
    Rng rng(seed);
    std::size_t sampled = 0;

    switch (spec.kind) {
    case StrategyKind::Uniform: {
        std::bernoulli_distribution coin(spec.parameter);
        for (std::size_t u = 0; u < n; ++u)
            if (coin(rng)) {
                plan.mask[u] = 1;
                ++sampled;
            }
        break;
    }
    case StrategyKind::AcqStandard: {
        std::poisson_distribution<int> times(spec.parameter > 0.0 ? spec.parameter : 1.0);
        for (VertexId u = 0; u < n; ++u) {
            const int count = spec.parameter > 0.0 ? times(rng) : 0;
            if (count == 0)
                continue;
            ++sampled;
            const auto run = g.neighbors(u);
            if (run.empty())
                continue;
            std::uniform_int_distribution<std::size_t> pick(0, run.size() - 1);
            for (int c = 0; c < count; ++c)
                plan.mask[run[pick(rng)].id] = 1;
        }
        break;
    }
    case StrategyKind::AcqWeightContinuous: {
        std::poisson_distribution<int> times(spec.parameter > 0.0 ? spec.parameter : 1.0);
        std::vector<Neighbor> ranked;
        for (VertexId u = 0; u < n; ++u) {
            const int count = spec.parameter > 0.0 ? times(rng) : 0;
            if (count == 0)
                continue;
            ++sampled;
            const auto run = g.neighbors(u);
            if (run.empty())
                continue;
            const auto take = std::min<std::size_t>(static_cast<std::size_t>(count), run.size());
            ranked.assign(run.begin(), run.end());
            // Largest out-weight first; ties (float collisions only) by id.
            std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(),
                              [](const Neighbor& a, const Neighbor& b) {
                                  return a.out_weight != b.out_weight ? a.out_weight > b.out_weight : a.id < b.id;
                              });
            for (std::size_t i = 0; i < take; ++i)
                plan.mask[ranked[i].id] = 1;
        }
        break;
    }
    case StrategyKind::WeightTwoPoint: {
        const double b = require_two_point(m).b;
        std::bernoulli_distribution coin(spec.parameter);
        for (VertexId u = 0; u < n; ++u) {
            if (!coin(rng))
                continue;
            ++sampled;
            for (const Neighbor& e : g.neighbors(u))
                if (e.out_weight == b)
                    plan.mask[e.id] = 1;
        }
        break;
    }
    }

    const auto vaccinated = static_cast<std::size_t>(std::count(plan.mask.begin(), plan.mask.end(), 1));
    plan.realized_coverage = n == 0 ? 0.0 : static_cast<double>(vaccinated) / static_cast<double>(n);
    plan.sampled_fraction = n == 0 ? 0.0 : static_cast<double>(sampled) / static_cast<double>(n);
    return plan;
}

std::vector<SampledFractionRow> sampled_fraction_curve(const DegreeDist& d, const WeightModel& m, StrategyKind kind,
                                                       std::span<const double> parameters, const CurveOptions& opts) {
    if (opts.replicates == 0)
        throw ParameterError("sampled-fraction curve needs at least one replicate");
    std::vector<SampledFractionRow> rows(parameters.size());
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        StrategySpec{kind, parameters[i]}.validate(m);
        rows[i].strategy = kind;
        rows[i].parameter = parameters[i];
    }
    for (std::size_t rep = 0; rep < opts.replicates; ++rep) {
        const std::uint64_t graph_seed = splitmix64(opts.seed ^ (0x6a09e667f3bcc909ULL + rep));
        const WeightedGraph g = generate(opts.n, d, m, graph_seed);
        for (std::size_t i = 0; i < parameters.size(); ++i) {
            const VaccinationPlan plan = apply_plan(g, m, {kind, parameters[i]}, splitmix64(graph_seed + i + 1));
            rows[i].sampled_fraction += plan.sampled_fraction / static_cast<double>(opts.replicates);
            rows[i].coverage += plan.realized_coverage / static_cast<double>(opts.replicates);
        }
    }
    return rows;
}

} // namespace vaxnet
