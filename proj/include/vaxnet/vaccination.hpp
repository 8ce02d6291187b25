#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vaxnet/degree_dist.hpp"
#include "vaxnet/graph.hpp"
#include "vaxnet/weight_model.hpp"

namespace vaxnet {

enum class StrategyKind {
    Uniform,             // vaccinate each vertex with probability v
    AcqStandard,         // Po(beta) samples per vertex, each names a random neighbor
    AcqWeightContinuous, // Po(beta) samples name the neighbors with the largest out-weights
    WeightTwoPoint,      // with probability s, name every neighbor on a weight-b edge
};

std::string to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& name);

struct StrategySpec {
    StrategyKind kind = StrategyKind::Uniform;
    double parameter = 0.0; // v, beta or s

    /// Domain of the parameter, plus weight-law compatibility.
    void validate(const WeightModel& m) const;
};

struct VaccinationPlan {
    StrategySpec strategy;
    std::vector<std::uint8_t> mask; // 1 = vaccinated
    double realized_coverage = 0.0;
    double sampled_fraction = 0.0;

    bool vaccinated(VertexId u) const noexcept { return mask[u] != 0; }
};

/// The no-vaccination plan on an n-vertex graph.
VaccinationPlan empty_plan(std::size_t n);

// --- uniform vaccination ---------------------------------------------------

double coverage_uniform(double v);
double r_uniform(const DegreeDist& d, double gamma, double v);

// --- weight-based acquaintance vaccination, continuous weights -------------

/// r_k: probability that a degree-k vertex sampled Po(beta) times does not
/// name a given neighbor when it names its i largest-weight neighbors.
double escape_prob_given_degree(int k, double beta);

/// alpha = sum_k r_k p~_k.
double escape_prob_weighted(const DegreeDist& d, double beta);
double coverage_weighted(const DegreeDist& d, double beta);

/// P_{A,k}(V_w = i) for i = 0..k-1.
std::vector<double> conditional_sampling_law(int k, double beta);

/// E_{A,k}[H | V_w = i]: expected dangerous out-edges of a degree-k vertex
/// sampled i times, excluding the edge back to its infector.
double expected_dangerous_edges(const WeightModel& m, int k, int i);

double r_weighted(const DegreeDist& d, const WeightModel& m, double beta);

// --- standard acquaintance vaccination -------------------------------------

double escape_prob_standard(const DegreeDist& d, double beta);
double coverage_standard(const DegreeDist& d, double beta);
double r_acq_standard(const DegreeDist& d, double gamma, double beta);

// --- two-point weight strategy ----------------------------------------------

double escape_prob_twopoint(const TwoPointWeights& w, double s);
double coverage_twopoint(const DegreeDist& d, const TwoPointWeights& w, double s);
/// Accepts a == b (constant weight) as a degenerate two-point law.
double r_twopoint(const DegreeDist& d, const TwoPointWeights& w, double s);

// --- strategy families --------------------------------------------------------

struct StrategyPoint {
    double r = 0.0;
    double coverage = 0.0;
};

/// R and analytic coverage for one strategy at one parameter value.
StrategyPoint evaluate(const StrategySpec& spec, const DegreeDist& d, const WeightModel& m);

struct CriticalOptions {
    double tol = 1e-6;
    double beta_max = 50.0;
};

/// Upper end of the parameter range: 1 for v and s, beta_max for beta.
double parameter_limit(StrategyKind kind, const CriticalOptions& opts = {});

struct CriticalResult {
    bool reachable = true;
    double coverage = 0.0;
    double parameter = 0.0;
    double r = 0.0;
};

/// Smallest coverage that brings R down to 1, found by bisection on the
/// strategy parameter. Zero when R <= 1 without vaccination; unreachable when
/// R > 1 at the top of the parameter range. Throws NonMonotoneError if R is
/// seen increasing inside the bracket.
CriticalResult critical_coverage(StrategyKind kind, const DegreeDist& d, const WeightModel& m,
                                 const CriticalOptions& opts = {});

/// Parameter value whose analytic coverage equals `coverage`, if reachable.
std::optional<double> parameter_for_coverage(StrategyKind kind, const DegreeDist& d, const WeightModel& m,
                                             double coverage, const CriticalOptions& opts = {});

/// Parameter value whose analytic R equals `target_r`, if reachable.
std::optional<double> parameter_for_r(StrategyKind kind, const DegreeDist& d, const WeightModel& m,
                                      double target_r, const CriticalOptions& opts = {});

struct CoverageRow {
    double coverage = 0.0;
    double r_uniform = 0.0;
    double r_acq = 0.0;
    double r_weight = 0.0; // NaN where the weight strategy cannot reach this coverage
};

/// Reproduction numbers of the three strategies at equal coverage. The weight
/// column uses the continuous strategy for continuous laws and the two-point
/// strategy for two-point laws. Unreachable cells are NaN.
std::vector<CoverageRow> coverage_sweep(const DegreeDist& d, const WeightModel& m, std::span<const double> coverages,
                                        const CriticalOptions& opts = {});

// --- concrete plans -------------------------------------------------------------

/// Applies a strategy to a generated graph. `m` must be the law the graph's
/// weights were drawn from. Vertices named more than once are vaccinated once.
VaccinationPlan apply_plan(const WeightedGraph& g, const WeightModel& m, const StrategySpec& spec,
                           std::uint64_t seed);

struct SampledFractionRow {
    double sampled_fraction = 0.0;
    double coverage = 0.0;
    StrategyKind strategy = StrategyKind::AcqStandard;
    double parameter = 0.0;
};

struct CurveOptions {
    std::size_t n = 20000;
    std::size_t replicates = 4;
    std::uint64_t seed = 1;
};

/// Sampled fraction against realized coverage, averaged over replicate graphs.
std::vector<SampledFractionRow> sampled_fraction_curve(const DegreeDist& d, const WeightModel& m, StrategyKind kind,
                                                       std::span<const double> parameters,
                                                       const CurveOptions& opts = {});

} // namespace vaxnet
