#pragma once

#include <cstdint>
#include <vector>

#include "vaxnet/graph.hpp"
#include "vaxnet/vaccination.hpp"

namespace vaxnet {

struct EpidemicRun {
    std::uint64_t seed = 0;
    VertexId initial_case = 0;
    std::vector<std::size_t> generations;     // infected count per generation, generation 0 = initial case
    std::size_t final_size = 0;
    std::vector<VertexId> infected;             // in infection order, grouped by generation
    std::vector<std::uint32_t> gen2_offspring; // cases caused by each vertex the initial case infected
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

struct SimOptions {
    /// A run with final size >= outbreak_fraction * n counts as a large outbreak.
    double outbreak_fraction = 0.01;
    /// Worker threads; 0 uses the available hardware parallelism.
    unsigned threads = 0;
};

struct EnsembleStats {
    std::size_t runs = 0;
    double outbreak_prob = 0.0;
    Interval outbreak_ci;
    double mean_gen2_offspring = 0.0;
    double gen2_offspring_se = 0.0;
    Interval gen2_offspring_ci;
    std::size_t gen2_samples = 0;      // vertices whose offspring were counted
    std::size_t runs_reaching_gen2 = 0; // runs where the initial case infected someone
    double mean_final_fraction_given_outbreak = 0.0;
};

/// One Reed-Frost epidemic from a uniformly chosen unvaccinated vertex.
/// Generation t infects each susceptible unvaccinated neighbor v of each of
/// its members u with probability W_(u,v), then is removed.
EpidemicRun run_epidemic(const WeightedGraph& g, const VaccinationPlan& plan, std::uint64_t seed);

/// `runs` independent epidemics; run r uses stream r of master_seed, so the
/// result does not depend on the thread count.
EnsembleStats run_ensemble(const WeightedGraph& g, const VaccinationPlan& plan, std::size_t runs,
                           std::uint64_t master_seed, const SimOptions& opts = {});

struct REstimate {
    double value = 0.0;
    double se = 0.0;
    Interval ci;
    std::size_t samples = 0;
};

/// Pooled mean offspring of the initial case's victims. Throws
/// InsufficientSamplesError when fewer than `min_runs` runs reach them.
REstimate estimate_r(const WeightedGraph& g, const VaccinationPlan& plan, std::size_t runs,
                     std::uint64_t master_seed, const SimOptions& opts = {}, std::size_t min_runs = 200);

/// Same estimate from an already computed ensemble.
REstimate estimate_r(const EnsembleStats& stats, std::size_t min_runs = 200);

} // namespace vaxnet
