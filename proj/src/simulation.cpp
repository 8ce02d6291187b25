#include "vaxnet/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "vaxnet/error.hpp"

namespace vaxnet {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Per-worker buffers reused across runs. A vertex is infected in the current
// run iff stamp[v] == epoch, so resetting costs O(1).
class Workspace {
public:
    explicit Workspace(std::size_t n) : stamp_(n, 0) {}

    void begin_run() {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
    }

    bool infected(VertexId v) const { return stamp_[v] == epoch_; }
    void infect(VertexId v) { stamp_[v] = epoch_; }

    std::vector<VertexId> current;
    std::vector<VertexId> next;

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

std::vector<VertexId> unvaccinated_vertices(const VaccinationPlan& plan) {
    std::vector<VertexId> out;
    for (std::size_t u = 0; u < plan.mask.size(); ++u)
        if (!plan.mask[u])
            out.push_back(static_cast<VertexId>(u));
    return out;
}

EpidemicRun simulate(const WeightedGraph& g, const VaccinationPlan& plan, const std::vector<VertexId>& roots,
                     std::uint64_t seed, Workspace& ws) {
    Rng rng(seed);
    ws.begin_run();
    EpidemicRun run;
    run.seed = seed;
    run.initial_case = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];

    ws.current.clear();
    ws.current.push_back(run.initial_case);
    ws.infect(run.initial_case);
    run.infected.push_back(run.initial_case);
    run.generations.push_back(1);
    run.final_size = 1;

    for (std::size_t t = 0; !ws.current.empty(); ++t) {
        ws.next.clear();
        for (const VertexId u : ws.current) {
            std::uint32_t caused = 0;
            for (const Neighbor& e : g.neighbors(u)) {
                if (plan.mask[e.id] || ws.infected(e.id))
                    continue;
                if (uniform01(rng) < e.out_weight) {
                    ws.infect(e.id);
                    ws.next.push_back(e.id);
                    run.infected.push_back(e.id);
                    ++caused;
                }
            }
            if (t == 1)
                run.gen2_offspring.push_back(caused);
        }
        if (!ws.next.empty()) {
            run.generations.push_back(ws.next.size());
            run.final_size += ws.next.size();
        }
        std::swap(ws.current, ws.next);
    }
    return run;
}

void check_plan(const WeightedGraph& g, const VaccinationPlan& plan) {
    if (plan.mask.size() != g.num_vertices())
        throw ParameterError("vaccination plan does not match the graph size");
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
    unsigned threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
}

} // namespace

EpidemicRun run_epidemic(const WeightedGraph& g, const VaccinationPlan& plan, std::uint64_t seed) {
    check_plan(g, plan);
    const std::vector<VertexId> roots = unvaccinated_vertices(plan);
    if (roots.empty())
        throw ParameterError("every vertex is vaccinated; no initial case available");
    Workspace ws(g.num_vertices());
    return simulate(g, plan, roots, seed, ws);
}

EnsembleStats run_ensemble(const WeightedGraph& g, const VaccinationPlan& plan, std::size_t runs,
                           std::uint64_t master_seed, const SimOptions& opts) {
    check_plan(g, plan);
    if (runs == 0)
        throw ParameterError("an ensemble needs at least one run");
    const std::vector<VertexId> roots = unvaccinated_vertices(plan);
    if (roots.empty())
        throw ParameterError("every vertex is vaccinated; no initial case available");

    const std::size_t n = g.num_vertices();
    const auto outbreak_size = static_cast<std::size_t>(std::ceil(opts.outbreak_fraction * static_cast<double>(n)));

    // Only the per-run summaries are kept; aggregation below walks them in run order.
    struct Summary {
        std::size_t final_size = 0;
        std::size_t gen2_count = 0;
        std::uint64_t gen2_total = 0;
    };
    std::vector<Summary> summaries(runs);
    std::atomic<std::size_t> next_run{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto work = [&] {
        Workspace ws(n);
        try {
            for (std::size_t r = next_run++; r < runs; r = next_run++) {
                const EpidemicRun run = simulate(g, plan, roots, stream_seed(master_seed, r), ws);
                Summary& s = summaries[r];
                s.final_size = run.final_size;
                s.gen2_count = run.gen2_offspring.size();
                for (std::uint32_t c : run.gen2_offspring)
                    s.gen2_total += c;
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            failure = std::current_exception();
            next_run = runs;
        }
    };

    const unsigned threads = worker_count(opts.threads, runs);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);

    EnsembleStats stats;
    stats.runs = runs;
    std::size_t outbreaks = 0;
    double outbreak_fraction_sum = 0.0;
    std::uint64_t offspring_total = 0;
    for (const Summary& s : summaries) {
        if (s.final_size >= outbreak_size) {
            ++outbreaks;
            outbreak_fraction_sum += static_cast<double>(s.final_size) / static_cast<double>(n);
        }
        stats.gen2_samples += s.gen2_count;
        offspring_total += s.gen2_total;
        if (s.gen2_count > 0)
            ++stats.runs_reaching_gen2;
    }

    const double m = static_cast<double>(runs);
    stats.outbreak_prob = static_cast<double>(outbreaks) / m;
    const double outbreak_half = kZ95 * std::sqrt(stats.outbreak_prob * (1.0 - stats.outbreak_prob) / m);
    stats.outbreak_ci = {std::max(0.0, stats.outbreak_prob - outbreak_half),
                         std::min(1.0, stats.outbreak_prob + outbreak_half)};
    stats.mean_final_fraction_given_outbreak = outbreaks > 0 ? outbreak_fraction_sum / static_cast<double>(outbreaks) : 0.0;

    // Ratio estimator over runs: offspring of one run share a graph
    // neighborhood, so the run is the independent unit.
    if (stats.gen2_samples > 0) {
        const double total_samples = static_cast<double>(stats.gen2_samples);
        const double mean = static_cast<double>(offspring_total) / total_samples;
        double residual = 0.0;
        for (const Summary& s : summaries) {
            const double dev = static_cast<double>(s.gen2_total) - mean * static_cast<double>(s.gen2_count);
            residual += dev * dev;
        }
        const double se = runs > 1 ? std::sqrt(m / (m - 1.0) * residual) / total_samples : 0.0;
        stats.mean_gen2_offspring = mean;
        stats.gen2_offspring_se = se;
        stats.gen2_offspring_ci = {mean - kZ95 * se, mean + kZ95 * se};
    }
    return stats;
}

REstimate estimate_r(const EnsembleStats& stats, std::size_t min_runs) {
    if (stats.runs_reaching_gen2 < min_runs)
        throw InsufficientSamplesError("only " + std::to_string(stats.runs_reaching_gen2) + " of " +
                                       std::to_string(stats.runs) + " runs produced second-generation cases; " +
                                       std::to_string(min_runs) + " required");
    return {stats.mean_gen2_offspring, stats.gen2_offspring_se, stats.gen2_offspring_ci, stats.gen2_samples};
}

REstimate estimate_r(const WeightedGraph& g, const VaccinationPlan& plan, std::size_t runs,
                     std::uint64_t master_seed, const SimOptions& opts, std::size_t min_runs) {
    return estimate_r(run_ensemble(g, plan, runs, master_seed, opts), min_runs);
}

} // namespace vaxnet
