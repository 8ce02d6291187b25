#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vaxnet/degree_dist.hpp"
#include "vaxnet/weight_model.hpp"

namespace vaxnet {

using VertexId = std::uint32_t;

/// Entry for neighbor `id` in u's list: out_weight is W_(u,id), in_weight is W_(id,u).
struct Neighbor {
    VertexId id = 0;
    double out_weight = 0.0;
    double in_weight = 0.0;
};

struct GraphProvenance {
    std::uint64_t seed = 0;
    std::string degree_spec;
    std::string weight_spec;
};

/// Simple undirected graph with one weight per edge direction, stored as
/// sorted CSR neighbor runs. Immutable once built.
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(std::vector<std::size_t> offsets, std::vector<Neighbor> entries,
                  std::vector<int> stub_degrees, GraphProvenance provenance);

    std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const noexcept { return entries_.size() / 2; }

    std::span<const Neighbor> neighbors(VertexId u) const noexcept {
        return {entries_.data() + offsets_[u], entries_.data() + offsets_[u + 1]};
    }
    int degree(VertexId u) const noexcept { return static_cast<int>(offsets_[u + 1] - offsets_[u]); }

    /// Half-edge count D_u before self-loop erasure and multi-edge merging.
    int stub_degree(VertexId u) const noexcept { return stub_degrees_[u]; }

    const GraphProvenance& provenance() const noexcept { return provenance_; }

    std::size_t erased_self_loops = 0;
    std::size_t merged_multi_edges = 0;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> entries_;
    std::vector<int> stub_degrees_;
    GraphProvenance provenance_;
};

/// Configuration model on n vertices with i.i.d. degrees from `d`.
///
/// Half-edges are matched by a seeded uniform shuffle; an odd total gets one
/// extra half-edge at a uniformly chosen vertex. Self-loops are erased and
/// parallel edges merged (the first-created edge survives). Each surviving
/// direction then gets an independent weight from `w`, or g(D_u) for
/// degree-dependent weights, with D_u the pre-erasure half-edge count.
WeightedGraph generate(std::size_t n, const DegreeDist& d, const WeightModel& w, std::uint64_t seed);

/// Normalized histogram of post-erasure degrees.
DegreeDist empirical_degree_dist(const WeightedGraph& g);

/// Empty string when every structural and weight invariant holds; otherwise
/// a description of the first violation.
std::string check_invariants(const WeightedGraph& g);

/// Little-endian binary form: magic, n, seed, spec strings, then per vertex
/// (stub degree, neighbor count, (u32 neighbor, f64 out_weight)...).
void write_binary(const WeightedGraph& g, std::ostream& out);
WeightedGraph read_binary(std::istream& in);

/// `u,v,w_uv,w_vu` with u < v, one row per edge.
void write_edge_csv(const WeightedGraph& g, std::ostream& out);

} // namespace vaxnet
