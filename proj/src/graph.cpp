#include "vaxnet/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include "vaxnet/error.hpp"

namespace vaxnet {

namespace {

struct RawEdge {
    VertexId u;
    VertexId v;
};

// Directed half of an edge, keyed for the merge pass.
struct Arc {
    VertexId from;
    VertexId to;
    std::uint32_t edge;
};

constexpr std::array<char, 4> kMagic{'V', 'X', 'G', '1'};

template <class T>
void put(std::ostream& out, T value) {
    static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in)
        throw ParseError("truncated graph file");
    return value;
}

void put_string(std::ostream& out, const std::string& s) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
    const auto size = get<std::uint32_t>(in);
    std::string s(size, '\0');
    in.read(s.data(), size);
    if (!in)
        throw ParseError("truncated graph file");
    return s;
}

} // namespace

WeightedGraph::WeightedGraph(std::vector<std::size_t> offsets, std::vector<Neighbor> entries,
                             std::vector<int> stub_degrees, GraphProvenance provenance)
    : offsets_(std::move(offsets)),
      entries_(std::move(entries)),
      stub_degrees_(std::move(stub_degrees)),
      provenance_(std::move(provenance)) {}

WeightedGraph generate(std::size_t n, const DegreeDist& d, const WeightModel& w, std::uint64_t seed) {
    if (n < 2)
        throw ParameterError("graph generation needs at least two vertices");
    if (n > std::numeric_limits<VertexId>::max())
        throw ParameterError("vertex count exceeds 32-bit ids");

    Rng rng(seed);
    const DegreeSampler sampler(d);
    std::vector<int> stubs(n);
    std::size_t total = 0;
    for (auto& k : stubs) {
        k = sampler(rng);
        total += static_cast<std::size_t>(k);
    }
    if (total % 2 == 1) {
        const auto u = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        ++stubs[u];
        ++total;
    }

    std::vector<VertexId> half_edges;
    half_edges.reserve(total);
    for (std::size_t u = 0; u < n; ++u)
        half_edges.insert(half_edges.end(), static_cast<std::size_t>(stubs[u]), static_cast<VertexId>(u));
    // Fisher-Yates with an explicit draw order so the matching does not depend
    // on the standard library's shuffle.
    for (std::size_t i = half_edges.size(); i > 1; --i) {
        const auto j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        std::swap(half_edges[i - 1], half_edges[j]);
    }

    std::size_t self_loops = 0;
    std::vector<Arc> arcs;
    arcs.reserve(total);
    for (std::size_t i = 0; i + 1 < half_edges.size(); i += 2) {
        const VertexId u = half_edges[i];
        const VertexId v = half_edges[i + 1];
        if (u == v) {
            ++self_loops;
            continue;
        }
        const auto edge = static_cast<std::uint32_t>(i / 2);
        arcs.push_back({u, v, edge});
        arcs.push_back({v, u, edge});
    }
    half_edges.clear();
    half_edges.shrink_to_fit();

    // One sort groups each vertex's run and puts parallel copies next to each
    // other, earliest-created first.
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
        return std::tie(a.from, a.to, a.edge) < std::tie(b.from, b.to, b.edge);
    });
    std::vector<std::uint32_t> kept_edges;
    std::size_t duplicate_arcs = 0;
    {
        std::size_t out = 0;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (out > 0 && arcs[out - 1].from == arcs[i].from && arcs[out - 1].to == arcs[i].to) {
                ++duplicate_arcs;
                continue;
            }
            arcs[out++] = arcs[i];
        }
        arcs.resize(out);
    }
    for (const Arc& a : arcs)
        if (a.from < a.to)
            kept_edges.push_back(a.edge);
    std::sort(kept_edges.begin(), kept_edges.end());

    std::vector<std::size_t> offsets(n + 1, 0);
    for (const Arc& a : arcs)
        ++offsets[a.from + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());

    std::vector<Neighbor> entries(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i)
        entries[i].id = arcs[i].to;

    // Weights in creation order of the surviving edges: W_(u,v) then W_(v,u),
    // with u the lower id.
    std::vector<std::size_t> edge_rank(kept_edges.empty() ? 0 : kept_edges.back() + 1,
                                       std::numeric_limits<std::size_t>::max());
    for (std::size_t r = 0; r < kept_edges.size(); ++r)
        edge_rank[kept_edges[r]] = r;
    std::vector<std::array<double, 2>> weights(kept_edges.size());
    const auto* dependent = std::get_if<DegreeDependentWeights>(&w.law());
    if (dependent == nullptr) {
        for (auto& pair : weights) {
            pair[0] = sample_weight(w, rng);
            pair[1] = sample_weight(w, rng);
        }
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const Arc& a = arcs[i];
        if (dependent != nullptr) {
            entries[i].out_weight = eval_g(dependent->g, stubs[a.from]);
            entries[i].in_weight = eval_g(dependent->g, stubs[a.to]);
        } else {
            const auto& pair = weights[edge_rank[a.edge]];
            const bool forward = a.from < a.to;
            entries[i].out_weight = forward ? pair[0] : pair[1];
            entries[i].in_weight = forward ? pair[1] : pair[0];
        }
    }

    WeightedGraph g(std::move(offsets), std::move(entries), std::move(stubs),
                    GraphProvenance{seed, d.label(), w.describe()});
    g.erased_self_loops = self_loops;
    g.merged_multi_edges = duplicate_arcs / 2;
    return g;
}

DegreeDist empirical_degree_dist(const WeightedGraph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0)
        return point_mass(0);
    int max_degree = 0;
    for (VertexId u = 0; u < n; ++u)
        max_degree = std::max(max_degree, g.degree(u));
    Eigen::ArrayXd counts = Eigen::ArrayXd::Zero(max_degree + 1);
    for (VertexId u = 0; u < n; ++u)
        counts[g.degree(u)] += 1.0;
    return DegreeDist(std::move(counts), "empirical(graph)");
}

std::string check_invariants(const WeightedGraph& g) {
    const std::size_t n = g.num_vertices();
    for (VertexId u = 0; u < n; ++u) {
        const auto run = g.neighbors(u);
        for (std::size_t i = 0; i < run.size(); ++i) {
            const Neighbor& e = run[i];
            if (e.id >= n)
                return "vertex " + std::to_string(u) + " has out-of-range neighbor";
            if (e.id == u)
                return "self-loop at vertex " + std::to_string(u);
            if (i > 0 && !(run[i - 1].id < e.id))
                return "neighbor run of " + std::to_string(u) + " is unsorted or has a parallel edge";
            if (!(e.out_weight >= 0.0 && e.out_weight <= 1.0 && e.in_weight >= 0.0 && e.in_weight <= 1.0))
                return "weight outside [0,1] at " + std::to_string(u);
            const auto back = g.neighbors(e.id);
            const auto it = std::lower_bound(back.begin(), back.end(), u,
                                             [](const Neighbor& x, VertexId id) { return x.id < id; });
            if (it == back.end() || it->id != u)
                return "edge " + std::to_string(u) + "-" + std::to_string(e.id) + " is not symmetric";
            if (it->in_weight != e.out_weight || it->out_weight != e.in_weight)
                return "edge " + std::to_string(u) + "-" + std::to_string(e.id) + " has inconsistent weights";
        }
    }
    return {};
}

void write_binary(const WeightedGraph& g, std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    put<std::uint64_t>(out, g.num_vertices());
    put<std::uint64_t>(out, g.provenance().seed);
    put_string(out, g.provenance().degree_spec);
    put_string(out, g.provenance().weight_spec);
    put<std::uint64_t>(out, g.erased_self_loops);
    put<std::uint64_t>(out, g.merged_multi_edges);
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(g.stub_degree(u)));
        put<std::uint32_t>(out, static_cast<std::uint32_t>(g.degree(u)));
        for (const Neighbor& e : g.neighbors(u)) {
            put<std::uint32_t>(out, e.id);
            put<double>(out, e.out_weight);
        }
    }
}

WeightedGraph read_binary(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic)
        throw ParseError("not a vaxnet graph file");
    const auto n = get<std::uint64_t>(in);
    GraphProvenance provenance;
    provenance.seed = get<std::uint64_t>(in);
    provenance.degree_spec = get_string(in);
    provenance.weight_spec = get_string(in);
    const auto self_loops = get<std::uint64_t>(in);
    const auto merged = get<std::uint64_t>(in);

    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<int> stubs(n);
    std::vector<Neighbor> entries;
    for (std::size_t u = 0; u < n; ++u) {
        stubs[u] = static_cast<int>(get<std::uint32_t>(in));
        const auto count = get<std::uint32_t>(in);
        for (std::uint32_t i = 0; i < count; ++i) {
            Neighbor e;
            e.id = get<std::uint32_t>(in);
            e.out_weight = get<double>(in);
            entries.push_back(e);
        }
        offsets[u + 1] = entries.size();
    }
    // In-weights by symmetry: u's in_weight for v is v's out_weight for u.
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            const VertexId v = entries[i].id;
            if (v >= n)
                throw ParseError("graph file has out-of-range neighbor id");
            const auto first = entries.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
            const auto last = entries.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
            const auto it = std::lower_bound(first, last, static_cast<VertexId>(u),
                                             [](const Neighbor& x, VertexId id) { return x.id < id; });
            if (it == last || it->id != u)
                throw ParseError("graph file is not symmetric");
            entries[i].in_weight = it->out_weight;
        }
    }
    WeightedGraph g(std::move(offsets), std::move(entries), std::move(stubs), std::move(provenance));
    g.erased_self_loops = self_loops;
    g.merged_multi_edges = merged;
    return g;
}

void write_edge_csv(const WeightedGraph& g, std::ostream& out) {
    const auto precision = out.precision(17);
    out << "u,v,w_uv,w_vu\n";
    for (VertexId u = 0; u < g.num_vertices(); ++u)
        for (const Neighbor& e : g.neighbors(u))
            if (u < e.id)
                out << u << ',' << e.id << ',' << e.out_weight << ',' << e.in_weight << '\n';
    out.precision(precision);
}

} // namespace vaxnet
