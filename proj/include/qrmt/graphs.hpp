#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qrmt {

/// Canonical walk graph on r+1 row vertices and s column vertices, encoded
/// by the function pair (f, g): f(1) = g(1) = 1 = f(k+1) and each value may
/// exceed the running maximum by at most one. Edges alternate down
/// (f(j), g(j)) and up (g(j), f(j+1)) for j = 1..k.
struct CanonicalGraph {
    int k{0};
    std::vector<int> f;  // size k+1, 1-based values; f[j-1] stores f(j)
    std::vector<int> g;  // size k, 1-based values; g[j-1] stores g(j)

    int r() const { return *std::max_element(f.begin(), f.end()) - 1; }
    int s() const { return *std::max_element(g.begin(), g.end()); }
};

/// One edge of the alternating walk. ivert/jvert are the row-side and
/// column-side endpoints; the edge is traversed tail -> head.
struct GraphEdge {
    bool down{true};  // down: I -> J; up: J -> I
    int j{1};         // 1-based step index
    int ivert{1};
    int jvert{1};
};

enum class EdgeType { T1Up, T1Down, T3Irregular, T3Regular, T2, T4 };

inline const char* edge_type_name(EdgeType t) {
    switch (t) {
        case EdgeType::T1Up: return "T1u";
        case EdgeType::T1Down: return "T1d";
        case EdgeType::T3Irregular: return "T3i";
        case EdgeType::T3Regular: return "T3r";
        case EdgeType::T2: return "T2";
        case EdgeType::T4: return "T4";
    }
    return "?";
}

/// The 2k edges in traversal order d1, u1, d2, u2, ..., dk, uk.
inline std::vector<GraphEdge> edge_sequence(const CanonicalGraph& graph) {
    std::vector<GraphEdge> edges;
    edges.reserve(2 * static_cast<std::size_t>(graph.k));
    for (int j = 1; j <= graph.k; ++j) {
        edges.push_back({true, j, graph.f[static_cast<std::size_t>(j) - 1],
                         graph.g[static_cast<std::size_t>(j) - 1]});
        edges.push_back({false, j, graph.f[static_cast<std::size_t>(j)],
                         graph.g[static_cast<std::size_t>(j) - 1]});
    }
    return edges;
}

namespace detail {

inline bool same_pair(const GraphEdge& a, const GraphEdge& b) {
    return a.ivert == b.ivert && a.jvert == b.jvert;
}

/// Innovation test straight from the growth condition: a down edge at step j
/// brings a new J-vertex, an up edge a new I-vertex.
inline std::vector<bool> innovation_flags(const std::vector<GraphEdge>& edges) {
    std::vector<bool> inno(edges.size(), false);
    int fmax = 1;  // f(1)
    int gmax = 0;
    for (std::size_t pos = 0; pos < edges.size(); ++pos) {
        const GraphEdge& e = edges[pos];
        if (e.down) {
            if (e.jvert == gmax + 1) inno[pos] = true;
            gmax = std::max(gmax, e.jvert);
        } else {
            if (e.ivert == fmax + 1) inno[pos] = true;
            fmax = std::max(fmax, e.ivert);
        }
    }
    return inno;
}

}  // namespace detail

/// Sequential edge classification. An innovation is a T1; an edge whose
/// vertex pair so far appeared exactly once, on an innovation, is a T3
/// (irregular when the coinciding innovation is the only single innovation
/// incident to the tail vertex); everything else is a T4, with the first T4
/// on each vertex pair relabeled T2.
inline std::vector<EdgeType> classify_edges(const CanonicalGraph& graph) {
    const auto edges = edge_sequence(graph);
    const auto inno = detail::innovation_flags(edges);
    std::vector<EdgeType> labels(edges.size(), EdgeType::T4);

    std::map<std::pair<int, int>, std::vector<std::size_t>> occurrences;  // pair -> positions
    std::map<std::pair<int, int>, bool> t4_seen;

    for (std::size_t pos = 0; pos < edges.size(); ++pos) {
        const GraphEdge& e = edges[pos];
        const std::pair<int, int> key{e.ivert, e.jvert};
        auto& occ = occurrences[key];

        if (inno[pos]) {
            labels[pos] = e.down ? EdgeType::T1Down : EdgeType::T1Up;
        } else if (occ.size() == 1 && inno[occ.front()]) {
            // Coincides with an innovation that stayed single until now.
            // Irregular iff that innovation is the only single-so-far
            // innovation incident to the tail vertex of this edge.
            int incident_singles = 0;
            for (std::size_t q = 0; q < pos; ++q) {
                if (!inno[q]) continue;
                bool single = true;
                for (std::size_t w = 0; w < pos; ++w)
                    if (w != q && detail::same_pair(edges[q], edges[w])) {
                        single = false;
                        break;
                    }
                if (!single) continue;
                const bool incident =
                    e.down ? (edges[q].ivert == e.ivert) : (edges[q].jvert == e.jvert);
                if (incident) ++incident_singles;
            }
            labels[pos] = (incident_singles == 1) ? EdgeType::T3Irregular : EdgeType::T3Regular;
        } else {
            labels[pos] = t4_seen[key] ? EdgeType::T4 : EdgeType::T2;
            t4_seen[key] = true;
        }
        occ.push_back(pos);
    }
    return labels;
}

/// True when some vertex pair carries exactly one edge; such graphs
/// contribute zero to centered moment sums.
inline bool has_single_edge(const CanonicalGraph& graph) {
    const auto edges = edge_sequence(graph);
    std::map<std::pair<int, int>, int> mult;
    for (const auto& e : edges) ++mult[{e.ivert, e.jvert}];
    for (const auto& [key, m] : mult)
        if (m == 1) return true;
    return false;
}

/// All canonical graphs with k down/up steps, ordered lexicographically by
/// (f(2..k), g(2..k)). The f and g growth sequences are independent, so the
/// enumeration is a product of two restricted-growth-string enumerations.
inline std::vector<CanonicalGraph> enumerate_canonical(int k) {
    if (k < 1) throw std::invalid_argument("enumerate_canonical: k must be >= 1");
    if (k > 5) throw std::invalid_argument("enumerate_canonical: k > 5 exceeds the growth guard");

    // Restricted growth strings of length `len` starting at 1.
    const auto growth_strings = [](int len) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur(static_cast<std::size_t>(len), 1);
        const auto rec = [&](auto&& self, int pos, int mx) -> void {
            if (pos == len) {
                out.push_back(cur);
                return;
            }
            for (int v = 1; v <= mx + 1; ++v) {
                cur[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, std::max(mx, v));
            }
        };
        if (len == 0)
            out.emplace_back();
        else {
            cur[0] = 1;
            rec(rec, 1, 1);
        }
        return out;
    };

    const auto fs = growth_strings(k);  // f(1..k); f(k+1) = 1 appended below
    const auto gs = growth_strings(k);  // g(1..k)

    std::vector<CanonicalGraph> graphs;
    graphs.reserve(fs.size() * gs.size());
    for (const auto& fseq : fs) {
        for (const auto& gseq : gs) {
            CanonicalGraph graph;
            graph.k = k;
            graph.f = fseq;
            graph.f.push_back(1);
            graph.g = gseq;
            graphs.push_back(std::move(graph));
        }
    }
    return graphs;
}

struct ChainCounterexample {
    std::size_t graph_index{0};
    std::string detail;
};

struct ChainLemmaReport {
    long long graphs_checked{0};
    long long prefixes_checked{0};
    std::vector<ChainCounterexample> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};

/// Exhaustive verification over every canonical graph of order k:
///  - chain lemma: in any prefix chain, the number of still-single
///    innovations incident to the endpoint is at most #T2 + 1;
///  - regularity lemma: #regular-T3 <= 2 #T2 in the whole graph.
inline ChainLemmaReport verify_chain_lemmas(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("verify_chain_lemmas: need 1 <= k <= 4");
    ChainLemmaReport report;
    const auto graphs = enumerate_canonical(k);

    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& graph = graphs[gi];
        const auto edges = edge_sequence(graph);
        const auto inno = detail::innovation_flags(edges);
        const auto labels = classify_edges(graph);
        ++report.graphs_checked;

        // Prefix chains end after q edges; q odd ends at a J-vertex g(tau),
        // q even (q >= 2) at an I-vertex f(tau).
        for (std::size_t q = 1; q <= edges.size(); ++q) {
            ++report.prefixes_checked;
            const GraphEdge& last = edges[q - 1];
            const bool endpoint_is_i = !last.down;  // up edges land on the I line
            const int endpoint = endpoint_is_i ? last.ivert : last.jvert;

            int t2 = 0;
            for (std::size_t w = 0; w < q; ++w)
                if (labels[w] == EdgeType::T2) ++t2;

            int l = 0;
            for (std::size_t w = 0; w < q; ++w) {
                if (!inno[w]) continue;
                bool single = true;
                for (std::size_t v = 0; v < q; ++v)
                    if (v != w && detail::same_pair(edges[w], edges[v])) {
                        single = false;
                        break;
                    }
                if (!single) continue;
                const bool incident =
                    endpoint_is_i ? (edges[w].ivert == endpoint) : (edges[w].jvert == endpoint);
                if (incident) ++l;
            }
            if (l > t2 + 1)
                report.counterexamples.push_back(
                    {gi, "chain lemma: prefix " + std::to_string(q) + " has l=" +
                             std::to_string(l) + " > t+1=" + std::to_string(t2 + 1)});
        }

        int regular = 0, t2_total = 0;
        for (const auto lab : labels) {
            if (lab == EdgeType::T3Regular) ++regular;
            if (lab == EdgeType::T2) ++t2_total;
        }
        if (regular > 2 * t2_total)
            report.counterexamples.push_back(
                {gi, "regularity lemma: " + std::to_string(regular) + " regular T3 > 2*" +
                         std::to_string(t2_total)});
    }
    return report;
}

/// Counts, by column-vertex count s, the canonical graphs in which every
/// vertex pair carries exactly two edges and the vertex count is maximal
/// (r + s = k). These classes carry the p^{r+1} n^s leading weight in moment
/// sums; row k reproduces the Narayana numbers and sums to Catalan(k).
inline std::map<int, long long> leading_moment_counts(int k) {
    if (k < 1) throw std::invalid_argument("leading_moment_counts: k must be >= 1");
    if (k > 5) throw std::invalid_argument("leading_moment_counts: k > 5 exceeds the growth guard");
    std::map<int, long long> counts;
    for (const auto& graph : enumerate_canonical(k)) {
        const auto edges = edge_sequence(graph);
        std::map<std::pair<int, int>, int> mult;
        for (const auto& e : edges) ++mult[{e.ivert, e.jvert}];
        bool all_double = true;
        for (const auto& [key, m] : mult)
            if (m != 2) {
                all_double = false;
                break;
            }
        if (!all_double) continue;
        if (graph.r() + graph.s() != k) continue;
        ++counts[graph.s()];
    }
    return counts;
}

}  // namespace qrmt
