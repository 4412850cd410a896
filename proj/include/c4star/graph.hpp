#ifndef C4STAR_GRAPH_HPP
#define C4STAR_GRAPH_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c4star/errors.hpp"

namespace c4star {

/// Simple undirected graph on at most 64 vertices, adjacency stored as one
/// 64-bit row per vertex. Row v is the neighbour set N(v); bit (u,v) is set
/// iff bit (v,u) is set, the diagonal is zero, and bits at positions >= order
/// are zero. A single word per row makes the codegree of a pair one AND plus
/// one popcount.
class Graph {
public:
    static constexpr int kMaxOrder = 64;

    /// Edgeless graph on `order` vertices. Throws OrderOutOfRange unless
    /// 1 <= order <= 64.
    explicit Graph(int order);

    /// Builds from raw adjacency rows, validating symmetry, loop-freeness
    /// and the high-bit invariant.
    static Graph from_rows(int order, std::span<const std::uint64_t> rows);

    int order() const noexcept { return order_; }

    bool has_edge(int u, int v) const {
        check_pair(u, v);
        return (rows_[static_cast<std::size_t>(u)] >> v) & 1u;
    }

    void add_edge(int u, int v) { set_edge(u, v, true); }
    void remove_edge(int u, int v) { set_edge(u, v, false); }

    void set_edge(int u, int v, bool present) {
        check_pair(u, v);
        const std::uint64_t bu = std::uint64_t{1} << u;
        const std::uint64_t bv = std::uint64_t{1} << v;
        if (present) {
            rows_[static_cast<std::size_t>(u)] |= bv;
            rows_[static_cast<std::size_t>(v)] |= bu;
        } else {
            rows_[static_cast<std::size_t>(u)] &= ~bv;
            rows_[static_cast<std::size_t>(v)] &= ~bu;
        }
    }

    void toggle_edge(int u, int v) { set_edge(u, v, !has_edge(u, v)); }

    /// Neighbour set of v as a bit mask.
    std::uint64_t neighbors(int v) const {
        check_vertex(v);
        return rows_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const;
    int edge_count() const;

    bool operator==(const Graph& other) const noexcept;

private:
    int order_ = 0;
    std::array<std::uint64_t, kMaxOrder> rows_{};

    void check_vertex(int v) const;
    void check_pair(int u, int v) const;
};

/// Degree statistics of a graph and its complement. The complement max
/// degree is tied to the minimum degree by Delta(comp) = order - 1 - delta.
struct GraphStats {
    std::vector<int> degree_sequence;
    int min_degree = 0;
    int max_degree = 0;
    int edge_count = 0;
    int complement_max_degree = 0;
};

/// Parses the bit-matrix text format: line 1 is the decimal order N,
/// lines 2..N+1 hold N characters from {0,1}, optionally space-separated;
/// trailing whitespace is tolerated. Errors: NonSquare, NotSymmetric (first
/// offending pair), LoopPresent (vertex), BadCharacter (line/column),
/// OrderOutOfRange.
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph; the output re-parses to a bit-identical graph.
std::string serialize_graph(const Graph& g);

/// |N(u) cap N(v)|. Throws SameVertex / VertexOutOfRange.
int codegree(const Graph& g, int u, int v);

/// True iff some vertex pair has codegree >= 2, i.e. the graph contains a
/// 4-cycle.
bool contains_c4(const Graph& g);

/// Assuming g is already C4-free, true iff adding the edge (u,v) keeps it
/// C4-free. A new 4-cycle through (u,v) is exactly a pre-existing path of
/// length 3 between u and v; the check is one codegree test per neighbour.
bool c4_safe_to_add(const Graph& g, int u, int v);

/// Exact number of distinct 4-cycles: (1/2) * sum over pairs u<v of
/// C(codegree(u,v), 2).
std::uint64_t count_c4(const Graph& g);

GraphStats graph_stats(const Graph& g);

// Small construction helpers.
Graph cycle_graph(int k);
Graph complete_graph(int k);
Graph path_graph(int k);
Graph complete_bipartite_graph(int a, int b);

} // namespace c4star

#endif
