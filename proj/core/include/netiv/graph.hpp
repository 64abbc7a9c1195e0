#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace netiv {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    Edge() = default;
    Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Exact local clustering coefficient as the integer pair
// (edges among neighbors, neighbor pairs). Comparisons are exact; the
// double value is derived. A node of degree < 2 has LCC 0.
struct LccValue {
    std::uint64_t triangles = 0;  // n_v
    std::uint64_t pairs = 0;      // C(d, 2)

    double value() const { return pairs == 0 ? 0.0 : static_cast<double>(triangles) / static_cast<double>(pairs); }

    friend bool operator==(const LccValue& a, const LccValue& b) {
        if (a.pairs == 0 || b.pairs == 0) return (a.pairs == 0 ? 0 : a.triangles) == 0 && (b.pairs == 0 ? 0 : b.triangles) == 0;
        return static_cast<__uint128_t>(a.triangles) * b.pairs == static_cast<__uint128_t>(b.triangles) * a.pairs;
    }
    friend bool operator<(const LccValue& a, const LccValue& b) {
        std::uint64_t an = a.pairs == 0 ? 0 : a.triangles, ad = a.pairs == 0 ? 1 : a.pairs;
        std::uint64_t bn = b.pairs == 0 ? 0 : b.triangles, bd = b.pairs == 0 ? 1 : b.pairs;
        return static_cast<__uint128_t>(an) * bd < static_cast<__uint128_t>(bn) * ad;
    }
    friend bool operator<=(const LccValue& a, const LccValue& b) { return !(b < a); }
};

// True when lcc_after - lcc_before <= tau. Exact for tau == 0; for tau > 0
// the quotient is formed from exactly representable integers, so the single
// rounding cannot stray more than one ulp from the true increment.
bool lcc_increment_within(const LccValue& before, const LccValue& after, double tau);

// Nodes whose LCC an edge insertion touches: always both endpoints plus
// every common neighbor (whose LCC strictly increases). No other node's
// LCC can change.
struct EdgeAdditionEffect {
    Edge edge;
    struct Entry {
        NodeId node;
        LccValue before;
        LccValue after;
    };
    std::vector<Entry> changed;  // sorted by node id
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Undirected simple graph with per-node sorted adjacency and an exact,
// incrementally maintained count of edges among each node's neighbors.
// Edge insertion is the only mutation; all queries are const and safe to
// run concurrently between mutations.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t node_count);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
    const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_[v]; }
    std::uint64_t triangle_pairs(NodeId v) const { return triangle_counts_[v]; }  // n_v

    bool has_node(NodeId v) const { return v < adjacency_.size(); }
    bool has_edge(NodeId u, NodeId v) const;
    std::vector<NodeId> common_neighbors(NodeId u, NodeId v) const;

    LccValue lcc(NodeId v) const;
    std::vector<double> all_lcc() const;

    // Inserts (u, v), updating the cached triangle counts of the endpoints
    // and of every common neighbor only. Returns the exact effect.
    EdgeAdditionEffect add_edge(NodeId u, NodeId v);

    // Pure what-if: same effect as add_edge on a copy, without mutating.
    EdgeAdditionEffect lcc_if_added(NodeId u, NodeId v) const;

    // Recomputes every n_v by a single scan over edges (for each edge,
    // every common neighbor of its endpoints gains one pair). Used by the
    // independent audit path; does not touch the incremental cache.
    std::vector<std::uint64_t> compute_all_triangle_counts() const;

    // Original labels from the loaded edge list (identity for built graphs).
    std::uint64_t original_label(NodeId v) const { return original_labels_[v]; }
    const std::vector<std::uint64_t>& original_labels() const { return original_labels_; }
    // Dense id for an original label, if present.
    bool lookup_label(std::uint64_t label, NodeId& out) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adjacency_ == b.adjacency_ && a.original_labels_ == b.original_labels_;
    }

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::uint64_t> triangle_counts_;
    std::vector<std::uint64_t> original_labels_;
    std::unordered_map<std::uint64_t, NodeId> label_to_id_;
    std::size_t edge_count_ = 0;

    void check_node(NodeId v) const;

    friend Graph load_edge_list(std::istream& in);
};

inline std::uint64_t pairs_of(std::uint64_t degree) { return degree < 2 ? 0 : degree * (degree - 1) / 2; }

// Line-oriented "u v" pairs, '#' comments and blank lines ignored,
// duplicates and reversed duplicates collapsed. Node ids become dense in
// order of first appearance; original labels are kept for reporting.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

// Writes one "u v" line per edge using original labels, sorted.
void save_edge_list(const Graph& g, std::ostream& out);

}  // namespace netiv
