#include "netiv/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace netiv {

bool lcc_increment_within(const LccValue& before, const LccValue& after, double tau) {
    std::uint64_t bn = before.pairs == 0 ? 0 : before.triangles;
    std::uint64_t bd = before.pairs == 0 ? 1 : before.pairs;
    std::uint64_t an = after.pairs == 0 ? 0 : after.triangles;
    std::uint64_t ad = after.pairs == 0 ? 1 : after.pairs;
    if (tau <= 0.0) {
        // after - before <= 0, exactly
        return static_cast<__uint128_t>(an) * bd <= static_cast<__uint128_t>(bn) * ad;
    }
    double diff_num = static_cast<double>(an) * static_cast<double>(bd) -
                      static_cast<double>(bn) * static_cast<double>(ad);
    double diff_den = static_cast<double>(ad) * static_cast<double>(bd);
    return diff_num / diff_den <= tau;
}

Graph::Graph(std::size_t node_count)
    : adjacency_(node_count), triangle_counts_(node_count, 0), original_labels_(node_count) {
    for (std::size_t v = 0; v < node_count; ++v) {
        original_labels_[v] = v;
        label_to_id_.emplace(v, static_cast<NodeId>(v));
    }
}

void Graph::check_node(NodeId v) const {
    if (!has_node(v)) {
        throw std::out_of_range("unknown node id " + std::to_string(v) + " (graph has " +
                                std::to_string(node_count()) + " nodes)");
    }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u == v) return false;
    const auto& a = degree(u) <= degree(v) ? adjacency_[u] : adjacency_[v];
    NodeId probe = degree(u) <= degree(v) ? v : u;
    return std::binary_search(a.begin(), a.end(), probe);
}

std::vector<NodeId> Graph::common_neighbors(NodeId u, NodeId v) const {
    std::vector<NodeId> out;
    const auto& a = adjacency_[u];
    const auto& b = adjacency_[v];
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LccValue Graph::lcc(NodeId v) const {
    check_node(v);
    return LccValue{triangle_counts_[v], pairs_of(degree(v))};
}

std::vector<double> Graph::all_lcc() const {
    std::vector<double> out(node_count());
    for (std::size_t v = 0; v < node_count(); ++v) {
        out[v] = LccValue{triangle_counts_[v], pairs_of(adjacency_[v].size())}.value();
    }
    return out;
}

EdgeAdditionEffect Graph::add_edge(NodeId u, NodeId v) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("self-loop (" + std::to_string(u) + ") rejected");
    if (has_edge(u, v)) {
        throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") already present");
    }

    std::vector<NodeId> common = common_neighbors(u, v);

    EdgeAdditionEffect effect;
    effect.edge = Edge(u, v);
    NodeId lo = effect.edge.u, hi = effect.edge.v;
    auto record = [&](NodeId w, LccValue before) { effect.changed.push_back({w, before, {}}); };
    for (NodeId w : common) {
        if (w < lo) record(w, lcc(w));
    }
    record(lo, lcc(lo));
    for (NodeId w : common) {
        if (w > lo && w < hi) record(w, lcc(w));
    }
    record(hi, lcc(hi));
    for (NodeId w : common) {
        if (w > hi) record(w, lcc(w));
    }

    auto& au = adjacency_[u];
    au.insert(std::upper_bound(au.begin(), au.end(), v), v);
    auto& av = adjacency_[v];
    av.insert(std::upper_bound(av.begin(), av.end(), u), u);
    ++edge_count_;

    triangle_counts_[u] += common.size();
    triangle_counts_[v] += common.size();
    for (NodeId w : common) ++triangle_counts_[w];

    for (auto& entry : effect.changed) entry.after = lcc(entry.node);
    return effect;
}

EdgeAdditionEffect Graph::lcc_if_added(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("self-loop (" + std::to_string(u) + ") rejected");
    if (has_edge(u, v)) {
        throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") already present");
    }

    std::vector<NodeId> common = common_neighbors(u, v);
    std::uint64_t gained = common.size();

    EdgeAdditionEffect effect;
    effect.edge = Edge(u, v);
    NodeId lo = effect.edge.u, hi = effect.edge.v;
    auto endpoint_after = [&](NodeId w) {
        return LccValue{triangle_counts_[w] + gained, pairs_of(degree(w) + 1)};
    };
    auto bystander_after = [&](NodeId w) {
        return LccValue{triangle_counts_[w] + 1, pairs_of(degree(w))};
    };
    for (NodeId w : common) {
        if (w < lo) effect.changed.push_back({w, lcc(w), bystander_after(w)});
    }
    effect.changed.push_back({lo, lcc(lo), endpoint_after(lo)});
    for (NodeId w : common) {
        if (w > lo && w < hi) effect.changed.push_back({w, lcc(w), bystander_after(w)});
    }
    effect.changed.push_back({hi, lcc(hi), endpoint_after(hi)});
    for (NodeId w : common) {
        if (w > hi) effect.changed.push_back({w, lcc(w), bystander_after(w)});
    }
    return effect;
}

std::vector<std::uint64_t> Graph::compute_all_triangle_counts() const {
    std::vector<std::uint64_t> counts(node_count(), 0);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : adjacency_[u]) {
            if (v <= u) continue;
            // every common neighbor of (u, v) has this edge inside its ego net
            const auto& a = adjacency_[u];
            const auto& b = adjacency_[v];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) {
                    ++i;
                } else if (b[j] < a[i]) {
                    ++j;
                } else {
                    ++counts[a[i]];
                    ++i;
                    ++j;
                }
            }
        }
    }
    return counts;
}

bool Graph::lookup_label(std::uint64_t label, NodeId& out) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end()) return false;
    out = it->second;
    return true;
}

Graph load_edge_list(std::istream& in) {
    Graph g;
    auto intern = [&](std::uint64_t label) -> NodeId {
        auto it = g.label_to_id_.find(label);
        if (it != g.label_to_id_.end()) return it->second;
        NodeId id = static_cast<NodeId>(g.adjacency_.size());
        g.label_to_id_.emplace(label, id);
        g.adjacency_.emplace_back();
        g.triangle_counts_.push_back(0);
        g.original_labels_.push_back(label);
        return id;
    };

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;

        std::istringstream fields(line);
        std::uint64_t a = 0, b = 0;
        std::string extra;
        // unsigned extraction would wrap negative ids instead of failing
        if (line.find('-') != std::string::npos || !(fields >> a >> b)) {
            throw ParseError("line " + std::to_string(line_no) + ": expected two integer node ids, got \"" + line + "\"",
                             line_no);
        }
        if (fields >> extra) {
            throw ParseError("line " + std::to_string(line_no) + ": trailing token \"" + extra + "\"", line_no);
        }
        if (a == b) {
            throw ParseError("line " + std::to_string(line_no) + ": self-loop (" + std::to_string(a) + ")", line_no);
        }
        NodeId first = intern(a);
        NodeId second = intern(b);
        edges.emplace_back(first, second);
    }

    for (auto [u, v] : edges) {
        if (!g.has_edge(u, v)) g.add_edge(u, v);
    }
    return g;
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> lines;
    lines.reserve(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (v <= u) continue;
            std::uint64_t a = g.original_label(u), b = g.original_label(v);
            lines.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(lines.begin(), lines.end());
    for (auto [a, b] : lines) out << a << ' ' << b << '\n';
}

}  // namespace netiv
