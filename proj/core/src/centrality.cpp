#include "netiv/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "netiv/rng.hpp"

namespace netiv {

std::string CentralityMode::describe() const {
    if (is_exact()) return "exact";
    return "sampled(" + std::to_string(sample_count) + ", seed=" + std::to_string(seed) + ")";
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
    std::vector<std::uint32_t> dist(g.node_count(), npos_distance);
    std::vector<NodeId> frontier{source};
    dist[source] = 0;
    std::vector<NodeId> next;
    while (!frontier.empty()) {
        next.clear();
        for (NodeId u : frontier) {
            for (NodeId w : g.neighbors(u)) {
                if (dist[w] == npos_distance) {
                    dist[w] = dist[u] + 1;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    return dist;
}

namespace {

struct Accumulator {
    std::vector<double> bc;
    std::vector<double> cc;
};

// One Brandes pass: BFS with path counts, then dependency accumulation.
// Closeness contributions ride along on the same distances.
void brandes_pass(const Graph& g, NodeId s, Accumulator& acc, std::vector<std::int64_t>& dist,
                  std::vector<double>& sigma, std::vector<double>& delta, std::vector<NodeId>& order) {
    std::size_t n = g.node_count();
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    std::size_t head = 0;
    order.push_back(s);
    while (head < order.size()) {
        NodeId u = order[head++];
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                order.push_back(w);
            }
            if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
        }
    }

    for (std::size_t i = order.size(); i-- > 0;) {
        NodeId w = order[i];
        if (w != s) acc.cc[w] += 1.0 / static_cast<double>(dist[w]);
        for (NodeId u : g.neighbors(w)) {
            if (dist[u] == dist[w] - 1) {
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
            }
        }
        if (w != s) acc.bc[w] += delta[w];
    }
    (void)n;
}

std::vector<NodeId> source_set(const Graph& g, const CentralityMode& mode) {
    std::size_t n = g.node_count();
    if (mode.is_exact() || mode.sample_count >= n) {
        std::vector<NodeId> all(n);
        for (NodeId v = 0; v < n; ++v) all[v] = v;
        return all;
    }
    Rng rng(mode.seed);
    auto picks = rng.sample_without_replacement(static_cast<std::uint32_t>(n), mode.sample_count);
    return {picks.begin(), picks.end()};
}

CentralitySnapshot compute(const Graph& g, const CentralityMode& mode, unsigned threads) {
    if (!mode.is_exact() && mode.sample_count < 1) {
        throw std::invalid_argument("sampled centrality requires sample_count >= 1");
    }
    std::size_t n = g.node_count();
    CentralitySnapshot snap;
    snap.mode = mode;
    snap.betweenness.assign(n, 0.0);
    snap.closeness.assign(n, 0.0);
    if (n == 0) return snap;

    std::vector<NodeId> sources = source_set(g, mode);

    // Fixed-size chunks with per-chunk partials merged in chunk order keep
    // the floating-point sums identical for any worker count.
    constexpr std::size_t kChunk = 64;
    std::size_t chunk_count = (sources.size() + kChunk - 1) / kChunk;
    std::vector<Accumulator> partials(chunk_count);

    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunk_count));

    std::atomic<std::size_t> next_chunk{0};
    auto worker = [&]() {
        std::vector<std::int64_t> dist(n);
        std::vector<double> sigma(n), delta(n);
        std::vector<NodeId> order;
        order.reserve(n);
        for (;;) {
            std::size_t c = next_chunk.fetch_add(1);
            if (c >= chunk_count) break;
            Accumulator& acc = partials[c];
            acc.bc.assign(n, 0.0);
            acc.cc.assign(n, 0.0);
            std::size_t lo = c * kChunk;
            std::size_t hi = std::min(sources.size(), lo + kChunk);
            for (std::size_t i = lo; i < hi; ++i) brandes_pass(g, sources[i], acc, dist, sigma, delta, order);
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const Accumulator& acc : partials) {
        for (std::size_t v = 0; v < n; ++v) {
            snap.betweenness[v] += acc.bc[v];
            snap.closeness[v] += acc.cc[v];
        }
    }

    double scale = static_cast<double>(n) / static_cast<double>(sources.size());
    double bc_norm = n >= 3 ? static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0 : 0.0;
    double cc_norm = n >= 2 ? static_cast<double>(n - 1) : 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        // undirected passes count each pair twice
        snap.betweenness[v] = bc_norm == 0.0 ? 0.0 : snap.betweenness[v] * scale / 2.0 / bc_norm;
        snap.closeness[v] = cc_norm == 0.0 ? 0.0 : snap.closeness[v] * scale / cc_norm;
        snap.betweenness[v] = std::clamp(snap.betweenness[v], 0.0, 1.0);
        snap.closeness[v] = std::clamp(snap.closeness[v], 0.0, 1.0);
    }
    return snap;
}

}  // namespace

std::vector<double> betweenness(const Graph& g, const CentralityMode& mode, unsigned threads) {
    return compute(g, mode, threads).betweenness;
}

std::vector<double> closeness(const Graph& g, unsigned threads) {
    return compute(g, CentralityMode::exact(), threads).closeness;
}

CentralitySnapshot centrality_snapshot(const Graph& g, const CentralityMode& mode, unsigned threads) {
    return compute(g, mode, threads);
}

CentralitySnapshot refresh_after_insert(const CentralitySnapshot& snapshot, const Graph& g, NodeId u, NodeId v) {
    if (!g.has_edge(u, v)) {
        throw std::invalid_argument("refresh_after_insert expects the edge to be present already");
    }
    return centrality_snapshot(g, snapshot.mode);
}

InfluenceScores pagerank_influence(const Graph& g, double damping, double tolerance, std::size_t max_iterations) {
    if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping must be in (0, 1)");
    std::size_t n = g.node_count();
    InfluenceScores out;
    out.damping = damping;
    out.tolerance = tolerance;
    if (n == 0) return out;

    std::vector<double> pr(n, 1.0 / static_cast<double>(n)), next(n, 0.0);
    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (g.degree(static_cast<NodeId>(v)) == 0) dangling += pr[v];
        }
        double base = (1.0 - damping) / static_cast<double>(n) + damping * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (NodeId v = 0; v < n; ++v) {
            double share = damping * pr[v] / static_cast<double>(g.degree(v));
            for (NodeId w : g.neighbors(v)) next[w] += share;
        }
        double residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) residual += std::abs(next[v] - pr[v]);
        pr.swap(next);
        if (residual < tolerance) {
            out.scores = std::move(pr);
            out.iterations = iter;
            return out;
        }
    }
    double residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) residual += std::abs(next[v] - pr[v]);
    throw NumericError("pagerank did not converge after " + std::to_string(max_iterations) +
                           " iterations (L1 residual " + std::to_string(residual) + ")",
                       residual);
}

}  // namespace netiv
