#include "plateau/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace plateau {

std::string to_string(GraphFamily family) {
    switch (family) {
        case GraphFamily::Chain: return "chain";
        case GraphFamily::Ring: return "ring";
        case GraphFamily::Grid2D: return "grid2d";
        case GraphFamily::Complete: return "complete";
    }
    return "unknown";
}

GraphFamily parse_graph_family(const std::string& name) {
    if (name == "chain") return GraphFamily::Chain;
    if (name == "ring") return GraphFamily::Ring;
    if (name == "grid2d" || name == "grid") return GraphFamily::Grid2D;
    if (name == "complete") return GraphFamily::Complete;
    throw std::invalid_argument("unknown graph family '" + name + "'");
}

InteractionGraph::InteractionGraph(GraphFamily family, std::size_t n)
    : family_(family), adjacency_(n), cols_(n) {}

void InteractionGraph::add_edge(std::size_t a, std::size_t b) {
    if (a == b) return;
    auto& na = adjacency_[a];
    if (std::find(na.begin(), na.end(), b) != na.end()) return;
    na.push_back(b);
    adjacency_[b].push_back(a);
}

InteractionGraph InteractionGraph::grid(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("grid needs positive dimensions");
    InteractionGraph g(GraphFamily::Grid2D, rows * cols);
    g.rows_ = rows;
    g.cols_ = cols;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t v = r * cols + c;
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, v + cols);
        }
    }
    for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
    return g;
}

InteractionGraph InteractionGraph::make(GraphFamily family, std::size_t n) {
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
    switch (family) {
        case GraphFamily::Chain: {
            InteractionGraph g(family, n);
            for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
            for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
            return g;
        }
        case GraphFamily::Ring: {
            InteractionGraph g(family, n);
            for (std::size_t i = 0; i < n && n > 1; ++i) g.add_edge(i, (i + 1) % n);
            for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
            return g;
        }
        case GraphFamily::Grid2D: {
            std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
            while (rows > 1 && n % rows != 0) --rows;
            if (rows < 2) {
                throw std::invalid_argument("grid2d needs a rectangular qubit count (rows, cols >= 2), got " +
                                            std::to_string(n));
            }
            return grid(rows, n / rows);
        }
        case GraphFamily::Complete: {
            InteractionGraph g(family, n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
            }
            for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
            return g;
        }
    }
    throw std::invalid_argument("unsupported graph family");
}

std::size_t InteractionGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& nb : adjacency_) d = std::max(d, nb.size());
    return d;
}

std::vector<std::optional<std::size_t>> InteractionGraph::distances_from(
    std::span<const std::size_t> sources) const {
    std::vector<std::optional<std::size_t>> dist(n_vertices());
    std::deque<std::size_t> frontier;
    for (std::size_t s : sources) {
        if (s >= n_vertices()) throw std::out_of_range("vertex out of range");
        if (!dist[s]) {
            dist[s] = 0;
            frontier.push_back(s);
        }
    }
    while (!frontier.empty()) {
        const std::size_t v = frontier.front();
        frontier.pop_front();
        for (std::size_t w : adjacency_[v]) {
            if (!dist[w]) {
                dist[w] = *dist[v] + 1;
                frontier.push_back(w);
            }
        }
    }
    return dist;
}

std::optional<std::size_t> graph_distance(const InteractionGraph& graph, std::span<const std::size_t> a,
                                          std::span<const std::size_t> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("graph_distance needs nonempty sets");
    const auto dist = graph.distances_from(a);
    std::optional<std::size_t> best;
    for (std::size_t v : b) {
        if (v >= dist.size()) throw std::out_of_range("vertex out of range");
        if (dist[v] && (!best || *dist[v] < *best)) best = dist[v];
    }
    return best;
}

std::vector<std::size_t> graph_ball(const InteractionGraph& graph, std::span<const std::size_t> centre,
                                    std::size_t radius) {
    const auto dist = graph.distances_from(centre);
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] && *dist[v] <= radius) out.push_back(v);
    }
    return out;
}

std::size_t growth_function(const InteractionGraph& graph, std::size_t m) {
    std::size_t best = 0;
    for (std::size_t v = 0; v < graph.n_vertices(); ++v) {
        const std::size_t centre[] = {v};
        best = std::max(best, graph_ball(graph, centre, m).size());
        if (best == graph.n_vertices()) break;
    }
    return best;
}

}  // namespace plateau
