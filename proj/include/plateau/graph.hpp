#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plateau {

enum class GraphFamily : std::uint8_t { Chain, Ring, Grid2D, Complete };

std::string to_string(GraphFamily family);
GraphFamily parse_graph_family(const std::string& name);

/// Undirected qubit interaction graph without self-loops.
class InteractionGraph {
public:
    InteractionGraph() = default;

    /// Builds the named family on n vertices. GRID2D picks the most square
    /// rows x cols factorization with rows >= 2 and rejects n without one.
    static InteractionGraph make(GraphFamily family, std::size_t n);
    static InteractionGraph grid(std::size_t rows, std::size_t cols);

    GraphFamily family() const { return family_; }
    std::size_t n_vertices() const { return adjacency_.size(); }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
    std::size_t max_degree() const;

    // Grid shape (rows = 1 for non-grid families).
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// BFS distances from a source set; unreachable vertices hold nullopt.
    std::vector<std::optional<std::size_t>> distances_from(std::span<const std::size_t> sources) const;

private:
    InteractionGraph(GraphFamily family, std::size_t n);
    void add_edge(std::size_t a, std::size_t b);

    GraphFamily family_ = GraphFamily::Chain;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::size_t rows_ = 1;
    std::size_t cols_ = 0;
};

/// min over a in A, b in B of the BFS distance; 0 when the sets intersect,
/// nullopt (infinity) when no path connects them.
std::optional<std::size_t> graph_distance(const InteractionGraph& graph, std::span<const std::size_t> a,
                                          std::span<const std::size_t> b);

/// Vertices within distance `radius` of the set, sorted.
std::vector<std::size_t> graph_ball(const InteractionGraph& graph, std::span<const std::size_t> centre,
                                    std::size_t radius);

/// V_G(m): largest ball of radius m around any single vertex.
std::size_t growth_function(const InteractionGraph& graph, std::size_t m);

}  // namespace plateau
