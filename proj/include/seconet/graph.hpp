#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seconet/network.hpp"

namespace seconet {

// Plain undirected simple graph over dense indices 0..n-1. The algorithm
// modules work on this so they can be checked on arbitrary small graphs.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    std::size_t size() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }
    std::span<const int> neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    // Caller guarantees u != v and no duplicate edge.
    void add_edge(int u, int v) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
        ++edges_;
    }
    // Sorts every adjacency list; makes traversal order a function of the
    // edge set only.
    void canonicalize();

private:
    std::vector<std::vector<int>> adj_;
    std::size_t edges_ = 0;
};

// A graph built from a network snapshot with the index <-> person mapping.
struct GraphSnapshot {
    Graph graph;
    std::vector<PersonId> person_of;  // graph index -> person id
    std::vector<int> index_of;        // person id -> graph index, -1 if absent
};

// All persons, index == person id.
GraphSnapshot full_snapshot(const ContactNetwork& net);
// Joined persons only.
GraphSnapshot joined_snapshot(const ContactNetwork& net);

// Connected component label per node; labels are assigned in order of each
// component's lowest node index.
std::vector<int> component_labels(const Graph& g);

}  // namespace seconet
