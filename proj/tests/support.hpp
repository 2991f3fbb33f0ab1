#pragma once

#include <vector>

#include "seconet/graph.hpp"
#include "seconet/network.hpp"
#include "seconet/rng.hpp"

namespace testing {

inline seconet::Graph graph_of(int n, const std::vector<std::pair<int, int>>& edges) {
    seconet::Graph g(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) g.add_edge(u, v);
    g.canonicalize();
    return g;
}

inline seconet::Graph path4() { return graph_of(4, {{0, 1}, {1, 2}, {2, 3}}); }
inline seconet::Graph cycle4() { return graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline seconet::Graph star3() { return graph_of(4, {{0, 1}, {0, 2}, {0, 3}}); }

// Erdos-Renyi G(n, p) without self loops.
inline seconet::Graph random_graph(int n, double p, seconet::Rng& rng) {
    seconet::Graph g(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (seconet::uniform01(rng) < p) g.add_edge(u, v);
    g.canonicalize();
    return g;
}

inline seconet::Person make_person(seconet::Gender g, int age = 20, double delta = 100.0, int lsp = 10,
                                   bool joined = true) {
    seconet::Person p;
    p.gender = g;
    p.age = age;
    p.mean_rel_duration = delta;
    p.lsp = lsp;
    if (joined) p.join_time = 0;
    return p;
}

// Alternating female/male persons, all joined at day 0.
inline std::vector<seconet::Person> alternating(int n) {
    std::vector<seconet::Person> v;
    for (int i = 0; i < n; ++i) {
        v.push_back(make_person(i % 2 == 0 ? seconet::Gender::female : seconet::Gender::male));
        v.back().id = i;
    }
    return v;
}

}  // namespace testing
