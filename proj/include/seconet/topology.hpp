#pragma once

#include <optional>
#include <span>
#include <vector>

#include "seconet/graph.hpp"
#include "seconet/network.hpp"

namespace seconet {

struct TopologySummary {
    double average_degree = 0.0;
    std::optional<double> powerlaw_exponent;  // missing when the tail is too short or degenerate
    double avg_shortest_path = 0.0;           // over the largest component
    double clustering_triangle = 0.0;
    double clustering_square = 0.0;
};

inline constexpr int kDefaultKMin = 2;
inline constexpr std::size_t kMinTailSize = 10;

// 2 |links| / N.
double average_degree(const ContactNetwork& net);
double average_degree(const Graph& g);

// Hurwitz zeta  sum_{k>=0} (k + q)^-s  for s > 1, q > 0, by Euler-Maclaurin.
double hurwitz_zeta(double s, double q);

// Closed-form continuous approximation 1 + n / sum ln(k / (k_min - 1/2)).
std::optional<double> powerlaw_exponent_approx(std::span<const int> degrees, int k_min = kDefaultKMin);

// Discrete maximum-likelihood exponent over degrees >= k_min: maximizes
// -n ln zeta(gamma, k_min) - gamma sum ln k. Missing (nullopt) with fewer
// than kMinTailSize tail nodes or when every tail degree is equal.
std::optional<double> powerlaw_exponent(std::span<const int> degrees, int k_min = kDefaultKMin);

// Mean geodesic distance over ordered pairs of the largest connected
// component (ties: the component holding the lowest node index). Zero when
// that component has fewer than two nodes.
double average_shortest_path_length(const Graph& g);

// Global transitivity 3 * triangles / connected triples.
double triangle_clustering(const Graph& g);

// Mean over nodes with >= 2 neighbours of the square (four-cycle)
// clustering  sum_{u<w} q_v(u,w) / sum_{u<w} [a_v(u,w) + q_v(u,w)].
double square_clustering(const Graph& g);
// Per node; 0 for nodes with < 2 neighbours.
std::vector<double> square_clustering_local(const Graph& g);

std::vector<int> degree_sequence(const ContactNetwork& net);

TopologySummary summarize_topology(const ContactNetwork& net, int k_min = kDefaultKMin);

}  // namespace seconet
