#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "seconet/graph.hpp"
#include "seconet/network.hpp"

namespace seconet {

enum class CentralityKind { degree, betweenness, closeness, percolation, eigenvector };

std::string_view to_string(CentralityKind k);
CentralityKind parse_centrality(std::string_view name);  // throws ConfigError

// -- Graph-level algorithms (N = g.size()) ---------------------------------

std::vector<double> degree_centrality(const Graph& g);

// sum_{s != i != v} sigma_sv(i) / sigma_sv over ordered pairs, / ((N-1)(N-2)).
// All zeros when N < 3.
std::vector<double> betweenness_centrality(const Graph& g);

// 1 / sum of distances to every reachable node; 0 for isolated nodes.
std::vector<double> closeness_centrality(const Graph& g);

// (1/(N-2)) sum_{s != i != v} [sigma_sv(i)/sigma_sv] chi_s / (sum_j chi_j - chi_i).
// A node whose denominator is zero scores 0. All zeros when N < 3.
std::vector<double> percolation_centrality(const Graph& g, std::span<const double> chi);

// Unnormalized dependency sum  sum_s w_s sum_{v != s,i} sigma_sv(i)/sigma_sv,
// Brandes accumulation; sources with w_s == 0 are skipped.
std::vector<double> weighted_dependency(const Graph& g, std::span<const double> source_weight);

struct EigenvectorOptions {
    double tolerance = 1e-10;   // max-norm change between iterates
    int max_iterations = 10000;
};

// Leading adjacency eigenvector per connected component by shifted power
// iteration x <- normalize((A + I) x). Each component's unit vector is scaled
// by lambda_c / lambda_max and the whole vector is renormalized to unit
// length. Isolated nodes score 0; a graph without edges gives all zeros.
// Throws ConvergenceError when a component does not converge.
std::vector<double> eigenvector_centrality(const Graph& g, const EigenvectorOptions& opt = {});

// ||A x - lambda x||_2 with lambda the Rayleigh quotient x'Ax / x'x.
double eigen_residual(const Graph& g, std::span<const double> x);

// -- Network-level scores ---------------------------------------------------

struct CentralityScores {
    CentralityKind kind = CentralityKind::degree;
    std::vector<double> values;  // by person id; never-joined persons score 0
    int computed_at = 0;
};

// Scores over the joined subgraph of `net` (N = joined count). For
// percolation, `infected` flags (by person id) give chi; ignored otherwise.
CentralityScores compute_centrality(CentralityKind kind, const ContactNetwork& net, std::span<const char> infected,
                                    const EigenvectorOptions& opt = {});

}  // namespace seconet
