#include "seconet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>

#include "seconet/error.hpp"

namespace seconet {

std::string_view to_string(CentralityKind k) {
    switch (k) {
        case CentralityKind::degree: return "degree";
        case CentralityKind::betweenness: return "betweenness";
        case CentralityKind::closeness: return "closeness";
        case CentralityKind::percolation: return "percolation";
        case CentralityKind::eigenvector: return "eigenvector";
    }
    return "?";
}

CentralityKind parse_centrality(std::string_view name) {
    for (auto k : {CentralityKind::degree, CentralityKind::betweenness, CentralityKind::closeness,
                   CentralityKind::percolation, CentralityKind::eigenvector}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown centrality '" + std::string(name) +
                      "'; valid: degree, betweenness, closeness, percolation, eigenvector");
}

std::vector<double> degree_centrality(const Graph& g) {
    std::vector<double> out(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) out[v] = g.degree(static_cast<int>(v));
    return out;
}

std::vector<double> weighted_dependency(const Graph& g, std::span<const double> source_weight) {
    const std::size_t n = g.size();
    std::vector<double> total(n, 0.0);
    std::vector<int> dist(n, -1);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<int> order;
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        const double w = source_weight[s];
        if (w == 0.0) continue;
        // Forward BFS: distances, shortest-path counts, visit order.
        order.clear();
        order.push_back(static_cast<int>(s));
        dist[s] = 0;
        sigma[s] = 1.0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            int dv = dist[static_cast<std::size_t>(v)];
            for (int x : g.neighbors(v)) {
                auto xi = static_cast<std::size_t>(x);
                if (dist[xi] < 0) {
                    dist[xi] = dv + 1;
                    order.push_back(x);
                }
                if (dist[xi] == dv + 1) sigma[xi] += sigma[static_cast<std::size_t>(v)];
            }
        }
        // Backward dependency accumulation; predecessors are neighbours one
        // level closer to s.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            auto wi = static_cast<std::size_t>(*it);
            double coeff = (1.0 + delta[wi]) / sigma[wi];
            for (int v : g.neighbors(*it)) {
                auto vi = static_cast<std::size_t>(v);
                if (dist[vi] == dist[wi] - 1) delta[vi] += sigma[vi] * coeff;
            }
            if (wi != s) total[wi] += w * delta[wi];
        }
        for (int v : order) {
            auto vi = static_cast<std::size_t>(v);
            dist[vi] = -1;
            sigma[vi] = 0.0;
            delta[vi] = 0.0;
        }
    }
    return total;
}

std::vector<double> betweenness_centrality(const Graph& g) {
    const std::size_t n = g.size();
    if (n < 3) return std::vector<double>(n, 0.0);
    std::vector<double> ones(n, 1.0);
    auto bc = weighted_dependency(g, ones);
    const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (double& x : bc) x /= norm;
    return bc;
}

std::vector<double> percolation_centrality(const Graph& g, std::span<const double> chi) {
    const std::size_t n = g.size();
    std::vector<double> pc(n, 0.0);
    if (n < 3) return pc;
    double chi_total = 0.0;
    for (double c : chi) chi_total += c;
    auto dep = weighted_dependency(g, chi);
    for (std::size_t i = 0; i < n; ++i) {
        double denom = chi_total - chi[i];
        pc[i] = denom > 0.0 ? dep[i] / (static_cast<double>(n - 2) * denom) : 0.0;
    }
    return pc;
}

std::vector<double> closeness_centrality(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<double> cc(n, 0.0);
    std::vector<int> dist(n, -1);
    std::vector<int> queue;
    queue.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        queue.clear();
        queue.push_back(static_cast<int>(s));
        dist[s] = 0;
        long long sum = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            int dv = dist[static_cast<std::size_t>(v)];
            sum += dv;
            for (int x : g.neighbors(v)) {
                if (dist[static_cast<std::size_t>(x)] < 0) {
                    dist[static_cast<std::size_t>(x)] = dv + 1;
                    queue.push_back(x);
                }
            }
        }
        for (int v : queue) dist[static_cast<std::size_t>(v)] = -1;
        cc[s] = sum > 0 ? 1.0 / static_cast<double>(sum) : 0.0;
    }
    return cc;
}

namespace {

struct Eigenpair {
    Eigen::VectorXd vector;
    double value = 0.0;
};

Eigenpair leading_eigenpair(const Eigen::SparseMatrix<double>& adjacency, const EigenvectorOptions& opt) {
    const Eigen::Index n = adjacency.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Eigen::VectorXd next(n);
    double change = 0.0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        next.noalias() = adjacency * x;
        next += x;
        next.normalize();
        change = (next - x).cwiseAbs().maxCoeff();
        x.swap(next);
        if (change < opt.tolerance) {
            double lambda = x.dot(adjacency * x);
            return {x, lambda};
        }
    }
    Eigen::VectorXd ax = adjacency * x;
    double residual = (ax - x.dot(ax) * x).norm();
    throw ConvergenceError("eigenvector centrality did not converge in " + std::to_string(opt.max_iterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual);
}

}  // namespace

std::vector<double> eigenvector_centrality(const Graph& g, const EigenvectorOptions& opt) {
    const std::size_t n = g.size();
    std::vector<double> out(n, 0.0);
    auto labels = component_labels(g);
    int components = 0;
    for (int l : labels) components = std::max(components, l + 1);

    std::vector<std::vector<int>> members(static_cast<std::size_t>(components));
    for (std::size_t v = 0; v < n; ++v) members[static_cast<std::size_t>(labels[v])].push_back(static_cast<int>(v));

    std::vector<int> local(n, -1);
    std::vector<Eigenpair> pairs(members.size());
    double lambda_max = 0.0;
    for (std::size_t c = 0; c < members.size(); ++c) {
        const auto& nodes = members[c];
        if (nodes.size() < 2) continue;
        for (std::size_t k = 0; k < nodes.size(); ++k) local[static_cast<std::size_t>(nodes[k])] = static_cast<int>(k);
        std::vector<Eigen::Triplet<double>> triplets;
        for (int v : nodes) {
            for (int w : g.neighbors(v)) {
                triplets.emplace_back(local[static_cast<std::size_t>(v)], local[static_cast<std::size_t>(w)], 1.0);
            }
        }
        auto m = static_cast<Eigen::Index>(nodes.size());
        Eigen::SparseMatrix<double> a(m, m);
        a.setFromTriplets(triplets.begin(), triplets.end());
        pairs[c] = leading_eigenpair(a, opt);
        lambda_max = std::max(lambda_max, pairs[c].value);
    }
    if (lambda_max <= 0.0) return out;

    double norm2 = 0.0;
    for (std::size_t c = 0; c < members.size(); ++c) {
        const auto& nodes = members[c];
        if (nodes.size() < 2) continue;
        double scale = pairs[c].value / lambda_max;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            // Perron vector is non-negative; clamp sign noise.
            double x = std::max(0.0, pairs[c].vector[static_cast<Eigen::Index>(k)]) * scale;
            out[static_cast<std::size_t>(nodes[k])] = x;
            norm2 += x * x;
        }
    }
    double norm = std::sqrt(norm2);
    for (double& x : out) x /= norm;
    return out;
}

double eigen_residual(const Graph& g, std::span<const double> x) {
    const std::size_t n = g.size();
    std::vector<double> ax(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        for (int w : g.neighbors(static_cast<int>(v))) ax[v] += x[static_cast<std::size_t>(w)];
    }
    double xax = 0.0, xx = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        xax += x[v] * ax[v];
        xx += x[v] * x[v];
    }
    if (xx == 0.0) return 0.0;
    double lambda = xax / xx;
    double r2 = 0.0;
    for (std::size_t v = 0; v < n; ++v) r2 += (ax[v] - lambda * x[v]) * (ax[v] - lambda * x[v]);
    return std::sqrt(r2);
}

CentralityScores compute_centrality(CentralityKind kind, const ContactNetwork& net, std::span<const char> infected,
                                    const EigenvectorOptions& opt) {
    auto snap = joined_snapshot(net);
    std::vector<double> local;
    switch (kind) {
        case CentralityKind::degree: local = degree_centrality(snap.graph); break;
        case CentralityKind::betweenness: local = betweenness_centrality(snap.graph); break;
        case CentralityKind::closeness: local = closeness_centrality(snap.graph); break;
        case CentralityKind::percolation: {
            std::vector<double> chi(snap.person_of.size(), 0.0);
            for (std::size_t k = 0; k < chi.size(); ++k) {
                auto id = static_cast<std::size_t>(snap.person_of[k]);
                chi[k] = id < infected.size() && infected[id] ? 1.0 : 0.0;
            }
            local = percolation_centrality(snap.graph, chi);
            break;
        }
        case CentralityKind::eigenvector: local = eigenvector_centrality(snap.graph, opt); break;
    }
    CentralityScores out;
    out.kind = kind;
    out.computed_at = net.current_day();
    out.values.assign(net.size(), 0.0);
    for (std::size_t k = 0; k < local.size(); ++k) out.values[static_cast<std::size_t>(snap.person_of[k])] = local[k];
    return out;
}

}  // namespace seconet
