#include "seconet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/math/tools/minima.hpp>

namespace seconet {
namespace {

bool adjacent(const Graph& g, int u, int w) {
    auto nu = g.neighbors(u);
    return std::binary_search(nu.begin(), nu.end(), w);
}

std::size_t common_neighbors(std::span<const int> a, std::span<const int> b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

// Tail (k >= k_min) of a degree sequence.
std::vector<int> tail_of(std::span<const int> degrees, int k_min) {
    std::vector<int> tail;
    for (int k : degrees) {
        if (k >= k_min && k > 0) tail.push_back(k);
    }
    return tail;
}

bool degenerate_tail(const std::vector<int>& tail) {
    if (tail.size() < kMinTailSize) return true;
    return std::all_of(tail.begin(), tail.end(), [&](int k) { return k == tail.front(); });
}

}  // namespace

double average_degree(const ContactNetwork& net) {
    if (net.size() == 0) return 0.0;
    return 2.0 * static_cast<double>(net.links().size()) / static_cast<double>(net.size());
}

double average_degree(const Graph& g) {
    if (g.size() == 0) return 0.0;
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.size());
}

double hurwitz_zeta(double s, double q) {
    // Direct sum of the first terms, then Euler-Maclaurin for the rest.
    constexpr int kDirect = 12;
    static constexpr double kBernoulli[] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,
                                            -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
    double sum = 0.0;
    for (int k = 0; k < kDirect; ++k) sum += std::pow(k + q, -s);
    const double a = kDirect + q;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // term_j = B_2j / (2j)! * s (s+1) ... (s+2j-2) * a^(-s-2j+1)
    double rising = s;      // s (s+1) ... (s+2j-2)
    double factorial = 2.0; // (2j)!
    double power = std::pow(a, -s - 1.0);
    for (int j = 1; j <= 6; ++j) {
        sum += kBernoulli[j - 1] / factorial * rising * power;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        factorial *= (2 * j + 1) * (2 * j + 2);
        power /= a * a;
    }
    return sum;
}

std::optional<double> powerlaw_exponent_approx(std::span<const int> degrees, int k_min) {
    auto tail = tail_of(degrees, k_min);
    if (degenerate_tail(tail)) return std::nullopt;
    double log_sum = 0.0;
    for (int k : tail) log_sum += std::log(k / (k_min - 0.5));
    if (!(log_sum > 0.0)) return std::nullopt;
    return 1.0 + static_cast<double>(tail.size()) / log_sum;
}

std::optional<double> powerlaw_exponent(std::span<const int> degrees, int k_min) {
    auto tail = tail_of(degrees, k_min);
    if (degenerate_tail(tail)) return std::nullopt;
    // Sort so the floating sum does not depend on input order.
    std::sort(tail.begin(), tail.end());
    double log_sum = 0.0;
    for (int k : tail) log_sum += std::log(static_cast<double>(k));
    const double n = static_cast<double>(tail.size());
    const double q = static_cast<double>(k_min);
    auto negative_log_likelihood = [&](double gamma) { return n * std::log(hurwitz_zeta(gamma, q)) + gamma * log_sum; };
    constexpr double lo = 1.0 + 1e-6;
    constexpr double hi = 30.0;
    auto [gamma, value] = boost::math::tools::brent_find_minima(negative_log_likelihood, lo, hi, 50);
    (void)value;
    if (gamma >= hi - 1e-6) return std::nullopt;
    return gamma;
}

double average_shortest_path_length(const Graph& g) {
    const int n = static_cast<int>(g.size());
    if (n < 2) return 0.0;
    auto labels = component_labels(g);
    std::vector<int> sizes;
    for (int l : labels) {
        if (l >= static_cast<int>(sizes.size())) sizes.resize(static_cast<std::size_t>(l) + 1, 0);
        ++sizes[static_cast<std::size_t>(l)];
    }
    // Labels follow lowest node index, so max_element picks the tie-break.
    const int giant = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    const long long nc = sizes[static_cast<std::size_t>(giant)];
    if (nc < 2) return 0.0;

    std::vector<int> dist(g.size(), -1);
    std::vector<int> queue;
    queue.reserve(g.size());
    long long total = 0;
    for (int s = 0; s < n; ++s) {
        if (labels[static_cast<std::size_t>(s)] != giant) continue;
        queue.clear();
        queue.push_back(s);
        dist[static_cast<std::size_t>(s)] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            int dv = dist[static_cast<std::size_t>(v)];
            total += dv;
            for (int w : g.neighbors(v)) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dv + 1;
                    queue.push_back(w);
                }
            }
        }
        for (int v : queue) dist[static_cast<std::size_t>(v)] = -1;
    }
    return static_cast<double>(total) / static_cast<double>(nc * (nc - 1));
}

double triangle_clustering(const Graph& g) {
    std::vector<char> mark(g.size(), 0);
    double closed = 0.0;   // ordered neighbour pairs that are adjacent, summed over centres
    double triples = 0.0;  // unordered neighbour pairs, summed over centres
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        auto nv = g.neighbors(v);
        const double k = static_cast<double>(nv.size());
        triples += k * (k - 1.0) / 2.0;
        for (int u : nv) mark[static_cast<std::size_t>(u)] = 1;
        for (int u : nv) {
            for (int x : g.neighbors(u)) closed += mark[static_cast<std::size_t>(x)];
        }
        for (int u : nv) mark[static_cast<std::size_t>(u)] = 0;
    }
    if (triples == 0.0) return 0.0;
    // closed counts each adjacent neighbour pair twice.
    return (closed / 2.0) / triples;
}

std::vector<double> square_clustering_local(const Graph& g) {
    std::vector<double> c(g.size(), 0.0);
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        auto nv = g.neighbors(v);
        if (nv.size() < 2) continue;
        double squares_total = 0.0;
        double potential = 0.0;
        for (std::size_t a = 0; a < nv.size(); ++a) {
            for (std::size_t b = a + 1; b < nv.size(); ++b) {
                int u = nv[a], w = nv[b];
                // v is always a common neighbour of u and w.
                double squares = static_cast<double>(common_neighbors(g.neighbors(u), g.neighbors(w))) - 1.0;
                double degm = squares + 1.0 + (adjacent(g, u, w) ? 1.0 : 0.0);
                squares_total += squares;
                potential += (g.degree(u) - degm) + (g.degree(w) - degm) + squares;
            }
        }
        c[static_cast<std::size_t>(v)] = potential > 0.0 ? squares_total / potential : 0.0;
    }
    return c;
}

double square_clustering(const Graph& g) {
    auto local = square_clustering_local(g);
    double sum = 0.0;
    std::size_t counted = 0;
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        if (g.degree(v) < 2) continue;
        sum += local[static_cast<std::size_t>(v)];
        ++counted;
    }
    return counted ? sum / static_cast<double>(counted) : 0.0;
}

std::vector<int> degree_sequence(const ContactNetwork& net) {
    std::vector<int> k(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) k[i] = net.degree(static_cast<PersonId>(i));
    return k;
}

TopologySummary summarize_topology(const ContactNetwork& net, int k_min) {
    auto snap = full_snapshot(net);
    TopologySummary t;
    t.average_degree = average_degree(net);
    auto degrees = degree_sequence(net);
    t.powerlaw_exponent = powerlaw_exponent(degrees, k_min);
    t.avg_shortest_path = average_shortest_path_length(snap.graph);
    t.clustering_triangle = triangle_clustering(snap.graph);
    t.clustering_square = square_clustering(snap.graph);
    return t;
}

}  // namespace seconet
