#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/zeta.hpp>

#include "seconet/topology.hpp"
#include "support.hpp"

using namespace seconet;
using testing::graph_of;

namespace {

// Inverse-CDF sampler for P(k) ~ k^-gamma, k >= k_min, over an explicit
// table truncated far into the tail.
std::vector<int> powerlaw_sample(double gamma, int k_min, int n, Rng& rng) {
    constexpr int kMax = 2'000'000;
    std::vector<double> cdf;
    cdf.reserve(kMax - k_min + 1);
    double acc = 0.0;
    for (int k = k_min; k <= kMax; ++k) cdf.push_back(acc += std::pow(k, -gamma));
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int& k : out) {
        double u = uniform01(rng) * acc;
        k = k_min + static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    }
    return out;
}

}  // namespace

TEST_CASE("average degree") {
    ContactNetwork net(testing::alternating(3000));
    CHECK(average_degree(net) == 0.0);
    for (int i = 0; i < 10; ++i) net.add_link(2 * i, 2 * i + 1, 0, 5.0, 100.0, LinkKind::primary);
    CHECK(average_degree(net) == doctest::Approx(20.0 / 3000.0));
    CHECK(average_degree(graph_of(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}})) == doctest::Approx(2.4));
    CHECK(average_degree(Graph{}) == 0.0);
}

TEST_CASE("hurwitz zeta against the Riemann zeta") {
    for (double s : {1.05, 1.5, 2.0, 2.5, 3.0, 4.5, 10.0}) {
        double riemann = boost::math::zeta(s);
        CHECK(hurwitz_zeta(s, 1.0) == doctest::Approx(riemann).epsilon(1e-12));
        CHECK(hurwitz_zeta(s, 2.0) == doctest::Approx(riemann - 1.0).epsilon(1e-12));
        CHECK(hurwitz_zeta(s, 5.0) ==
              doctest::Approx(riemann - 1.0 - std::pow(2, -s) - std::pow(3, -s) - std::pow(4, -s)).epsilon(1e-12));
    }
    CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
}

TEST_CASE("discrete power-law MLE recovers known exponents") {
    Rng rng(2024);
    for (double gamma : {2.5, 3.0}) {
        auto degrees = powerlaw_sample(gamma, 2, 100000, rng);
        auto hat = powerlaw_exponent(degrees, 2);
        REQUIRE(hat.has_value());
        CHECK(std::abs(*hat - gamma) <= 0.05);
    }
}

TEST_CASE("power-law exponent is missing for degenerate tails") {
    std::vector<int> same(500, 3);
    CHECK_FALSE(powerlaw_exponent(same).has_value());
    CHECK_FALSE(powerlaw_exponent_approx(same).has_value());
    std::vector<int> short_tail{2, 3, 4, 5, 1, 1, 0};
    CHECK_FALSE(powerlaw_exponent(short_tail).has_value());
    std::vector<int> only_low(500, 1);
    CHECK_FALSE(powerlaw_exponent(only_low).has_value());
}

TEST_CASE("average shortest path length") {
    CHECK(average_shortest_path_length(testing::path4()) == doctest::Approx(20.0 / 12.0));
    CHECK(average_shortest_path_length(graph_of(2, {{0, 1}})) == doctest::Approx(1.0));
    CHECK(average_shortest_path_length(graph_of(4, {{0, 1}, {2, 3}})) == doctest::Approx(1.0));
    // Largest component is the path 3-4-5-6; the 0-1 edge is ignored.
    CHECK(average_shortest_path_length(graph_of(7, {{0, 1}, {3, 4}, {4, 5}, {5, 6}})) == doctest::Approx(20.0 / 12.0));
    CHECK(average_shortest_path_length(Graph(3)) == 0.0);
}

TEST_CASE("clustering") {
    auto k22 = testing::cycle4();
    CHECK(triangle_clustering(k22) == 0.0);
    CHECK(square_clustering(k22) == doctest::Approx(1.0));
    CHECK(square_clustering(testing::star3()) == 0.0);
    CHECK(triangle_clustering(graph_of(3, {{0, 1}, {1, 2}, {2, 0}})) == doctest::Approx(1.0));

    // Reference values from networkx.square_clustering / transitivity /
    // average_shortest_path_length on the same edge list.
    auto g = graph_of(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 5}, {5, 4}, {4, 3}, {2, 7}, {7, 6}, {6, 1}, {4, 7}});
    auto local = square_clustering_local(g);
    const double expected[] = {0.25, 0.25, 1.0 / 3, 1.0 / 3, 0.25, 1.0 / 3, 1.0 / 3, 0.25};
    for (int v = 0; v < 8; ++v) CHECK(local[static_cast<std::size_t>(v)] == doctest::Approx(expected[v]));
    CHECK(square_clustering(g) == doctest::Approx(0.29166666666666663));
    CHECK(triangle_clustering(g) == 0.0);
    CHECK(average_shortest_path_length(g) == doctest::Approx(1.7857142857142858));
}

TEST_CASE("summary of a grown network") {
    GrowthConfig cfg;
    cfg.horizon = 100;
    auto net = grow_network(cfg, 3);
    auto t = summarize_topology(net);
    CHECK(t.average_degree == doctest::Approx(2.0 * net.links().size() / 3000.0));
    CHECK(t.clustering_triangle == 0.0);
    CHECK(t.avg_shortest_path > 1.0);
    CHECK(t.clustering_square >= 0.0);
    CHECK(t.clustering_square <= 1.0);
}
