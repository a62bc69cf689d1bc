#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "odl/conngraph.hpp"
#include "odl/model.hpp"
#include "odl/rng.hpp"

using namespace odl;

namespace {

ConnectionGraph manual_graph(int p, const std::vector<std::pair<int, int>>& edges) {
    ConnectionGraph g;
    g.p = p;
    g.tau = 0.5;
    g.words = (p + 63) / 64;
    g.bits.assign(std::size_t(p) * g.words, 0);
    for (auto [u, v] : edges) g.set_edge(u, v);
    g.rebuild_neighbor_lists();
    return g;
}

// Naive oracle: intersect sorted adjacency lists of all nodes.
int naive_common(const ConnectionGraph& g, const std::vector<int>& nodes) {
    std::vector<int> acc = g.neighbors[nodes[0]];
    for (std::size_t t = 1; t < nodes.size(); ++t) {
        std::vector<int> next;
        std::set_intersection(acc.begin(), acc.end(), g.neighbors[nodes[t]].begin(),
                              g.neighbors[nodes[t]].end(), std::back_inserter(next));
        acc.swap(next);
    }
    return int(acc.size());
}

SampleSet planted(int n, int m, int k, int p, std::uint64_t seed, Dictionary* dict_out = nullptr) {
    Dictionary d = gen_random_dictionary(n, m, std::nullopt, seed);
    GenConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.k = k;
    cfg.seed = seed + 1;
    SampleSet ss = generate_samples(d, cfg, p);
    if (dict_out) *dict_out = d;
    return ss;
}

}  // namespace

TEST_CASE("edge_test: orthogonal, identical, boundary, and mismatch cases") {
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4), e2 = Eigen::VectorXd::Zero(4);
    e1[0] = 1.0;
    e2[1] = 1.0;
    CHECK_FALSE(edge_test(e1, e2, 0.5));
    CHECK(edge_test(e1, e1, 0.5));
    CHECK(edge_test(e1, -e1, 0.5));  // absolute value
    Eigen::VectorXd half = 0.5 * e1;
    CHECK_FALSE(edge_test(e1, half, 0.5));  // strictly greater than tau
    Eigen::VectorXd shorter = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(edge_test(e1, shorter, 0.5), std::invalid_argument);
}

TEST_CASE("build_graph trivial examples, symmetry, irreflexivity") {
    SampleSet ss;
    ss.p = 3;
    ss.samples = Eigen::MatrixXd::Identity(4, 3);
    ConnectionGraph g = build_graph(ss, 0.5);
    CHECK(g.edge_count() == 0u);

    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 3);  // {e1, e1, e2}
    s(0, 0) = 1.0;
    s(0, 1) = 1.0;
    s(1, 2) = 1.0;
    ss.samples = s;
    g = build_graph(ss, 0.5);
    CHECK(g.edge_count() == 1u);
    CHECK(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK_FALSE(g.has_edge(1, 2));
    for (int u = 0; u < 3; ++u) {
        CHECK_FALSE(g.has_edge(u, u));
        for (int v = 0; v < 3; ++v) CHECK(g.has_edge(u, v) == g.has_edge(v, u));
    }

    SampleSet tiny;
    tiny.p = 1;
    tiny.samples = Eigen::MatrixXd::Zero(4, 1);
    CHECK_THROWS_AS(build_graph(tiny, 0.5), std::invalid_argument);
}

TEST_CASE("build_graph equals the naive per-pair double loop") {
    SampleSet ss = planted(16, 24, 2, 60, 5);
    ConnectionGraph g = build_graph(ss, 0.5);
    std::size_t edges = 0;
    for (int i = 0; i < ss.p; ++i)
        for (int j = i + 1; j < ss.p; ++j) {
            bool naive = std::abs(ss.samples.col(i).dot(ss.samples.col(j))) > 0.5;
            REQUIRE(g.has_edge(i, j) == naive);
            edges += naive;
        }
    CHECK(g.edge_count() == edges);
    for (int u = 0; u < g.p; ++u) REQUIRE(std::is_sorted(g.neighbors[u].begin(), g.neighbors[u].end()));
}

TEST_CASE("build_graph_from_code reproduces build_graph on noiseless data") {
    Dictionary d;
    SampleSet ss = planted(32, 20, 2, 200, 8, &d);
    ConnectionGraph slow = build_graph(ss, 0.5);
    ConnectionGraph fast = build_graph_from_code(d, ss, 0.5);
    REQUIRE(fast.p == slow.p);
    CHECK(fast.bits == slow.bits);
    CHECK(fast.edge_count() == slow.edge_count());

    SampleSet noisy = ss;
    noisy.cfg.noise_sigma = 0.1;
    CHECK_THROWS_AS(build_graph_from_code(d, noisy, 0.5), std::invalid_argument);
    SampleSet blind = ss;
    blind.ground_truth.clear();
    CHECK_THROWS_AS(build_graph_from_code(d, blind, 0.5), std::invalid_argument);
}

TEST_CASE("common_neighbor_count: hand graphs and input validation") {
    ConnectionGraph empty = manual_graph(5, {});
    CHECK(common_neighbor_count(empty, {0, 1, 2}) == 0);

    std::vector<std::pair<int, int>> k5;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) k5.emplace_back(u, v);
    ConnectionGraph complete = manual_graph(5, k5);
    CHECK(common_neighbor_count(complete, {0, 1, 2}) == 2);  // the two remaining nodes

    CHECK_THROWS_AS(common_neighbor_count(complete, {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(common_neighbor_count(complete, {0, 1, 9}), std::out_of_range);
}

TEST_CASE("common_neighbor_count matches the naive oracle on a planted graph") {
    SampleSet ss = planted(64, 30, 2, 150, 12);
    ConnectionGraph g = build_graph(ss, 0.5);
    Rng rng(99);
    for (int t = 0; t < 300; ++t) {
        int u = int(rng.below(150)), v, w;
        do v = int(rng.below(150)); while (v == u);
        do w = int(rng.below(150)); while (w == u || w == v);
        std::vector<int> nodes = {u, v, w};
        REQUIRE(common_neighbor_count(g, nodes) == naive_common(g, nodes));
        std::vector<int> pair = {u, v};
        REQUIRE(common_neighbor_count(g, pair) == naive_common(g, pair));
    }
}

TEST_CASE("disjoint-support pairs essentially never get edges at n = 512") {
    SampleSet ss = planted(512, 100, 3, 500, 77);
    ConnectionGraph g = build_graph(ss, 0.5);
    long long disjoint_pairs = 0, disjoint_edges = 0;
    for (int i = 0; i < ss.p; ++i)
        for (int j = i + 1; j < ss.p; ++j) {
            std::vector<int> inter;
            std::set_intersection(ss.ground_truth[i].support.begin(), ss.ground_truth[i].support.end(),
                                  ss.ground_truth[j].support.begin(), ss.ground_truth[j].support.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) {
                ++disjoint_pairs;
                disjoint_edges += g.has_edge(i, j);
            }
        }
    REQUIRE(disjoint_pairs > 100000);
    CHECK(double(disjoint_edges) / double(disjoint_pairs) < 0.01);
}
