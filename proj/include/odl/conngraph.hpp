#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "odl/model.hpp"

namespace odl {

// Symmetric, irreflexive adjacency over p samples: edge (i,j) iff
// |<Y_i, Y_j>| > tau at build time. Rows stored as bitsets so neighborhood
// intersection is word-parallel AND+popcount; adjacency lists kept alongside
// for neighbor iteration.
struct ConnectionGraph {
    int p = 0;
    double tau = 0.5;
    int words = 0;                        // ceil(p / 64)
    std::vector<std::uint64_t> bits;      // p * words, row-major
    std::vector<std::vector<int>> neighbors;

    const std::uint64_t* row(int u) const { return &bits[std::size_t(u) * words]; }
    bool has_edge(int u, int v) const {
        return (row(u)[v / 64] >> (v % 64)) & 1ull;
    }
    void set_edge(int u, int v) {
        bits[std::size_t(u) * words + v / 64] |= 1ull << (v % 64);
        bits[std::size_t(v) * words + u / 64] |= 1ull << (u % 64);
    }
    std::size_t edge_count() const;
    void rebuild_neighbor_lists();

    // Edgeless graph with the bitset sized for p nodes.
    static ConnectionGraph blank(int p, double tau);
};

bool edge_test(const Eigen::VectorXd& y_i, const Eigen::VectorXd& y_j, double tau);

// Tests all p(p-1)/2 pairs. Inner products computed in blocked single-precision
// GEMM panels; |<Y_i,Y_j>| sits O(1) away from tau in the valid regimes, so f32
// accumulation over n terms never flips an edge in practice.
ConnectionGraph build_graph(const SampleSet& ss, double tau);

// Exact noiseless fast path: <Y_i,Y_j> = X_i^T (A^T A) X_j by associativity,
// O(p^2 k) instead of O(p^2 n). Requires ground truth and noise_sigma = 0.
// Produces the same graph as build_graph up to f.p. rounding.
ConnectionGraph build_graph_from_code(const Dictionary& dict, const SampleSet& ss,
                                      double tau);

// Size of the intersection of the neighborhoods of all given nodes.
int common_neighbor_count(const ConnectionGraph& g, const std::vector<int>& nodes);

}  // namespace odl
