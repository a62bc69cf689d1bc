#include "odl/conngraph.hpp"

#include <stdexcept>

namespace odl {

std::size_t ConnectionGraph::edge_count() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits) c += std::size_t(__builtin_popcountll(w));
    return c / 2;
}

void ConnectionGraph::rebuild_neighbor_lists() {
    neighbors.assign(p, {});
    for (int u = 0; u < p; ++u) {
        const std::uint64_t* r = row(u);
        for (int w = 0; w < words; ++w) {
            std::uint64_t x = r[w];
            while (x) {
                int b = __builtin_ctzll(x);
                neighbors[u].push_back(w * 64 + b);
                x &= x - 1;
            }
        }
    }
}

ConnectionGraph ConnectionGraph::blank(int p, double tau) {
    if (p < 1) throw std::invalid_argument("ConnectionGraph::blank: p >= 1 required");
    ConnectionGraph g;
    g.p = p;
    g.tau = tau;
    g.words = (p + 63) / 64;
    g.bits.assign(std::size_t(p) * g.words, 0);
    g.neighbors.assign(p, {});
    return g;
}

bool edge_test(const Eigen::VectorXd& y_i, const Eigen::VectorXd& y_j, double tau) {
    if (y_i.size() != y_j.size()) throw std::invalid_argument("edge_test: length mismatch");
    return std::abs(y_i.dot(y_j)) > tau;
}

ConnectionGraph build_graph(const SampleSet& ss, double tau) {
    if (ss.p < 2) throw std::invalid_argument("build_graph: p >= 2 required");
    ConnectionGraph g = ConnectionGraph::blank(ss.p, tau);

    Eigen::MatrixXf yf = ss.samples.cast<float>();
    const int panel = 2048;
    Eigen::MatrixXf block;
    for (int s = 0; s < ss.p; s += panel) {
        int rows = std::min(panel, ss.p - s);
        block.noalias() = yf.middleCols(s, rows).transpose() * yf;
        for (int a = 0; a < rows; ++a) {
            int i = s + a;
            for (int j = i + 1; j < ss.p; ++j) {
                if (std::abs(block(a, j)) > float(tau)) g.set_edge(i, j);
            }
        }
    }
    g.rebuild_neighbor_lists();
    return g;
}

ConnectionGraph build_graph_from_code(const Dictionary& dict, const SampleSet& ss,
                                      double tau) {
    if (ss.p < 2) throw std::invalid_argument("build_graph_from_code: p >= 2 required");
    if (!ss.has_ground_truth())
        throw std::invalid_argument("build_graph_from_code: ground_truth absent");
    if (ss.cfg.noise_sigma != 0.0)
        throw std::invalid_argument("build_graph_from_code: noiseless only");

    // W(j, :) = ((A^T A) X_j)^T, then <Y_i, Y_j> = sum_{t in Omega_i} X_i[t] W(j, t);
    // the j-scan per (i, t) is a contiguous axpy over W's column t.
    Eigen::MatrixXd gram = dict.columns.transpose() * dict.columns;  // m x m
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(ss.p, dict.m);
    for (int j = 0; j < ss.p; ++j) {
        const SparseCode& c = ss.ground_truth[j];
        for (std::size_t t = 0; t < c.support.size(); ++t)
            w.row(j) += c.values[t] * gram.col(c.support[t]).transpose();
    }

    ConnectionGraph g = ConnectionGraph::blank(ss.p, tau);
    Eigen::VectorXd acc(ss.p);
    for (int i = 0; i < ss.p; ++i) {
        const SparseCode& c = ss.ground_truth[i];
        const int len = ss.p - (i + 1);
        if (len <= 0) break;
        auto tail = acc.head(len);
        tail.setZero();
        for (std::size_t t = 0; t < c.support.size(); ++t)
            tail += c.values[t] * w.col(c.support[t]).segment(i + 1, len);
        for (int off = 0; off < len; ++off)
            if (std::abs(tail[off]) > tau) g.set_edge(i, i + 1 + off);
    }
    g.rebuild_neighbor_lists();
    return g;
}

int common_neighbor_count(const ConnectionGraph& g, const std::vector<int>& nodes) {
    if (nodes.empty()) throw std::invalid_argument("common_neighbor_count: empty query");
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        if (nodes[a] < 0 || nodes[a] >= g.p)
            throw std::out_of_range("common_neighbor_count: node out of range");
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (nodes[a] == nodes[b])
                throw std::invalid_argument("common_neighbor_count: duplicate node");
    }
    int count = 0;
    for (int w = 0; w < g.words; ++w) {
        std::uint64_t acc = g.row(nodes[0])[w];
        for (std::size_t a = 1; a < nodes.size(); ++a) acc &= g.row(nodes[a])[w];
        count += __builtin_popcountll(acc);
    }
    return count;
}

}  // namespace odl
