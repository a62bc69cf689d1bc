#include "odl/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "odl/rng.hpp"

namespace odl {

ClusterParams default_params(long long p, int k, int m, int ell) {
    if (p < 1 || k < 1 || m < 1) throw std::invalid_argument("default_params: p, k, m >= 1");
    if (ell < 3) throw std::invalid_argument("default_params: ell >= 3");
    ClusterParams params;
    params.ell = ell;
    double ln2m = std::log(double(m)) * std::log(double(m));
    if (ell == 3) {
        params.T = int((p * (long long)k) / (10LL * m));
        params.rounds = (long long)std::ceil(10.0 * m * ln2m);
    } else {
        long long denom = 10LL * m * (1LL << ell);
        params.T = int((p * (long long)k) / denom);
        params.rounds = (long long)std::ceil(10.0 * std::pow(double(k), ell - 2) * m * ln2m);
    }
    if (params.T == 0)
        throw std::invalid_argument("default_params: T = 0 (p too small for these k, m)");
    return params;
}

namespace {

// Common-neighbor counts against the intersection I of fixed neighborhoods,
// for every node at once: iterate members z of I and bump counts over Γ(z).
// Far cheaper than per-node AND+popcount when |I|·avg_deg << p·words.
void counts_against(const ConnectionGraph& g, const std::vector<std::uint64_t>& inter,
                    std::vector<int>& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int w = 0; w < g.words; ++w) {
        std::uint64_t x = inter[w];
        while (x) {
            int z = w * 64 + __builtin_ctzll(x);
            x &= x - 1;
            for (int nb : g.neighbors[z]) ++counts[nb];
        }
    }
}

std::vector<std::uint64_t> and_rows(const ConnectionGraph& g, const std::vector<int>& nodes) {
    std::vector<std::uint64_t> acc(g.row(nodes[0]), g.row(nodes[0]) + g.words);
    for (std::size_t a = 1; a < nodes.size(); ++a) {
        const std::uint64_t* r = g.row(nodes[a]);
        for (int w = 0; w < g.words; ++w) acc[w] &= r[w];
    }
    return acc;
}

std::uint64_t hash_members(const std::vector<int>& v) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (int x : v) {
        h ^= std::uint64_t(x) + 0x9e3779b97f4a7c15ull;
        h *= 0x100000001b3ull;
    }
    return h;
}

struct SetCollector {
    std::vector<std::vector<int>> members;
    std::vector<std::vector<int>> tuples;
    std::unordered_map<std::uint64_t, std::vector<int>> by_hash;

    // Keeps the first tuple seen for identical member sets (duplicates deleted).
    void add(std::vector<int> set, std::vector<int> tuple) {
        std::uint64_t h = hash_members(set);
        auto& bucket = by_hash[h];
        for (int idx : bucket)
            if (members[idx] == set) return;
        bucket.push_back(int(members.size()));
        members.push_back(std::move(set));
        tuples.push_back(std::move(tuple));
    }

    // Minimal-set deletion: ascending by size, a set survives unless its
    // generating tuple is contained in a strictly smaller surviving set.
    OverlapClustering survivors() const {
        std::vector<int> order(members.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return members[a].size() < members[b].size();
        });
        OverlapClustering out;
        for (int idx : order) {
            bool deleted = false;
            for (std::size_t s = 0; s < out.clusters.size() && !deleted; ++s) {
                if (out.clusters[s].size() >= members[idx].size()) continue;
                bool all = true;
                for (int t : tuples[idx]) {
                    if (!std::binary_search(out.clusters[s].begin(), out.clusters[s].end(), t)) {
                        all = false;
                        break;
                    }
                }
                deleted = all;
            }
            if (!deleted) {
                out.clusters.push_back(members[idx]);
                out.provenance.push_back(tuples[idx]);
            }
        }
        return out;
    }
};

std::vector<int> collect_at_least(const std::vector<int>& counts, int T) {
    std::vector<int> out;
    for (int w = 0; w < int(counts.size()); ++w)
        if (counts[w] >= T) out.push_back(w);
    return out;
}

void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

}  // namespace

std::vector<int> candidate_set(const ConnectionGraph& g, int u, int v, int T) {
    std::vector<std::uint64_t> inter = and_rows(g, {u, v});
    std::vector<int> counts(g.p);
    counts_against(g, inter, counts);
    std::vector<int> s = collect_at_least(counts, T);
    insert_sorted(s, u);
    insert_sorted(s, v);
    return s;
}

OverlapClustering overlapping_cluster(const ConnectionGraph& g,
                                      const ClusterParams& params,
                                      std::uint64_t seed) {
    if (params.ell != 3)
        throw std::invalid_argument("overlapping_cluster: params.ell must be 3");
    if (params.T < 1 || params.rounds < 1)
        throw std::invalid_argument("overlapping_cluster: T >= 1 and rounds >= 1 required");
    // Degree prefix table for uniform edge draws (uniform over ordered pairs
    // = uniform over edges).
    std::vector<std::size_t> prefix(g.p + 1, 0);
    for (int u = 0; u < g.p; ++u) prefix[u + 1] = prefix[u] + g.neighbors[u].size();
    std::size_t total = prefix[g.p];
    if (total == 0) throw std::invalid_argument("overlapping_cluster: graph has no edges");

    Rng rng = Rng(seed).stream("cluster3");
    SetCollector collector;
    std::vector<int> counts(g.p);
    for (long long round = 0; round < params.rounds; ++round) {
        std::size_t r = rng.below(total);
        int u = int(std::upper_bound(prefix.begin(), prefix.end(), r) - prefix.begin()) - 1;
        int v = g.neighbors[u][r - prefix[u]];

        std::vector<std::uint64_t> inter = and_rows(g, {u, v});
        counts_against(g, inter, counts);
        std::vector<int> s = collect_at_least(counts, params.T);
        if (params.trimming && !s.empty()) s = trim_candidate_set(g, s, params.T);
        insert_sorted(s, u);
        insert_sorted(s, v);
        collector.add(std::move(s), {std::min(u, v), std::max(u, v)});
    }
    return collector.survivors();
}

OverlapClustering overlapping_cluster_l(const ConnectionGraph& g,
                                        const ClusterParams& params,
                                        std::uint64_t seed) {
    if (params.ell < 3) throw std::invalid_argument("overlapping_cluster_l: ell >= 3");
    if (params.T < 1 || params.rounds < 1)
        throw std::invalid_argument("overlapping_cluster_l: T >= 1 and rounds >= 1 required");
    const int ell = params.ell;
    Rng rng = Rng(seed).stream("clusterL");
    SetCollector collector;
    std::vector<int> counts(g.p);
    long long skipped = 0;
    for (long long round = 0; round < params.rounds; ++round) {
        int u = int(rng.below(std::uint64_t(g.p)));
        const auto& nbrs = g.neighbors[u];
        if (int(nbrs.size()) < ell - 1) {
            ++skipped;
            continue;
        }
        std::vector<int> pick = rng.k_subset(int(nbrs.size()), ell - 1);
        std::vector<int> anchors(ell - 1);
        for (int a = 0; a < ell - 1; ++a) anchors[a] = nbrs[pick[a]];

        // Gate: the full common neighborhood of u and all anchors.
        std::vector<int> gate_nodes = anchors;
        gate_nodes.push_back(u);
        std::vector<std::uint64_t> gate = and_rows(g, gate_nodes);
        int gate_size = 0;
        for (std::uint64_t w : gate) gate_size += __builtin_popcountll(w);
        if (gate_size < params.T) continue;

        // Membership test drops the last anchor: counts against
        // Γ(u) ∩ Γ(u_1) ∩ ... ∩ Γ(u_{ell-2}).
        std::vector<int> base(anchors.begin(), anchors.end() - 1);
        base.push_back(u);
        std::vector<std::uint64_t> inter = and_rows(g, base);
        counts_against(g, inter, counts);
        std::vector<int> s = collect_at_least(counts, params.T);
        if (params.trimming && !s.empty()) s = trim_candidate_set(g, s, params.T);
        for (int a : anchors) insert_sorted(s, a);
        std::vector<int> key =
            params.tuple_key_generators ? std::move(base) : std::move(anchors);
        std::sort(key.begin(), key.end());
        collector.add(std::move(s), std::move(key));
    }
    if (skipped == params.rounds)
        throw std::runtime_error("overlapping_cluster_l: every round skipped (graph too sparse)");
    return collector.survivors();
}

std::vector<int> trim_candidate_set(const ConnectionGraph& g,
                                    const std::vector<int>& s_prime, int T) {
    if (s_prime.empty()) throw std::invalid_argument("trim_candidate_set: empty s_prime");
    std::vector<std::uint64_t> mask(g.words, 0);
    for (int w : s_prime) mask[w / 64] |= 1ull << (w % 64);
    std::vector<int> out;
    for (int w : s_prime) {
        const std::uint64_t* r = g.row(w);
        int c = 0;
        for (int q = 0; q < g.words; ++q) c += __builtin_popcountll(r[q] & mask[q]);
        if (c >= T) out.push_back(w);
    }
    return out;
}

OverlapClustering oracle_clustering(const SampleSet& ss) {
    if (ss.p == 0) return {};
    if (!ss.has_ground_truth())
        throw std::invalid_argument("oracle_clustering: ground_truth absent");
    std::vector<std::vector<int>> per_coord(ss.cfg.m);
    for (int j = 0; j < ss.p; ++j)
        for (int idx : ss.ground_truth[j].support) per_coord[idx].push_back(j);
    OverlapClustering out;
    for (int i = 0; i < ss.cfg.m; ++i) {
        if (per_coord[i].empty()) continue;
        out.clusters.push_back(std::move(per_coord[i]));
        out.provenance.emplace_back();
    }
    return out;
}

}  // namespace odl
