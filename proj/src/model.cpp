#include "odl/model.hpp"

#include <Eigen/QR>
#include <stdexcept>

namespace odl {

double block_mixture_weight(int m, int block_size, double inflation) {
    if (block_size < 2 || block_size > m || m % block_size != 0)
        throw std::invalid_argument("block_size must divide m and be >= 2");
    if (inflation < 1.0)
        throw std::invalid_argument("moment inflation must be >= 1");
    double alpha = (inflation - 1.0) * double(block_size - 1) / double(m - block_size);
    return std::min(alpha, 1.0);
}

double incoherence(const Dictionary& dict) {
    if (dict.m < 2) throw std::invalid_argument("incoherence: fewer than 2 columns");
    // Gram once; off-diagonal max. O(n m^2).
    Eigen::MatrixXd g = dict.columns.transpose() * dict.columns;
    double best = 0.0;
    for (int i = 0; i < dict.m; ++i)
        for (int j = i + 1; j < dict.m; ++j) best = std::max(best, std::abs(g(i, j)));
    return std::sqrt(double(dict.n)) * best;
}

Dictionary gen_random_dictionary(int n, int m, std::optional<double> target_mu,
                                 std::uint64_t seed, bool orthonormalize) {
    if (n < 1 || m < 1) throw std::invalid_argument("gen_random_dictionary: n, m >= 1");
    if (orthonormalize && m > n)
        throw std::invalid_argument("orthonormalize requires m <= n");
    Rng root(seed);
    constexpr int kRetryCap = 100;
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        Rng draw = root.stream(std::uint64_t(attempt));
        Dictionary d;
        d.n = n;
        d.m = m;
        d.columns.resize(n, m);
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < n; ++i) d.columns(i, j) = draw.normal();
        }
        if (orthonormalize) {
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(d.columns);
            Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
            d.columns = q;
        }
        for (int j = 0; j < m; ++j) d.columns.col(j).normalize();
        d.mu = (m >= 2) ? incoherence(d) : 0.0;
        if (!target_mu || d.mu <= *target_mu) return d;
    }
    throw std::runtime_error("gen_random_dictionary: target_mu infeasible within retry cap");
}

SparseCode sample_code(const GenConfig& cfg, Rng& rng) {
    SparseCode code;
    if (cfg.support_dist == SupportDist::uniform_k_subset) {
        code.support = rng.k_subset(cfg.m, cfg.k);
    } else {
        if (cfg.k > cfg.block_size)
            throw std::invalid_argument("correlated_blocks requires k <= block_size");
        double alpha = block_mixture_weight(cfg.m, cfg.block_size, cfg.moment_inflation);
        if (rng.uniform01() < alpha) {
            int nblocks = cfg.m / cfg.block_size;
            int b = int(rng.below(std::uint64_t(nblocks)));
            code.support = rng.k_subset(cfg.block_size, cfg.k);
            for (int& idx : code.support) idx += b * cfg.block_size;
        } else {
            code.support = rng.k_subset(cfg.m, cfg.k);
        }
    }
    code.values.reserve(code.support.size());
    for (std::size_t t = 0; t < code.support.size(); ++t) {
        double sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
        double mag = 1.0;
        if (cfg.value_dist == ValueDist::uniform_signed)
            mag = 1.0 + (cfg.C - 1.0) * rng.uniform01();
        code.values.push_back(sign * mag);
    }
    return code;
}

SampleSet generate_samples(const Dictionary& dict, const GenConfig& cfg, int p) {
    if (dict.n != cfg.n || dict.m != cfg.m)
        throw std::invalid_argument("generate_samples: dict/cfg dimension mismatch");
    SampleSet ss;
    ss.p = p;
    ss.cfg = cfg;
    ss.dict_mu = dict.mu;
    ss.samples.resize(cfg.n, p);
    ss.ground_truth.resize(p);
    Rng root(cfg.seed);
    Rng codes = root.stream("sample");
    for (int j = 0; j < p; ++j) {
        Rng rj = codes.stream(std::uint64_t(j));
        SparseCode code = sample_code(cfg, rj);
        Eigen::VectorXd y = Eigen::VectorXd::Zero(cfg.n);
        for (std::size_t t = 0; t < code.support.size(); ++t)
            y += code.values[t] * dict.columns.col(code.support[t]);
        if (cfg.noise_sigma > 0.0) {
            for (int i = 0; i < cfg.n; ++i) y[i] += cfg.noise_sigma * rj.normal();
        }
        ss.samples.col(j) = y;
        ss.ground_truth[j] = std::move(code);
    }
    return ss;
}

int max_pairwise_support_overlap(const SampleSet& ss) {
    if (!ss.has_ground_truth())
        throw std::invalid_argument("max_pairwise_support_overlap: ground_truth absent");
    // Bitset supports over m coordinates; pairwise AND+popcount.
    int m = ss.cfg.m;
    int words = (m + 63) / 64;
    std::vector<std::uint64_t> bits(std::size_t(ss.p) * words, 0);
    for (int j = 0; j < ss.p; ++j)
        for (int idx : ss.ground_truth[j].support)
            bits[std::size_t(j) * words + idx / 64] |= 1ull << (idx % 64);
    int best = 0;
    for (int a = 0; a < ss.p; ++a) {
        const std::uint64_t* ra = &bits[std::size_t(a) * words];
        for (int b = a + 1; b < ss.p; ++b) {
            const std::uint64_t* rb = &bits[std::size_t(b) * words];
            int c = 0;
            for (int w = 0; w < words; ++w) c += __builtin_popcountll(ra[w] & rb[w]);
            best = std::max(best, c);
        }
    }
    return best;
}

}  // namespace odl
