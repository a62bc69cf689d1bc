#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "odl/rng.hpp"

namespace odl {

// n x m matrix of unit-norm columns ("atoms") with its measured incoherence
// mu = sqrt(n) * max_{i != j} |<A_i, A_j>|.
struct Dictionary {
    int n = 0;
    int m = 0;
    Eigen::MatrixXd columns;  // n x m, each column unit norm
    double mu = 0.0;
};

// Per-sample support set Omega and the nonzero values on it.
struct SparseCode {
    std::vector<int> support;    // sorted, 0-indexed, |support| <= k
    std::vector<double> values;  // parallel to support, |v| in [1, C]
};

enum class ValueDist { rademacher, uniform_signed };
enum class SupportDist { uniform_k_subset, correlated_blocks };

struct GenConfig {
    int n = 0;
    int m = 0;
    int k = 0;
    double C = 1.0;
    ValueDist value_dist = ValueDist::rademacher;
    SupportDist support_dist = SupportDist::uniform_k_subset;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    // correlated_blocks knobs: coordinates are partitioned into blocks of
    // `block_size`; with the block-draw probability implied by
    // `moment_inflation` the support is drawn inside one random block.
    // Uniform marginals P[i in Omega] = k/m are preserved exactly.
    int block_size = 10;
    double moment_inflation = 2.0;  // cap on pairwise moment inflation
};

// Block-draw mixture weight alpha giving pairwise same-block moment
// inflation exactly `inflation`: inflation = 1 + alpha * (m - B) / (B - 1).
double block_mixture_weight(int m, int block_size, double inflation);

struct SampleSet {
    int p = 0;
    Eigen::MatrixXd samples;  // n x p, column j = Y^{(j)}
    std::vector<SparseCode> ground_truth;  // empty if unavailable
    GenConfig cfg;
    double dict_mu = 0.0;  // measured mu of the generating dictionary
    bool has_ground_truth() const { return !ground_truth.empty(); }
};

// Normalized i.i.d. Gaussian columns; if target_mu is set, redraw until the
// measured incoherence is <= target_mu (retry cap 100). With orthonormalize,
// columns are the Q factor of the Gaussian draw (requires m <= n), mu = 0
// up to rounding.
Dictionary gen_random_dictionary(int n, int m, std::optional<double> target_mu,
                                 std::uint64_t seed, bool orthonormalize = false);

// sqrt(n) * max over distinct column pairs of |<A_i, A_j>|.
double incoherence(const Dictionary& dict);

SparseCode sample_code(const GenConfig& cfg, Rng& rng);

// p samples Y^{(j)} = sum_{i in Omega} A_i X_i + eta, eta spherical Gaussian
// with per-coordinate std cfg.noise_sigma. Deterministic given cfg.seed;
// sample j uses the derived stream ("sample", j).
SampleSet generate_samples(const Dictionary& dict, const GenConfig& cfg, int p);

// Max over sample pairs of |Omega_i ∩ Omega_j| (the Q diagnostic).
int max_pairwise_support_overlap(const SampleSet& ss);

}  // namespace odl
