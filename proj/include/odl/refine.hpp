#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odl/model.hpp"

namespace odl {

struct RefineConfig {
    double tau = 0.5;           // support-inference threshold, in (0,1)
    int q = 1;                  // fresh samples per round
    int rounds = 0;             // executed rounds cap (0 = no cap)
    double target_error = 0.0;  // stop when max column change falls below (0 = unused)
    std::uint64_t seed = 0;
};

struct RefineTraceRow {
    int round = 0;
    std::optional<double> max_err;   // vs reference after alignment, when available
    std::optional<double> mean_err;
    std::optional<double> support_acc;  // fraction of batch samples with exact support
    double changed_norm = 0.0;          // max per-column ||B'_j - B_j||
    std::vector<int> perm;              // per-column alignment state (empty w/o reference)
    std::vector<int> signs;
};

struct RefineResult {
    Dictionary estimate;
    std::vector<RefineTraceRow> trace;
    std::vector<int> carried_columns;  // columns with an empty positive side in the last round
};

// Thresholded support set {j : |<y, B_j>| > tau}, ascending.
std::vector<int> infer_support(const Eigen::VectorXd& y, const Dictionary& b, double tau);

// Least-squares solution of min ||B_sub x - y|| via a Householder QR of the
// column submatrix.  Throws when the Gram condition number exceeds 1e8 or the
// system is rank deficient.
Eigen::VectorXd least_squares_coeffs(const Eigen::MatrixXd& b_sub, const Eigen::VectorXd& y);

// One IterativeAverage round over the batch: per dictionary index j, the
// normalized sum of residuals Q_{i,j} = y_i - sum_{t in support\{j}} B_t xhat_t
// over the positive side {i : <y_i, B_j> > tau}.  Columns with an empty
// positive side carry over unchanged and are reported via `carried`.
Dictionary iterative_average_step(const Dictionary& b, const SampleSet& batch, double tau,
                                  std::vector<int>* carried = nullptr);

// Runs iterative_average_step on disjoint fresh q-sample batches carved from
// `pool` until cfg.rounds execute or the max column change drops below
// cfg.target_error.  Throws when the pool is exhausted mid-schedule or the
// change grows two consecutive rounds above a 1e-12 floor (divergence; the
// floor exempts converged-state jitter).  When `reference` is given, each
// trace row carries aligned per-column errors.
RefineResult refine(const Dictionary& b0, const SampleSet& pool, const RefineConfig& cfg,
                    const Dictionary* reference = nullptr);

// JSON-lines rendering of the trace: one row per round.
std::string trace_json_lines(const std::vector<RefineTraceRow>& trace);

}  // namespace odl
