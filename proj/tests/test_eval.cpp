#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "odl/eval.hpp"
#include "odl/model.hpp"
#include "odl/rng.hpp"

using namespace odl;

namespace {

OverlapClustering make_clustering(std::vector<std::vector<int>> clusters) {
    OverlapClustering oc;
    oc.clusters = std::move(clusters);
    oc.provenance.assign(oc.clusters.size(), {});
    return oc;
}

SampleSet make_codes(int m, std::vector<SparseCode> codes) {
    SampleSet ss;
    ss.p = static_cast<int>(codes.size());
    ss.cfg.m = m;
    ss.ground_truth = std::move(codes);
    return ss;
}

// Brute-force best total |<hat_i, ref_{pi(i)}>| over all m! permutations.
double brute_force_objective(const Dictionary& a_ref, const Dictionary& a_hat) {
    const Eigen::MatrixXd score = (a_hat.columns.transpose() * a_ref.columns).cwiseAbs();
    const int m = a_ref.m;
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    double best = -1.0;
    do {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += score(i, idx[static_cast<std::size_t>(i)]);
        best = std::max(best, s);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

double objective_of(const Alignment& al, const Dictionary& a_ref, const Dictionary& a_hat) {
    double s = 0.0;
    for (int i = 0; i < a_ref.m; ++i)
        s += std::abs(a_hat.columns.col(i).dot(a_ref.columns.col(al.perm[i])));
    return s;
}

}  // namespace

TEST_CASE("align_dictionaries on identical input is the identity") {
    Dictionary a = gen_random_dictionary(16, 6, std::nullopt, 801);
    Alignment al = align_dictionaries(a, a);
    for (int i = 0; i < 6; ++i) {
        CHECK(al.perm[i] == i);
        CHECK(al.signs[i] == 1);
        CHECK(al.per_column_err[i] == 0.0);
    }
    CHECK(al.max_err == 0.0);
}

TEST_CASE("align_dictionaries undoes a signed permutation exactly") {
    Dictionary a = gen_random_dictionary(16, 6, std::nullopt, 802);
    Dictionary hat = a;
    const int signs[6] = {1, -1, 1, -1, -1, 1};
    for (int i = 0; i < 6; ++i) hat.columns.col(i) = signs[i] * a.columns.col(5 - i);

    Alignment al = align_dictionaries(a, hat);
    for (int i = 0; i < 6; ++i) {
        CHECK(al.perm[i] == 5 - i);
        CHECK(al.signs[i] == signs[i]);
        CHECK(al.per_column_err[i] == 0.0);
    }
    CHECK(al.max_err == 0.0);

    // any genuine deviation must surface in max_err
    hat.columns(0, 2) += 1e-3;
    CHECK(align_dictionaries(a, hat).max_err > 1e-4);
}

TEST_CASE("align_dictionaries attains the exhaustive assignment optimum") {
    // unrelated dictionaries: the score matrix has no planted structure
    Dictionary ref = gen_random_dictionary(12, 8, std::nullopt, 803);
    Dictionary hat = gen_random_dictionary(12, 8, std::nullopt, 804);
    Alignment al = align_dictionaries(ref, hat);
    CHECK(objective_of(al, ref, hat) ==
          doctest::Approx(brute_force_objective(ref, hat)).epsilon(1e-12));

    // perm is a bijection
    std::vector<int> sorted = al.perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 8; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("align_dictionaries recovers a planted noisy correspondence") {
    Dictionary ref = gen_random_dictionary(32, 8, 4.0, 805);
    const int planted_perm[8] = {3, 0, 7, 5, 1, 6, 2, 4};
    const int planted_sign[8] = {1, -1, -1, 1, 1, -1, 1, -1};
    Dictionary hat = ref;
    Rng rng(806);
    for (int i = 0; i < 8; ++i) {
        Eigen::VectorXd g(32);
        for (int r = 0; r < 32; ++r) g[r] = rng.normal();
        g *= 0.05 / g.norm();
        Eigen::VectorXd col = planted_sign[i] * ref.columns.col(planted_perm[i]) + g;
        hat.columns.col(i) = col / col.norm();
    }

    Alignment al = align_dictionaries(ref, hat);
    CHECK(objective_of(al, ref, hat) ==
          doctest::Approx(brute_force_objective(ref, hat)).epsilon(1e-12));
    for (int i = 0; i < 8; ++i) {
        CHECK(al.perm[i] == planted_perm[i]);
        CHECK(al.signs[i] == planted_sign[i]);
        CHECK(al.per_column_err[i] ==
              doctest::Approx((hat.columns.col(i) -
                               planted_sign[i] * ref.columns.col(planted_perm[i]))
                                  .norm())
                  .epsilon(1e-12));
        CHECK(al.per_column_err[i] < 0.08);
    }

    // relabeling the estimate must not change the aligned errors
    const int relabel[8] = {6, 2, 0, 5, 7, 1, 4, 3};
    const int flip[8] = {-1, 1, 1, -1, 1, 1, -1, -1};
    Dictionary hat2 = hat;
    for (int i = 0; i < 8; ++i) hat2.columns.col(i) = flip[i] * hat.columns.col(relabel[i]);
    Alignment al2 = align_dictionaries(ref, hat2);
    CHECK(al2.max_err == doctest::Approx(al.max_err).epsilon(1e-12));
    std::vector<double> e1 = al.per_column_err, e2 = al2.per_column_err;
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    for (int i = 0; i < 8; ++i)
        CHECK(e2[static_cast<std::size_t>(i)] ==
              doctest::Approx(e1[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("align_dictionaries rejects shape mismatches") {
    Dictionary a = gen_random_dictionary(8, 4, std::nullopt, 807);
    Dictionary wide = gen_random_dictionary(8, 5, std::nullopt, 808);
    Dictionary tall = gen_random_dictionary(9, 4, std::nullopt, 809);
    CHECK_THROWS_AS(align_dictionaries(a, wide), std::invalid_argument);
    CHECK_THROWS_AS(align_dictionaries(a, tall), std::invalid_argument);
}

TEST_CASE("clustering_score on matching and defective families") {
    OverlapClustering oracle = make_clustering({{0, 1, 2}, {3, 4, 5}});

    SUBCASE("identical") {
        ClusterScore s = clustering_score(oracle, oracle);
        CHECK(s.jaccard == std::vector<double>{1.0, 1.0});
        CHECK(s.exact == 2);
        CHECK(s.missed == 0);
        CHECK(s.spurious == 0);
    }

    SUBCASE("one cluster missing") {
        ClusterScore s = clustering_score(oracle, make_clustering({{0, 1, 2}}));
        CHECK(s.jaccard == std::vector<double>{1.0, 0.0});
        CHECK(s.exact == 1);
        CHECK(s.missed == 1);
        CHECK(s.spurious == 0);
    }

    SUBCASE("extra junk cluster") {
        ClusterScore s =
            clustering_score(oracle, make_clustering({{0, 1, 2}, {3, 4, 5}, {7, 8}}));
        CHECK(s.exact == 2);
        CHECK(s.missed == 0);
        CHECK(s.spurious == 1);
    }

    SUBCASE("dropped member costs jaccard but not the match") {
        ClusterScore s = clustering_score(oracle, make_clustering({{0, 1}, {3, 4, 5}}));
        CHECK(s.jaccard[0] == doctest::Approx(2.0 / 3.0));
        CHECK(s.jaccard[1] == 1.0);
        CHECK(s.exact == 1);
        CHECK(s.missed == 0);
        CHECK(s.spurious == 0);
    }

    SUBCASE("greedy matching spends a found cluster only once") {
        OverlapClustering overlapping = make_clustering({{0, 1, 2}, {2, 3, 4}});
        ClusterScore s = clustering_score(overlapping, make_clustering({{0, 1, 2}}));
        CHECK(s.jaccard == std::vector<double>{1.0, 0.0});
        CHECK(s.exact == 1);
        CHECK(s.missed == 1);
        CHECK(s.spurious == 0);
    }

    SUBCASE("empty sides") {
        ClusterScore s = clustering_score(oracle, make_clustering({}));
        CHECK(s.jaccard == std::vector<double>{0.0, 0.0});
        CHECK(s.missed == 2);
        CHECK(s.spurious == 0);

        ClusterScore t = clustering_score(make_clustering({}), oracle);
        CHECK(t.jaccard.empty());
        CHECK(t.missed == 0);
        CHECK(t.spurious == 2);
    }
}

TEST_CASE("sign_accuracy scores the better of the two conventions") {
    // six samples carrying coordinate 2: values + + + - - -
    std::vector<SparseCode> codes;
    for (int i = 0; i < 6; ++i)
        codes.push_back(SparseCode{{2}, {i < 3 ? 1.0 : -1.0}});
    SampleSet ss = make_codes(4, std::move(codes));

    SignedCluster perfect;
    perfect.members_all = {0, 1, 2, 3, 4, 5};
    perfect.members_pos = {0, 1, 2};
    CHECK(sign_accuracy(ss, {perfect}) == 1.0);

    // the globally flipped convention is equally good
    SignedCluster flipped = perfect;
    flipped.members_pos = {3, 4, 5};
    CHECK(sign_accuracy(ss, {flipped}) == 1.0);

    // a half-wrong split can do no better than chance under either convention
    SignedCluster half = perfect;
    half.members_pos = {0, 3};
    CHECK(sign_accuracy(ss, {half}) == 0.5);

    // average over clusters
    CHECK(sign_accuracy(ss, {perfect, half}) == doctest::Approx(0.75));
}

TEST_CASE("sign_accuracy scores against the majority coordinate") {
    // members 0..2 carry coordinate 3; member 3 carries only coordinate 1 and
    // holds no ground-truth sign for the cluster's majority coordinate
    std::vector<SparseCode> codes = {SparseCode{{3}, {1.0}}, SparseCode{{3}, {1.0}},
                                     SparseCode{{0, 3}, {-1.0, 1.0}},
                                     SparseCode{{1}, {-1.0}}};
    SampleSet ss = make_codes(5, std::move(codes));
    SignedCluster sc;
    sc.members_all = {0, 1, 2, 3};
    sc.members_pos = {0, 1, 2};
    CHECK(sign_accuracy(ss, {sc}) == 1.0);
}

TEST_CASE("sign_accuracy near one half on an uninformative split") {
    Rng rng(1234);
    std::vector<SparseCode> codes;
    SignedCluster sc;
    for (int i = 0; i < 2000; ++i) {
        codes.push_back(SparseCode{{0}, {rng.uniform01() < 0.5 ? 1.0 : -1.0}});
        sc.members_all.push_back(i);
        if (i % 2 == 0) sc.members_pos.push_back(i);
    }
    SampleSet ss = make_codes(2, std::move(codes));
    const double acc = sign_accuracy(ss, {sc});
    CHECK(acc >= 0.5);
    CHECK(acc < 0.56);
}

TEST_CASE("sign_accuracy input validation") {
    SampleSet no_truth;
    no_truth.p = 4;
    no_truth.cfg.m = 2;
    SignedCluster sc;
    sc.members_all = {0, 1};
    sc.members_pos = {0};
    CHECK_THROWS_AS(sign_accuracy(no_truth, {sc}), std::invalid_argument);

    SampleSet ss = make_codes(2, {SparseCode{{0}, {1.0}}});
    CHECK_THROWS_AS(sign_accuracy(ss, {}), std::invalid_argument);

    // a cluster whose members carry no sign information contributes zero
    SampleSet empty_codes = make_codes(2, {SparseCode{}, SparseCode{}});
    SignedCluster blank;
    blank.members_all = {0, 1};
    CHECK(sign_accuracy(empty_codes, {blank}) == 0.0);
}
