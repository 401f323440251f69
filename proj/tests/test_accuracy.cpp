#include <doctest.h>

#include <cmath>
#include <random>

#include "liqdem/accuracy.hpp"
#include "test_helpers.hpp"

using namespace liqdem;
using namespace liqdem::testing;

namespace {

const AccuracyProfile kExampleQ({0.9, 0.9, 0.6, 0.6, 0.6});

}  // namespace

TEST_CASE("group accuracy of the worked five-agent example") {
    const std::vector<double> w{1.8, 1.7, 1.5, 0.0, 0.0};
    const auto report = group_accuracy(kExampleQ, w);
    CHECK(report.value == doctest::Approx(0.918).epsilon(1e-12));
    CHECK(report.guru_count == 3);
    CHECK(report.winning_coalitions == 4);
}

TEST_CASE("single guru accuracy is its own accuracy") {
    const auto report = group_accuracy(AccuracyProfile({0.7}), {1.0});
    CHECK(report.value == doctest::Approx(0.7));
    CHECK(report.guru_count == 1);
}

TEST_CASE("optimal weights of the example reach the reported accuracy") {
    const std::vector<double> w{1.958, 1.958, 0.3613, 0.3613, 0.3613};
    CHECK(group_accuracy(kExampleQ, w).value == doctest::Approx(0.92664).epsilon(1e-4));
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(group_accuracy(kExampleQ, {0, 0, 0, 0, 0}), NoGurus);
    const int n = 30;
    std::vector<double> q(n, 0.6), w(n, 1.0);
    CHECK_THROWS_AS(group_accuracy(AccuracyProfile(q), w), TooManyGurus);
    CHECK_NOTHROW(group_accuracy(AccuracyProfile(q), w, 30));
}

TEST_CASE("tie rule: two equally weighted gurus") {
    // every singleton ties with its complement and counts as winning
    const AccuracyProfile q({0.8, 0.7});
    const auto report = group_accuracy(q, {1.0, 1.0});
    CHECK(report.value == doctest::Approx(1.0 - 0.2 * 0.3).epsilon(1e-12));
    CHECK(report.winning_coalitions == 3);
}

TEST_CASE("three fair coins decide correctly half the time") {
    const auto report = group_accuracy(AccuracyProfile({0.5, 0.5, 0.5}), {1.0, 1.0, 1.0});
    CHECK(report.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("scale invariance of the winning-coalition set") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const auto q = random_accuracies(rng, n);
        std::vector<double> w(n);
        for (auto& wi : w) wi = 0.05 + uniform01(rng);
        const double base = group_accuracy(q, w).value;
        const double scale = 0.1 + 10.0 * uniform01(rng);
        std::vector<double> scaled = w;
        for (auto& wi : scaled) wi *= scale;
        CHECK(group_accuracy(q, scaled).value == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("raising one accuracy never hurts the group") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        auto qv = random_accuracies(rng, n, 0.5, 0.95).values();
        std::vector<double> w(n);
        for (auto& wi : w) wi = 0.05 + uniform01(rng);
        const double before = group_accuracy(AccuracyProfile(qv), w).value;
        const int i = static_cast<int>(rng() % n);
        qv[i] = qv[i] + (1.0 - qv[i]) * uniform01(rng) * 0.9;
        const double after = group_accuracy(AccuracyProfile(qv), w).value;
        CHECK(after >= before - 1e-12);
    }
}

TEST_CASE("monte carlo agrees with exact within three standard errors") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const auto q = random_accuracies(rng, n);
        std::vector<double> w(n);
        double total = 0.0;
        for (auto& wi : w) {
            wi = -std::log(1.0 - uniform01(rng));
            total += wi;
        }
        for (auto& wi : w) wi *= static_cast<double>(n) / total;  // Dirichlet-like, sums to n
        const double exact = group_accuracy(q, w).value;
        const auto mc = group_accuracy_mc(q, w, 100000, rng());
        CHECK(std::abs(mc.value - exact) <= 3.0 * *mc.standard_error + 1e-9);
    }
}

TEST_CASE("perfect dictator is always right under monte carlo") {
    const auto report = group_accuracy_mc(AccuracyProfile({1.0}), {1.0}, 10000, 4);
    CHECK(report.value == 1.0);
}

TEST_CASE("monte carlo is reproducible for a fixed seed") {
    const std::vector<double> w{1.8, 1.7, 1.5, 0.0, 0.0};
    const auto a = group_accuracy_mc(kExampleQ, w, 50000, 21);
    const auto b = group_accuracy_mc(kExampleQ, w, 50000, 21);
    CHECK(a.value == b.value);
}

TEST_CASE("realized-profile diagnostic differs from the canonical definition") {
    // Non-canonical E_d[q_d] vs canonical accuracy of expected weights: both
    // are computed, and on a profile whose realizations have very different
    // guru structures they disagree.
    const auto D = WeightedProfile::from_matrix({{0.5, 0.5, 0.0},
                                                 {0.0, 1.0, 0.0},
                                                 {0.0, 0.0, 1.0}});
    const AccuracyProfile q({0.9, 0.6, 0.6});
    const double canonical = group_accuracy(q, expected_weights_exact(D)).value;
    const double realized = expected_realized_accuracy(q, D);
    CHECK(std::abs(canonical - realized) > 1e-6);

    // they coincide when the profile is deterministic
    const auto I = WeightedProfile::identity(3);
    CHECK(expected_realized_accuracy(q, I) ==
          doctest::Approx(group_accuracy(q, expected_weights_exact(I)).value).epsilon(1e-12));
}
