#include <doctest.h>

#include <cmath>
#include <random>

#include "liqdem/games.hpp"
#include "test_helpers.hpp"

using namespace liqdem;
using namespace liqdem::testing;

namespace {

// Two-agent game with cross delegation worth more than self-reliance for
// both sides: x12 > x11 and x21 > x22.
const Matrix kCrossU{{0.6, 0.9}, {0.8, 0.5}};

UtilityMatrix cross_utilities() { return UtilityMatrix::from_matrix(kCrossU); }

}  // namespace

TEST_CASE("mixing utility closed forms on two agents") {
    const auto u = cross_utilities();
    // rows (a, 1-a) and (b, 1-b):
    //   U_0 = a x11 + (1-a)(1-b) x12, the a->b->cycle branch pays 0
    //   U_1 = (1-b) x22 + a b x21
    const double a = 0.3, b = 0.7;
    const auto D = WeightedProfile::from_matrix({{a, 1.0 - a}, {b, 1.0 - b}});
    CHECK(mixing_utility(D, u, 0) ==
          doctest::Approx(a * 0.6 + (1.0 - a) * (1.0 - b) * 0.9).epsilon(1e-12));
    CHECK(mixing_utility(D, u, 1) ==
          doctest::Approx((1.0 - b) * 0.5 + a * b * 0.8).epsilon(1e-12));
}

TEST_CASE("mixing utility on deterministic profiles") {
    const auto u = cross_utilities();
    CHECK(mixing_utility(WeightedProfile::identity(2), u, 0) == doctest::Approx(0.6));
    CHECK(mixing_utility(WeightedProfile::identity(2), u, 1) == doctest::Approx(0.5));
    const auto cyc = WeightedProfile::from_matrix({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(mixing_utility(cyc, u, 0) == 0.0);
    CHECK(mixing_utility(cyc, u, 1) == 0.0);
}

TEST_CASE("sampled mixing utility tracks the exact value") {
    std::mt19937_64 rng(404);
    const auto D = random_full_profile(rng, 5);
    const auto u = UtilityMatrix::greedy(random_accuracies(rng, 5));
    for (int agent = 0; agent < 5; ++agent) {
        const double exact = mixing_utility(D, u, agent);
        const double sampled = mixing_utility_sampled(D, u, agent, 200000, 7 + agent);
        CHECK(sampled == doctest::Approx(exact).epsilon(2e-2));
    }
}

TEST_CASE("mixing utility is affine in the agent's own row") {
    std::mt19937_64 rng(550);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto D = random_full_profile(rng, n);
        const auto u = UtilityMatrix::greedy(random_accuracies(rng, n));
        const int agent = static_cast<int>(rng() % n);
        double combo = 0.0;
        for (int j = 0; j < n; ++j) {
            std::vector<double> pure(n, 0.0);
            pure[j] = 1.0;
            combo += D.at(agent, j) * mixing_utility(D.with_row(agent, pure), u, agent);
        }
        CHECK(mixing_utility(D, u, agent) == doctest::Approx(combo).epsilon(1e-9));
    }
}

TEST_CASE("best response thresholds in the cross game") {
    const auto u = cross_utilities();
    const auto net = Network::complete(2);
    // agent 0 prefers self iff x11 > (1 - b) x12, boundary at b = 1/3
    auto with_b = [&](double b) {
        return WeightedProfile::from_matrix({{1.0, 0.0}, {b, 1.0 - b}});
    };
    CHECK(best_response(with_b(0.0), u, 0, net).first == 1);
    CHECK(best_response(with_b(0.0), u, 0, net).second == doctest::Approx(0.9));
    CHECK(best_response(with_b(0.5), u, 0, net).first == 0);
    // exact indifference breaks toward the lowest index
    CHECK(best_response(with_b(1.0 / 3.0), u, 0, net).first == 0);
}

TEST_CASE("best response respects the network") {
    const AccuracyProfile q({0.6, 0.9, 0.8});
    const auto u = UtilityMatrix::greedy(q);
    const auto net = Network::from_edges(3, {{0, 2}});
    const auto [target, value] = best_response(WeightedProfile::identity(3), u, 0, net);
    CHECK(target == 2);  // 1 pays more but is unreachable
    CHECK(value == doctest::Approx(0.8));
}

TEST_CASE("the three equilibria of the cross game all verify") {
    const auto u = cross_utilities();
    const auto net = Network::complete(2);
    const auto both_to_0 = WeightedProfile::from_matrix({{1.0, 0.0}, {1.0, 0.0}});
    const auto both_to_1 = WeightedProfile::from_matrix({{0.0, 1.0}, {0.0, 1.0}});
    // interior point: indifference pins b = 1/3 (agent 0) and a = 5/8 (agent 1)
    const auto mixed = WeightedProfile::from_matrix(
        {{0.625, 0.375}, {1.0 / 3.0, 2.0 / 3.0}});

    for (const auto* D : {&both_to_0, &both_to_1, &mixed}) {
        const auto check = check_equilibrium(*D, u, net);
        CHECK(check.is_equilibrium);
        CHECK(check.violations.empty());
    }
    const auto mixed_check = check_equilibrium(mixed, u, net);
    CHECK(mixed_check.utilities[0] == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(mixed_check.utilities[1] == doctest::Approx(0.5).epsilon(1e-9));

    const auto identity_check = check_equilibrium(WeightedProfile::identity(2), u, net);
    CHECK_FALSE(identity_check.is_equilibrium);
    CHECK_FALSE(identity_check.violations.empty());
}

TEST_CASE("identity is not an equilibrium under distinct accuracies") {
    const AccuracyProfile q({0.9, 0.6});
    const auto check = check_equilibrium(WeightedProfile::identity(2), UtilityMatrix::greedy(q),
                                         Network::complete(2));
    CHECK_FALSE(check.is_equilibrium);
}

TEST_CASE("best-response dynamics converge to a single guru") {
    const AccuracyProfile q({0.9, 0.6, 0.6});
    const auto u = UtilityMatrix::greedy(q);
    const auto net = Network::complete(3);
    const auto result = best_response_dynamics(WeightedProfile::identity(3), u, net);
    CHECK(result.converged);
    CHECK(result.outcome.is_equilibrium);
    for (double v : result.outcome.utilities) CHECK(v == doctest::Approx(0.9).epsilon(1e-12));
    CHECK_FALSE(result.trace.empty());
    for (const auto& move : result.trace) CHECK(move.utility_after > move.utility_before);
}

TEST_CASE("dynamics with random order reach an equilibrium too") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto q = random_accuracies(rng, n);
        const auto u = UtilityMatrix::greedy(q);
        const auto net = Network::complete(n);
        const auto result = best_response_dynamics(WeightedProfile::identity(n), u, net,
                                                   UpdateOrder::Random, rng());
        CHECK(result.converged);
        CHECK(result.outcome.is_equilibrium);
    }
}

TEST_CASE("equal accuracies are a fixed point of the dynamics") {
    const AccuracyProfile q({0.7, 0.7, 0.7});
    const auto result = best_response_dynamics(WeightedProfile::identity(3),
                                               UtilityMatrix::greedy(q), Network::complete(3));
    CHECK(result.converged);
    CHECK(result.trace.empty());
    CHECK(result.rounds == 1);
}

TEST_CASE("max-accuracy equilibrium construction") {
    SUBCASE("two tied leaders split the followers") {
        const auto D = max_accuracy_equilibrium(AccuracyProfile({0.9, 0.9, 0.6}));
        CHECK(D.at(0, 0) == 1.0);
        CHECK(D.at(1, 1) == 1.0);
        CHECK(D.at(2, 0) == doctest::Approx(0.5));
        CHECK(D.at(2, 1) == doctest::Approx(0.5));
        const auto w = expected_weights_exact(D);
        CHECK(w[0] == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(w[1] == doctest::Approx(1.5).epsilon(1e-12));
        const auto check = check_equilibrium(D, UtilityMatrix::greedy(AccuracyProfile({0.9, 0.9, 0.6})),
                                             Network::complete(3));
        CHECK(check.is_equilibrium);
    }
    SUBCASE("a unique leader absorbs everything") {
        const auto D = max_accuracy_equilibrium(AccuracyProfile({0.9, 0.6}));
        CHECK(D.at(0, 0) == 1.0);
        CHECK(D.at(1, 0) == 1.0);
    }
    SUBCASE("it attains the best accuracy among all equilibria, exhaustively") {
        // every pure equilibrium of a greedy game on a complete network is a
        // single-leader profile, so its accuracy is at most max q; the
        // construction ties or beats that
        const AccuracyProfile q({0.9, 0.9, 0.6, 0.6});
        const auto D = max_accuracy_equilibrium(q);
        const double constructed = group_accuracy(q, expected_weights_exact(D)).value;
        const auto u = UtilityMatrix::greedy(q);
        const auto net = Network::complete(4);
        double best_pure_ne = 0.0;
        for (const auto& d : enumerate_pure_equilibria(u, net)) {
            const auto r = resolve_gurus(d);
            if (r.gurus.empty()) continue;
            best_pure_ne = std::max(best_pure_ne, group_accuracy(q, r.weights).value);
        }
        CHECK(constructed >= best_pure_ne - 1e-12);
    }
}

TEST_CASE("price of anarchy on the worked example") {
    const auto poa = price_of_anarchy(AccuracyProfile({0.9, 0.9, 0.6, 0.6, 0.6}));
    CHECK(poa.worst_equilibrium == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(poa.optimum == doctest::Approx(0.92664).epsilon(1e-4));
    CHECK(poa.poa == doctest::Approx(poa.optimum / 0.9).epsilon(1e-12));
    CHECK(poa.poa > 1.0);

    const auto single = price_of_anarchy(AccuracyProfile({0.8}));
    CHECK(single.poa == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("equilibria of greedy games are acyclic") {
    const AccuracyProfile q({0.7, 0.7});
    const auto u = UtilityMatrix::greedy(q);
    const auto net = Network::complete(2);

    const auto cyc = WeightedProfile::from_matrix({{0.0, 1.0}, {1.0, 0.0}});
    const auto on_cycle = check_equilibrium_acyclicity(cyc, u, net);
    CHECK_FALSE(on_cycle.is_equilibrium);
    CHECK_FALSE(on_cycle.acyclic);
    CHECK(on_cycle.holds);  // the implication is vacuously true

    const auto on_identity = check_equilibrium_acyclicity(WeightedProfile::identity(2), u, net);
    CHECK(on_identity.is_equilibrium);
    CHECK(on_identity.acyclic);
    CHECK(on_identity.holds);
}

TEST_CASE("the implication holds on random profiles and games") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto q = random_accuracies(rng, n);
        const auto u = UtilityMatrix::greedy(q);
        const auto net = trial % 2 == 0 ? Network::complete(n) : random_network(rng, n, 0.5);
        const auto D = trial % 2 == 0 ? random_sparse_profile(rng, n, 2)
                                      : WeightedProfile::identity(n);
        CHECK(check_equilibrium_acyclicity(D, u, net).holds);
    }
}

TEST_CASE("pure equilibrium enumeration") {
    SUBCASE("distinct accuracies leave a single pure equilibrium") {
        const auto eqs = enumerate_pure_equilibria(
            UtilityMatrix::greedy(AccuracyProfile({0.9, 0.6})), Network::complete(2));
        REQUIRE(eqs.size() == 1);
        CHECK(eqs[0].d == std::vector<int>{0, 0});
    }
    SUBCASE("tied accuracies admit every acyclic single-or-self profile") {
        const auto eqs = enumerate_pure_equilibria(
            UtilityMatrix::greedy(AccuracyProfile({0.7, 0.7})), Network::complete(2));
        CHECK(eqs.size() == 3);  // (0,0), (0,1), (1,1); the 2-cycle pays zero
    }
    SUBCASE("size guard") {
        std::vector<double> q8(8, 0.6);
        CHECK_THROWS_AS(enumerate_pure_equilibria(UtilityMatrix::greedy(AccuracyProfile(q8)),
                                                  Network::complete(8)),
                        InstanceTooLarge);
    }
}
