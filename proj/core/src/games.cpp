#include "liqdem/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "liqdem/rng.hpp"

namespace liqdem {

UtilityMatrix UtilityMatrix::from_matrix(Matrix u) {
    const int n = static_cast<int>(u.size());
    if (n == 0) throw InvalidInstance("utility matrix must contain at least one row");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(u[i].size()) != n)
            throw InvalidInstance("utility row " + std::to_string(i) + " has wrong length");
        for (double v : u[i])
            if (!std::isfinite(v)) throw InvalidInstance("utility entries must be finite");
    }
    return UtilityMatrix(std::move(u));
}

UtilityMatrix UtilityMatrix::greedy(const AccuracyProfile& q) {
    const int n = q.size();
    Matrix u(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u[i][j] = q[j];
    return UtilityMatrix(std::move(u));
}

double mixing_utility(const WeightedProfile& D, const UtilityMatrix& u, int agent,
                      std::uint64_t cap) {
    if (u.size() != D.size()) throw InvalidInstance("utility matrix size mismatch");
    double total = 0.0;
    for_each_support_profile(D, cap, [&](const PureProfile& d, double p) {
        const int g = guru_of(d.d, agent);
        if (g >= 0) total += p * u.at(agent, g);
    });
    return total;
}

double mixing_utility_sampled(const WeightedProfile& D, const UtilityMatrix& u, int agent,
                              std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidInstance("sample count must be positive");
    const int n = D.size();
    std::mt19937_64 rng(seed);
    std::vector<int> d(n, 0);
    double total = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) d[i] = draw_index(rng, D.row(i));
        const int g = guru_of(d, agent);
        if (g >= 0) total += u.at(agent, g);
    }
    return total / static_cast<double>(samples);
}

std::pair<int, double> best_response(const WeightedProfile& D, const UtilityMatrix& u, int agent,
                                     const Network& network, std::uint64_t cap) {
    int best_target = agent;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int j : network.neighborhood(agent)) {
        const double value = mixing_utility(D.with_pure_row(agent, j), u, agent, cap);
        if (value > best_value + kDeviationTolerance) {
            best_value = value;
            best_target = j;
        }
    }
    return {best_target, best_value};
}

EquilibriumCheck check_equilibrium(const WeightedProfile& D, const UtilityMatrix& u,
                                   const Network& network, std::uint64_t cap, double tol) {
    const int n = D.size();
    EquilibriumCheck out;
    out.is_equilibrium = true;
    out.deviations_checked = "all permitted pure rows (sufficient: utility affine in own row)";
    out.utilities.resize(n);
    for (int i = 0; i < n; ++i) out.utilities[i] = mixing_utility(D, u, i, cap);
    for (int i = 0; i < n; ++i) {
        for (int j : network.neighborhood(i)) {
            const double value = mixing_utility(D.with_pure_row(i, j), u, i, cap);
            if (value > out.utilities[i] + tol) {
                out.is_equilibrium = false;
                out.violations.push_back("agent " + std::to_string(i) + " gains " +
                                         std::to_string(value - out.utilities[i]) +
                                         " by delegating to " + std::to_string(j));
            }
        }
    }
    return out;
}

DynamicsResult best_response_dynamics(const WeightedProfile& start, const UtilityMatrix& u,
                                      const Network& network, UpdateOrder order,
                                      std::uint64_t seed, int max_rounds, double tol,
                                      std::uint64_t cap) {
    const int n = start.size();
    DynamicsResult result{start, {}, {}, false, 0};
    std::mt19937_64 rng(seed);
    std::vector<int> agents(n);
    std::iota(agents.begin(), agents.end(), 0);

    for (int round = 0; round < max_rounds; ++round) {
        if (order == UpdateOrder::Random) {
            // Fisher-Yates with the shared stream keeps traces reproducible.
            for (int i = n - 1; i > 0; --i) {
                const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
                std::swap(agents[i], agents[j]);
            }
        }
        bool moved = false;
        for (int i : agents) {
            const double current = mixing_utility(result.profile, u, i, cap);
            const auto [target, value] = best_response(result.profile, u, i, network, cap);
            if (value > current + tol) {
                result.profile = result.profile.with_pure_row(i, target);
                result.trace.push_back({round, i, target, current, value});
                moved = true;
            }
        }
        result.rounds = round + 1;
        if (!moved) {
            result.converged = true;
            break;
        }
    }
    result.outcome = check_equilibrium(result.profile, u, network, cap, tol);
    return result;
}

WeightedProfile max_accuracy_equilibrium(const AccuracyProfile& q) {
    const int n = q.size();
    const double top = *std::max_element(q.values().begin(), q.values().end());
    std::vector<int> best_agents;
    for (int i = 0; i < n; ++i)
        if (q[i] >= top - 1e-12) best_agents.push_back(i);
    const double share = 1.0 / static_cast<double>(best_agents.size());

    Matrix rows(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        if (q[i] >= top - 1e-12) {
            rows[i][i] = 1.0;
        } else {
            for (int g : best_agents) rows[i][g] = share;
        }
    }
    return WeightedProfile::from_matrix(std::move(rows));
}

PoAResult price_of_anarchy(const AccuracyProfile& q) {
    PoAResult out;
    const auto optimal = optimal_delegation(q);
    out.optimum = group_accuracy(q, expected_weights_exact(optimal)).value;
    // Worst greedy-delegation equilibrium: everyone behind a single guru of
    // maximal accuracy, so the group is exactly as good as that one agent.
    out.worst_equilibrium = *std::max_element(q.values().begin(), q.values().end());
    out.poa = out.optimum / out.worst_equilibrium;
    return out;
}

AcyclicityCheck check_equilibrium_acyclicity(const WeightedProfile& D, const UtilityMatrix& u,
                                             const Network& network, std::uint64_t cap) {
    AcyclicityCheck out;
    out.is_equilibrium = check_equilibrium(D, u, network, cap).is_equilibrium;
    out.acyclic = delegation_graph(D).is_acyclic();
    out.holds = !out.is_equilibrium || out.acyclic;
    return out;
}

std::vector<PureProfile> enumerate_pure_equilibria(const UtilityMatrix& u,
                                                   const Network& network, double tol) {
    const int n = u.size();
    if (n > 7) throw InstanceTooLarge(n, 7, "pure-equilibrium enumeration");

    std::vector<std::vector<int>> choices(n);
    for (int i = 0; i < n; ++i) choices[i] = network.neighborhood(i);

    auto pure_utility = [&](const std::vector<int>& d, int agent) {
        const int g = guru_of(d, agent);
        return g >= 0 ? u.at(agent, g) : 0.0;
    };

    std::vector<PureProfile> equilibria;
    std::vector<int> d(n, 0);
    std::vector<int> pos(n, 0);
    for (int i = 0; i < n; ++i) d[i] = choices[i][0];
    while (true) {
        bool stable = true;
        for (int i = 0; i < n && stable; ++i) {
            const double current = pure_utility(d, i);
            const int original = d[i];
            for (int j : choices[i]) {
                if (j == original) continue;
                d[i] = j;
                if (pure_utility(d, i) > current + tol) {
                    stable = false;
                    break;
                }
            }
            d[i] = original;
        }
        if (stable) equilibria.emplace_back(d);

        int level = n - 1;
        while (level >= 0 && pos[level] + 1 == static_cast<int>(choices[level].size())) {
            pos[level] = 0;
            d[level] = choices[level][0];
            --level;
        }
        if (level < 0) break;
        ++pos[level];
        d[level] = choices[level][pos[level]];
    }
    return equilibria;
}

}  // namespace liqdem
