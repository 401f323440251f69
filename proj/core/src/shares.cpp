#include "liqdem/shares.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "liqdem/rng.hpp"

namespace liqdem {

namespace {

double max_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> step(const std::vector<double>& w, const WeightedProfile& D) {
    const int n = D.size();
    std::vector<double> next(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double wi = w[i];
        if (wi == 0.0) continue;
        for (int j = 0; j < n; ++j) next[j] += wi * D.at(i, j);
    }
    return next;
}

}  // namespace

ShareTrajectory power_iterate(const WeightedProfile& D, std::vector<double> w0, double epsilon,
                              int max_iter) {
    if (static_cast<int>(w0.size()) != D.size())
        throw InvalidInstance("initial weight vector has wrong length");
    if (!(epsilon > 0.0) || max_iter < 1)
        throw InvalidInstance("power iteration needs epsilon > 0 and max_iter >= 1");

    ShareTrajectory out;
    out.initial = w0;
    std::vector<double> prev2;
    std::vector<double> prev = std::move(w0);
    for (int t = 1; t <= max_iter; ++t) {
        std::vector<double> cur = step(prev, D);
        out.iterations = t;
        if (max_norm_diff(cur, prev) < epsilon) {
            out.status = IterationStatus::Converged;
            out.fixpoint = cur;
            out.last = std::move(cur);
            return out;
        }
        if (!prev2.empty() && max_norm_diff(cur, prev2) < epsilon) {
            out.status = IterationStatus::Periodic;
            out.last = std::move(cur);
            return out;
        }
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    out.status = IterationStatus::MaxIterations;
    out.last = std::move(prev);
    return out;
}

Apportionment apportionment(const WeightedProfile& D, int agent, double epsilon, int max_iter) {
    if (agent < 0 || agent >= D.size()) throw InvalidInstance("agent index out of range");
    std::vector<double> e(D.size(), 0.0);
    e[agent] = 1.0;
    const auto traj = power_iterate(D, std::move(e), epsilon, max_iter);
    Apportionment out;
    out.owner = agent;
    out.iterations = traj.iterations;
    out.converged = traj.status == IterationStatus::Converged;
    out.chi = out.converged ? *traj.fixpoint : traj.last;
    return out;
}

double share_utility(const WeightedProfile& D, const UtilityMatrix& u, int agent, double epsilon,
                     int max_iter) {
    if (u.size() != D.size()) throw InvalidInstance("utility matrix size mismatch");
    const auto chi = apportionment(D, agent, epsilon, max_iter);
    if (!chi.converged) return 0.0;
    double total = 0.0;
    for (int j = 0; j < D.size(); ++j) total += u.at(agent, j) * chi.chi[j];
    return total;
}

ChainStructure chain_structure(const WeightedProfile& D) {
    const int n = D.size();
    // Reachability over the positive-entry graph (self-loops included).
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int s = 0; s < n; ++s) {
        std::vector<int> queue{s};
        reach[s][s] = true;
        while (!queue.empty()) {
            const int v = queue.back();
            queue.pop_back();
            for (int j = 0; j < n; ++j) {
                if (D.at(v, j) > 0.0 && !reach[s][j]) {
                    reach[s][j] = true;
                    queue.push_back(j);
                }
            }
        }
    }

    std::vector<int> component(n, -1);
    int components = 0;
    for (int i = 0; i < n; ++i) {
        if (component[i] >= 0) continue;
        component[i] = components;
        for (int j = i + 1; j < n; ++j)
            if (reach[i][j] && reach[j][i]) component[j] = components;
        ++components;
    }

    ChainStructure out;
    out.irreducible = components == 1;

    // A class is recurrent when no edge leaves it; its period is the gcd of
    // level[u] + 1 - level[v] over in-class edges (u, v), from a BFS layering.
    bool all_aperiodic = true;
    for (int c = 0; c < components; ++c) {
        bool recurrent = true;
        int root = -1;
        for (int i = 0; i < n && recurrent; ++i) {
            if (component[i] != c) continue;
            if (root < 0) root = i;
            for (int j = 0; j < n; ++j)
                if (D.at(i, j) > 0.0 && component[j] != c) recurrent = false;
        }
        if (!recurrent) continue;

        std::vector<int> level(n, -1);
        level[root] = 0;
        std::vector<int> frontier{root};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int v : frontier) {
                for (int j = 0; j < n; ++j) {
                    if (D.at(v, j) > 0.0 && component[j] == c && level[j] < 0) {
                        level[j] = level[v] + 1;
                        next.push_back(j);
                    }
                }
            }
            frontier = std::move(next);
        }
        int period = 0;
        for (int i = 0; i < n; ++i) {
            if (component[i] != c) continue;
            for (int j = 0; j < n; ++j)
                if (D.at(i, j) > 0.0 && component[j] == c)
                    period = std::gcd(period, std::abs(level[i] + 1 - level[j]));
        }
        if (period == 0) period = 1;  // singleton class with a self-loop only
        out.recurrent_periods.push_back(period);
        if (period != 1) all_aperiodic = false;
    }
    out.aperiodic = all_aperiodic;
    return out;
}

std::vector<double> one_hop_weights(const WeightedProfile& D) {
    const int n = D.size();
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[j] += D.at(i, j);
    return w;
}

bool is_one_hop(const WeightedProfile& D) {
    const int n = D.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && D.at(i, j) > 0.0 && D.at(j, j) != 1.0) return false;
    return true;
}

EquilibriumCheck check_share_equilibrium(const WeightedProfile& D, const UtilityMatrix& u,
                                         const Network& network, int deviation_budget,
                                         std::uint64_t seed, double tol, double epsilon,
                                         int max_iter) {
    const int n = D.size();
    EquilibriumCheck out;
    out.is_equilibrium = true;
    out.deviations_checked =
        "all permitted pure rows + " + std::to_string(deviation_budget) +
        " seeded random stochastic rows per agent (share utility is not affine in the own row)";
    out.utilities.resize(n);
    for (int i = 0; i < n; ++i) out.utilities[i] = share_utility(D, u, i, epsilon, max_iter);

    std::mt19937_64 rng(seed);
    for (int i = 0; i < n; ++i) {
        const auto targets = network.neighborhood(i);
        for (int j : targets) {
            const double value = share_utility(D.with_pure_row(i, j), u, i, epsilon, max_iter);
            if (value > out.utilities[i] + tol) {
                out.is_equilibrium = false;
                out.violations.push_back("agent " + std::to_string(i) + " gains " +
                                         std::to_string(value - out.utilities[i]) +
                                         " by delegating to " + std::to_string(j));
            }
        }
        for (int k = 0; k < deviation_budget; ++k) {
            auto row = random_stochastic_row(rng, n, targets);
            const double value = share_utility(D.with_row(i, row), u, i, epsilon, max_iter);
            if (value > out.utilities[i] + tol) {
                out.is_equilibrium = false;
                out.violations.push_back("agent " + std::to_string(i) + " gains " +
                                         std::to_string(value - out.utilities[i]) +
                                         " with a mixed row (deviation sample " +
                                         std::to_string(k) + ")");
            }
        }
    }
    return out;
}

BridgeReport equilibrium_bridge_check(
    const std::vector<std::pair<AccuracyProfile, Network>>& instances, std::uint64_t seed,
    int deviation_budget) {
    BridgeReport report;
    report.instances = static_cast<int>(instances.size());
    std::mt19937_64 rng(seed);

    for (const auto& [q, network] : instances) {
        const int n = q.size();
        const auto u = UtilityMatrix::greedy(q);
        std::vector<WeightedProfile> candidates;
        if (network.is_complete()) candidates.push_back(max_accuracy_equilibrium(q));
        candidates.push_back(
            best_response_dynamics(WeightedProfile::identity(n), u, network).profile);
        {
            std::vector<int> d(n);
            for (int i = 0; i < n; ++i) {
                const auto targets = network.neighborhood(i);
                d[i] = targets[rng() % targets.size()];
            }
            candidates.push_back(
                best_response_dynamics(WeightedProfile::from_pure(PureProfile(d)), u, network)
                    .profile);
        }

        for (const auto& D : candidates) {
            if (!check_equilibrium(D, u, network).is_equilibrium) continue;
            ++report.equilibria_checked;
            const auto verdict =
                check_share_equilibrium(D, u, network, deviation_budget, rng());
            if (verdict.is_equilibrium) {
                ++report.passed;
            } else {
                report.failures.push_back("instance with n = " + std::to_string(n) + ": " +
                                          verdict.violations.front());
            }
        }
    }

    // Converse direction: a share-utility equilibrium that is not a mixing
    // equilibrium. The low-accuracy agent half-mixes; every share of its
    // vote still ends up at the sink, but the mixing reading leaves it a
    // 50% chance of being its own (worse) guru.
    {
        const AccuracyProfile q({0.9, 0.6});
        const auto network = Network::complete(2);
        const auto u = UtilityMatrix::greedy(q);
        const auto D = WeightedProfile::from_matrix({{1.0, 0.0}, {0.5, 0.5}});
        const bool share_ne =
            check_share_equilibrium(D, u, network, deviation_budget, rng()).is_equilibrium;
        const bool mixing_ne = check_equilibrium(D, u, network).is_equilibrium;
        report.converse_counterexample_ok = share_ne && !mixing_ne;
    }
    return report;
}

}  // namespace liqdem
