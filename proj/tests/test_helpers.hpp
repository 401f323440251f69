#ifndef LIQDEM_TEST_HELPERS_HPP
#define LIQDEM_TEST_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "liqdem/model.hpp"
#include "liqdem/rng.hpp"

namespace liqdem::testing {

inline AccuracyProfile random_accuracies(std::mt19937_64& rng, int n, double lo = 0.5,
                                         double hi = 0.99) {
    std::vector<double> q(n);
    for (auto& v : q) v = lo + (hi - lo) * uniform01(rng);
    return AccuracyProfile(std::move(q));
}

inline WeightedProfile random_full_profile(std::mt19937_64& rng, int n) {
    Matrix rows(n);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = 0; i < n; ++i) rows[i] = random_stochastic_row(rng, n, all);
    return WeightedProfile::from_matrix(std::move(rows));
}

/// Random row-stochastic profile whose rows keep at most `max_support`
/// positive entries (self always allowed).
inline WeightedProfile random_sparse_profile(std::mt19937_64& rng, int n, int max_support) {
    Matrix rows(n, std::vector<double>(n, 0.0));
    const int support = std::min(max_support, n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> targets{i};
        while (static_cast<int>(targets.size()) < support) {
            const int t = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            bool fresh = true;
            for (int existing : targets) fresh = fresh && existing != t;
            if (fresh) targets.push_back(t);
        }
        rows[i] = random_stochastic_row(rng, n, targets);
    }
    return WeightedProfile::from_matrix(std::move(rows));
}

inline Network random_network(std::mt19937_64& rng, int n, double edge_prob) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && uniform01(rng) < edge_prob) edges.emplace_back(i, j);
    return Network::from_edges(n, edges);
}

/// Exact probability that a simple majority of n agents with identical
/// accuracy q votes correctly (ties count as correct, matching the group
/// accuracy tie rule). Independent oracle: binomial tail via the pmf
/// recurrence, no coalition enumeration involved.
inline double binomial_majority_accuracy(int n, double q) {
    double pmf = std::pow(1.0 - q, n);  // k = 0
    double tail = 0.0;
    const double threshold = static_cast<double>(n) / 2.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) pmf *= (static_cast<double>(n - k + 1) / static_cast<double>(k)) *
                          (q / (1.0 - q));
        if (static_cast<double>(k) >= threshold) tail += pmf;
    }
    return tail;
}

}  // namespace liqdem::testing

#endif
