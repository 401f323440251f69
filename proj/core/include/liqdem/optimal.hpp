#ifndef LIQDEM_OPTIMAL_HPP
#define LIQDEM_OPTIMAL_HPP

#include <vector>

#include "liqdem/accuracy.hpp"
#include "liqdem/model.hpp"

namespace liqdem {

/// Accuracy-optimal voting weights: w[i] = n * logodds(q_i) / sum_j logodds(q_j).
struct OptimalWeights {
    std::vector<double> w_star;
    std::vector<int> below;  ///< agents with w_star < 1 (weight donors)
    std::vector<int> above;  ///< agents with w_star > 1 (weight receivers)
    double surplus = 0.0;    ///< sum over receivers of (w_star - 1)
};

/// Natural log internally; the normalization makes the base irrelevant.
/// Throws AllUninformative when every q_i = 0.5 and PerfectAgent when some
/// q_i = 1.0 unless clamp_perfect replaces it by 1 - 1e-12.
OptimalWeights optimal_weights(const AccuracyProfile& q, bool clamp_perfect = false);

/// One-hop weighted profile whose expected weights equal the optimal
/// weights: receivers keep their full vote, each donor i spreads its excess
/// 1 - w*_i over the receivers in proportion to their deficits w*_j - 1 and
/// keeps the rest. Agents with w*_i = 1 (up to 1e-12) self-delegate fully;
/// with no receivers the identity profile is returned.
WeightedProfile optimal_delegation(const AccuracyProfile& q, bool clamp_perfect = false);

struct PureSearchResult {
    double value = 0.0;
    /// One maximizing guru-weight assignment (zeros for non-gurus).
    std::vector<double> weights;
};

/// Best group accuracy achievable by pure delegations in a complete
/// network. Searches every guru subset and every integer weight vector
/// with entries >= 1 summing to n; any such assignment is realizable by
/// one-hop pure delegations. Limited to n <= 12.
PureSearchResult best_pure_accuracy(const AccuracyProfile& q);

}  // namespace liqdem

#endif
