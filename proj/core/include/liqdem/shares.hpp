#ifndef LIQDEM_SHARES_HPP
#define LIQDEM_SHARES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liqdem/games.hpp"
#include "liqdem/model.hpp"

namespace liqdem {

inline constexpr double kConvergenceEpsilon = 1e-12;
inline constexpr int kDefaultMaxIterations = 100000;
inline constexpr int kDefaultDeviationBudget = 200;

enum class IterationStatus { Converged, Periodic, MaxIterations };

/// Trajectory of w^(t+1) = w^(t) D under the vote-share reading of D.
struct ShareTrajectory {
    std::vector<double> initial;
    std::vector<double> last;
    std::optional<std::vector<double>> fixpoint;  // set when converged
    IterationStatus status = IterationStatus::MaxIterations;
    int iterations = 0;
};

/// Iterates vector-matrix products until the max-norm step falls below
/// epsilon. Period-2 oscillation (w^(t) ~ w^(t+2) while w^(t) != w^(t+1))
/// is detected and classified separately from slow convergence.
ShareTrajectory power_iterate(const WeightedProfile& D, std::vector<double> w0,
                              double epsilon = kConvergenceEpsilon,
                              int max_iter = kDefaultMaxIterations);

/// Stationary apportionment of one agent's initial unit vote.
struct Apportionment {
    std::vector<double> chi;
    int owner = 0;
    bool converged = false;
    int iterations = 0;
};

Apportionment apportionment(const WeightedProfile& D, int agent,
                            double epsilon = kConvergenceEpsilon,
                            int max_iter = kDefaultMaxIterations);

/// Vote-share utility: sum_j u[i][j] * chi_i(j) when the chain settles for
/// agent i, 0 otherwise (no guru ever represents the agent).
double share_utility(const WeightedProfile& D, const UtilityMatrix& u, int agent,
                     double epsilon = kConvergenceEpsilon,
                     int max_iter = kDefaultMaxIterations);

struct ChainStructure {
    bool irreducible = false;
    bool aperiodic = false;
    /// Periods of the recurrent classes of the positive-entry graph.
    std::vector<int> recurrent_periods;
};

/// Irreducibility (strong connectivity of the positive-entry graph) and
/// aperiodicity (every recurrent class has period 1). Together these are
/// sufficient for per-agent convergence, not necessary.
ChainStructure chain_structure(const WeightedProfile& D);

/// Weights after a single round of share transfers, w^(1) = (1,...,1) D.
/// For one-hop profiles every transfer lands on a full self-delegator, so
/// the process is complete after this round and the result matches the
/// probabilistic expected weights.
std::vector<double> one_hop_weights(const WeightedProfile& D);

/// True when every positive off-diagonal entry points at a full
/// self-delegator (all chains have length <= 1).
bool is_one_hop(const WeightedProfile& D);

/// Equilibrium check under the vote-share utility. The utility is NOT
/// affine in an agent's own row, so pure deviations alone are insufficient;
/// deviation_budget seeded random stochastic rows per agent are checked on
/// top of all permitted pure rows. The verdict records the deviation set.
EquilibriumCheck check_share_equilibrium(const WeightedProfile& D, const UtilityMatrix& u,
                                         const Network& network,
                                         int deviation_budget = kDefaultDeviationBudget,
                                         std::uint64_t seed = 0,
                                         double tol = kDeviationTolerance,
                                         double epsilon = kConvergenceEpsilon,
                                         int max_iter = kDefaultMaxIterations);

struct BridgeReport {
    int instances = 0;
    int equilibria_checked = 0;
    int passed = 0;
    std::vector<std::string> failures;
    /// A mixing equilibrium of a greedy game stays an equilibrium under the
    /// share utility; the converse fails, witnessed by a fixed two-agent
    /// instance (accuracies 0.9/0.6, sink plus partially mixing delegator).
    bool converse_counterexample_ok = false;
};

/// For each greedy-delegation instance, collects mixing equilibria (the
/// max-accuracy construction on complete networks plus best-response fixed
/// points) and verifies each also passes the share-utility check.
BridgeReport equilibrium_bridge_check(
    const std::vector<std::pair<AccuracyProfile, Network>>& instances, std::uint64_t seed,
    int deviation_budget = kDefaultDeviationBudget);

}  // namespace liqdem

#endif
