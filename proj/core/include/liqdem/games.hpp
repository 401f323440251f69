#ifndef LIQDEM_GAMES_HPP
#define LIQDEM_GAMES_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liqdem/accuracy.hpp"
#include "liqdem/model.hpp"
#include "liqdem/optimal.hpp"

namespace liqdem {

/// Improvement threshold separating genuine deviations from float noise.
inline constexpr double kDeviationTolerance = 1e-9;

/// u[i][j] is the value to agent i of agent j acting as i's guru.
class UtilityMatrix {
public:
    static UtilityMatrix from_matrix(Matrix u);

    /// Greedy-delegation utilities: u[i][j] = q_j for every i.
    static UtilityMatrix greedy(const AccuracyProfile& q);

    int size() const { return static_cast<int>(u_.size()); }
    double at(int i, int j) const { return u_[i][j]; }
    const Matrix& matrix() const { return u_; }

private:
    explicit UtilityMatrix(Matrix u) : u_(std::move(u)) {}
    Matrix u_;
};

/// Expected utility of agent i under the mixing semantics: the expectation
/// of u[i][guru of i] over the support profiles of D, counting 0 when a
/// realized profile traps i in a cycle.
double mixing_utility(const WeightedProfile& D, const UtilityMatrix& u, int agent,
                      std::uint64_t cap = kDefaultSupportCap);

/// Monte-Carlo fallback for supports too large to enumerate.
double mixing_utility_sampled(const WeightedProfile& D, const UtilityMatrix& u, int agent,
                              std::uint64_t samples, std::uint64_t seed);

/// Best pure delegation target for `agent` against the other rows of D.
/// The utility is affine in the agent's own row, so some pure row attains
/// the optimum over all mixed rows. Ties break toward the lowest index.
std::pair<int, double> best_response(const WeightedProfile& D, const UtilityMatrix& u, int agent,
                                     const Network& network,
                                     std::uint64_t cap = kDefaultSupportCap);

struct EquilibriumCheck {
    bool is_equilibrium = false;
    std::vector<double> utilities;
    std::string deviations_checked;
    /// First improving deviation found, if any: (agent, description of row).
    std::vector<std::string> violations;
};

/// Verifies that no agent gains more than kDeviationTolerance by switching
/// to any permitted pure row. Affinity in the own row makes this sufficient
/// for all mixed deviations.
EquilibriumCheck check_equilibrium(const WeightedProfile& D, const UtilityMatrix& u,
                                   const Network& network,
                                   std::uint64_t cap = kDefaultSupportCap,
                                   double tol = kDeviationTolerance);

enum class UpdateOrder { RoundRobin, Random };

struct Move {
    int round = 0;
    int agent = 0;
    int target = 0;
    double utility_before = 0.0;
    double utility_after = 0.0;
};

struct DynamicsResult {
    WeightedProfile profile;
    EquilibriumCheck outcome;
    std::vector<Move> trace;
    bool converged = false;
    int rounds = 0;
};

/// Iterated pure best responses, one agent at a time, until a full pass
/// yields no improvement above tol (converged) or max_rounds passes elapse.
DynamicsResult best_response_dynamics(const WeightedProfile& start, const UtilityMatrix& u,
                                      const Network& network,
                                      UpdateOrder order = UpdateOrder::RoundRobin,
                                      std::uint64_t seed = 0, int max_rounds = 1000,
                                      double tol = kDeviationTolerance,
                                      std::uint64_t cap = kDefaultSupportCap);

/// Greedy-delegation equilibrium with maximal group accuracy (complete
/// network): the m most accurate agents keep their votes, everyone else
/// splits its row evenly over them, so each of them expects weight n/m.
WeightedProfile max_accuracy_equilibrium(const AccuracyProfile& q);

struct PoAResult {
    double poa = 1.0;
    double optimum = 0.0;
    double worst_equilibrium = 0.0;
};

/// Optimal group accuracy (one-hop optimal delegation) over the accuracy of
/// the worst greedy-delegation equilibrium, which is the single-guru profile
/// where everybody delegates to one maximally accurate agent.
PoAResult price_of_anarchy(const AccuracyProfile& q);

struct AcyclicityCheck {
    bool is_equilibrium = false;
    bool acyclic = false;
    bool holds = false;  ///< is_equilibrium implies acyclic
};

/// In greedy-delegation games every equilibrium has an acyclic delegation
/// graph; this checks the implication on one profile.
AcyclicityCheck check_equilibrium_acyclicity(const WeightedProfile& D, const UtilityMatrix& u,
                                             const Network& network,
                                             std::uint64_t cap = kDefaultSupportCap);

/// All pure-profile equilibria of the game, by exhaustive n^n enumeration.
/// Limited to n <= 7.
std::vector<PureProfile> enumerate_pure_equilibria(const UtilityMatrix& u,
                                                   const Network& network,
                                                   double tol = kDeviationTolerance);

}  // namespace liqdem

#endif
