#ifndef LIQDEM_MODEL_HPP
#define LIQDEM_MODEL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "liqdem/errors.hpp"

namespace liqdem {

using Matrix = std::vector<std::vector<double>>;

/// Tolerance used when validating row-stochastic matrices.
inline constexpr double kRowSumTolerance = 1e-9;

/// Default cap on exact support-profile enumeration.
inline constexpr std::uint64_t kDefaultSupportCap = 1'000'000;

/// Per-agent probability of voting for the correct alternative.
/// Entries live in [0.5, 1.0].
class AccuracyProfile {
public:
    explicit AccuracyProfile(std::vector<double> accuracies);

    int size() const { return static_cast<int>(q_.size()); }
    double operator[](int i) const { return q_[i]; }
    const std::vector<double>& values() const { return q_; }

private:
    std::vector<double> q_;
};

/// One delegation target per agent; d(i) == i marks a guru.
struct PureProfile {
    std::vector<int> d;

    explicit PureProfile(std::vector<int> targets);
    static PureProfile trivial(int n);

    int size() const { return static_cast<int>(d.size()); }
};

/// Directed graph of permitted delegations. Self-delegation is always allowed.
class Network {
public:
    static Network complete(int n);
    static Network from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const { return n_; }
    bool permits(int from, int to) const { return allowed_[from][to]; }

    /// Permitted targets of `from`, ascending, including `from` itself.
    std::vector<int> neighborhood(int from) const;

    bool is_complete() const;

    std::vector<std::pair<int, int>> edges() const;

private:
    Network(int n, std::vector<std::vector<bool>> allowed);
    int n_;
    std::vector<std::vector<bool>> allowed_;
};

/// Row-stochastic matrix of delegation weights. Row i is agent i's
/// apportionment of its unit vote over targets.
class WeightedProfile {
public:
    /// Validates shape, entry range and row sums. Rows whose sums deviate
    /// from 1 by at most kRowSumTolerance are renormalized; anything worse
    /// is rejected. If a network is given, positive entries must sit on
    /// permitted edges.
    static WeightedProfile from_matrix(Matrix rows, const Network* network = nullptr);

    static WeightedProfile identity(int n);
    static WeightedProfile from_pure(const PureProfile& d);

    int size() const { return static_cast<int>(rows_.size()); }
    double at(int i, int j) const { return rows_[i][j]; }
    const std::vector<double>& row(int i) const { return rows_[i]; }
    const Matrix& matrix() const { return rows_; }

    /// Indices j with D[i][j] > 0, ascending.
    std::vector<int> support(int i) const;

    /// Returns a copy with row `agent` replaced by a point mass on `target`.
    WeightedProfile with_pure_row(int agent, int target) const;

    /// Returns a copy with row `agent` replaced by `row` (validated).
    WeightedProfile with_row(int agent, std::vector<double> row) const;

private:
    explicit WeightedProfile(Matrix rows) : rows_(std::move(rows)) {}
    Matrix rows_;
};

/// Outcome of following every delegation chain of a pure profile.
struct GuruResolution {
    /// guru[i] is absent when i sits on or behind a delegation cycle.
    std::vector<std::optional<int>> guru;
    /// weights[i] = number of agents (including i) whose chain ends at i.
    std::vector<double> weights;
    std::set<int> gurus;
};

/// Follows delegation chains. Agents on or delegating into a cycle get no
/// guru and their weight is dropped.
GuruResolution resolve_gurus(const PureProfile& d);

/// Guru of `agent` in profile `d`, or -1 when trapped by a cycle.
/// O(n) chain walk, no allocation.
int guru_of(const std::vector<int>& d, int agent);

/// Pr(d) = prod_i D[i][d(i)].
double profile_probability(const WeightedProfile& D, const PureProfile& d);

/// Calls fn(d, Pr(d)) for every pure profile with positive probability.
/// The PureProfile reference is reused between calls.
/// Throws SupportTooLarge when the product of row-support sizes exceeds cap.
void for_each_support_profile(const WeightedProfile& D, std::uint64_t cap,
                              const std::function<void(const PureProfile&, double)>& fn);

std::vector<std::pair<PureProfile, double>> support_profiles(
    const WeightedProfile& D, std::uint64_t cap = kDefaultSupportCap);

/// Expected weight of each agent over the support profiles of D, exact.
std::vector<double> expected_weights_exact(const WeightedProfile& D,
                                           std::uint64_t cap = kDefaultSupportCap);

/// Exact expected weights via a simple-path subset DP instead of support
/// enumeration. Agrees with expected_weights_exact; usable when the support
/// is too large to enumerate. Limited to n <= 16.
std::vector<double> expected_weights_paths(const WeightedProfile& D);

struct SampledWeights {
    std::vector<double> mean;
    std::vector<double> standard_error;
    std::uint64_t samples = 0;
};

/// Monte-Carlo estimate of expected weights. Profiles are drawn row-wise
/// in agent order from one seeded stream, so runs are bit-reproducible.
SampledWeights expected_weights_sampled(const WeightedProfile& D,
                                        std::uint64_t count, std::uint64_t seed);

struct DelegationGraph {
    int n = 0;
    /// out[i] holds the j != i with D[i][j] > 0, ascending.
    std::vector<std::vector<int>> out;

    bool is_acyclic() const;
};

DelegationGraph delegation_graph(const WeightedProfile& D);

}  // namespace liqdem

#endif
