#ifndef LIQDEM_INSTANCE_HPP
#define LIQDEM_INSTANCE_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "liqdem/games.hpp"
#include "liqdem/model.hpp"

namespace liqdem {

/// One problem instance as consumed by the CLI and the fixture files.
///
/// JSON schema (0-based agent indices throughout):
///   accuracies  array of n numbers in [0.5, 1.0]           (required)
///   delegation  n x n row-stochastic array                 (optional)
///   network     array of [i, j] pairs; absent = complete   (optional)
///   utilities   n x n array; absent = greedy u[i][j] = q_j (optional)
struct Instance {
    AccuracyProfile accuracies;
    std::optional<WeightedProfile> delegation;
    std::optional<Network> network;
    std::optional<UtilityMatrix> utilities;

    int size() const { return accuracies.size(); }

    static Instance from_json(const nlohmann::json& j);
    static Instance load(const std::string& path);

    nlohmann::ordered_json to_json() const;

    Network network_or_complete() const;
    UtilityMatrix utilities_or_greedy() const;

    /// FNV-1a hash of the canonical serialization, as fixed-width hex.
    std::string digest() const;
};

}  // namespace liqdem

#endif
