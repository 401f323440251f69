#include "liqdem/instance.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace liqdem {

namespace {

Matrix parse_matrix(const nlohmann::json& j, int n, const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw InvalidInstance("field '" + field + "' must be an array of " + std::to_string(n) +
                              " rows");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InvalidInstance("field '" + field + "', row " + std::to_string(i) +
                                  ": expected " + std::to_string(n) + " numbers");
        m[i].resize(n);
        for (int k = 0; k < n; ++k) {
            if (!row[k].is_number())
                throw InvalidInstance("field '" + field + "', row " + std::to_string(i) +
                                      ", column " + std::to_string(k) + ": not a number");
            m[i][k] = row[k].get<double>();
        }
    }
    return m;
}

}  // namespace

Instance Instance::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInstance("instance must be a JSON object");
    if (!j.contains("accuracies") || !j["accuracies"].is_array())
        throw InvalidInstance("field 'accuracies' (array of numbers) is required");

    std::vector<double> q;
    for (std::size_t i = 0; i < j["accuracies"].size(); ++i) {
        if (!j["accuracies"][i].is_number())
            throw InvalidInstance("field 'accuracies', entry " + std::to_string(i) +
                                  ": not a number");
        q.push_back(j["accuracies"][i].get<double>());
    }
    const int n = static_cast<int>(q.size());

    std::optional<Network> network;
    if (j.contains("network")) {
        std::vector<std::pair<int, int>> edges;
        if (!j["network"].is_array())
            throw InvalidInstance("field 'network' must be an array of [i, j] pairs");
        for (const auto& e : j["network"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw InvalidInstance("field 'network': every edge must be an [i, j] pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        network = Network::from_edges(n, edges);
    }

    std::optional<WeightedProfile> delegation;
    if (j.contains("delegation"))
        delegation = WeightedProfile::from_matrix(parse_matrix(j["delegation"], n, "delegation"),
                                                  network ? &*network : nullptr);

    std::optional<UtilityMatrix> utilities;
    if (j.contains("utilities"))
        utilities = UtilityMatrix::from_matrix(parse_matrix(j["utilities"], n, "utilities"));

    return Instance{AccuracyProfile(std::move(q)), std::move(delegation), std::move(network),
                    std::move(utilities)};
}

Instance Instance::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInstance("cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInstance("malformed instance file " + path + ": " + e.what());
    }
    return from_json(j);
}

nlohmann::ordered_json Instance::to_json() const {
    nlohmann::ordered_json j;
    j["accuracies"] = accuracies.values();
    if (delegation) j["delegation"] = delegation->matrix();
    if (network) {
        auto edges = nlohmann::ordered_json::array();
        for (const auto& [a, b] : network->edges()) edges.push_back({a, b});
        j["network"] = edges;
    }
    if (utilities) j["utilities"] = utilities->matrix();
    return j;
}

Network Instance::network_or_complete() const {
    return network ? *network : Network::complete(size());
}

UtilityMatrix Instance::utilities_or_greedy() const {
    return utilities ? *utilities : UtilityMatrix::greedy(accuracies);
}

std::string Instance::digest() const {
    const std::string canonical = to_json().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xF);
    return out.str();
}

}  // namespace liqdem
