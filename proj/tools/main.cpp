// Command-line front end for the liquid-democracy delegation toolkit.
//
// Subcommands: accuracy, weights, optimal, optimal-pure,
//              game {br, check-ne, max-ne, poa},
//              shares {converge, chi, check-ne}.
// Instances are JSON files (see core/include/liqdem/instance.hpp for the
// schema); all agent indices are 0-based.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "liqdem/accuracy.hpp"
#include "liqdem/games.hpp"
#include "liqdem/instance.hpp"
#include "liqdem/model.hpp"
#include "liqdem/optimal.hpp"
#include "liqdem/shares.hpp"

namespace {

using nlohmann::ordered_json;
using namespace liqdem;

struct Options {
    std::string instance_path;
    std::string format = "json";
    bool monte_carlo = false;
    bool exact = false;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    double tol = kDeviationTolerance;
    std::uint64_t cap = kDefaultSupportCap;
    double epsilon = kConvergenceEpsilon;
    int max_iter = kDefaultMaxIterations;
    int max_rounds = 1000;
    int agent = 0;
    int budget = kDefaultDeviationBudget;
    std::string order = "round-robin";
    std::string start = "instance";
    bool clamp_perfect = false;
    bool trace = false;
    bool cap_from_env = false;
    bool tol_from_env = false;
};

WeightedProfile delegation_or_identity(const Instance& inst) {
    return inst.delegation ? *inst.delegation : WeightedProfile::identity(inst.size());
}

ordered_json accuracy_report_json(const AccuracyReport& r) {
    ordered_json j;
    j["value"] = r.value;
    j["method"] = r.method == AccuracyMethod::Exact ? "exact" : "monte_carlo";
    j["guru_count"] = r.guru_count;
    if (r.standard_error) j["standard_error"] = *r.standard_error;
    if (r.winning_coalitions) j["winning_coalitions"] = *r.winning_coalitions;
    return j;
}

ordered_json equilibrium_json(const EquilibriumCheck& c) {
    ordered_json j;
    j["is_equilibrium"] = c.is_equilibrium;
    j["utilities"] = c.utilities;
    j["deviations_checked"] = c.deviations_checked;
    j["violations"] = c.violations;
    return j;
}

ordered_json run_accuracy(const Instance& inst, const Options& opt) {
    ordered_json results;
    std::vector<double> w;
    if (inst.delegation) {
        w = expected_weights_exact(*inst.delegation, opt.cap);
        results["expected_weights"] = w;
    } else {
        w.assign(inst.size(), 1.0);
    }
    const auto report = opt.monte_carlo
                            ? group_accuracy_mc(inst.accuracies, w, opt.samples, opt.seed)
                            : group_accuracy(inst.accuracies, w);
    results["accuracy"] = accuracy_report_json(report);
    return results;
}

ordered_json run_weights(const Instance& inst, const Options& opt) {
    if (!inst.delegation) throw InvalidInstance("'weights' needs a delegation matrix");
    ordered_json results;
    if (opt.monte_carlo) {
        const auto s = expected_weights_sampled(*inst.delegation, opt.samples, opt.seed);
        results["method"] = "sampled";
        results["samples"] = s.samples;
        results["weights"] = s.mean;
        results["standard_error"] = s.standard_error;
    } else {
        results["method"] = "exact";
        results["weights"] = expected_weights_exact(*inst.delegation, opt.cap);
    }
    return results;
}

ordered_json run_optimal(const Instance& inst, const Options& opt) {
    const auto& q = inst.accuracies;
    const auto weights = optimal_weights(q, opt.clamp_perfect);
    const auto profile = optimal_delegation(q, opt.clamp_perfect);
    const auto w = expected_weights_exact(profile, opt.cap);

    ordered_json results;
    results["w_star"] = weights.w_star;
    results["surplus"] = weights.surplus;
    results["delegation"] = profile.matrix();
    results["expected_weights"] = w;
    results["accuracy"] = accuracy_report_json(group_accuracy(q, w));
    if (q.size() <= 12) {
        const auto pure = best_pure_accuracy(q);
        results["pure_baseline"] = {{"value", pure.value}, {"weights", pure.weights}};
    } else {
        results["pure_baseline"] = nullptr;  // search capped at n = 12
    }
    return results;
}

ordered_json run_optimal_pure(const Instance& inst, const Options&) {
    const auto pure = best_pure_accuracy(inst.accuracies);
    ordered_json results;
    results["value"] = pure.value;
    results["weights"] = pure.weights;
    return results;
}

ordered_json run_game_br(const Instance& inst, const Options& opt) {
    const auto network = inst.network_or_complete();
    const auto u = inst.utilities_or_greedy();
    const auto start = opt.start == "identity" ? WeightedProfile::identity(inst.size())
                                               : delegation_or_identity(inst);
    const auto order =
        opt.order == "random" ? UpdateOrder::Random : UpdateOrder::RoundRobin;
    const auto result = best_response_dynamics(start, u, network, order, opt.seed,
                                               opt.max_rounds, opt.tol, opt.cap);
    ordered_json results;
    results["converged"] = result.converged;
    results["rounds"] = result.rounds;
    results["profile"] = result.profile.matrix();
    results["outcome"] = equilibrium_json(result.outcome);
    if (opt.trace) {
        auto moves = ordered_json::array();
        for (const auto& m : result.trace)
            moves.push_back({{"round", m.round},
                             {"agent", m.agent},
                             {"target", m.target},
                             {"utility_before", m.utility_before},
                             {"utility_after", m.utility_after}});
        results["trace"] = moves;
    }
    return results;
}

ordered_json run_game_check_ne(const Instance& inst, const Options& opt) {
    if (!inst.delegation) throw InvalidInstance("'game check-ne' needs a delegation matrix");
    const auto network = inst.network_or_complete();
    const auto u = inst.utilities_or_greedy();
    const auto check = check_equilibrium(*inst.delegation, u, network, opt.cap, opt.tol);
    ordered_json results;
    results["check"] = equilibrium_json(check);
    const auto acy = check_equilibrium_acyclicity(*inst.delegation, u, network, opt.cap);
    results["acyclicity"] = {{"is_equilibrium", acy.is_equilibrium},
                             {"acyclic", acy.acyclic},
                             {"holds", acy.holds}};
    return results;
}

ordered_json run_game_max_ne(const Instance& inst, const Options& opt) {
    const auto profile = max_accuracy_equilibrium(inst.accuracies);
    const auto w = expected_weights_exact(profile, opt.cap);
    ordered_json results;
    results["profile"] = profile.matrix();
    results["expected_weights"] = w;
    results["accuracy"] = accuracy_report_json(group_accuracy(inst.accuracies, w));
    return results;
}

ordered_json run_game_poa(const Instance& inst, const Options&) {
    const auto poa = price_of_anarchy(inst.accuracies);
    ordered_json results;
    results["poa"] = poa.poa;
    results["optimum"] = poa.optimum;
    results["worst_equilibrium"] = poa.worst_equilibrium;
    return results;
}

const char* status_name(IterationStatus s) {
    switch (s) {
        case IterationStatus::Converged: return "converged";
        case IterationStatus::Periodic: return "periodic";
        default: return "max_iterations";
    }
}

ordered_json run_shares_converge(const Instance& inst, const Options& opt) {
    if (!inst.delegation) throw InvalidInstance("'shares converge' needs a delegation matrix");
    std::vector<double> ones(inst.size(), 1.0);
    const auto traj = power_iterate(*inst.delegation, ones, opt.epsilon, opt.max_iter);
    const auto structure = chain_structure(*inst.delegation);
    ordered_json results;
    results["status"] = status_name(traj.status);
    results["iterations"] = traj.iterations;
    if (traj.fixpoint) results["fixpoint"] = *traj.fixpoint;
    results["last"] = traj.last;
    results["chain"] = {{"irreducible", structure.irreducible},
                        {"aperiodic", structure.aperiodic},
                        {"recurrent_periods", structure.recurrent_periods}};
    results["one_hop"] = is_one_hop(*inst.delegation);
    return results;
}

ordered_json run_shares_chi(const Instance& inst, const Options& opt) {
    if (!inst.delegation) throw InvalidInstance("'shares chi' needs a delegation matrix");
    if (opt.agent < 0 || opt.agent >= inst.size())
        throw InvalidInstance("--agent index out of range");
    const auto chi = apportionment(*inst.delegation, opt.agent, opt.epsilon, opt.max_iter);
    ordered_json results;
    results["agent"] = chi.owner;
    results["converged"] = chi.converged;
    results["iterations"] = chi.iterations;
    results["chi"] = chi.chi;
    return results;
}

ordered_json run_shares_check_ne(const Instance& inst, const Options& opt) {
    if (!inst.delegation) throw InvalidInstance("'shares check-ne' needs a delegation matrix");
    const auto network = inst.network_or_complete();
    const auto u = inst.utilities_or_greedy();
    const auto check = check_share_equilibrium(*inst.delegation, u, network, opt.budget,
                                               opt.seed, opt.tol, opt.epsilon, opt.max_iter);
    ordered_json results;
    results["check"] = equilibrium_json(check);
    return results;
}

// --- output formatting ------------------------------------------------

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void print_table(const ordered_json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            print_table(value, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j.items())
            if (v.value().is_structured()) scalars = false;
        if (scalars) {
            std::string line;
            for (const auto& v : j) {
                if (!line.empty()) line += " ";
                line += v.is_number_float() ? format_number(v.get<double>()) : v.dump();
            }
            std::cout << prefix << ": [" << line << "]\n";
        } else {
            int idx = 0;
            for (const auto& v : j) print_table(v, prefix + "[" + std::to_string(idx++) + "]");
        }
    } else if (j.is_number_float()) {
        std::cout << prefix << ": " << format_number(j.get<double>()) << "\n";
    } else {
        std::cout << prefix << ": " << j.dump() << "\n";
    }
}

void print_csv(const ordered_json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            print_csv(value, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array()) {
        int idx = 0;
        for (const auto& v : j) print_csv(v, prefix + "." + std::to_string(idx++));
    } else if (j.is_number_float()) {
        std::cout << prefix << "," << format_number(j.get<double>()) << "\n";
    } else if (j.is_string()) {
        std::cout << prefix << ",\"" << j.get<std::string>() << "\"\n";
    } else {
        std::cout << prefix << "," << j.dump() << "\n";
    }
}

void emit(const ordered_json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (format == "table") {
        print_table(report, "");
    } else {
        std::cout << "key,value\n";
        print_csv(report, "");
    }
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    if (const char* env_cap = std::getenv("LIQDEM_CAP")) {
        opt.cap = std::strtoull(env_cap, nullptr, 10);
        opt.cap_from_env = true;
    }
    if (const char* env_tol = std::getenv("LIQDEM_TOL")) {
        opt.tol = std::strtod(env_tol, nullptr);
        opt.tol_from_env = true;
    }

    CLI::App app{"Truth-tracking analysis of weighted liquid-democracy delegations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--instance", opt.instance_path, "Instance file (JSON)")->required();
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "table", "csv"}))
        ->capture_default_str();
    app.add_flag("--exact", opt.exact, "Exact computation (default)");
    app.add_flag("--mc", opt.monte_carlo, "Monte-Carlo computation");
    app.add_option("--samples", opt.samples, "Monte-Carlo sample count")->capture_default_str();
    app.add_option("--seed", opt.seed, "64-bit seed for all randomized work")
        ->capture_default_str();
    app.add_option("--tol", opt.tol, "Deviation/improvement tolerance")->capture_default_str();
    app.add_option("--cap", opt.cap, "Support enumeration cap")->capture_default_str();
    app.add_option("--max-iter", opt.max_iter, "Power iteration limit")->capture_default_str();
    app.add_option("--epsilon", opt.epsilon, "Power iteration convergence threshold")
        ->capture_default_str();

    auto* accuracy_cmd = app.add_subcommand("accuracy", "Group accuracy of the instance");
    auto* weights_cmd = app.add_subcommand("weights", "Expected weights of the delegation");
    auto* optimal_cmd = app.add_subcommand("optimal", "Accuracy-optimal one-hop delegation");
    optimal_cmd->add_flag("--clamp-perfect", opt.clamp_perfect,
                          "Clamp accuracies of exactly 1.0 to 1 - 1e-12");
    auto* optimal_pure_cmd =
        app.add_subcommand("optimal-pure", "Best accuracy over pure delegations");

    auto* game_cmd = app.add_subcommand("game", "Delegation games (mixing utility)");
    game_cmd->require_subcommand(1);
    game_cmd->fallthrough();
    auto* game_br = game_cmd->add_subcommand("br", "Best-response dynamics");
    game_br->add_option("--order", opt.order, "Agent update order")
        ->check(CLI::IsMember({"round-robin", "random"}))
        ->capture_default_str();
    game_br->add_option("--start", opt.start, "Starting profile")
        ->check(CLI::IsMember({"instance", "identity"}))
        ->capture_default_str();
    game_br->add_option("--max-rounds", opt.max_rounds, "Round limit")->capture_default_str();
    game_br->add_flag("--trace", opt.trace, "Include the move trace in the report");
    auto* game_check = game_cmd->add_subcommand("check-ne", "Equilibrium check");
    auto* game_max = game_cmd->add_subcommand("max-ne", "Max-accuracy equilibrium");
    auto* game_poa = game_cmd->add_subcommand("poa", "Price of anarchy");

    auto* shares_cmd = app.add_subcommand("shares", "Vote-share semantics");
    shares_cmd->require_subcommand(1);
    shares_cmd->fallthrough();
    auto* shares_converge =
        shares_cmd->add_subcommand("converge", "Iterated share transfer from unit weights");
    auto* shares_chi = shares_cmd->add_subcommand("chi", "Stationary apportionment of one agent");
    shares_chi->add_option("--agent", opt.agent, "Agent whose vote is traced")->required();
    auto* shares_check =
        shares_cmd->add_subcommand("check-ne", "Equilibrium check under the share utility");
    shares_check->add_option("--budget", opt.budget, "Random mixed deviations per agent")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        const Instance inst = Instance::load(opt.instance_path);

        std::string command;
        ordered_json results;
        if (*accuracy_cmd) {
            command = "accuracy";
            results = run_accuracy(inst, opt);
        } else if (*weights_cmd) {
            command = "weights";
            results = run_weights(inst, opt);
        } else if (*optimal_cmd) {
            command = "optimal";
            results = run_optimal(inst, opt);
        } else if (*optimal_pure_cmd) {
            command = "optimal-pure";
            results = run_optimal_pure(inst, opt);
        } else if (*game_br) {
            command = "game br";
            results = run_game_br(inst, opt);
        } else if (*game_check) {
            command = "game check-ne";
            results = run_game_check_ne(inst, opt);
        } else if (*game_max) {
            command = "game max-ne";
            results = run_game_max_ne(inst, opt);
        } else if (*game_poa) {
            command = "game poa";
            results = run_game_poa(inst, opt);
        } else if (*shares_converge) {
            command = "shares converge";
            results = run_shares_converge(inst, opt);
        } else if (*shares_chi) {
            command = "shares chi";
            results = run_shares_chi(inst, opt);
        } else if (*shares_check) {
            command = "shares check-ne";
            results = run_shares_check_ne(inst, opt);
        }

        ordered_json report;
        report["command"] = command;
        report["instance"] = opt.instance_path;
        report["digest"] = inst.digest();
        report["seed"] = opt.seed;
        report["cap"] = opt.cap;
        report["tol"] = opt.tol;
        report["env_overrides"] = {{"LIQDEM_CAP", opt.cap_from_env},
                                   {"LIQDEM_TOL", opt.tol_from_env}};
        report["results"] = results;
        emit(report, opt.format);

        // Wall time goes to stderr so the stdout payload stays reproducible.
        const auto elapsed = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
        std::fprintf(stderr, "wall_time_ms=%.3f\n", elapsed);
        return 0;
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
