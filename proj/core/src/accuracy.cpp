#include "liqdem/accuracy.hpp"

#include <cmath>
#include <random>

#include "liqdem/rng.hpp"

namespace liqdem {

namespace {

std::vector<int> positive_weight_agents(const std::vector<double>& w) {
    std::vector<int> gurus;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        if (w[i] < 0.0) throw InvalidInstance("negative weight for agent " + std::to_string(i));
        if (w[i] > 0.0) gurus.push_back(i);
    }
    if (gurus.empty()) throw NoGurus();
    return gurus;
}

}  // namespace

AccuracyReport group_accuracy(const AccuracyProfile& q, const std::vector<double>& w,
                              int max_gurus) {
    if (q.size() != static_cast<int>(w.size()))
        throw InvalidInstance("accuracy profile and weight vector sizes differ");
    const auto gurus = positive_weight_agents(w);
    const int m = static_cast<int>(gurus.size());
    if (m > max_gurus) throw TooManyGurus(m, max_gurus);

    double total = 0.0;
    for (int g : gurus) total += w[g];
    const double tie_slack = 1e-9 * total;

    // Depth-first over include/exclude decisions, carrying the coalition
    // weight and the probability product on the stack. No divisions, so
    // products stay exact per subset.
    double value = 0.0;
    std::uint64_t winning = 0;
    struct Frame {
        int level;
        double weight;
        double prob;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0.0, 1.0});
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.level == m) {
            if (2.0 * f.weight >= total - tie_slack) {
                value += f.prob;
                ++winning;
            }
            continue;
        }
        const int g = gurus[f.level];
        stack.push_back({f.level + 1, f.weight, f.prob * (1.0 - q[g])});
        stack.push_back({f.level + 1, f.weight + w[g], f.prob * q[g]});
    }

    AccuracyReport report;
    report.value = value;
    report.method = AccuracyMethod::Exact;
    report.guru_count = m;
    report.winning_coalitions = winning;
    return report;
}

AccuracyReport group_accuracy_mc(const AccuracyProfile& q, const std::vector<double>& w,
                                 std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidInstance("sample count must be positive");
    if (q.size() != static_cast<int>(w.size()))
        throw InvalidInstance("accuracy profile and weight vector sizes differ");
    const auto gurus = positive_weight_agents(w);

    double total = 0.0;
    for (int g : gurus) total += w[g];
    const double tie_slack = 1e-9 * total;

    std::mt19937_64 rng(seed);
    std::uint64_t correct_outcomes = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        double correct_weight = 0.0;
        for (int g : gurus)
            if (uniform01(rng) < q[g]) correct_weight += w[g];
        if (2.0 * correct_weight >= total - tie_slack) ++correct_outcomes;
    }

    AccuracyReport report;
    report.value = static_cast<double>(correct_outcomes) / static_cast<double>(samples);
    report.method = AccuracyMethod::MonteCarlo;
    report.guru_count = static_cast<int>(gurus.size());
    report.standard_error =
        std::sqrt(report.value * (1.0 - report.value) / static_cast<double>(samples));
    return report;
}

double expected_realized_accuracy(const AccuracyProfile& q, const WeightedProfile& D,
                                  std::uint64_t cap) {
    if (q.size() != D.size()) throw InvalidInstance("accuracy profile and profile sizes differ");
    double acc = 0.0;
    for_each_support_profile(D, cap, [&](const PureProfile& d, double p) {
        const auto res = resolve_gurus(d);
        bool any = false;
        for (double wi : res.weights)
            if (wi > 0.0) any = true;
        if (any) acc += p * group_accuracy(q, res.weights).value;
        // all-cycle profiles contribute nothing
    });
    return acc;
}

}  // namespace liqdem
