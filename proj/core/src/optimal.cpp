#include "liqdem/optimal.hpp"

#include <algorithm>
#include <cmath>

namespace liqdem {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kPerfectClamp = 1.0 - 1e-12;

}  // namespace

OptimalWeights optimal_weights(const AccuracyProfile& q, bool clamp_perfect) {
    const int n = q.size();
    std::vector<double> logodds(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double qi = q[i];
        if (qi == 1.0) {
            if (!clamp_perfect) throw PerfectAgent(i);
            qi = kPerfectClamp;
        }
        logodds[i] = std::log(qi / (1.0 - qi));
        sum += logodds[i];
    }
    if (sum == 0.0) throw AllUninformative();

    OptimalWeights out;
    out.w_star.resize(n);
    for (int i = 0; i < n; ++i) {
        out.w_star[i] = static_cast<double>(n) * logodds[i] / sum;
        if (out.w_star[i] > 1.0 + kUnitTolerance) {
            out.above.push_back(i);
            out.surplus += out.w_star[i] - 1.0;
        } else if (out.w_star[i] < 1.0 - kUnitTolerance) {
            out.below.push_back(i);
        }
    }
    return out;
}

WeightedProfile optimal_delegation(const AccuracyProfile& q, bool clamp_perfect) {
    const auto opt = optimal_weights(q, clamp_perfect);
    const int n = q.size();
    Matrix rows(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
    if (opt.above.empty()) return WeightedProfile::from_matrix(std::move(rows));

    for (int i : opt.below) {
        double sent = 0.0;
        for (int j : opt.above) {
            rows[i][j] = (1.0 - opt.w_star[i]) * (opt.w_star[j] - 1.0) / opt.surplus;
            sent += rows[i][j];
        }
        rows[i][i] = 1.0 - sent;
    }
    return WeightedProfile::from_matrix(std::move(rows));
}

PureSearchResult best_pure_accuracy(const AccuracyProfile& q) {
    const int n = q.size();
    if (n > 12) throw InstanceTooLarge(n, 12, "pure-delegation search");

    PureSearchResult best;
    best.value = -1.0;
    std::vector<int> members;   // guru subset under construction
    std::vector<int> alloc;     // integer weight per member

    // Enumerates weight vectors over the fixed guru subset `members`:
    // each entry >= 1, entries summing to n.
    auto score_compositions = [&](auto&& self, int idx, int remaining) -> void {
        const int k = static_cast<int>(members.size());
        if (idx == k - 1) {
            alloc[idx] = remaining;
            std::vector<double> w(n, 0.0);
            for (int t = 0; t < k; ++t) w[members[t]] = static_cast<double>(alloc[t]);
            const double value = group_accuracy(q, w).value;
            if (value > best.value) {
                best.value = value;
                best.weights = w;
            }
            return;
        }
        for (int v = 1; v <= remaining - (k - 1 - idx); ++v) {
            alloc[idx] = v;
            self(self, idx + 1, remaining - v);
        }
    };

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        members.clear();
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) members.push_back(i);
        if (static_cast<int>(members.size()) > n) continue;
        alloc.assign(members.size(), 1);
        score_compositions(score_compositions, 0, n);
    }
    return best;
}

}  // namespace liqdem
