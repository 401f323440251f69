#include "liqdem/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "liqdem/rng.hpp"

namespace liqdem {

AccuracyProfile::AccuracyProfile(std::vector<double> accuracies) : q_(std::move(accuracies)) {
    if (q_.empty()) throw InvalidInstance("accuracy profile must contain at least one agent");
    for (std::size_t i = 0; i < q_.size(); ++i) {
        if (!(q_[i] >= 0.5 && q_[i] <= 1.0)) {
            throw InvalidInstance("accuracy of agent " + std::to_string(i) +
                                  " is outside [0.5, 1.0]");
        }
    }
}

PureProfile::PureProfile(std::vector<int> targets) : d(std::move(targets)) {
    const int n = static_cast<int>(d.size());
    if (n == 0) throw InvalidInstance("pure profile must contain at least one agent");
    for (int i = 0; i < n; ++i) {
        if (d[i] < 0 || d[i] >= n) {
            throw InvalidInstance("delegation target of agent " + std::to_string(i) +
                                  " is out of range");
        }
    }
}

PureProfile PureProfile::trivial(int n) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) d[i] = i;
    return PureProfile(std::move(d));
}

Network::Network(int n, std::vector<std::vector<bool>> allowed)
    : n_(n), allowed_(std::move(allowed)) {}

Network Network::complete(int n) {
    if (n < 1) throw InvalidInstance("network needs at least one agent");
    return Network(n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, true)));
}

Network Network::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw InvalidInstance("network needs at least one agent");
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) allowed[i][i] = true;
    for (const auto& [from, to] : edges) {
        if (from < 0 || from >= n || to < 0 || to >= n) {
            throw InvalidInstance("network edge (" + std::to_string(from) + ", " +
                                  std::to_string(to) + ") is out of range");
        }
        allowed[from][to] = true;
    }
    return Network(n, std::move(allowed));
}

std::vector<int> Network::neighborhood(int from) const {
    std::vector<int> out;
    for (int j = 0; j < n_; ++j)
        if (allowed_[from][j]) out.push_back(j);
    return out;
}

bool Network::is_complete() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!allowed_[i][j]) return false;
    return true;
}

std::vector<std::pair<int, int>> Network::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (allowed_[i][j] && i != j) out.emplace_back(i, j);
    return out;
}

WeightedProfile WeightedProfile::from_matrix(Matrix rows, const Network* network) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw InvalidInstance("weighted profile must contain at least one row");
    if (network && network->size() != n)
        throw InvalidInstance("network size does not match weighted profile");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw InvalidInstance("row " + std::to_string(i) + " has wrong length");
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double v = rows[i][j];
            if (!(v >= 0.0 && v <= 1.0) || !std::isfinite(v))
                throw InvalidInstance("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") is outside [0, 1]");
            if (network && v > 0.0 && !network->permits(i, j))
                throw InvalidInstance("positive weight on forbidden edge (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance)
            throw InvalidInstance("row " + std::to_string(i) + " sums to " + std::to_string(sum) +
                                  ", not 1");
        if (sum != 1.0)
            for (int j = 0; j < n; ++j) rows[i][j] /= sum;
    }
    return WeightedProfile(std::move(rows));
}

WeightedProfile WeightedProfile::identity(int n) {
    Matrix rows(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
    return WeightedProfile(std::move(rows));
}

WeightedProfile WeightedProfile::from_pure(const PureProfile& d) {
    const int n = d.size();
    Matrix rows(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) rows[i][d.d[i]] = 1.0;
    return WeightedProfile(std::move(rows));
}

std::vector<int> WeightedProfile::support(int i) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
        if (rows_[i][j] > 0.0) out.push_back(j);
    return out;
}

WeightedProfile WeightedProfile::with_pure_row(int agent, int target) const {
    Matrix rows = rows_;
    std::fill(rows[agent].begin(), rows[agent].end(), 0.0);
    rows[agent][target] = 1.0;
    return WeightedProfile(std::move(rows));
}

WeightedProfile WeightedProfile::with_row(int agent, std::vector<double> row) const {
    Matrix rows = rows_;
    rows[agent] = std::move(row);
    return from_matrix(std::move(rows));
}

GuruResolution resolve_gurus(const PureProfile& p) {
    const int n = p.size();
    GuruResolution res;
    res.guru.assign(n, std::nullopt);
    res.weights.assign(n, 0.0);

    // 0 = unvisited, 1 = on the current path, 2 = settled
    std::vector<int> state(n, 0);
    std::vector<int> path;
    for (int i = 0; i < n; ++i) {
        if (state[i] == 2) continue;
        path.clear();
        int cur = i;
        while (state[cur] == 0) {
            state[cur] = 1;
            path.push_back(cur);
            if (p.d[cur] == cur) {
                res.guru[cur] = cur;
                state[cur] = 2;
                break;
            }
            cur = p.d[cur];
        }
        // state[cur] == 2: chain reached a settled agent (possibly cycle-trapped).
        // state[cur] == 1: the walk closed a cycle; guru[cur] stays absent.
        const std::optional<int> g = res.guru[cur];
        for (int v : path) {
            res.guru[v] = g;
            state[v] = 2;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (p.d[i] == i) res.gurus.insert(i);
        if (res.guru[i]) res.weights[*res.guru[i]] += 1.0;
    }
    return res;
}

int guru_of(const std::vector<int>& d, int agent) {
    const int n = static_cast<int>(d.size());
    int cur = agent;
    for (int step = 0; step < n; ++step) {
        if (d[cur] == cur) return cur;
        cur = d[cur];
    }
    return -1;  // more hops than agents: trapped by a cycle
}

double profile_probability(const WeightedProfile& D, const PureProfile& d) {
    if (D.size() != d.size()) throw InvalidInstance("profile sizes do not match");
    double p = 1.0;
    for (int i = 0; i < D.size(); ++i) p *= D.at(i, d.d[i]);
    return p;
}

namespace {

std::vector<std::vector<int>> row_supports(const WeightedProfile& D, std::uint64_t cap) {
    const int n = D.size();
    std::vector<std::vector<int>> supports(n);
    double product = 1.0;
    for (int i = 0; i < n; ++i) {
        supports[i] = D.support(i);
        product *= static_cast<double>(supports[i].size());
    }
    if (product > static_cast<double>(cap))
        throw SupportTooLarge(product, static_cast<double>(cap));
    return supports;
}

}  // namespace

void for_each_support_profile(const WeightedProfile& D, std::uint64_t cap,
                              const std::function<void(const PureProfile&, double)>& fn) {
    const int n = D.size();
    const auto supports = row_supports(D, cap);

    PureProfile d = PureProfile::trivial(n);
    std::vector<double> prefix(n + 1, 1.0);  // prefix[i] = prob of rows < i
    std::vector<int> pos(n, 0);
    int level = 0;
    while (level >= 0) {
        if (level == n) {
            fn(d, prefix[n]);
            --level;
            continue;
        }
        if (pos[level] == static_cast<int>(supports[level].size())) {
            pos[level] = 0;
            --level;
            continue;
        }
        const int target = supports[level][pos[level]++];
        d.d[level] = target;
        prefix[level + 1] = prefix[level] * D.at(level, target);
        ++level;
    }
}

std::vector<std::pair<PureProfile, double>> support_profiles(const WeightedProfile& D,
                                                             std::uint64_t cap) {
    std::vector<std::pair<PureProfile, double>> out;
    for_each_support_profile(D, cap,
                             [&](const PureProfile& d, double p) { out.emplace_back(d, p); });
    return out;
}

std::vector<double> expected_weights_exact(const WeightedProfile& D, std::uint64_t cap) {
    const int n = D.size();
    std::vector<double> w(n, 0.0);
    for_each_support_profile(D, cap, [&](const PureProfile& d, double p) {
        for (int i = 0; i < n; ++i) {
            const int g = guru_of(d.d, i);
            if (g >= 0) w[g] += p;
        }
    });
    return w;
}

std::vector<double> expected_weights_paths(const WeightedProfile& D) {
    const int n = D.size();
    if (n > 16) throw InstanceTooLarge(n, 16, "path-DP expected weights");
    std::vector<double> w(n, 0.0);
    // For each source j, f[S][k] = probability that j's chain walks a simple
    // path with visited set S ending at k. The chain terminates at guru i
    // with probability sum_S f[S][i] * D[i][i].
    const std::uint32_t full = 1u << n;
    std::vector<std::vector<double>> f(full, std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j) {
        for (auto& row : f) std::fill(row.begin(), row.end(), 0.0);
        f[1u << j][j] = 1.0;
        for (std::uint32_t S = 1; S < full; ++S) {
            if (!(S & (1u << j))) continue;
            for (int k = 0; k < n; ++k) {
                const double fk = f[S][k];
                if (fk == 0.0 || !(S & (1u << k))) continue;
                w[k] += fk * D.at(k, k);
                for (int m = 0; m < n; ++m) {
                    if (S & (1u << m)) continue;
                    const double step = D.at(k, m);
                    if (step > 0.0) f[S | (1u << m)][m] += fk * step;
                }
            }
        }
    }
    return w;
}

SampledWeights expected_weights_sampled(const WeightedProfile& D, std::uint64_t count,
                                        std::uint64_t seed) {
    if (count == 0) throw InvalidInstance("sample count must be positive");
    const int n = D.size();
    std::mt19937_64 rng(seed);
    std::vector<double> sum(n, 0.0);
    std::vector<double> sumsq(n, 0.0);
    std::vector<int> d(n, 0);
    std::vector<double> w(n, 0.0);
    for (std::uint64_t s = 0; s < count; ++s) {
        for (int i = 0; i < n; ++i) d[i] = draw_index(rng, D.row(i));
        std::fill(w.begin(), w.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const int g = guru_of(d, i);
            if (g >= 0) w[g] += 1.0;
        }
        for (int i = 0; i < n; ++i) {
            sum[i] += w[i];
            sumsq[i] += w[i] * w[i];
        }
    }
    SampledWeights out;
    out.samples = count;
    out.mean.resize(n);
    out.standard_error.resize(n);
    const double c = static_cast<double>(count);
    for (int i = 0; i < n; ++i) {
        out.mean[i] = sum[i] / c;
        const double var = std::max(0.0, sumsq[i] / c - out.mean[i] * out.mean[i]);
        out.standard_error[i] = std::sqrt(var / c);
    }
    return out;
}

bool DelegationGraph::is_acyclic() const {
    std::vector<int> state(n, 0);
    std::vector<std::pair<int, int>> stack;  // (node, next edge index)
    for (int start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        stack.emplace_back(start, 0);
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            if (idx == static_cast<int>(out[v].size())) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            const int next = out[v][idx++];
            if (state[next] == 1) return false;
            if (state[next] == 0) {
                state[next] = 1;
                stack.emplace_back(next, 0);
            }
        }
    }
    return true;
}

DelegationGraph delegation_graph(const WeightedProfile& D) {
    DelegationGraph g;
    g.n = D.size();
    g.out.resize(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (i != j && D.at(i, j) > 0.0) g.out[i].push_back(j);
    return g;
}

}  // namespace liqdem
