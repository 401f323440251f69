#ifndef LIQDEM_RNG_HPP
#define LIQDEM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace liqdem {

// std::uniform_real_distribution is implementation-defined; draw doubles
// from raw engine output so seeded runs reproduce across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Index drawn from the discrete distribution given by `weights`
/// (assumed to sum to ~1).
inline int draw_index(std::mt19937_64& rng, const std::vector<double>& weights) {
    double u = uniform01(rng);
    double acc = 0.0;
    int last_positive = 0;
    for (int j = 0; j < static_cast<int>(weights.size()); ++j) {
        if (weights[j] <= 0.0) continue;
        last_positive = j;
        acc += weights[j];
        if (u < acc) return j;
    }
    return last_positive;  // u landed in the rounding gap past the last entry
}

/// Random stochastic row supported on `targets` (exponential spacings,
/// normalized).
inline std::vector<double> random_stochastic_row(std::mt19937_64& rng, int n,
                                                 const std::vector<int>& targets) {
    std::vector<double> row(n, 0.0);
    double total = 0.0;
    for (int t : targets) {
        double e = -std::log(1.0 - uniform01(rng));
        row[t] = e;
        total += e;
    }
    for (int t : targets) row[t] /= total;
    return row;
}

}  // namespace liqdem

#endif
