#ifndef LIQDEM_ACCURACY_HPP
#define LIQDEM_ACCURACY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "liqdem/model.hpp"

namespace liqdem {

/// Default limit on the number of gurus for exact coalition enumeration
/// (2^25 subsets).
inline constexpr int kDefaultGuruLimit = 25;

enum class AccuracyMethod { Exact, MonteCarlo };

struct AccuracyReport {
    double value = 0.0;
    AccuracyMethod method = AccuracyMethod::Exact;
    int guru_count = 0;
    std::optional<double> standard_error;          // Monte Carlo only
    std::optional<std::uint64_t> winning_coalitions;  // exact only
};

/// Probability that the weighted majority of gurus ({i : w[i] > 0}) votes
/// correctly. A coalition wins when its weight is at least the complement's,
/// up to a tie slack of 1e-9 times the total weight; exact ties count for
/// both sides (disjoint vote outcomes, so nothing is double counted).
AccuracyReport group_accuracy(const AccuracyProfile& q, const std::vector<double>& w,
                              int max_gurus = kDefaultGuruLimit);

/// Monte-Carlo estimate of the same quantity: per-guru votes are drawn
/// independently and the group is correct when the correct side's weight is
/// at least the incorrect side's (same tie rule).
AccuracyReport group_accuracy_mc(const AccuracyProfile& q, const std::vector<double>& w,
                                 std::uint64_t samples, std::uint64_t seed);

/// Diagnostic, non-canonical: expectation over realized support profiles d
/// of the majority accuracy of d's resolved guru weights. This is generally
/// NOT equal to group_accuracy of the expected weights, which is the
/// canonical quantity everywhere else in this library.
double expected_realized_accuracy(const AccuracyProfile& q, const WeightedProfile& D,
                                  std::uint64_t cap = kDefaultSupportCap);

}  // namespace liqdem

#endif
