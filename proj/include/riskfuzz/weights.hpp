#pragma once

#include "riskfuzz/fuzzy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace riskfuzz {

/// Reduced fraction with a 64-bit numerator/denominator.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Fraction of(std::int64_t n, std::int64_t d);
    double real() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Fraction&) const = default;
};

/// Ordered groups of item ids; group 0 is the most preferred, items within
/// a group are indifferent.
struct PreferenceRanking {
    std::vector<std::vector<std::string>> groups;

    std::size_t item_count() const;
    std::vector<std::string> items() const;
    /// 1-based group index of an item.
    std::size_t group_of(const std::string& item) const;
};

/// Parses "K1 > K2 ~ K3": '>' separates groups, '~' joins indifferent items.
PreferenceRanking parse_ranking(const std::string& text);
std::string format_ranking(const PreferenceRanking& r);

struct WeightedItem {
    std::string item;
    Fraction weight;
};

/// Item weights in ranking order; exact rationals summing to 1.
struct WeightVector {
    std::vector<WeightedItem> entries;

    double real(const std::string& item) const;
    Fraction fraction(const std::string& item) const;
};

/// Rank-normalized criticality weights: an item in the g-th group (g = 1 at
/// the most important) weighs g / sum of group indices over all items, so
/// less preferred items carry the larger weight.
WeightVector rank_weights(const PreferenceRanking& r);

/// Fishburn weights generalized to ties: an item in the g-th group of G
/// scores G - g + 1; weights are scores normalized to 1, so more preferred
/// items carry the larger weight.
WeightVector fishburn_weights(const PreferenceRanking& r);

/// Averages group indices per item over several rankings of the same item
/// set, re-ranks by the mean, and merges items whose running mean gap is
/// within tie_tolerance into one indifference group.
PreferenceRanking aggregate_rankings(const std::vector<PreferenceRanking>& rankings,
                                     double tie_tolerance = 0.5);

} // namespace riskfuzz
