#pragma once

#include "riskfuzz/fuzzy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riskfuzz {

/// Distance flavor behind the similarity index. Both reduce to the same
/// overlap areas (the quadratic form integrates sqrt of a square), so the
/// resulting index is identical; the flavor is kept selectable for parity
/// with the two published distance definitions.
enum class DistanceFlavor { Hamming, Euclid };

/// Ordered family of etalon membership functions over a carrier, with one
/// node point per label where that label's membership is 1 and all others 0.
class LinguisticScale {
public:
    /// Standard L-level 01-classifier (L in {3, 5, 7}): trapezoids on [0, 1]
    /// with equally spaced nodes and transition zones of width 0.5 / L,
    /// forming a partition of unity.
    static LinguisticScale standard(std::size_t levels,
                                    const AlphaLadder& ladder = AlphaLadder::standard());
    /// Scale by registry name: "L3", "L5", "L7".
    static LinguisticScale by_name(const std::string& name,
                                   const AlphaLadder& ladder = AlphaLadder::standard());
    /// Triangular partition of [lo, hi] with the given labels at equally
    /// spaced nodes; the first and last terms are half-triangles (shoulders).
    static LinguisticScale triangular_partition(std::vector<std::string> labels, double lo,
                                                double hi,
                                                const AlphaLadder& ladder = AlphaLadder::standard());

    const std::string& name() const { return name_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const FuzzyNumber& etalon(std::size_t i) const { return etalons_[i]; }
    const FuzzyNumber& etalon(const std::string& label) const;
    double node(std::size_t i) const { return nodes_[i]; }
    double carrier_lo() const { return carrier_lo_; }
    double carrier_hi() const { return carrier_hi_; }

    /// Index of a label; accepts the native label or a registered alias.
    std::optional<std::size_t> find(const std::string& label) const;
    std::size_t index_of(const std::string& label) const;

    /// Membership of x in the label's etalon. Throws on unknown label or
    /// x outside the carrier.
    double membership(const std::string& label, double x) const;

private:
    LinguisticScale() = default;

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::string>> aliases_;
    std::vector<FuzzyNumber> etalons_;
    std::vector<double> nodes_;
    double carrier_lo_ = 0.0;
    double carrier_hi_ = 1.0;
};

/// Result of matching a value against every label of a scale.
struct Recognition {
    std::vector<double> omegas;    // one similarity index per label
    std::size_t best_index = 0;    // ties resolve to the lower label
    std::string best_label;
    FuzzyNumber best_value;        // the unrounded value that was recognized

    double best_omega() const { return omegas[best_index]; }
};

/// Similarity index of x against an etalon: the share of x's membership
/// area that lies under the etalon's membership. Throws EmptySetError when
/// x has zero area (singletons match by etalon membership at the point).
double similarity(const MembershipCurve& x, const MembershipCurve& etalon,
                  DistanceFlavor flavor = DistanceFlavor::Hamming);
double similarity(const FuzzyNumber& x, const FuzzyNumber& etalon,
                  DistanceFlavor flavor = DistanceFlavor::Hamming);

Recognition recognize(const FuzzyNumber& x, const LinguisticScale& scale,
                      DistanceFlavor flavor = DistanceFlavor::Hamming);

/// Pointwise distance between membership functions (Eq-style integrals,
/// exposed for diagnostics; both flavors integrate |mu_a - mu_b|).
double membership_distance(const MembershipCurve& a, const MembershipCurve& b,
                           DistanceFlavor flavor = DistanceFlavor::Hamming);

} // namespace riskfuzz
