#include "riskfuzz/linguistic.hpp"

#include <algorithm>
#include <cmath>

namespace riskfuzz {

namespace {

struct StandardNames {
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> aliases;
};

StandardNames standard_names(std::size_t levels) {
    switch (levels) {
    case 3:
        return {{"Н", "С", "В"}, {{"L", "low"}, {"A", "avg"}, {"H", "high"}}};
    case 5:
        return {{"Н", "НС", "С", "ВС", "В"},
                {{"L", "low"}, {"BA", "below-avg"}, {"A", "avg"}, {"AA", "above-avg"}, {"H", "high"}}};
    case 7:
        return {{"ОН", "Н", "НС", "С", "ВС", "В", "ОВ"},
                {{"VL", "very-low"},
                 {"L", "low"},
                 {"BA", "below-avg"},
                 {"A", "avg"},
                 {"AA", "above-avg"},
                 {"H", "high"},
                 {"VH", "very-high"}}};
    default:
        throw DomainError("standard classifier supports 3, 5 or 7 levels");
    }
}

} // namespace

LinguisticScale LinguisticScale::standard(std::size_t levels, const AlphaLadder& ladder) {
    StandardNames names = standard_names(levels);
    LinguisticScale s;
    s.name_ = "L" + std::to_string(levels);
    s.labels_ = std::move(names.labels);
    s.aliases_ = std::move(names.aliases);
    s.carrier_lo_ = 0.0;
    s.carrier_hi_ = 1.0;
    const double n = static_cast<double>(levels);
    const double w = 0.1 * (5.0 / n); // transition zone width, preserves partition of unity
    for (std::size_t j = 1; j <= levels; ++j) {
        double ls = (j >= 2) ? (j - 1) / n - w / 2 : 0.0;
        double lc = (j >= 2) ? (j - 1) / n + w / 2 : 0.0;
        double rc = (j <= levels - 1) ? j / n - w / 2 : 1.0;
        double rs = (j <= levels - 1) ? j / n + w / 2 : 1.0;
        s.etalons_.push_back(FuzzyNumber::trapezoid(ls, lc, rc, rs, ladder));
        s.nodes_.push_back((2.0 * j - 1.0) / (2.0 * n));
    }
    return s;
}

LinguisticScale LinguisticScale::by_name(const std::string& name, const AlphaLadder& ladder) {
    if (name == "L3") {
        return standard(3, ladder);
    }
    if (name == "L5") {
        return standard(5, ladder);
    }
    if (name == "L7") {
        return standard(7, ladder);
    }
    throw DomainError("unknown scale name '" + name + "' (expected L3, L5 or L7)");
}

LinguisticScale LinguisticScale::triangular_partition(std::vector<std::string> labels, double lo,
                                                      double hi, const AlphaLadder& ladder) {
    if (labels.size() < 2) {
        throw DomainError("triangular partition needs at least 2 labels");
    }
    if (!(lo < hi)) {
        throw DomainError("triangular partition carrier must be nonempty");
    }
    LinguisticScale s;
    s.name_ = "tri" + std::to_string(labels.size());
    s.labels_ = std::move(labels);
    s.aliases_.resize(s.labels_.size());
    s.carrier_lo_ = lo;
    s.carrier_hi_ = hi;
    const std::size_t n = s.labels_.size();
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        double node = lo + step * static_cast<double>(j);
        double a = (j == 0) ? lo : node - step;
        double b = (j + 1 == n) ? hi : node + step;
        s.etalons_.push_back(FuzzyNumber::triangle(a, node, b, ladder));
        s.nodes_.push_back(node);
    }
    return s;
}

const FuzzyNumber& LinguisticScale::etalon(const std::string& label) const {
    return etalons_[index_of(label)];
}

std::optional<std::size_t> LinguisticScale::find(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    for (std::size_t i = 0; i < aliases_.size(); ++i) {
        for (const std::string& a : aliases_[i]) {
            if (a == label) {
                return i;
            }
        }
    }
    return std::nullopt;
}

std::size_t LinguisticScale::index_of(const std::string& label) const {
    if (auto i = find(label)) {
        return *i;
    }
    throw DomainError("unknown label '" + label + "' on scale " + name_);
}

double LinguisticScale::membership(const std::string& label, double x) const {
    if (x < carrier_lo_ - 1e-12 || x > carrier_hi_ + 1e-12) {
        throw DomainError("value outside the scale carrier");
    }
    return etalons_[index_of(label)].membership(x);
}

double membership_distance(const MembershipCurve& a, const MembershipCurve& b,
                           DistanceFlavor flavor) {
    // |mu_a - mu_b| = (mu_a + mu_b) - 2 * min(mu_a, mu_b); the quadratic
    // flavor integrates sqrt((mu_a - mu_b)^2), which is the same integrand.
    (void)flavor;
    double overlap = MembershipCurve::min_of(a, b).area();
    return a.area() + b.area() - 2.0 * overlap;
}

double similarity(const MembershipCurve& x, const MembershipCurve& etalon,
                  DistanceFlavor flavor) {
    (void)flavor;
    double total = x.area();
    if (total <= 1e-12) {
        throw EmptySetError("similarity of a zero-area fuzzy value");
    }
    double rho_in = MembershipCurve::min_of(x, etalon).area();
    double rho_out = total - rho_in;
    double rho = (rho_in - rho_out) / (rho_in + rho_out);
    return 0.5 * (1.0 + rho);
}

double similarity(const FuzzyNumber& x, const FuzzyNumber& etalon, DistanceFlavor flavor) {
    if (x.is_singleton()) {
        // crisp degeneracy: match by the etalon membership at the point
        return etalon.membership(0.5 * (x.left_support() + x.right_support()));
    }
    return similarity(x.curve(), etalon.curve(), flavor);
}

Recognition recognize(const FuzzyNumber& x, const LinguisticScale& scale, DistanceFlavor flavor) {
    Recognition r;
    r.best_value = x;
    r.omegas.reserve(scale.size());
    for (std::size_t i = 0; i < scale.size(); ++i) {
        r.omegas.push_back(similarity(x, scale.etalon(i), flavor));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.omegas.size(); ++i) {
        if (r.omegas[i] > r.omegas[best] + 1e-9) {
            best = i;
        }
    }
    // ties break toward the lower (more pessimistic) label
    for (std::size_t i = 0; i < best; ++i) {
        if (r.omegas[i] >= r.omegas[best] - 1e-9) {
            best = i;
            break;
        }
    }
    r.best_index = best;
    r.best_label = scale.label(best);
    return r;
}

} // namespace riskfuzz
