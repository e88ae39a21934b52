#include "riskfuzz/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace riskfuzz {

Fraction Fraction::of(std::int64_t n, std::int64_t d) {
    if (d == 0) {
        throw DomainError("fraction with zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Fraction{n, d};
}

std::size_t PreferenceRanking::item_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) {
        n += g.size();
    }
    return n;
}

std::vector<std::string> PreferenceRanking::items() const {
    std::vector<std::string> out;
    for (const auto& g : groups) {
        out.insert(out.end(), g.begin(), g.end());
    }
    return out;
}

std::size_t PreferenceRanking::group_of(const std::string& item) const {
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (std::find(groups[g].begin(), groups[g].end(), item) != groups[g].end()) {
            return g + 1;
        }
    }
    throw DomainError("item '" + item + "' not present in ranking");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

void validate_ranking(const PreferenceRanking& r) {
    if (r.groups.empty() || r.item_count() == 0) {
        throw DomainError("empty ranking");
    }
    std::vector<std::string> seen;
    for (const auto& g : r.groups) {
        if (g.empty()) {
            throw DomainError("ranking contains an empty indifference group");
        }
        for (const auto& it : g) {
            if (std::find(seen.begin(), seen.end(), it) != seen.end()) {
                throw DomainError("item '" + it + "' appears twice in ranking");
            }
            seen.push_back(it);
        }
    }
}

} // namespace

PreferenceRanking parse_ranking(const std::string& text) {
    PreferenceRanking r;
    for (const std::string& grp : split(text, '>')) {
        std::vector<std::string> items;
        for (const std::string& raw : split(grp, '~')) {
            std::string it = trim(raw);
            if (it.empty()) {
                throw DomainError("ranking '" + text + "' has an empty item");
            }
            items.push_back(it);
        }
        r.groups.push_back(std::move(items));
    }
    validate_ranking(r);
    return r;
}

std::string format_ranking(const PreferenceRanking& r) {
    std::string out;
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
        if (g) {
            out += " > ";
        }
        for (std::size_t i = 0; i < r.groups[g].size(); ++i) {
            if (i) {
                out += " ~ ";
            }
            out += r.groups[g][i];
        }
    }
    return out;
}

double WeightVector::real(const std::string& item) const {
    return fraction(item).real();
}

Fraction WeightVector::fraction(const std::string& item) const {
    for (const auto& e : entries) {
        if (e.item == item) {
            return e.weight;
        }
    }
    throw DomainError("item '" + item + "' not present in weight vector");
}

WeightVector rank_weights(const PreferenceRanking& r) {
    validate_ranking(r);
    std::int64_t total = 0;
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
        total += static_cast<std::int64_t>(g + 1) * static_cast<std::int64_t>(r.groups[g].size());
    }
    WeightVector w;
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
        for (const auto& item : r.groups[g]) {
            w.entries.push_back({item, Fraction::of(static_cast<std::int64_t>(g + 1), total)});
        }
    }
    return w;
}

WeightVector fishburn_weights(const PreferenceRanking& r) {
    validate_ranking(r);
    const std::int64_t ngroups = static_cast<std::int64_t>(r.groups.size());
    std::int64_t total = 0;
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
        total += (ngroups - static_cast<std::int64_t>(g)) *
                 static_cast<std::int64_t>(r.groups[g].size());
    }
    WeightVector w;
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
        std::int64_t score = ngroups - static_cast<std::int64_t>(g);
        for (const auto& item : r.groups[g]) {
            w.entries.push_back({item, Fraction::of(score, total)});
        }
    }
    return w;
}

PreferenceRanking aggregate_rankings(const std::vector<PreferenceRanking>& rankings,
                                     double tie_tolerance) {
    if (rankings.empty()) {
        throw DomainError("no rankings to aggregate");
    }
    std::vector<std::string> ref = rankings.front().items();
    std::sort(ref.begin(), ref.end());
    for (const auto& r : rankings) {
        std::vector<std::string> its = r.items();
        std::sort(its.begin(), its.end());
        if (its != ref) {
            throw DomainError("rankings aggregate over different item sets");
        }
    }
    struct MeanEntry {
        std::string item;
        double mean;
    };
    std::vector<MeanEntry> means;
    for (const auto& item : ref) {
        double s = 0.0;
        for (const auto& r : rankings) {
            s += static_cast<double>(r.group_of(item));
        }
        means.push_back({item, s / static_cast<double>(rankings.size())});
    }
    std::stable_sort(means.begin(), means.end(), [](const MeanEntry& a, const MeanEntry& b) {
        if (a.mean != b.mean) {
            return a.mean < b.mean;
        }
        return a.item < b.item;
    });
    PreferenceRanking out;
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (i == 0 || means[i].mean - means[i - 1].mean > tie_tolerance + 1e-12) {
            out.groups.emplace_back();
        }
        out.groups.back().push_back(means[i].item);
    }
    return out;
}

} // namespace riskfuzz
