#include "riskfuzz/planners.hpp"

#include <algorithm>
#include <cmath>

namespace riskfuzz {

void ChannelProblem::validate() const {
    if (!(demand_hi > demand_lo) || demand_lo < 0) {
        throw DomainError("channel demand bounds must satisfy 0 <= N1 < N2");
    }
    if (profit_ratio <= 0.0) {
        throw DomainError("profitability ratio must be positive");
    }
    if (channel_cost <= 0.0) {
        throw DomainError("channel cost must be positive");
    }
}

double expected_channel_profit(const ChannelProblem& p, long n) {
    p.validate();
    // F(n, Z) = n k S for n <= Z, else Z k S - (n - Z) S; Z uniform on
    // [N1, N2] with weight 1 / (N2 - N1)
    double acc = 0.0;
    for (long z = p.demand_lo; z <= p.demand_hi; ++z) {
        double f = (n <= z) ? static_cast<double>(n) * p.profit_ratio * p.channel_cost
                            : static_cast<double>(z) * p.profit_ratio * p.channel_cost -
                                  static_cast<double>(n - z) * p.channel_cost;
        acc += f;
    }
    return acc / static_cast<double>(p.demand_hi - p.demand_lo);
}

long optimal_channels(const ChannelProblem& p) {
    p.validate();
    double v = (static_cast<double>(p.demand_hi) * p.profit_ratio +
                static_cast<double>(p.demand_lo)) /
               (p.profit_ratio + 1.0);
    long n = static_cast<long>(std::floor(v + 1e-9));
    return std::clamp(n, p.demand_lo, p.demand_hi);
}

void ChoiceMatrix::validate() const {
    if (cost.empty() || cost.front().empty()) {
        throw DomainError("choice matrix must be nonempty");
    }
    const std::size_t scenarios = cost.front().size();
    for (const auto& row : cost) {
        if (row.size() != scenarios) {
            throw DomainError("choice matrix is ragged");
        }
    }
    if (!probability.empty()) {
        if (probability.size() != scenarios) {
            throw DomainError("scenario probability count mismatch");
        }
        double s = 0.0;
        for (double p : probability) {
            if (p < 0.0) {
                throw DomainError("negative scenario probability");
            }
            s += p;
        }
        if (std::abs(s - 1.0) > 1e-9) {
            throw DomainError("scenario probabilities must sum to 1");
        }
    }
}

ChoiceResult choose_system(const ChoiceMatrix& m, ChoiceMode mode) {
    m.validate();
    if (mode == ChoiceMode::Expected && m.probability.empty()) {
        throw DomainError("expected mode needs scenario probabilities");
    }
    ChoiceResult best;
    bool first = true;
    for (std::size_t s = 0; s < m.cost.size(); ++s) {
        double score;
        if (mode == ChoiceMode::Minimax) {
            score = *std::max_element(m.cost[s].begin(), m.cost[s].end());
        } else {
            score = 0.0;
            for (std::size_t z = 0; z < m.cost[s].size(); ++z) {
                score += m.cost[s][z] * m.probability[z];
            }
        }
        if (first || score < best.score - 1e-15) {
            best.strategy = s;
            best.score = score;
            first = false;
        }
    }
    return best;
}

void PerimeterProblem::validate() const {
    if (points.empty() || points.size() != probabilities.size()) {
        throw DomainError("perimeter problem needs matching points and probabilities");
    }
    if (!std::is_sorted(points.begin(), points.end())) {
        throw DomainError("perimeter points must be sorted");
    }
    for (double z : points) {
        if (z < 0.0 || z > 1.0) {
            throw DomainError("perimeter points must lie in [0, 1]");
        }
    }
    double s = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) {
            throw DomainError("negative breach probability");
        }
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-9) {
        throw DomainError("breach probabilities must sum to 1");
    }
    if (length <= 0.0) {
        throw DomainError("perimeter length must be positive");
    }
}

PlacementResult place_sensor(const PerimeterProblem& p) {
    p.validate();
    auto mean_distance = [&](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            s += p.probabilities[i] * std::abs(x - p.points[i]);
        }
        return s;
    };
    // objective is piecewise linear with breakpoints at the points; evaluate
    // every breakpoint, then extend flat segments on either side of the best
    double best = 1e300;
    for (double z : p.points) {
        best = std::min(best, mean_distance(z));
    }
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        if (mean_distance(p.points[i]) <= best + 1e-12) {
            lo = std::min(lo, p.points[i]);
            hi = std::max(hi, p.points[i]);
        }
    }
    // a flat optimal segment may reach the carrier edges (slope of the
    // objective left of the first point is -1 * sum of probabilities + ...)
    auto slope_left_of = [&](double x) {
        // derivative just left of x
        double s = 0.0;
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            s += (p.points[i] < x - 1e-15) ? p.probabilities[i] : -p.probabilities[i];
        }
        return s;
    };
    auto slope_right_of = [&](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            s += (p.points[i] <= x + 1e-15) ? p.probabilities[i] : -p.probabilities[i];
        }
        return s;
    };
    if (lo > 0.0 && std::abs(slope_left_of(lo)) < 1e-12) {
        lo = 0.0; // flat all the way to the left edge
    }
    if (hi < 1.0 && std::abs(slope_right_of(hi)) < 1e-12) {
        hi = 1.0;
    }
    PlacementResult res;
    res.argmin_lo = lo;
    res.argmin_hi = hi;
    res.mean_distance = best;
    res.absolute_lo = lo * p.length;
    res.absolute_hi = hi * p.length;
    return res;
}

} // namespace riskfuzz
