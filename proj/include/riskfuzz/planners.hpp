#pragma once

#include "riskfuzz/fuzzy.hpp"

#include <string>
#include <vector>

namespace riskfuzz {

/// Secure-channel provisioning under uniform demand between two bounds.
struct ChannelProblem {
    long demand_lo = 0;       // N1
    long demand_hi = 0;       // N2 > N1
    double profit_ratio = 1.; // k > 0, profit per channel = k * cost
    double channel_cost = 1.; // S > 0

    void validate() const;
};

/// Closed-form optimum: floor((N2 * k + N1) / (k + 1)); expected-profit ties
/// between n and n+1 resolve to the smaller n.
long optimal_channels(const ChannelProblem& p);

/// Expected profit of provisioning n channels (the averaged criterion);
/// exposed for the brute-force cross-check.
double expected_channel_profit(const ChannelProblem& p, long n);

enum class ChoiceMode { Minimax, Expected };

/// Strategies-by-scenarios cost matrix with scenario probabilities.
struct ChoiceMatrix {
    std::vector<std::vector<double>> cost; // [strategy][scenario]
    std::vector<double> probability;       // per scenario, sums to 1

    void validate() const;
};

struct ChoiceResult {
    std::size_t strategy = 0; // 0-based; ties resolve to the lower index
    double score = 0.0;       // guaranteed (minimax) or expected cost
};

ChoiceResult choose_system(const ChoiceMatrix& m, ChoiceMode mode);

/// Sensor placement on a linear perimeter: points on [0, 1] with breach
/// probabilities, physical length in meters.
struct PerimeterProblem {
    std::vector<double> points;        // sorted, in [0, 1]
    std::vector<double> probabilities; // same size, sums to 1
    double length = 1.0;               // meters

    void validate() const;
};

struct PlacementResult {
    double argmin_lo = 0.0; // relative coordinates of the full minimizer set
    double argmin_hi = 0.0;
    double mean_distance = 0.0;      // minimal expected distance (relative)
    double absolute_lo = 0.0;        // length * argmin_lo
    double absolute_hi = 0.0;
};

/// Minimizes the expected absolute distance exactly over the piecewise
/// linear segments (weighted-median structure); returns the whole argmin
/// interval.
PlacementResult place_sensor(const PerimeterProblem& p);

} // namespace riskfuzz
