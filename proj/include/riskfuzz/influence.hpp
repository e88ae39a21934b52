#pragma once

#include "riskfuzz/fuzzy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riskfuzz {

/// Weighted directed graph over situation factors; weights in [-1, 1].
/// Edge labels from the three-step lexicon map to {1/3, 2/3, 1}.
class InfluenceMap {
public:
    std::size_t add_vertex(const std::string& name);
    std::size_t vertex(const std::string& name) const;
    const std::string& name(std::size_t v) const { return names_[v]; }
    std::size_t size() const { return names_.size(); }

    void add_edge(std::size_t from, std::size_t to, double weight);
    void add_edge(const std::string& from, const std::string& to, double weight);
    double weight(std::size_t from, std::size_t to) const { return w_[from][to]; }
    const std::vector<std::vector<double>>& matrix() const { return w_; }

    /// Maps a lexicon label to its weight: слабо/weak 1/3, умеренно/moderate
    /// 2/3, сильно/strong 1.
    static double lexicon_weight(const std::string& label);
    static std::string lexicon_label(double w);

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> w_;
};

struct PathInfluence {
    std::vector<std::size_t> path; // vertices, source first
    double strength = 0.0;         // min edge weight along the path
};

struct PathInfluenceResult {
    std::vector<PathInfluence> paths;
    double total = 0.0; // max over paths of the min-edge strength
};

/// Simple paths from i to j up to max_len edges; per-path influence is the
/// weakest edge, total is the strongest path.
PathInfluenceResult path_influence(const InfluenceMap& map, std::size_t i, std::size_t j,
                                   std::size_t max_len);

struct SignedInfluence {
    double positive = 0.0;  // attenuated positive path sum
    double negative = 0.0;  // attenuated negative path sum, carried with its sign (<= 0)
    double strength = 0.0;  // positive + negative
    double consonance = 0.0; // (P - |N|) / (P + |N|), in [-1, 1]; 1 when no dissent
};

/// Path counts by length and sign with geometric attenuation alpha^len over
/// simple paths up to max_len (defaults to the vertex count).
SignedInfluence signed_influence(const InfluenceMap& map, std::size_t i, std::size_t j,
                                 double alpha, std::optional<std::size_t> max_len = std::nullopt);

struct ForecastStep {
    std::vector<double> state;      // clamped to [0, 1]
    std::vector<double> increment;  // signed max-product increments
    std::vector<double> consonance; // per-vertex, in [0, 1]
};

/// Impulse propagation: P(t+1) = P(t) o W under the signed max-product rule
/// (largest magnitude wins, ties prefer positive), X(t+1) = X(t) + P(t+1);
/// consonance compares the strongest positive and negative inputs.
std::vector<ForecastStep> forecast(const InfluenceMap& map, std::vector<double> x0,
                                   std::vector<double> p0, std::size_t steps);

/// Max-product transitive closure: elementwise max of W^k, k = 1..size.
std::vector<std::vector<double>> transitive_closure(const InfluenceMap& map);

struct InverseSolution {
    std::vector<std::vector<double>> inputs; // all grid vectors within tolerance
    std::vector<double> nearest;             // best vector when inputs is empty
    double nearest_error = 0.0;              // sup-norm of the best residual
};

/// Exhaustive grid search for U with U o W' = target under max-product
/// composition. Guarded to <= 8 controllable inputs.
InverseSolution solve_inverse(const std::vector<std::vector<double>>& closure,
                              const std::vector<double>& target, double grid_step,
                              double tolerance = 1e-9);

} // namespace riskfuzz
