#pragma once

#include "riskfuzz/fuzzy.hpp"
#include "riskfuzz/linguistic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace riskfuzz {

/// Model structure or data violates an invariant; the message names the
/// offending element.
class ModelError : public Error {
public:
    explicit ModelError(const std::string& msg) : Error(msg) {}
};

enum class Convolution { Multiplicative, Additive, Max, Min };

Convolution convolution_from_name(const std::string& name);
std::string convolution_name(Convolution c);

struct ModelNode {
    std::string id;
    int level = 0; // 0 is the root
    std::optional<FuzzyNumber> value;
    Convolution convolution = Convolution::Multiplicative;
};

struct ModelEdge {
    std::string child;  // start of the arc, one level below the parent
    std::string parent;
    double weight = 1.0;
    bool invert = false; // invert the child value before convolution
};

/// Leveled concept hierarchy with per-node convolutions and weighted causal
/// edges, evaluated bottom-up.
class CognitiveModel {
public:
    CognitiveModel(LinguisticScale scale, std::optional<LinguisticScale> recognition_scale = {});

    void add_node(ModelNode node);
    void add_edge(ModelEdge edge);
    void set_value(const std::string& id, FuzzyNumber value);
    void set_value(const std::string& id, const std::string& label);

    const std::vector<ModelNode>& nodes() const { return nodes_; }
    const std::vector<ModelEdge>& edges() const { return edges_; }
    const ModelNode& node(const std::string& id) const;
    const LinguisticScale& scale() const { return scale_; }
    const LinguisticScale& recognition_scale() const { return recognition_scale_; }

    /// Checks the structural invariants; throws ModelError naming the broken
    /// element.
    void validate() const;

private:
    std::vector<ModelNode> nodes_;
    std::vector<ModelEdge> edges_;
    LinguisticScale scale_;
    LinguisticScale recognition_scale_;
};

struct NodeEvaluation {
    FuzzyNumber value; // the unrounded number, as propagated upward
    Recognition recognition;
};

/// Bottom-up pass; the unrounded number propagates, recognition is reported
/// per node against the model's recognition scale.
std::map<std::string, NodeEvaluation> evaluate(const CognitiveModel& model);

// --- security-matrix algebra ---

struct CriterionRow {
    std::string id;
    FuzzyNumber level;        // K_i on [0, 1]
    int trend = 0;            // F_i in {-1, 0, +1}
    double rate = 0.0;        // V_i, criterion units per characteristic time
    double period = 1.0;      // T_i > 0
    double criticality = 1.0; // S_i > 0
};

using SecurityMatrix = std::vector<CriterionRow>;

/// K(t) = K(0) + trend * rate * (t / period), support clamped to [0, 1].
FuzzyNumber extrapolate_criterion(const CriterionRow& row, double t);

/// Matrix of fuzzy coefficients in [0, 1]; crisp entries are singletons.
struct EffectMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FuzzyNumber> data;

    static EffectMatrix filled(std::size_t rows, std::size_t cols, const FuzzyNumber& v);
    static EffectMatrix crisp(const std::vector<std::vector<double>>& values);
    FuzzyNumber& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const FuzzyNumber& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Residual influence: elementwise n * max over the preventive matrices.
EffectMatrix apply_preventive(const EffectMatrix& influence,
                              const std::vector<EffectMatrix>& preventive);

/// Loss matrix Q = safe - current (clamped into [0, 1]) and residual loss
/// Q_hat = Q * liquидation, elementwise.
std::pair<EffectMatrix, EffectMatrix> loss_and_liquidation(const EffectMatrix& safe,
                                                           const EffectMatrix& current,
                                                           const EffectMatrix& liquidation);

// --- dynamic simulation ---

/// Measure active inside a window anchored at an incident: the window is
/// [anchor + start_delay, anchor + end_time).
struct TimedMeasure {
    std::string id;
    FuzzyNumber level;
    double weight = 1.0;      // contribution exponent
    double start_delay = 0.0; // identification lag
    double end_time = 0.0;    // resource exhaustion
};

struct VulnerabilityEntry {
    std::string id;
    FuzzyNumber level;                 // initial vulnerability
    double integration_weight = 1.0;   // share in the integral vulnerability
    double amplification_weight = 0.0; // sensitivity to persistent incidents
    std::vector<std::pair<std::string, double>> protections; // measure id -> weight
};

struct ThreatBlock {
    std::string id;
    FuzzyNumber base_probability; // before protection
    std::vector<std::pair<std::string, double>> protections; // measure id -> weight
    std::vector<VulnerabilityEntry> vulnerabilities;
    std::vector<TimedMeasure> damping; // incident-window measures
};

struct ServiceBlock {
    std::string id;
    std::vector<std::pair<std::string, double>> attack_weights; // threat id -> weight
    std::vector<TimedMeasure> recovery;
    double rollup_weight = 1.0; // share in the asset score
};

struct AssetBlock {
    std::string id;
    double rollup_weight = 1.0; // share in the global score
    std::vector<ThreatBlock> threats;
    std::vector<ServiceBlock> services;
};

struct DynamicModel {
    std::vector<AssetBlock> assets;
    std::map<std::string, FuzzyNumber> measures; // static protection levels
    FuzzyNumber attack_threshold;                // incident trigger level
    double incident_critical_time = 0.0;         // persistence before amplification
    std::optional<double> service_threshold;     // recovery trigger on the service centroid
    double time_step = 1.0;
    double horizon = 1.0;
};

struct TraceRow {
    double time = 0.0;
    std::string asset;
    std::string kind; // residual-vulnerability | residual-threat | attack |
                      // residual-attack | service | asset-score | global-score
    std::string id;
    double centroid_value = 0.0;
    std::string label;
    double omega = 0.0;
    FuzzyNumber value;
};

struct SimulationResult {
    std::vector<TraceRow> rows;
};

/// Step-by-step replay of the threat/vulnerability/measure dynamics; all
/// products, powers and inversions run on the fuzzy core.
SimulationResult simulate(const DynamicModel& model, const LinguisticScale& scale);

} // namespace riskfuzz
