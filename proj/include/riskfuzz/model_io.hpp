#pragma once

#include "riskfuzz/fuzzy.hpp"
#include "riskfuzz/inference.hpp"
#include "riskfuzz/influence.hpp"
#include "riskfuzz/linguistic.hpp"
#include "riskfuzz/ncm.hpp"
#include "riskfuzz/optimize.hpp"
#include "riskfuzz/planners.hpp"
#include "riskfuzz/traffic.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace riskfuzz {

/// Model file failed to parse or violated the schema; the message carries the
/// JSON path of the offending element.
class LoadError : public Error {
public:
    explicit LoadError(const std::string& msg) : Error(msg) {}
};

struct InfluenceDocument {
    InfluenceMap map;
    std::vector<double> initial_state;     // optional, per vertex
    std::vector<double> initial_impulse;   // optional, per vertex
    std::optional<std::vector<double>> inverse_target;
    double grid_step = 0.05;
};

struct InferenceDocument {
    std::shared_ptr<RuleBase> rulebase;
    std::map<std::string, InputValue> inputs; // optional defaults from the file
};

struct TeamDocument {
    std::vector<TaskRequirement> tasks;
    std::vector<CompetencyProfile> candidates;
    // precomputed similarity route: omegas[task][candidate][competency]
    std::vector<std::vector<std::vector<double>>> omega_table;
    bool has_omega_table = false;
};

struct MeasureSpec {
    Measure measure;
    std::vector<double> service_effects; // per service, in [0, 1]
};

struct SelectionDocument {
    std::vector<MeasureSpec> measures;
    std::vector<double> service_weights;
    std::vector<std::vector<std::size_t>> conflict_groups;
    std::optional<double> budget;
    // direct per-set table (testing route): mask -> effectiveness
    std::map<std::uint32_t, double> set_table;
};

struct TrafficDocument {
    double bin_width = 60.0;
    double span = 0.0;
    std::string packet_log;
    std::size_t smooth_window = 5;
    std::size_t anomaly_window = 3;
    double threshold = 0.0;
    NormalizationCaps caps;
    std::shared_ptr<RuleBase> grading;
    std::vector<ResponseRule> responses;
    ResponseContext context;
};

struct PlanDocument {
    std::string kind; // channels | choose | place
    std::optional<ChannelProblem> channels;
    std::optional<ChoiceMatrix> choice;
    ChoiceMode choice_mode = ChoiceMode::Minimax;
    std::optional<PerimeterProblem> perimeter;
};

struct ModelDocument {
    int version = 0;
    std::string mode;
    AlphaLadder ladder;
    LinguisticScale scale = LinguisticScale::standard(5);

    std::optional<CognitiveModel> cognitive;
    std::optional<DynamicModel> dynamic;
    std::optional<InfluenceDocument> influence;
    std::optional<InferenceDocument> inference;
    std::optional<TeamDocument> team;
    std::optional<SelectionDocument> selection;
    std::optional<TrafficDocument> traffic;
    std::optional<PlanDocument> plan;
};

/// Loads and eagerly validates a model file. Throws LoadError with the file
/// position (parse errors) or JSON path (schema and invariant violations).
ModelDocument load_model(const std::string& path);
ModelDocument load_model_text(const std::string& text, const std::string& origin = "<memory>");

} // namespace riskfuzz
