#pragma once

#include "riskfuzz/fuzzy.hpp"
#include "riskfuzz/linguistic.hpp"
#include "riskfuzz/weights.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace riskfuzz {

/// No feasible placement / measure set exists.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& msg) : Error(msg) {}
};

struct WeightedPart {
    FuzzyNumber value;
    double weight = 1.0;
};

struct TestScore {
    FuzzyNumber difficulty; // additive convolution of the task parts
    FuzzyNumber result;     // multiplicative convolution of the outcome parts
    FuzzyNumber total;      // product of the recognized difficulty and result
    Recognition difficulty_rec;
    Recognition result_rec;
    Recognition total_rec;
};

/// Difficulty is the weighted sum of the part levels, the result the
/// weighted multiplicative convolution; the total multiplies the recognized
/// etalons of the two (the intermediate rounding matches the published
/// worked table; weights must sum to 1 on each side).
TestScore score_test(const std::vector<WeightedPart>& difficulty_parts,
                     const std::vector<WeightedPart>& result_parts,
                     const LinguisticScale& scale);

/// Competency level: the cut-wise maximum of the test totals.
std::pair<FuzzyNumber, Recognition> competency_level(const std::vector<FuzzyNumber>& test_totals,
                                                     const LinguisticScale& scale);

/// Integral competence: multiplicative convolution under Fishburn weights.
std::pair<FuzzyNumber, Recognition> integral_competence(const std::vector<FuzzyNumber>& levels,
                                                        const PreferenceRanking& ranking,
                                                        const LinguisticScale& scale);

struct CompetencyProfile {
    std::string candidate;
    std::map<std::string, FuzzyNumber> competencies;
};

struct RequiredCompetency {
    std::string id;
    std::string level;   // required label on the scale
    double weight = 1.0; // weights sum to 1 per task
};

struct TaskRequirement {
    std::string task;
    std::vector<RequiredCompetency> competencies;
    double omega_critical = 0.8;
};

/// Candidate fit for a task: the weighted sum of per-competency similarity
/// indices, zeroed when any similarity falls below the task's cutoff.
/// Missing competencies count as similarity 0.
double candidate_task_index(const CompetencyProfile& profile, const TaskRequirement& req,
                            const LinguisticScale& scale);

/// Same, from precomputed similarity values (one per required competency).
double candidate_task_index(const std::vector<double>& omegas, const TaskRequirement& req);

struct Placement {
    std::vector<std::size_t> candidate_per_task; // candidate index per task
    double score = 0.0;                          // sum of member indices
    std::size_t ordinal = 0;                     // 1-based lexicographic rank
};

struct AssignmentResult {
    std::vector<std::vector<double>> index_table; // [task][candidate]
    std::vector<Placement> surviving;             // sorted by score descending
    Placement best;
};

/// Enumerates injective candidate-per-task placements, drops any containing
/// a zero index, and maximizes the summed index. Guarded to 1e7 placements.
AssignmentResult assign_team(const std::vector<std::vector<double>>& index_table);
AssignmentResult assign_team(const std::vector<CompetencyProfile>& candidates,
                             const std::vector<TaskRequirement>& tasks,
                             const LinguisticScale& scale);

struct Measure {
    std::string id;
    double cost = 0.0; // ownership cost per period
};

struct MeasureSelection {
    std::uint32_t mask = 0;
    std::vector<std::string> chosen;
    double effectiveness = 0.0;
    double cost = 0.0;
    double quality = 0.0; // effectiveness / cost
    bool feasible = true;
};

struct SelectionResult {
    MeasureSelection best;
    std::vector<MeasureSelection> table; // all feasible sets, best first
};

/// Exhaustive subset enumeration (guarded to 20 measures): conflict groups
/// are mutually exclusive, the budget caps the total cost. An unlimited
/// budget maximizes effectiveness; otherwise quality = effectiveness / cost.
/// `effectiveness(mask)` maps a subset to its aggregated technical
/// effectiveness (typically a weighted sum of per-service model runs).
SelectionResult select_measures(const std::vector<Measure>& measures,
                                const std::vector<std::vector<std::size_t>>& conflict_groups,
                                std::optional<double> budget,
                                const std::function<double(std::uint32_t)>& effectiveness);

/// Additive service convolution helper: E^t = sum a_j * E_j.
double service_effectiveness(const std::vector<double>& service_weights,
                             const std::vector<double>& per_service_scores);

} // namespace riskfuzz
