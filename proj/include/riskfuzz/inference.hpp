#pragma once

#include "riskfuzz/fuzzy.hpp"
#include "riskfuzz/linguistic.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace riskfuzz {

/// A rule fired with zero coverage, or a rulebase failed validation.
class RuleBaseError : public Error {
public:
    explicit RuleBaseError(const std::string& msg) : Error(msg) {}
};

/// Crisp or fuzzy input value for one linguistic variable.
using InputValue = std::variant<double, FuzzyNumber>;

struct LinguisticVariable {
    std::string name;
    LinguisticScale scale;
};

/// IF-THEN production: a conjunction of per-variable term sets (terms within
/// one set are alternatives) implying one output term, with an expert
/// confidence factor.
struct Rule {
    std::map<std::string, std::vector<std::string>> antecedent; // var -> accepted terms
    std::string conclusion;
    double confidence = 1.0;
    std::string id; // optional, for reports
};

struct ValidationReport {
    std::vector<std::string> uncovered_cells;     // completeness
    std::vector<std::string> missing_terms;       // input/output terms never used
    std::vector<std::string> contradictions;      // same antecedent, different conclusion
    std::vector<std::string> redundancies;        // duplicated or subsumed rules

    bool ok() const {
        return uncovered_cells.empty() && missing_terms.empty() && contradictions.empty() &&
               redundancies.empty();
    }
};

struct InferenceResult {
    MembershipCurve aggregate;
    double crisp = 0.0;
    std::vector<double> rule_activations; // one per rule, in rulebase order
    std::vector<double> omegas;           // similarity per output label
    std::string best_label;
    std::size_t best_index = 0;
};

enum class Defuzzification { Centroid, MeanOfMaxima };

class RuleBase {
public:
    RuleBase(std::vector<LinguisticVariable> inputs, LinguisticVariable output);

    void add_rule(Rule rule);
    /// Parses `IF dV in {Н,НС} AND M = С THEN E = Н conf 0.8` (whitespace
    /// insensitive; `var = term` is shorthand for a one-term set).
    void add_rule_text(const std::string& text);

    const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
    const LinguisticVariable& output() const { return output_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const LinguisticVariable& input(const std::string& name) const;

    ValidationReport validate() const;

    /// Truth degree of every input term for the given values; fuzzy inputs
    /// match by sup-min. Throws DomainError for out-of-carrier inputs.
    std::map<std::string, std::map<std::string, double>>
    fuzzify(const std::map<std::string, InputValue>& values) const;

    /// Four Mamdani stages; confidence factors scale the conclusion
    /// membership before clipping. Throws RuleBaseError when no rule fires.
    InferenceResult infer(const std::map<std::string, InputValue>& values,
                          Defuzzification method = Defuzzification::Centroid) const;

private:
    std::vector<LinguisticVariable> inputs_;
    LinguisticVariable output_;
    std::vector<Rule> rules_;
};

/// Weakest-link decision over category-wise conclusions: picks the highest
/// category present and, within it, the maximal confidence.
std::pair<std::string, double>
weakest_link_verdict(const std::vector<std::pair<std::string, double>>& conclusions,
                     const LinguisticScale& scale);

} // namespace riskfuzz
