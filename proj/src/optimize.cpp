#include "riskfuzz/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace riskfuzz {

namespace {

void check_part_weights(const std::vector<WeightedPart>& parts, const char* what) {
    if (parts.empty()) {
        throw DomainError(std::string(what) + ": no parts");
    }
    double s = 0.0;
    for (const auto& p : parts) {
        if (p.weight <= 0.0) {
            throw DomainError(std::string(what) + ": nonpositive weight");
        }
        s += p.weight;
    }
    if (std::abs(s - 1.0) > 1e-9) {
        throw DomainError(std::string(what) + ": weights sum to " + std::to_string(s) +
                          ", expected 1");
    }
}

} // namespace

TestScore score_test(const std::vector<WeightedPart>& difficulty_parts,
                     const std::vector<WeightedPart>& result_parts,
                     const LinguisticScale& scale) {
    check_part_weights(difficulty_parts, "difficulty parts");
    check_part_weights(result_parts, "result parts");

    TestScore out;
    bool first = true;
    for (const auto& p : difficulty_parts) {
        FuzzyNumber term = riskfuzz::scale(p.value, p.weight);
        out.difficulty = first ? term : add(out.difficulty, term);
        first = false;
    }
    first = true;
    for (const auto& p : result_parts) {
        FuzzyNumber term = pow(p.value, p.weight);
        out.result = first ? term : mul(out.result, term);
        first = false;
    }
    out.difficulty_rec = recognize(out.difficulty, scale);
    out.result_rec = recognize(out.result, scale);
    // the total multiplies the recognized levels, not the raw numbers
    out.total = mul(scale.etalon(out.difficulty_rec.best_index),
                    scale.etalon(out.result_rec.best_index));
    out.total_rec = recognize(out.total, scale);
    return out;
}

std::pair<FuzzyNumber, Recognition> competency_level(const std::vector<FuzzyNumber>& test_totals,
                                                     const LinguisticScale& scale) {
    if (test_totals.empty()) {
        throw DomainError("competency_level: no test scores");
    }
    FuzzyNumber best = test_totals.front();
    for (std::size_t i = 1; i < test_totals.size(); ++i) {
        best = cut_max(best, test_totals[i]);
    }
    return {best, recognize(best, scale)};
}

std::pair<FuzzyNumber, Recognition> integral_competence(const std::vector<FuzzyNumber>& levels,
                                                        const PreferenceRanking& ranking,
                                                        const LinguisticScale& scale) {
    std::vector<std::string> items = ranking.items();
    if (items.size() != levels.size()) {
        throw DomainError("integral_competence: ranking and level counts differ");
    }
    WeightVector w = fishburn_weights(ranking);
    FuzzyNumber acc;
    bool first = true;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        FuzzyNumber term = pow(levels[i], w.entries[i].weight.real());
        acc = first ? term : mul(acc, term);
        first = false;
    }
    return {acc, recognize(acc, scale)};
}

double candidate_task_index(const std::vector<double>& omegas, const TaskRequirement& req) {
    if (omegas.size() != req.competencies.size()) {
        throw DomainError("task '" + req.task + "': similarity count mismatch");
    }
    double wsum = 0.0;
    for (const auto& c : req.competencies) {
        wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-6) {
        throw DomainError("task '" + req.task + "': competency weights sum to " +
                          std::to_string(wsum) + ", expected 1");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (omegas[i] < req.omega_critical) {
            return 0.0;
        }
        total += req.competencies[i].weight * omegas[i];
    }
    return total;
}

double candidate_task_index(const CompetencyProfile& profile, const TaskRequirement& req,
                            const LinguisticScale& scale) {
    std::vector<double> omegas;
    omegas.reserve(req.competencies.size());
    for (const auto& c : req.competencies) {
        auto it = profile.competencies.find(c.id);
        if (it == profile.competencies.end()) {
            omegas.push_back(0.0); // missing competency: no match
            continue;
        }
        omegas.push_back(similarity(it->second, scale.etalon(c.level)));
    }
    return candidate_task_index(omegas, req);
}

AssignmentResult assign_team(const std::vector<std::vector<double>>& index_table) {
    const std::size_t tasks = index_table.size();
    if (tasks == 0) {
        throw DomainError("assign_team: no tasks");
    }
    const std::size_t candidates = index_table.front().size();
    for (const auto& row : index_table) {
        if (row.size() != candidates) {
            throw DomainError("assign_team: ragged index table");
        }
    }
    if (candidates < tasks) {
        throw InfeasibleError("assign_team: fewer candidates than tasks");
    }
    double placements = 1.0;
    for (std::size_t i = 0; i < tasks; ++i) {
        placements *= static_cast<double>(candidates - i);
    }
    if (placements > 1e7) {
        throw DomainError("assign_team: placement count exceeds the 1e7 guard");
    }

    AssignmentResult res;
    res.index_table = index_table;
    std::vector<std::size_t> pick(tasks, 0);
    std::vector<bool> used(candidates, false);
    std::size_t ordinal = 0;

    std::function<void(std::size_t)> walk = [&](std::size_t task) {
        if (task == tasks) {
            ++ordinal;
            double score = 0.0;
            bool alive = true;
            for (std::size_t ti = 0; ti < tasks; ++ti) {
                double d = index_table[ti][pick[ti]];
                if (d <= 0.0) {
                    alive = false;
                    break;
                }
                score += d;
            }
            if (alive) {
                res.surviving.push_back({pick, score, ordinal});
            }
            return;
        }
        for (std::size_t c = 0; c < candidates; ++c) {
            if (used[c]) {
                continue;
            }
            used[c] = true;
            pick[task] = c;
            walk(task + 1);
            used[c] = false;
        }
    };
    walk(0);

    if (res.surviving.empty()) {
        throw InfeasibleError("assign_team: every placement contains a zero index");
    }
    std::sort(res.surviving.begin(), res.surviving.end(), [](const Placement& a, const Placement& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.candidate_per_task < b.candidate_per_task; // deterministic tiebreak
    });
    res.best = res.surviving.front();
    return res;
}

AssignmentResult assign_team(const std::vector<CompetencyProfile>& candidates,
                             const std::vector<TaskRequirement>& tasks,
                             const LinguisticScale& scale) {
    std::vector<std::vector<double>> table(tasks.size(), std::vector<double>(candidates.size()));
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            table[t][c] = candidate_task_index(candidates[c], tasks[t], scale);
        }
    }
    return assign_team(table);
}

SelectionResult select_measures(const std::vector<Measure>& measures,
                                const std::vector<std::vector<std::size_t>>& conflict_groups,
                                std::optional<double> budget,
                                const std::function<double(std::uint32_t)>& effectiveness) {
    const std::size_t n = measures.size();
    if (n == 0) {
        throw DomainError("select_measures: no measures");
    }
    if (n > 20) {
        throw DomainError("select_measures: exhaustive enumeration limited to 20 measures");
    }
    SelectionResult res;
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        bool conflict = false;
        for (const auto& group : conflict_groups) {
            int present = 0;
            for (std::size_t idx : group) {
                if (mask & (1u << idx)) {
                    ++present;
                }
            }
            if (present > 1) {
                conflict = true;
                break;
            }
        }
        if (conflict) {
            continue;
        }
        double cost = 0.0;
        MeasureSelection sel;
        sel.mask = mask;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                cost += measures[i].cost;
                sel.chosen.push_back(measures[i].id);
            }
        }
        if (budget && cost > *budget + 1e-12) {
            continue;
        }
        sel.cost = cost;
        sel.effectiveness = effectiveness(mask);
        sel.quality = (cost > 0.0) ? sel.effectiveness / cost : sel.effectiveness;
        res.table.push_back(std::move(sel));
    }
    if (res.table.empty()) {
        throw InfeasibleError("select_measures: no feasible measure set");
    }
    const bool by_quality = budget.has_value();
    std::sort(res.table.begin(), res.table.end(),
              [&](const MeasureSelection& a, const MeasureSelection& b) {
                  double ka = by_quality ? a.quality : a.effectiveness;
                  double kb = by_quality ? b.quality : b.effectiveness;
                  if (ka != kb) {
                      return ka > kb;
                  }
                  return a.mask < b.mask; // deterministic tiebreak
              });
    res.best = res.table.front();
    return res;
}

double service_effectiveness(const std::vector<double>& service_weights,
                             const std::vector<double>& per_service_scores) {
    if (service_weights.size() != per_service_scores.size()) {
        throw DomainError("service_effectiveness: weight/score count mismatch");
    }
    double ws = 0.0;
    for (double w : service_weights) {
        ws += w;
    }
    if (std::abs(ws - 1.0) > 1e-9) {
        throw DomainError("service weights must sum to 1");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < service_weights.size(); ++i) {
        s += service_weights[i] * per_service_scores[i];
    }
    return s;
}

} // namespace riskfuzz
