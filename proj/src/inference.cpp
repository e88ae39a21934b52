#include "riskfuzz/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riskfuzz {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// case-insensitive search for a keyword delimited by spaces
std::size_t find_keyword(const std::string& text, const std::string& kw, std::size_t from = 0) {
    std::string upper;
    upper.reserve(text.size());
    for (char c : text) {
        upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return upper.find(kw, from);
}

} // namespace

RuleBase::RuleBase(std::vector<LinguisticVariable> inputs, LinguisticVariable output)
    : inputs_(std::move(inputs)), output_(std::move(output)) {
    if (inputs_.empty()) {
        throw RuleBaseError("rulebase needs at least one input variable");
    }
}

const LinguisticVariable& RuleBase::input(const std::string& name) const {
    for (const auto& v : inputs_) {
        if (v.name == name) {
            return v;
        }
    }
    throw RuleBaseError("unknown input variable '" + name + "'");
}

void RuleBase::add_rule(Rule rule) {
    if (rule.confidence < 0.0 || rule.confidence > 1.0) {
        throw RuleBaseError("rule confidence must lie in [0, 1]");
    }
    for (auto& [var, terms] : rule.antecedent) {
        const LinguisticVariable& v = input(var); // throws on unknown variable
        if (terms.empty()) {
            throw RuleBaseError("rule constrains '" + var + "' with an empty term set");
        }
        for (auto& t : terms) {
            t = v.scale.label(v.scale.index_of(t)); // canonicalize aliases
        }
    }
    rule.conclusion = output_.scale.label(output_.scale.index_of(rule.conclusion));
    if (rule.id.empty()) {
        rule.id = "R" + std::to_string(rules_.size() + 1);
    }
    rules_.push_back(std::move(rule));
}

void RuleBase::add_rule_text(const std::string& text) {
    // IF <clause> AND <clause> ... THEN <out> = <term> [conf <c>]
    std::size_t if_pos = find_keyword(text, "IF");
    std::size_t then_pos = find_keyword(text, "THEN");
    if (if_pos == std::string::npos || then_pos == std::string::npos || then_pos < if_pos) {
        throw RuleBaseError("rule text must look like 'IF ... THEN ...': " + text);
    }
    std::string lhs = text.substr(if_pos + 2, then_pos - if_pos - 2);
    std::string rhs = text.substr(then_pos + 4);

    Rule rule;
    // split the antecedent on AND
    std::size_t start = 0;
    std::vector<std::string> clauses;
    while (true) {
        std::size_t p = find_keyword(lhs, " AND ", start);
        if (p == std::string::npos) {
            clauses.push_back(strip(lhs.substr(start)));
            break;
        }
        clauses.push_back(strip(lhs.substr(start, p - start)));
        start = p + 5;
    }
    for (const std::string& clause : clauses) {
        if (clause.empty()) {
            continue;
        }
        std::size_t in_pos = find_keyword(clause, " IN ");
        std::string var, terms_part;
        if (in_pos != std::string::npos) {
            var = strip(clause.substr(0, in_pos));
            terms_part = strip(clause.substr(in_pos + 4));
        } else {
            std::size_t eq = clause.find('=');
            if (eq == std::string::npos) {
                throw RuleBaseError("cannot parse rule clause '" + clause + "'");
            }
            var = strip(clause.substr(0, eq));
            terms_part = strip(clause.substr(eq + 1));
        }
        if (!terms_part.empty() && terms_part.front() == '{') {
            if (terms_part.back() != '}') {
                throw RuleBaseError("unterminated term set in clause '" + clause + "'");
            }
            terms_part = terms_part.substr(1, terms_part.size() - 2);
        }
        std::vector<std::string> terms;
        std::istringstream ts(terms_part);
        std::string t;
        while (std::getline(ts, t, ',')) {
            t = strip(t);
            if (!t.empty()) {
                terms.push_back(t);
            }
        }
        rule.antecedent[var] = std::move(terms);
    }
    // consequent: <out> = <term> [conf <c>]
    double conf = 1.0;
    std::size_t conf_pos = find_keyword(rhs, "CONF");
    if (conf_pos != std::string::npos) {
        conf = std::stod(strip(rhs.substr(conf_pos + 4)));
        rhs = rhs.substr(0, conf_pos);
    }
    std::size_t eq = rhs.find('=');
    if (eq == std::string::npos) {
        throw RuleBaseError("rule consequent must look like 'OUT = term': " + text);
    }
    std::string out_var = strip(rhs.substr(0, eq));
    if (out_var != output_.name) {
        throw RuleBaseError("rule concludes on '" + out_var + "', expected '" + output_.name + "'");
    }
    rule.conclusion = strip(rhs.substr(eq + 1));
    rule.confidence = conf;
    add_rule(std::move(rule));
}

ValidationReport RuleBase::validate() const {
    ValidationReport rep;

    // term usage
    for (const auto& v : inputs_) {
        for (const auto& label : v.scale.labels()) {
            bool used = false;
            for (const auto& r : rules_) {
                auto it = r.antecedent.find(v.name);
                if (it == r.antecedent.end()) {
                    continue; // wildcard does not count as explicit use
                }
                if (std::find(it->second.begin(), it->second.end(), label) != it->second.end()) {
                    used = true;
                    break;
                }
            }
            if (!used) {
                rep.missing_terms.push_back("input term " + v.name + "=" + label +
                                            " never appears in an antecedent");
            }
        }
    }
    for (const auto& label : output_.scale.labels()) {
        bool used = std::any_of(rules_.begin(), rules_.end(),
                                [&](const Rule& r) { return r.conclusion == label; });
        if (!used) {
            rep.missing_terms.push_back("output term " + output_.name + "=" + label +
                                        " never concluded by a rule");
        }
    }

    // completeness: every cell of the input term grid must fire >= 1 rule
    std::vector<std::size_t> idx(inputs_.size(), 0);
    while (true) {
        bool covered = false;
        for (const auto& r : rules_) {
            bool match = true;
            for (std::size_t v = 0; v < inputs_.size(); ++v) {
                auto it = r.antecedent.find(inputs_[v].name);
                if (it == r.antecedent.end()) {
                    continue;
                }
                const std::string& cell_term = inputs_[v].scale.label(idx[v]);
                if (std::find(it->second.begin(), it->second.end(), cell_term) ==
                    it->second.end()) {
                    match = false;
                    break;
                }
            }
            if (match) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            std::string cell;
            for (std::size_t v = 0; v < inputs_.size(); ++v) {
                if (v) {
                    cell += ", ";
                }
                cell += inputs_[v].name + "=" + inputs_[v].scale.label(idx[v]);
            }
            rep.uncovered_cells.push_back(cell);
        }
        std::size_t v = 0;
        for (; v < inputs_.size(); ++v) {
            if (++idx[v] < inputs_[v].scale.size()) {
                break;
            }
            idx[v] = 0;
        }
        if (v == inputs_.size()) {
            break;
        }
    }

    // consistency and independence
    auto antecedent_subsumes = [&](const Rule& general, const Rule& specific) {
        for (const auto& v : inputs_) {
            auto g = general.antecedent.find(v.name);
            auto s = specific.antecedent.find(v.name);
            if (g == general.antecedent.end()) {
                continue; // wildcard covers anything
            }
            std::vector<std::string> sterms;
            if (s == specific.antecedent.end()) {
                sterms.assign(v.scale.labels().begin(), v.scale.labels().end());
            } else {
                sterms = s->second;
            }
            for (const auto& t : sterms) {
                if (std::find(g->second.begin(), g->second.end(), t) == g->second.end()) {
                    return false;
                }
            }
        }
        return true;
    };
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t j = i + 1; j < rules_.size(); ++j) {
            bool same_antecedent =
                antecedent_subsumes(rules_[i], rules_[j]) && antecedent_subsumes(rules_[j], rules_[i]);
            if (same_antecedent && rules_[i].conclusion != rules_[j].conclusion) {
                rep.contradictions.push_back(rules_[i].id + " and " + rules_[j].id +
                                             " share an antecedent but conclude " +
                                             rules_[i].conclusion + " vs " + rules_[j].conclusion);
            } else if (rules_[i].conclusion == rules_[j].conclusion) {
                if (antecedent_subsumes(rules_[i], rules_[j])) {
                    rep.redundancies.push_back(rules_[j].id + " is subsumed by " + rules_[i].id);
                } else if (antecedent_subsumes(rules_[j], rules_[i])) {
                    rep.redundancies.push_back(rules_[i].id + " is subsumed by " + rules_[j].id);
                }
            }
        }
    }
    return rep;
}

std::map<std::string, std::map<std::string, double>>
RuleBase::fuzzify(const std::map<std::string, InputValue>& values) const {
    std::map<std::string, std::map<std::string, double>> out;
    for (const auto& v : inputs_) {
        auto it = values.find(v.name);
        if (it == values.end()) {
            throw RuleBaseError("no value supplied for input '" + v.name + "'");
        }
        std::map<std::string, double>& degrees = out[v.name];
        for (std::size_t li = 0; li < v.scale.size(); ++li) {
            const std::string& label = v.scale.label(li);
            if (std::holds_alternative<double>(it->second)) {
                double x = std::get<double>(it->second);
                if (x < v.scale.carrier_lo() - 1e-9 || x > v.scale.carrier_hi() + 1e-9) {
                    throw DomainError("input '" + v.name + "' outside its carrier");
                }
                degrees[label] = v.scale.etalon(li).membership(x);
            } else {
                const FuzzyNumber& x = std::get<FuzzyNumber>(it->second);
                if (x.left_support() < v.scale.carrier_lo() - 1e-9 ||
                    x.right_support() > v.scale.carrier_hi() + 1e-9) {
                    throw DomainError("input '" + v.name + "' outside its carrier");
                }
                // sup-min matching
                degrees[label] =
                    MembershipCurve::min_of(x.curve(), v.scale.etalon(li).curve()).height();
            }
        }
    }
    return out;
}

InferenceResult RuleBase::infer(const std::map<std::string, InputValue>& values,
                                Defuzzification method) const {
    auto degrees = fuzzify(values);
    InferenceResult res;
    res.rule_activations.reserve(rules_.size());
    MembershipCurve aggregate;
    for (const auto& r : rules_) {
        double act = 1.0;
        for (const auto& [var, terms] : r.antecedent) {
            double var_degree = 0.0;
            for (const auto& t : terms) {
                var_degree = std::max(var_degree, degrees.at(var).at(t));
            }
            act = std::min(act, var_degree);
        }
        res.rule_activations.push_back(act);
        if (act <= 0.0) {
            continue;
        }
        const FuzzyNumber& concl = output_.scale.etalon(r.conclusion);
        MembershipCurve clipped = concl.curve().scaled(r.confidence).clipped(act);
        aggregate = MembershipCurve::max_of(aggregate, clipped);
    }
    if (aggregate.empty() || aggregate.height() <= 1e-12) {
        std::string cell;
        for (const auto& v : inputs_) {
            std::string best;
            double bd = -1.0;
            for (const auto& [t, d] : degrees.at(v.name)) {
                if (d > bd) {
                    bd = d;
                    best = t;
                }
            }
            if (!cell.empty()) {
                cell += ", ";
            }
            cell += v.name + "=" + best;
        }
        throw RuleBaseError("no rule fires for input cell (" + cell + ")");
    }
    res.aggregate = aggregate;
    res.crisp = (method == Defuzzification::Centroid) ? aggregate.centroid()
                                                      : aggregate.mean_of_maxima();
    res.omegas.reserve(output_.scale.size());
    for (std::size_t i = 0; i < output_.scale.size(); ++i) {
        res.omegas.push_back(similarity(aggregate, output_.scale.etalon(i).curve()));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.omegas.size(); ++i) {
        if (res.omegas[i] > res.omegas[best] + 1e-9) {
            best = i;
        }
    }
    for (std::size_t i = 0; i < best; ++i) {
        if (res.omegas[i] >= res.omegas[best] - 1e-9) {
            best = i;
            break;
        }
    }
    res.best_index = best;
    res.best_label = output_.scale.label(best);
    return res;
}

std::pair<std::string, double>
weakest_link_verdict(const std::vector<std::pair<std::string, double>>& conclusions,
                     const LinguisticScale& scale) {
    if (conclusions.empty()) {
        throw DomainError("weakest_link_verdict on no conclusions");
    }
    std::size_t worst = 0;
    bool seen = false;
    double conf = 0.0;
    for (const auto& [label, c] : conclusions) {
        std::size_t idx = scale.index_of(label);
        if (!seen || idx > worst) {
            worst = idx;
            conf = c;
            seen = true;
        } else if (idx == worst) {
            conf = std::max(conf, c);
        }
    }
    return {scale.label(worst), conf};
}

} // namespace riskfuzz
