#include "riskfuzz/ncm.hpp"

#include <algorithm>
#include <cmath>

namespace riskfuzz {

Convolution convolution_from_name(const std::string& name) {
    if (name == "multiplicative" || name == "mult") {
        return Convolution::Multiplicative;
    }
    if (name == "additive" || name == "add") {
        return Convolution::Additive;
    }
    if (name == "max") {
        return Convolution::Max;
    }
    if (name == "min") {
        return Convolution::Min;
    }
    throw ModelError("unknown convolution '" + name + "'");
}

std::string convolution_name(Convolution c) {
    switch (c) {
    case Convolution::Multiplicative:
        return "multiplicative";
    case Convolution::Additive:
        return "additive";
    case Convolution::Max:
        return "max";
    case Convolution::Min:
        return "min";
    }
    return "?";
}

CognitiveModel::CognitiveModel(LinguisticScale scale, std::optional<LinguisticScale> recognition_scale)
    : scale_(std::move(scale)),
      recognition_scale_(recognition_scale ? std::move(*recognition_scale) : scale_) {}

void CognitiveModel::add_node(ModelNode node) {
    for (const auto& n : nodes_) {
        if (n.id == node.id) {
            throw ModelError("duplicate node id '" + node.id + "'");
        }
    }
    nodes_.push_back(std::move(node));
}

void CognitiveModel::add_edge(ModelEdge edge) {
    node(edge.child);
    node(edge.parent);
    edges_.push_back(std::move(edge));
}

void CognitiveModel::set_value(const std::string& id, FuzzyNumber value) {
    for (auto& n : nodes_) {
        if (n.id == id) {
            n.value = std::move(value);
            return;
        }
    }
    throw ModelError("unknown node '" + id + "'");
}

void CognitiveModel::set_value(const std::string& id, const std::string& label) {
    set_value(id, scale_.etalon(label));
}

const ModelNode& CognitiveModel::node(const std::string& id) const {
    for (const auto& n : nodes_) {
        if (n.id == id) {
            return n;
        }
    }
    throw ModelError("unknown node '" + id + "'");
}

void CognitiveModel::validate() const {
    std::size_t roots = 0;
    for (const auto& n : nodes_) {
        if (n.level == 0) {
            ++roots;
        }
        if (n.level < 0) {
            throw ModelError("node '" + n.id + "' has a negative level");
        }
    }
    if (roots != 1) {
        throw ModelError("model must have exactly one root at level 0, found " +
                         std::to_string(roots));
    }
    for (const auto& e : edges_) {
        const ModelNode& c = node(e.child);
        const ModelNode& p = node(e.parent);
        if (c.level != p.level + 1) {
            throw ModelError("edge " + e.child + " -> " + e.parent +
                             " must climb exactly one level");
        }
    }
    for (const auto& n : nodes_) {
        std::vector<const ModelEdge*> incoming;
        for (const auto& e : edges_) {
            if (e.parent == n.id) {
                incoming.push_back(&e);
            }
        }
        if (incoming.empty()) {
            if (!n.value.has_value()) {
                throw ModelError("leaf '" + n.id + "' has no value");
            }
            continue;
        }
        if (n.convolution == Convolution::Multiplicative || n.convolution == Convolution::Additive) {
            double sum = 0.0;
            for (const ModelEdge* e : incoming) {
                if (e->weight <= 0.0) {
                    throw ModelError("edge " + e->child + " -> " + e->parent +
                                     " has a nonpositive weight");
                }
                sum += e->weight;
            }
            if (std::abs(sum - 1.0) > 1e-9) {
                throw ModelError("incoming weights of node '" + n.id + "' sum to " +
                                 std::to_string(sum) + ", expected 1");
            }
        }
    }
}

std::map<std::string, NodeEvaluation> evaluate(const CognitiveModel& model) {
    model.validate();
    std::map<std::string, NodeEvaluation> out;
    int max_level = 0;
    for (const auto& n : model.nodes()) {
        max_level = std::max(max_level, n.level);
    }
    std::map<std::string, FuzzyNumber> values;
    for (int level = max_level; level >= 0; --level) {
        for (const auto& n : model.nodes()) {
            if (n.level != level) {
                continue;
            }
            std::vector<const ModelEdge*> incoming;
            for (const auto& e : model.edges()) {
                if (e.parent == n.id) {
                    incoming.push_back(&e);
                }
            }
            FuzzyNumber value;
            if (incoming.empty()) {
                value = *n.value;
            } else {
                bool first = true;
                for (const ModelEdge* e : incoming) {
                    FuzzyNumber child = values.at(e->child);
                    if (e->invert) {
                        child = invert(child);
                    }
                    switch (n.convolution) {
                    case Convolution::Multiplicative: {
                        FuzzyNumber term = pow(child, e->weight);
                        value = first ? term : mul(value, term);
                        break;
                    }
                    case Convolution::Additive: {
                        FuzzyNumber term = scale(child, e->weight);
                        value = first ? term : add(value, term);
                        break;
                    }
                    case Convolution::Max: {
                        FuzzyNumber term = scale(child, e->weight);
                        value = first ? term : cut_max(value, term);
                        break;
                    }
                    case Convolution::Min: {
                        FuzzyNumber term = scale(child, e->weight);
                        value = first ? term : cut_min(value, term);
                        break;
                    }
                    }
                    first = false;
                }
            }
            values.emplace(n.id, value);
            out.emplace(n.id, NodeEvaluation{value, recognize(value, model.recognition_scale())});
        }
    }
    return out;
}

FuzzyNumber extrapolate_criterion(const CriterionRow& row, double t) {
    if (t < 0.0) {
        throw DomainError("extrapolation time must be nonnegative");
    }
    if (row.period <= 0.0) {
        throw ModelError("criterion '" + row.id + "' has a nonpositive characteristic time");
    }
    double shift = static_cast<double>(row.trend) * row.rate * (t / row.period);
    std::vector<Interval> cuts;
    for (Interval c : row.level.cuts()) {
        cuts.push_back({c.lo + shift, c.hi + shift});
    }
    return clamp(FuzzyNumber::from_cuts(row.level.ladder(), std::move(cuts)), 0.0, 1.0);
}

EffectMatrix EffectMatrix::filled(std::size_t rows, std::size_t cols, const FuzzyNumber& v) {
    EffectMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(rows * cols, v);
    return m;
}

EffectMatrix EffectMatrix::crisp(const std::vector<std::vector<double>>& values) {
    EffectMatrix m;
    m.rows = values.size();
    m.cols = values.empty() ? 0 : values.front().size();
    for (const auto& row : values) {
        if (row.size() != m.cols) {
            throw ModelError("ragged effect matrix");
        }
        for (double v : row) {
            if (v < 0.0 || v > 1.0) {
                throw ModelError("effect coefficient outside [0, 1]");
            }
            m.data.push_back(FuzzyNumber::singleton(v));
        }
    }
    return m;
}

namespace {

void require_congruent(const EffectMatrix& a, const EffectMatrix& b, const char* op) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw ModelError(std::string(op) + ": matrix shapes differ");
    }
}

} // namespace

EffectMatrix apply_preventive(const EffectMatrix& influence,
                              const std::vector<EffectMatrix>& preventive) {
    EffectMatrix out = influence;
    if (preventive.empty()) {
        return out;
    }
    for (const auto& z : preventive) {
        require_congruent(influence, z, "apply_preventive");
    }
    for (std::size_t r = 0; r < out.rows; ++r) {
        for (std::size_t c = 0; c < out.cols; ++c) {
            FuzzyNumber best = preventive.front().at(r, c);
            for (std::size_t k = 1; k < preventive.size(); ++k) {
                best = cut_max(best, preventive[k].at(r, c));
            }
            out.at(r, c) = mul(influence.at(r, c), best);
        }
    }
    return out;
}

std::pair<EffectMatrix, EffectMatrix> loss_and_liquidation(const EffectMatrix& safe,
                                                           const EffectMatrix& current,
                                                           const EffectMatrix& liquidation) {
    require_congruent(safe, current, "loss_and_liquidation");
    require_congruent(safe, liquidation, "loss_and_liquidation");
    EffectMatrix q = safe;
    EffectMatrix qhat = safe;
    for (std::size_t i = 0; i < safe.data.size(); ++i) {
        q.data[i] = clamp(sub(safe.data[i], current.data[i]), 0.0, 1.0);
        qhat.data[i] = mul(q.data[i], liquidation.data[i]);
    }
    return {q, qhat};
}

namespace {

struct WeightedProductAccumulator {
    // running product of pow(invert(level), weight) factors
    std::optional<FuzzyNumber> acc;

    void feed(const FuzzyNumber& level, double weight) {
        FuzzyNumber term = pow(invert(level), weight);
        acc = acc ? mul(*acc, term) : term;
    }
    FuzzyNumber result_or_one(const AlphaLadder& ladder) const {
        return acc ? *acc : FuzzyNumber::singleton(1.0, ladder);
    }
};

void check_weight_sum(const std::vector<std::pair<std::string, double>>& ws,
                      const std::string& what) {
    if (ws.empty()) {
        return;
    }
    double s = 0.0;
    for (const auto& [id, w] : ws) {
        if (w < 0.0) {
            throw ModelError(what + ": negative weight for '" + id + "'");
        }
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-9) {
        throw ModelError(what + ": weights sum to " + std::to_string(s) + ", expected 1");
    }
}

} // namespace

SimulationResult simulate(const DynamicModel& model, const LinguisticScale& scale) {
    if (model.time_step <= 0.0) {
        throw ModelError("time step must be positive");
    }
    if (model.incident_critical_time < 0.0) {
        throw ModelError("critical incident time must be nonnegative");
    }
    const AlphaLadder& ladder = model.attack_threshold.ladder();

    auto measure_level = [&](const std::string& id) -> const FuzzyNumber& {
        auto it = model.measures.find(id);
        if (it == model.measures.end()) {
            throw ModelError("unknown protection measure '" + id + "'");
        }
        return it->second;
    };

    // static weight-sum validation
    for (const auto& asset : model.assets) {
        for (const auto& th : asset.threats) {
            check_weight_sum(th.protections, "threat '" + th.id + "' protections");
            std::vector<std::pair<std::string, double>> svec;
            for (const auto& v : th.vulnerabilities) {
                svec.push_back({v.id, v.integration_weight});
                check_weight_sum(v.protections, "vulnerability '" + v.id + "' protections");
                for (const auto& m : v.protections) {
                    measure_level(m.first);
                }
            }
            check_weight_sum(svec, "threat '" + th.id + "' vulnerability shares");
            for (const auto& tm : th.damping) {
                if (tm.start_delay < 0.0 || tm.end_time < 0.0) {
                    throw ModelError("measure '" + tm.id + "' has negative window times");
                }
            }
        }
        std::vector<std::pair<std::string, double>> avec;
        for (const auto& sv : asset.services) {
            avec.push_back({sv.id, sv.rollup_weight});
            check_weight_sum(sv.attack_weights, "service '" + sv.id + "' attack weights");
            for (const auto& tm : sv.recovery) {
                if (tm.start_delay < 0.0 || tm.end_time < 0.0) {
                    throw ModelError("measure '" + tm.id + "' has negative window times");
                }
            }
        }
        check_weight_sum(avec, "asset '" + asset.id + "' service shares");
    }
    {
        std::vector<std::pair<std::string, double>> bvec;
        for (const auto& asset : model.assets) {
            bvec.push_back({asset.id, asset.rollup_weight});
        }
        check_weight_sum(bvec, "global asset shares");
    }

    // mutable state
    struct ThreatState {
        std::vector<FuzzyNumber> vuln_levels;
        std::optional<double> incident_start;
    };
    struct ServiceState {
        std::optional<double> trigger_time;
    };
    std::map<std::string, ThreatState> tstate;
    std::map<std::string, ServiceState> sstate;
    for (const auto& asset : model.assets) {
        for (const auto& th : asset.threats) {
            ThreatState st;
            for (const auto& v : th.vulnerabilities) {
                st.vuln_levels.push_back(v.level);
            }
            tstate[asset.id + "/" + th.id] = std::move(st);
        }
        for (const auto& sv : asset.services) {
            sstate[asset.id + "/" + sv.id] = ServiceState{};
        }
    }

    const double attack_gate = centroid(model.attack_threshold);

    SimulationResult result;
    auto emit = [&](double t, const std::string& asset, const std::string& kind,
                    const std::string& id, const FuzzyNumber& v) {
        Recognition r = recognize(v, scale);
        result.rows.push_back(
            TraceRow{t, asset, kind, id, centroid(v), r.best_label, r.best_omega(), v});
    };

    auto window_active = [&](const TimedMeasure& m, double anchor, double t) {
        return t >= anchor + m.start_delay && t < anchor + m.end_time;
    };

    for (double t = 0.0; t <= model.horizon + 1e-9; t += model.time_step) {
        std::optional<FuzzyNumber> global;
        for (const auto& asset : model.assets) {
            std::map<std::string, FuzzyNumber> residual_attacks;
            std::optional<double> first_incident;
            for (const auto& th : asset.threats) {
                ThreatState& st = tstate.at(asset.id + "/" + th.id);

                // residual vulnerability levels and the integral vulnerability
                std::vector<FuzzyNumber> residual_vulns;
                WeightedProductAccumulator integral;
                for (std::size_t j = 0; j < th.vulnerabilities.size(); ++j) {
                    const auto& v = th.vulnerabilities[j];
                    WeightedProductAccumulator prot;
                    for (const auto& [mid, w] : v.protections) {
                        prot.feed(measure_level(mid), w);
                    }
                    FuzzyNumber rv = mul(st.vuln_levels[j], prot.result_or_one(ladder));
                    emit(t, asset.id, "residual-vulnerability", th.id + "/" + v.id, rv);
                    integral.feed(rv, v.integration_weight);
                    residual_vulns.push_back(std::move(rv));
                }
                FuzzyNumber integral_vuln = th.vulnerabilities.empty()
                                                ? FuzzyNumber::singleton(0.0, ladder)
                                                : invert(integral.result_or_one(ladder));

                // residual threat probability
                WeightedProductAccumulator tprot;
                for (const auto& [mid, w] : th.protections) {
                    tprot.feed(measure_level(mid), w);
                }
                FuzzyNumber residual_threat = mul(th.base_probability, tprot.result_or_one(ladder));
                emit(t, asset.id, "residual-threat", th.id, residual_threat);

                // attack level and incident bookkeeping
                FuzzyNumber attack = mul(residual_threat, integral_vuln);
                emit(t, asset.id, "attack", th.id, attack);
                if (!st.incident_start && centroid(attack) > attack_gate) {
                    st.incident_start = t;
                }
                if (st.incident_start && (!first_incident || *st.incident_start < *first_incident)) {
                    first_incident = st.incident_start;
                }

                FuzzyNumber residual_attack = attack;
                if (st.incident_start) {
                    for (const auto& m : th.damping) {
                        if (window_active(m, *st.incident_start, t)) {
                            residual_attack =
                                mul(residual_attack, pow(invert(m.level), m.weight));
                        }
                    }
                }
                emit(t, asset.id, "residual-attack", th.id, residual_attack);
                residual_attacks.emplace(th.id, residual_attack);

                // incidents persisting beyond the critical time amplify the
                // next step's vulnerabilities (soft-OR with this step's
                // residual attack; no compounding within a step)
                if (st.incident_start &&
                    t - *st.incident_start > model.incident_critical_time + 1e-12) {
                    for (std::size_t j = 0; j < th.vulnerabilities.size(); ++j) {
                        double d = th.vulnerabilities[j].amplification_weight;
                        if (d <= 0.0) {
                            continue;
                        }
                        st.vuln_levels[j] = clamp(
                            invert(mul(invert(st.vuln_levels[j]),
                                       pow(invert(residual_attack), d))),
                            0.0, 1.0);
                    }
                }
            }

            // services
            std::optional<FuzzyNumber> asset_score;
            for (const auto& sv : asset.services) {
                ServiceState& st = sstate.at(asset.id + "/" + sv.id);
                WeightedProductAccumulator level;
                for (const auto& [tid, w] : sv.attack_weights) {
                    auto it = residual_attacks.find(tid);
                    if (it == residual_attacks.end()) {
                        throw ModelError("service '" + sv.id + "' references unknown threat '" +
                                         tid + "'");
                    }
                    level.feed(it->second, w); // prod Inv(A)^w
                }
                FuzzyNumber service = level.acc ? *level.acc : FuzzyNumber::singleton(1.0, ladder);

                // recovery window anchored at the first trigger
                if (!st.trigger_time) {
                    if (model.service_threshold) {
                        if (centroid(service) < *model.service_threshold) {
                            st.trigger_time = t;
                        }
                    } else if (first_incident) {
                        st.trigger_time = first_incident;
                    }
                }
                if (st.trigger_time) {
                    WeightedProductAccumulator rec;
                    bool any = false;
                    for (const auto& m : sv.recovery) {
                        if (window_active(m, *st.trigger_time, t)) {
                            rec.feed(m.level, m.weight);
                            any = true;
                        }
                    }
                    if (any) {
                        // recovery raises the service level (soft-OR with
                        // the active measures)
                        service = invert(mul(invert(service), rec.result_or_one(ladder)));
                    }
                }
                service = clamp(service, 0.0, 1.0);
                emit(t, asset.id, "service", sv.id, service);

                FuzzyNumber share = pow(service, sv.rollup_weight);
                asset_score = asset_score ? mul(*asset_score, share) : share;
            }
            FuzzyNumber ascore =
                asset_score ? clamp(*asset_score, 0.0, 1.0) : FuzzyNumber::singleton(1.0, ladder);
            emit(t, asset.id, "asset-score", asset.id, ascore);
            FuzzyNumber share = pow(ascore, asset.rollup_weight);
            global = global ? mul(*global, share) : share;
        }
        if (global) {
            emit(t, "-", "global-score", "K", clamp(*global, 0.0, 1.0));
        }
    }
    return result;
}

} // namespace riskfuzz
