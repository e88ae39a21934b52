#include "riskfuzz/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace riskfuzz {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw LoadError(path + ": " + msg);
}

const json& member(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path, "missing required field '" + key + "'");
    }
    return *it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        fail(path, "expected a number");
    }
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) {
        fail(path, "expected a string");
    }
    return v.get<std::string>();
}

/// A fuzzy value is either a label (string), a crisp number, or an array of
/// four trapezoid abscissas [ls, lc, rc, rs].
FuzzyNumber as_fuzzy(const json& v, const std::string& path, const LinguisticScale& scale,
                     const AlphaLadder& ladder) {
    if (v.is_string()) {
        return scale.etalon(v.get<std::string>()).resample(ladder);
    }
    if (v.is_number()) {
        return FuzzyNumber::singleton(v.get<double>(), ladder);
    }
    if (v.is_array() && v.size() == 4) {
        return FuzzyNumber::trapezoid(v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                                      v[3].get<double>(), ladder);
    }
    fail(path, "expected a label, a number, or [ls, lc, rc, rs]");
}

std::vector<double> as_doubles(const json& v, const std::string& path) {
    if (!v.is_array()) {
        fail(path, "expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : v) {
        out.push_back(as_number(x, path));
    }
    return out;
}

CognitiveModel parse_cognitive(const json& doc, const std::string& base, LinguisticScale scale,
                               std::optional<LinguisticScale> rec_scale, const AlphaLadder& ladder) {
    CognitiveModel model(scale, std::move(rec_scale));
    const json& nodes = member(doc, base, "nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string p = base + ".nodes[" + std::to_string(i) + "]";
        const json& n = nodes[i];
        ModelNode node;
        node.id = as_string(member(n, p, "id"), p + ".id");
        node.level = static_cast<int>(as_number(member(n, p, "level"), p + ".level"));
        if (n.contains("convolution")) {
            node.convolution = convolution_from_name(as_string(n["convolution"], p + ".convolution"));
        }
        if (n.contains("value")) {
            node.value = as_fuzzy(n["value"], p + ".value", scale, ladder);
        }
        model.add_node(std::move(node));
    }
    if (doc.contains("edges")) {
        const json& edges = doc["edges"];
        for (std::size_t i = 0; i < edges.size(); ++i) {
            std::string p = base + ".edges[" + std::to_string(i) + "]";
            const json& e = edges[i];
            ModelEdge edge;
            edge.child = as_string(member(e, p, "from"), p + ".from");
            edge.parent = as_string(member(e, p, "to"), p + ".to");
            if (e.contains("weight")) {
                edge.weight = as_number(e["weight"], p + ".weight");
            }
            if (e.contains("invert")) {
                edge.invert = e["invert"].get<bool>();
            }
            try {
                model.add_edge(std::move(edge));
            } catch (const ModelError& err) {
                fail(p, err.what());
            }
        }
    }
    // rankings resolve into weights of the incoming edges of one node
    if (doc.contains("rankings")) {
        const json& rankings = doc["rankings"];
        for (std::size_t i = 0; i < rankings.size(); ++i) {
            std::string p = base + ".rankings[" + std::to_string(i) + "]";
            const json& r = rankings[i];
            std::string node_id = as_string(member(r, p, "node"), p + ".node");
            std::string scheme = r.contains("scheme") ? as_string(r["scheme"], p) : "fishburn";
            PreferenceRanking ranking = parse_ranking(as_string(member(r, p, "order"), p + ".order"));
            WeightVector wv;
            if (scheme == "fishburn") {
                wv = fishburn_weights(ranking);
            } else if (scheme == "rank") {
                wv = rank_weights(ranking);
            } else {
                fail(p + ".scheme", "unknown weighting scheme '" + scheme + "'");
            }
            // overwrite matching edge weights
            CognitiveModel rebuilt(model.scale(), model.recognition_scale());
            for (const auto& n : model.nodes()) {
                rebuilt.add_node(n);
            }
            for (auto e : model.edges()) {
                if (e.parent == node_id) {
                    bool found = false;
                    for (const auto& entry : wv.entries) {
                        if (entry.item == e.child) {
                            e.weight = entry.weight.real();
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        fail(p, "ranking does not mention child '" + e.child + "' of node '" +
                                    node_id + "'");
                    }
                }
                rebuilt.add_edge(e);
            }
            model = std::move(rebuilt);
        }
    }
    try {
        model.validate();
    } catch (const ModelError& err) {
        fail(base, err.what());
    }
    return model;
}

LinguisticScale parse_variable_scale(const json& v, const std::string& p, const AlphaLadder& ladder) {
    if (v.contains("scale")) {
        return LinguisticScale::by_name(as_string(v["scale"], p + ".scale"), ladder);
    }
    if (v.contains("labels")) {
        std::vector<std::string> labels;
        for (const auto& l : v["labels"]) {
            labels.push_back(as_string(l, p + ".labels"));
        }
        double lo = 0.0, hi = 1.0;
        if (v.contains("carrier")) {
            auto c = as_doubles(v["carrier"], p + ".carrier");
            if (c.size() != 2) {
                fail(p + ".carrier", "expected [lo, hi]");
            }
            lo = c[0];
            hi = c[1];
        }
        return LinguisticScale::triangular_partition(std::move(labels), lo, hi, ladder);
    }
    fail(p, "variable needs either 'scale' or 'labels'");
}

std::shared_ptr<RuleBase> parse_rulebase(const json& doc, const std::string& base,
                                         const AlphaLadder& ladder) {
    std::vector<LinguisticVariable> inputs;
    const json& vars = member(doc, base, "variables");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        std::string p = base + ".variables[" + std::to_string(i) + "]";
        inputs.push_back({as_string(member(vars[i], p, "name"), p + ".name"),
                          parse_variable_scale(vars[i], p, ladder)});
    }
    const json& outv = member(doc, base, "output");
    std::string p = base + ".output";
    LinguisticVariable output{as_string(member(outv, p, "name"), p + ".name"),
                              parse_variable_scale(outv, p, ladder)};
    auto rb = std::make_shared<RuleBase>(std::move(inputs), std::move(output));
    const json& rules = member(doc, base, "rules");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        std::string rp = base + ".rules[" + std::to_string(i) + "]";
        try {
            rb->add_rule_text(as_string(rules[i], rp));
        } catch (const Error& err) {
            fail(rp, err.what());
        }
    }
    return rb;
}

std::vector<std::pair<std::string, double>> parse_weight_list(const json& arr,
                                                              const std::string& p,
                                                              const char* ref_key,
                                                              const char* weight_key) {
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string ep = p + "[" + std::to_string(i) + "]";
        const json& e = arr[i];
        out.push_back({as_string(member(e, ep, ref_key), ep),
                       e.contains(weight_key) ? as_number(e[weight_key], ep) : 1.0});
    }
    return out;
}

std::vector<TimedMeasure> parse_timed_measures(const json& arr, const std::string& p,
                                               const std::map<std::string, FuzzyNumber>& levels,
                                               const LinguisticScale& scale,
                                               const AlphaLadder& ladder) {
    std::vector<TimedMeasure> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string ep = p + "[" + std::to_string(i) + "]";
        const json& e = arr[i];
        TimedMeasure m;
        m.id = as_string(member(e, ep, "measure"), ep + ".measure");
        if (e.contains("level")) {
            m.level = as_fuzzy(e["level"], ep + ".level", scale, ladder);
        } else {
            auto it = levels.find(m.id);
            if (it == levels.end()) {
                fail(ep, "measure '" + m.id + "' has no level (set measure_levels or inline)");
            }
            m.level = it->second;
        }
        if (e.contains("weight")) {
            m.weight = as_number(e["weight"], ep + ".weight");
        }
        m.start_delay = as_number(member(e, ep, "start"), ep + ".start");
        m.end_time = as_number(member(e, ep, "end"), ep + ".end");
        out.push_back(std::move(m));
    }
    return out;
}

DynamicModel parse_dynamic(const json& doc, const std::string& base, const LinguisticScale& scale,
                           const AlphaLadder& ladder) {
    DynamicModel model;
    model.attack_threshold =
        as_fuzzy(member(doc, base, "attack_threshold"), base + ".attack_threshold", scale, ladder);
    if (doc.contains("incident_critical_time")) {
        model.incident_critical_time = as_number(doc["incident_critical_time"], base);
    }
    if (doc.contains("service_threshold")) {
        model.service_threshold = as_number(doc["service_threshold"], base);
    }
    model.time_step = as_number(member(doc, base, "time_step"), base + ".time_step");
    model.horizon = as_number(member(doc, base, "horizon"), base + ".horizon");
    if (doc.contains("measure_levels")) {
        for (auto it = doc["measure_levels"].begin(); it != doc["measure_levels"].end(); ++it) {
            model.measures[it.key()] =
                as_fuzzy(it.value(), base + ".measure_levels." + it.key(), scale, ladder);
        }
    }
    const json& assets = member(doc, base, "assets");
    for (std::size_t ai = 0; ai < assets.size(); ++ai) {
        std::string ap = base + ".assets[" + std::to_string(ai) + "]";
        const json& a = assets[ai];
        AssetBlock asset;
        asset.id = as_string(member(a, ap, "id"), ap + ".id");
        if (a.contains("weight")) {
            asset.rollup_weight = as_number(a["weight"], ap + ".weight");
        }
        const json& threats = member(a, ap, "threats");
        for (std::size_t ti = 0; ti < threats.size(); ++ti) {
            std::string tp = ap + ".threats[" + std::to_string(ti) + "]";
            const json& t = threats[ti];
            ThreatBlock th;
            th.id = as_string(member(t, tp, "id"), tp + ".id");
            th.base_probability =
                as_fuzzy(member(t, tp, "probability"), tp + ".probability", scale, ladder);
            if (t.contains("protections")) {
                th.protections = parse_weight_list(t["protections"], tp + ".protections",
                                                   "measure", "weight");
            }
            if (t.contains("vulnerabilities")) {
                const json& vulns = t["vulnerabilities"];
                for (std::size_t vi = 0; vi < vulns.size(); ++vi) {
                    std::string vp = tp + ".vulnerabilities[" + std::to_string(vi) + "]";
                    const json& v = vulns[vi];
                    VulnerabilityEntry ve;
                    ve.id = as_string(member(v, vp, "id"), vp + ".id");
                    ve.level = as_fuzzy(member(v, vp, "level"), vp + ".level", scale, ladder);
                    if (v.contains("share")) {
                        ve.integration_weight = as_number(v["share"], vp + ".share");
                    }
                    if (v.contains("amplification")) {
                        ve.amplification_weight = as_number(v["amplification"], vp);
                    }
                    if (v.contains("protections")) {
                        ve.protections = parse_weight_list(v["protections"], vp + ".protections",
                                                           "measure", "weight");
                    }
                    th.vulnerabilities.push_back(std::move(ve));
                }
            }
            if (t.contains("damping")) {
                th.damping = parse_timed_measures(t["damping"], tp + ".damping", model.measures,
                                                  scale, ladder);
            }
            asset.threats.push_back(std::move(th));
        }
        if (a.contains("services")) {
            const json& services = a["services"];
            for (std::size_t si = 0; si < services.size(); ++si) {
                std::string sp = ap + ".services[" + std::to_string(si) + "]";
                const json& s = services[si];
                ServiceBlock sv;
                sv.id = as_string(member(s, sp, "id"), sp + ".id");
                if (s.contains("weight")) {
                    sv.rollup_weight = as_number(s["weight"], sp + ".weight");
                }
                sv.attack_weights =
                    parse_weight_list(member(s, sp, "attack_weights"), sp + ".attack_weights",
                                      "threat", "weight");
                if (s.contains("recovery")) {
                    sv.recovery = parse_timed_measures(s["recovery"], sp + ".recovery",
                                                       model.measures, scale, ladder);
                }
                asset.services.push_back(std::move(sv));
            }
        }
        model.assets.push_back(std::move(asset));
    }
    return model;
}

InfluenceDocument parse_influence(const json& doc, const std::string& base) {
    InfluenceDocument out;
    const json& verts = member(doc, base, "vertices");
    for (const auto& v : verts) {
        out.map.add_vertex(as_string(v, base + ".vertices"));
    }
    const json& edges = member(doc, base, "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string p = base + ".edges[" + std::to_string(i) + "]";
        const json& e = edges[i];
        double w;
        if (e.contains("label")) {
            w = InfluenceMap::lexicon_weight(as_string(e["label"], p + ".label"));
        } else {
            w = as_number(member(e, p, "weight"), p + ".weight");
        }
        try {
            out.map.add_edge(as_string(member(e, p, "from"), p + ".from"),
                             as_string(member(e, p, "to"), p + ".to"), w);
        } catch (const Error& err) {
            fail(p, err.what());
        }
    }
    if (doc.contains("initial_state")) {
        out.initial_state = as_doubles(doc["initial_state"], base + ".initial_state");
    }
    if (doc.contains("initial_impulse")) {
        out.initial_impulse = as_doubles(doc["initial_impulse"], base + ".initial_impulse");
    }
    if (doc.contains("inverse_target")) {
        out.inverse_target = as_doubles(doc["inverse_target"], base + ".inverse_target");
    }
    if (doc.contains("grid_step")) {
        out.grid_step = as_number(doc["grid_step"], base + ".grid_step");
    }
    return out;
}

TeamDocument parse_team(const json& doc, const std::string& base, const LinguisticScale& scale,
                        const AlphaLadder& ladder) {
    TeamDocument out;
    const json& tasks = member(doc, base, "tasks");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        std::string p = base + ".tasks[" + std::to_string(i) + "]";
        const json& t = tasks[i];
        TaskRequirement req;
        req.task = as_string(member(t, p, "task"), p + ".task");
        if (t.contains("omega_critical")) {
            req.omega_critical = as_number(t["omega_critical"], p + ".omega_critical");
        }
        const json& comps = member(t, p, "competencies");
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
            std::string cp = p + ".competencies[" + std::to_string(ci) + "]";
            const json& c = comps[ci];
            RequiredCompetency rc;
            rc.id = as_string(member(c, cp, "id"), cp + ".id");
            rc.level = as_string(member(c, cp, "level"), cp + ".level");
            rc.weight = as_number(member(c, cp, "weight"), cp + ".weight");
            if (!scale.find(rc.level)) {
                fail(cp + ".level", "unknown label '" + rc.level + "'");
            }
            req.competencies.push_back(std::move(rc));
        }
        out.tasks.push_back(std::move(req));
    }
    if (doc.contains("candidates")) {
        const json& cands = doc["candidates"];
        for (std::size_t i = 0; i < cands.size(); ++i) {
            std::string p = base + ".candidates[" + std::to_string(i) + "]";
            const json& c = cands[i];
            CompetencyProfile prof;
            prof.candidate = as_string(member(c, p, "candidate"), p + ".candidate");
            const json& comps = member(c, p, "competencies");
            for (auto it = comps.begin(); it != comps.end(); ++it) {
                prof.competencies.emplace(
                    it.key(), as_fuzzy(it.value(), p + ".competencies." + it.key(), scale, ladder));
            }
            out.candidates.push_back(std::move(prof));
        }
    }
    if (doc.contains("omega_table")) {
        const json& table = doc["omega_table"];
        for (std::size_t ti = 0; ti < table.size(); ++ti) {
            std::string p = base + ".omega_table[" + std::to_string(ti) + "]";
            std::vector<std::vector<double>> per_cand;
            for (const auto& row : table[ti]) {
                per_cand.push_back(as_doubles(row, p));
            }
            out.omega_table.push_back(std::move(per_cand));
        }
        out.has_omega_table = true;
        if (out.omega_table.size() != out.tasks.size()) {
            fail(base + ".omega_table", "one row of candidate omegas per task expected");
        }
    }
    if (!out.has_omega_table && out.candidates.empty()) {
        fail(base, "team model needs candidates or omega_table");
    }
    return out;
}

SelectionDocument parse_selection(const json& doc, const std::string& base) {
    SelectionDocument out;
    const json& measures = member(doc, base, "measures");
    for (std::size_t i = 0; i < measures.size(); ++i) {
        std::string p = base + ".measures[" + std::to_string(i) + "]";
        const json& m = measures[i];
        MeasureSpec spec;
        spec.measure.id = as_string(member(m, p, "id"), p + ".id");
        spec.measure.cost = as_number(member(m, p, "cost"), p + ".cost");
        if (m.contains("effects")) {
            spec.service_effects = as_doubles(m["effects"], p + ".effects");
            for (double e : spec.service_effects) {
                if (e < 0.0 || e > 1.0) {
                    fail(p + ".effects", "effect outside [0, 1]");
                }
            }
        }
        out.measures.push_back(std::move(spec));
    }
    if (doc.contains("service_weights")) {
        out.service_weights = as_doubles(doc["service_weights"], base + ".service_weights");
    }
    if (doc.contains("budget")) {
        out.budget = as_number(doc["budget"], base + ".budget");
    }
    if (doc.contains("conflicts")) {
        const json& groups = doc["conflicts"];
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            std::string p = base + ".conflicts[" + std::to_string(gi) + "]";
            std::vector<std::size_t> group;
            for (const auto& idv : groups[gi]) {
                std::string id = as_string(idv, p);
                bool found = false;
                for (std::size_t mi = 0; mi < out.measures.size(); ++mi) {
                    if (out.measures[mi].measure.id == id) {
                        group.push_back(mi);
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    fail(p, "conflict references unknown measure '" + id + "'");
                }
            }
            out.conflict_groups.push_back(std::move(group));
        }
    }
    if (doc.contains("sets")) {
        const json& sets = doc["sets"];
        for (std::size_t si = 0; si < sets.size(); ++si) {
            std::string p = base + ".sets[" + std::to_string(si) + "]";
            const json& s = sets[si];
            std::uint32_t mask = 0;
            for (const auto& idv : member(s, p, "measures")) {
                std::string id = as_string(idv, p);
                bool found = false;
                for (std::size_t mi = 0; mi < out.measures.size(); ++mi) {
                    if (out.measures[mi].measure.id == id) {
                        mask |= (1u << mi);
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    fail(p, "set references unknown measure '" + id + "'");
                }
            }
            out.set_table[mask] = as_number(member(s, p, "effectiveness"), p + ".effectiveness");
        }
    }
    bool per_measure = !out.measures.empty() && !out.measures.front().service_effects.empty();
    if (!per_measure && out.set_table.empty()) {
        fail(base, "selection model needs per-measure effects or an explicit set table");
    }
    return out;
}

TrafficDocument parse_traffic(const json& doc, const std::string& base, const AlphaLadder& ladder) {
    TrafficDocument out;
    out.bin_width = as_number(member(doc, base, "bin_width"), base + ".bin_width");
    out.span = as_number(member(doc, base, "span"), base + ".span");
    out.packet_log = as_string(member(doc, base, "packet_log"), base + ".packet_log");
    if (doc.contains("smooth_window")) {
        out.smooth_window = static_cast<std::size_t>(as_number(doc["smooth_window"], base));
    }
    if (doc.contains("anomaly_window")) {
        out.anomaly_window = static_cast<std::size_t>(as_number(doc["anomaly_window"], base));
    }
    out.threshold = as_number(member(doc, base, "threshold"), base + ".threshold");
    out.caps.deviation_cap = 10.0 * out.threshold;
    out.caps.frequency_cap = 10.0 / static_cast<double>(out.anomaly_window);
    out.caps.source_cap = 256.0;
    out.caps.volume_cap = 10.0 * out.threshold;
    if (doc.contains("caps")) {
        const json& caps = doc["caps"];
        if (caps.contains("deviation")) {
            out.caps.deviation_cap = as_number(caps["deviation"], base + ".caps.deviation");
        }
        if (caps.contains("frequency")) {
            out.caps.frequency_cap = as_number(caps["frequency"], base + ".caps.frequency");
        }
        if (caps.contains("sources")) {
            out.caps.source_cap = as_number(caps["sources"], base + ".caps.sources");
        }
        if (caps.contains("volume")) {
            out.caps.volume_cap = as_number(caps["volume"], base + ".caps.volume");
        }
    }
    out.grading = parse_rulebase(member(doc, base, "grading"), base + ".grading", ladder);
    const json& ctx = member(doc, base, "context");
    out.context.locality = as_string(member(ctx, base, "locality"), base + ".context.locality");
    out.context.direction = as_string(member(ctx, base, "direction"), base + ".context.direction");
    out.context.privilege = as_string(member(ctx, base, "privilege"), base + ".context.privilege");
    const json& resp = member(doc, base, "responses");
    for (std::size_t i = 0; i < resp.size(); ++i) {
        std::string p = base + ".responses[" + std::to_string(i) + "]";
        const json& r = resp[i];
        ResponseRule rule;
        rule.grade = r.contains("grade") ? as_string(r["grade"], p) : "*";
        rule.locality = r.contains("locality") ? as_string(r["locality"], p) : "*";
        rule.direction = r.contains("direction") ? as_string(r["direction"], p) : "*";
        rule.privilege = r.contains("privilege") ? as_string(r["privilege"], p) : "*";
        rule.action = as_string(member(r, p, "action"), p + ".action");
        if (r.contains("detail")) {
            rule.detail = as_string(r["detail"], p + ".detail");
        }
        out.responses.push_back(std::move(rule));
    }
    return out;
}

PlanDocument parse_plan(const json& doc, const std::string& base) {
    PlanDocument out;
    out.kind = as_string(member(doc, base, "kind"), base + ".kind");
    if (out.kind == "channels") {
        ChannelProblem p;
        auto demand = as_doubles(member(doc, base, "demand"), base + ".demand");
        if (demand.size() != 2) {
            fail(base + ".demand", "expected [N1, N2]");
        }
        p.demand_lo = static_cast<long>(demand[0]);
        p.demand_hi = static_cast<long>(demand[1]);
        p.profit_ratio = as_number(member(doc, base, "profit_ratio"), base + ".profit_ratio");
        if (doc.contains("cost")) {
            p.channel_cost = as_number(doc["cost"], base + ".cost");
        }
        try {
            p.validate();
        } catch (const Error& err) {
            fail(base, err.what());
        }
        out.channels = p;
    } else if (out.kind == "choose") {
        ChoiceMatrix m;
        for (const auto& row : member(doc, base, "cost")) {
            m.cost.push_back(as_doubles(row, base + ".cost"));
        }
        if (doc.contains("probability")) {
            m.probability = as_doubles(doc["probability"], base + ".probability");
        }
        if (doc.contains("mode")) {
            std::string mode = as_string(doc["mode"], base + ".mode");
            if (mode == "minimax") {
                out.choice_mode = ChoiceMode::Minimax;
            } else if (mode == "expected") {
                out.choice_mode = ChoiceMode::Expected;
            } else {
                fail(base + ".mode", "expected 'minimax' or 'expected'");
            }
        }
        try {
            m.validate();
        } catch (const Error& err) {
            fail(base, err.what());
        }
        out.choice = std::move(m);
    } else if (out.kind == "place") {
        PerimeterProblem p;
        p.points = as_doubles(member(doc, base, "points"), base + ".points");
        p.probabilities = as_doubles(member(doc, base, "probabilities"), base + ".probabilities");
        if (doc.contains("length")) {
            p.length = as_number(doc["length"], base + ".length");
        }
        try {
            p.validate();
        } catch (const Error& err) {
            fail(base, err.what());
        }
        out.perimeter = std::move(p);
    } else {
        fail(base + ".kind", "expected channels, choose or place");
    }
    return out;
}

} // namespace

ModelDocument load_model_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw LoadError(origin + ": parse error: " + e.what());
    }
    if (!doc.is_object()) {
        throw LoadError(origin + ": model file must hold a JSON object");
    }
    ModelDocument out;
    out.version = static_cast<int>(as_number(member(doc, origin, "version"), origin + ".version"));
    if (out.version != 1) {
        fail(origin + ".version", "unsupported model version " + std::to_string(out.version));
    }
    out.mode = as_string(member(doc, origin, "mode"), origin + ".mode");
    if (doc.contains("ladder")) {
        out.ladder = AlphaLadder(as_doubles(doc["ladder"], origin + ".ladder"));
    }
    std::string scale_name =
        doc.contains("scale") ? as_string(doc["scale"], origin + ".scale") : "L5";
    out.scale = LinguisticScale::by_name(scale_name, out.ladder);
    std::optional<LinguisticScale> rec;
    if (doc.contains("recognition_scale")) {
        rec = LinguisticScale::by_name(as_string(doc["recognition_scale"], origin), out.ladder);
    }

    if (out.mode == "evaluate") {
        out.cognitive = parse_cognitive(doc, origin, out.scale, rec, out.ladder);
    } else if (out.mode == "simulate") {
        out.dynamic =
            parse_dynamic(member(doc, origin, "dynamic"), origin + ".dynamic", out.scale, out.ladder);
    } else if (out.mode == "influence") {
        out.influence = parse_influence(doc, origin);
    } else if (out.mode == "infer") {
        InferenceDocument inf;
        inf.rulebase = parse_rulebase(doc, origin, out.ladder);
        if (doc.contains("inputs")) {
            for (auto it = doc["inputs"].begin(); it != doc["inputs"].end(); ++it) {
                if (it.value().is_number()) {
                    inf.inputs[it.key()] = it.value().get<double>();
                } else {
                    const LinguisticVariable& var = inf.rulebase->input(it.key());
                    inf.inputs[it.key()] =
                        as_fuzzy(it.value(), origin + ".inputs." + it.key(), var.scale, out.ladder);
                }
            }
        }
        out.inference = std::move(inf);
    } else if (out.mode == "assign-team") {
        out.team = parse_team(doc, origin, out.scale, out.ladder);
    } else if (out.mode == "select-measures") {
        out.selection = parse_selection(doc, origin);
    } else if (out.mode == "traffic") {
        out.traffic = parse_traffic(member(doc, origin, "traffic"), origin + ".traffic", out.ladder);
    } else if (out.mode == "plan") {
        out.plan = parse_plan(member(doc, origin, "plan"), origin + ".plan");
    } else {
        fail(origin + ".mode", "unknown mode '" + out.mode + "'");
    }
    return out;
}

ModelDocument load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open model file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model_text(buf.str(), path);
}

} // namespace riskfuzz
