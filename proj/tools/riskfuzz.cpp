#include "riskfuzz/model_io.hpp"
#include "riskfuzz/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

using namespace riskfuzz;
using nlohmann::json;

namespace {

int log_level() {
    const char* v = std::getenv("RISKFUZZ_LOG");
    return v ? std::atoi(v) : 0;
}

void log_note(const std::string& msg) {
    if (log_level() > 0) {
        std::cerr << "[riskfuzz] " << msg << "\n";
    }
}

struct OutputSink {
    std::string out_path;   // empty -> stdout
    std::string format;     // table | sidecar

    void deliver(const std::string& table, const json& sidecar) const {
        std::string body = (format == "sidecar") ? sidecar.dump(2) + "\n" : table;
        if (out_path.empty()) {
            std::cout << body;
        } else {
            write_file_atomic(out_path, body);
            // the sidecar always lands next to a table report
            if (format != "sidecar") {
                write_file_atomic(out_path + ".json", sidecar.dump(2) + "\n");
            }
            log_note("wrote " + out_path);
        }
    }
};

json fuzzy_json(const FuzzyNumber& v) {
    return json::array({v.left_support(), v.left_core(), v.right_core(), v.right_support()});
}

int run_evaluate(const ModelDocument& doc, const OutputSink& sink) {
    auto results = evaluate(*doc.cognitive);
    TextTable table({"node", "level", "centroid", "label", "omega", "ls", "lc", "rc", "rs"});
    json side = json::array();
    // stable order: by level then id
    std::vector<const ModelNode*> order;
    for (const auto& n : doc.cognitive->nodes()) {
        order.push_back(&n);
    }
    std::sort(order.begin(), order.end(), [](const ModelNode* a, const ModelNode* b) {
        if (a->level != b->level) {
            return a->level < b->level;
        }
        return a->id < b->id;
    });
    for (const ModelNode* n : order) {
        const NodeEvaluation& ev = results.at(n->id);
        const FuzzyNumber& v = ev.value;
        table.add_row({n->id, std::to_string(n->level), format_real(centroid(v)),
                       ev.recognition.best_label, format_real(ev.recognition.best_omega()),
                       format_real(v.left_support()), format_real(v.left_core()),
                       format_real(v.right_core()), format_real(v.right_support())});
        json omegas = json::object();
        for (std::size_t i = 0; i < ev.recognition.omegas.size(); ++i) {
            omegas[doc.cognitive->recognition_scale().label(i)] = ev.recognition.omegas[i];
        }
        side.push_back(json{{"node", n->id},
                            {"level", n->level},
                            {"centroid", centroid(v)},
                            {"label", ev.recognition.best_label},
                            {"omega", ev.recognition.best_omega()},
                            {"omegas", omegas},
                            {"value", fuzzy_json(v)}});
    }
    sink.deliver(table.str(), json{{"command", "evaluate"}, {"nodes", side}});
    return 0;
}

int run_simulate(const ModelDocument& doc, const OutputSink& sink) {
    SimulationResult res = simulate(*doc.dynamic, doc.scale);
    TextTable table({"step", "asset", "kind", "id", "centroid", "label", "omega"});
    json side = json::array();
    for (const TraceRow& row : res.rows) {
        table.add_row({format_real(row.time, 2), row.asset, row.kind, row.id,
                       format_real(row.centroid_value), row.label, format_real(row.omega)});
        side.push_back(json{{"step", row.time},
                            {"asset", row.asset},
                            {"kind", row.kind},
                            {"id", row.id},
                            {"centroid", row.centroid_value},
                            {"label", row.label},
                            {"omega", row.omega},
                            {"value", fuzzy_json(row.value)}});
    }
    sink.deliver(table.str(), json{{"command", "simulate"}, {"trace", side}});
    return 0;
}

int run_influence(const ModelDocument& doc, const OutputSink& sink, const std::string& from,
                  const std::string& to, double alpha, std::size_t steps) {
    const InfluenceDocument& inf = *doc.influence;
    json side;
    std::string table_text;
    if (!from.empty() && !to.empty()) {
        std::size_t i = inf.map.vertex(from);
        std::size_t j = inf.map.vertex(to);
        PathInfluenceResult paths = path_influence(inf.map, i, j, inf.map.size());
        SignedInfluence sig = signed_influence(inf.map, i, j, alpha);
        TextTable table({"path", "strength", "strength-label"});
        json plist = json::array();
        for (const auto& p : paths.paths) {
            std::string names;
            for (std::size_t v : p.path) {
                if (!names.empty()) {
                    names += " -> ";
                }
                names += inf.map.name(v);
            }
            std::string label = InfluenceMap::lexicon_label(p.strength);
            table.add_row({names, format_real(p.strength), label});
            plist.push_back(json{{"path", names}, {"strength", p.strength}, {"label", label}});
        }
        table_text = table.str();
        table_text += "total: " + format_real(paths.total) + " " +
                      InfluenceMap::lexicon_label(paths.total) + "\n";
        table_text += "positive: " + format_real(sig.positive) +
                      "  negative: " + format_real(sig.negative) +
                      "  strength: " + format_real(sig.strength) +
                      "  consonance: " + format_real(sig.consonance) + "\n";
        side = json{{"command", "influence"},
                    {"paths", plist},
                    {"total", paths.total},
                    {"positive", sig.positive},
                    {"negative", sig.negative},
                    {"strength", sig.strength},
                    {"consonance", sig.consonance}};
    } else if (!inf.initial_impulse.empty()) {
        std::vector<double> x0 = inf.initial_state;
        if (x0.empty()) {
            x0.assign(inf.map.size(), 0.0);
        }
        std::size_t n = steps ? steps : inf.map.size();
        auto trace = forecast(inf.map, x0, inf.initial_impulse, n);
        TextTable table({"step", "vertex", "state", "increment", "consonance"});
        json tlist = json::array();
        for (std::size_t t = 0; t < trace.size(); ++t) {
            for (std::size_t v = 0; v < inf.map.size(); ++v) {
                table.add_row({std::to_string(t + 1), inf.map.name(v),
                               format_real(trace[t].state[v]), format_real(trace[t].increment[v]),
                               format_real(trace[t].consonance[v])});
                tlist.push_back(json{{"step", t + 1},
                                     {"vertex", inf.map.name(v)},
                                     {"state", trace[t].state[v]},
                                     {"increment", trace[t].increment[v]},
                                     {"consonance", trace[t].consonance[v]}});
            }
        }
        table_text = table.str();
        side = json{{"command", "influence"}, {"forecast", tlist}};
    } else if (inf.inverse_target) {
        auto closure = transitive_closure(inf.map);
        InverseSolution sol = solve_inverse(closure, *inf.inverse_target, inf.grid_step, 1e-6);
        TextTable table({"solution", "vector"});
        json slist = json::array();
        std::size_t k = 0;
        for (const auto& u : sol.inputs) {
            std::string vec;
            for (double v : u) {
                if (!vec.empty()) {
                    vec += ", ";
                }
                vec += format_real(v, 2);
            }
            table.add_row({std::to_string(++k), vec});
            slist.push_back(u);
        }
        table_text = table.str();
        if (sol.inputs.empty()) {
            std::string vec;
            for (double v : sol.nearest) {
                if (!vec.empty()) {
                    vec += ", ";
                }
                vec += format_real(v, 2);
            }
            table_text += "no exact solution; nearest: " + vec +
                          " (error " + format_real(sol.nearest_error) + ")\n";
        }
        side = json{{"command", "influence"},
                    {"solutions", slist},
                    {"nearest", sol.nearest},
                    {"nearest_error", sol.nearest_error}};
    } else {
        std::cerr << "influence: give --from/--to, or initial_impulse / inverse_target in the model\n";
        return 2;
    }
    sink.deliver(table_text, side);
    return 0;
}

int run_infer(const ModelDocument& doc, const OutputSink& sink,
              const std::vector<std::string>& input_flags) {
    const InferenceDocument& inf = *doc.inference;
    auto report = inf.rulebase->validate();
    if (!report.ok()) {
        std::cerr << "rulebase validation failed:\n";
        for (const auto& s : report.uncovered_cells) {
            std::cerr << "  uncovered: " << s << "\n";
        }
        for (const auto& s : report.missing_terms) {
            std::cerr << "  missing: " << s << "\n";
        }
        for (const auto& s : report.contradictions) {
            std::cerr << "  contradiction: " << s << "\n";
        }
        for (const auto& s : report.redundancies) {
            std::cerr << "  redundancy: " << s << "\n";
        }
        return 2;
    }
    std::map<std::string, InputValue> values = inf.inputs;
    for (const std::string& f : input_flags) {
        std::size_t eq = f.find('=');
        if (eq == std::string::npos) {
            std::cerr << "--input expects var=value, got '" << f << "'\n";
            return 2;
        }
        values[f.substr(0, eq)] = std::stod(f.substr(eq + 1));
    }
    InferenceResult res = inf.rulebase->infer(values);
    TextTable table({"rule", "activation"});
    for (std::size_t i = 0; i < res.rule_activations.size(); ++i) {
        table.add_row({inf.rulebase->rules()[i].id, format_real(res.rule_activations[i])});
    }
    std::string text = table.str();
    text += "crisp: " + format_real(res.crisp) + "  label: " + res.best_label +
            "  omega: " + format_real(res.omegas[res.best_index]) + "\n";
    json side{{"command", "infer"},
              {"crisp", res.crisp},
              {"label", res.best_label},
              {"activations", res.rule_activations},
              {"omegas", res.omegas}};
    sink.deliver(text, side);
    return 0;
}

int run_assign_team(const ModelDocument& doc, const OutputSink& sink) {
    const TeamDocument& team = *doc.team;
    std::vector<std::vector<double>> table_data;
    std::vector<std::string> cand_names;
    if (team.has_omega_table) {
        for (std::size_t t = 0; t < team.tasks.size(); ++t) {
            std::vector<double> row;
            for (std::size_t c = 0; c < team.omega_table[t].size(); ++c) {
                row.push_back(candidate_task_index(team.omega_table[t][c], team.tasks[t]));
            }
            table_data.push_back(std::move(row));
        }
        for (std::size_t c = 0; c < table_data.front().size(); ++c) {
            cand_names.push_back(std::to_string(c + 1));
        }
    } else {
        for (std::size_t t = 0; t < team.tasks.size(); ++t) {
            std::vector<double> row;
            for (const auto& cand : team.candidates) {
                row.push_back(candidate_task_index(cand, team.tasks[t], doc.scale));
            }
            table_data.push_back(std::move(row));
        }
        for (const auto& cand : team.candidates) {
            cand_names.push_back(cand.candidate);
        }
    }
    AssignmentResult res = assign_team(table_data);
    TextTable table({"variant", "assignment", "score"});
    json vlist = json::array();
    for (const auto& p : res.surviving) {
        std::string assign;
        for (std::size_t t = 0; t < p.candidate_per_task.size(); ++t) {
            if (t) {
                assign += ", ";
            }
            assign += team.tasks[t].task + "->" + cand_names[p.candidate_per_task[t]];
        }
        table.add_row({std::to_string(p.ordinal), assign, format_real(p.score, 2)});
        vlist.push_back(json{{"variant", p.ordinal}, {"assignment", assign}, {"score", p.score}});
    }
    std::string text = table.str();
    std::string best_assign;
    for (std::size_t t = 0; t < res.best.candidate_per_task.size(); ++t) {
        if (t) {
            best_assign += ", ";
        }
        best_assign += team.tasks[t].task + "->" + cand_names[res.best.candidate_per_task[t]];
    }
    text += "best: variant " + std::to_string(res.best.ordinal) + " (" + best_assign +
            "), score " + format_real(res.best.score, 2) + "\n";
    sink.deliver(text, json{{"command", "assign-team"},
                            {"variants", vlist},
                            {"best", json{{"variant", res.best.ordinal},
                                          {"assignment", best_assign},
                                          {"score", res.best.score}}}});
    return 0;
}

int run_select_measures(const ModelDocument& doc, const OutputSink& sink,
                        std::optional<double> budget_flag) {
    const SelectionDocument& sel = *doc.selection;
    std::vector<Measure> measures;
    for (const auto& m : sel.measures) {
        measures.push_back(m.measure);
    }
    std::optional<double> budget = budget_flag ? budget_flag : sel.budget;
    auto effectiveness = [&](std::uint32_t mask) {
        auto it = sel.set_table.find(mask);
        if (it != sel.set_table.end()) {
            return it->second;
        }
        if (sel.service_weights.empty()) {
            throw LoadError("set " + std::to_string(mask) +
                            " has no effectiveness (no per-measure effects given)");
        }
        // per-service soft-or of the member effects, then the weighted sum
        std::vector<double> per_service(sel.service_weights.size(), 0.0);
        for (std::size_t s = 0; s < per_service.size(); ++s) {
            double keep = 1.0;
            for (std::size_t i = 0; i < sel.measures.size(); ++i) {
                if (mask & (1u << i)) {
                    keep *= 1.0 - sel.measures[i].service_effects[s];
                }
            }
            per_service[s] = 1.0 - keep;
        }
        return service_effectiveness(sel.service_weights, per_service);
    };
    SelectionResult res = select_measures(measures, sel.conflict_groups, budget, effectiveness);
    TextTable table({"set", "measures", "effectiveness", "cost", "quality"});
    json rows = json::array();
    for (const auto& s : res.table) {
        std::string ms;
        for (const auto& id : s.chosen) {
            if (!ms.empty()) {
                ms += "+";
            }
            ms += id;
        }
        table.add_row({std::to_string(s.mask), ms, format_real(s.effectiveness),
                       format_real(s.cost, 2), format_real(s.quality)});
        rows.push_back(json{{"mask", s.mask},
                            {"measures", s.chosen},
                            {"effectiveness", s.effectiveness},
                            {"cost", s.cost},
                            {"quality", s.quality}});
    }
    std::string text = table.str();
    std::string ms;
    for (const auto& id : res.best.chosen) {
        if (!ms.empty()) {
            ms += "+";
        }
        ms += id;
    }
    text += "chosen: " + ms + " (effectiveness " + format_real(res.best.effectiveness) + ", cost " +
            format_real(res.best.cost, 2) + ", quality " + format_real(res.best.quality) + ")\n";
    sink.deliver(text, json{{"command", "select-measures"}, {"sets", rows},
                            {"chosen", json{{"measures", res.best.chosen},
                                            {"effectiveness", res.best.effectiveness},
                                            {"cost", res.best.cost},
                                            {"quality", res.best.quality}}}});
    return 0;
}

int run_traffic(const ModelDocument& doc, const OutputSink& sink) {
    const TrafficDocument& t = *doc.traffic;
    auto packets = read_packet_log(t.packet_log);
    TimeSeries series = binning(packets, t.bin_width, t.span);
    TimeSeries smoothed = smooth(series, t.smooth_window);
    std::vector<Cycle> cycles = detect_cycles(smoothed);
    double mean = 0.0;
    for (double v : smoothed.samples) {
        mean += v;
    }
    mean /= static_cast<double>(smoothed.samples.size());
    std::vector<double> predicted =
        forecast(cycles, mean, smoothed.samples.size(), 0, series.samples.size());
    auto events = detect_anomaly(series, predicted, t.threshold, t.anomaly_window);
    fill_event_sources(events, series, packets);
    for (auto& ev : events) {
        grade_and_respond(ev, *t.grading, t.responses, t.context, t.caps);
    }
    TextTable table({"start", "end", "deviation", "sources", "grade", "omega", "response", "detail"});
    json elist = json::array();
    for (const auto& ev : events) {
        table.add_row({std::to_string(ev.start_bin), std::to_string(ev.end_bin),
                       format_real(ev.deviation, 1), format_real(ev.source_count, 0), ev.grade,
                       format_real(ev.grade_omega), ev.response, ev.response_detail});
        elist.push_back(json{{"start_bin", ev.start_bin},
                             {"end_bin", ev.end_bin},
                             {"deviation", ev.deviation},
                             {"frequency", ev.frequency},
                             {"sources", ev.source_count},
                             {"mean_source_volume", ev.mean_source_volume},
                             {"grade", ev.grade},
                             {"omega", ev.grade_omega},
                             {"response", ev.response},
                             {"detail", ev.response_detail}});
    }
    json clist = json::array();
    for (const auto& c : cycles) {
        clist.push_back(json{{"frequency", c.frequency},
                             {"period_bins", c.period},
                             {"amplitude", c.amplitude},
                             {"phase", c.phase},
                             {"p_value", c.p_value}});
    }
    std::string text = "cycles: " + std::to_string(cycles.size()) +
                       ", events: " + std::to_string(events.size()) + "\n" + table.str();
    sink.deliver(text, json{{"command", "traffic"}, {"cycles", clist}, {"events", elist}});
    return 0;
}

int run_plan(const ModelDocument& doc, const OutputSink& sink) {
    const PlanDocument& plan = *doc.plan;
    std::string text;
    json side{{"command", "plan"}, {"kind", plan.kind}};
    if (plan.kind == "channels") {
        long n = optimal_channels(*plan.channels);
        text = "optimal channels: " + std::to_string(n) + "\n";
        side["optimal_channels"] = n;
        side["expected_profit"] = expected_channel_profit(*plan.channels, n);
    } else if (plan.kind == "choose") {
        ChoiceResult res = choose_system(*plan.choice, plan.choice_mode);
        text = "strategy " + std::to_string(res.strategy + 1) + ", score " +
               format_real(res.score) + "\n";
        side["strategy"] = res.strategy + 1;
        side["score"] = res.score;
    } else {
        PlacementResult res = place_sensor(*plan.perimeter);
        text = "argmin [" + format_real(res.argmin_lo, 4) + ", " + format_real(res.argmin_hi, 4) +
               "], W=" + format_real(res.mean_distance) + "\n" + "absolute [" +
               format_real(res.absolute_lo, 2) + ", " + format_real(res.absolute_hi, 2) + "] m\n";
        side["argmin"] = json::array({res.argmin_lo, res.argmin_hi});
        side["mean_distance"] = res.mean_distance;
        side["absolute"] = json::array({res.absolute_lo, res.absolute_hi});
    }
    sink.deliver(text, side);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"riskfuzz - fuzzy cognitive modeling engine"};
    app.require_subcommand(1);

    std::string model_path;
    OutputSink sink;
    sink.format = "table";
    double alpha = 0.5;
    std::size_t steps = 0;
    std::string from_vertex, to_vertex;
    std::vector<std::string> input_flags;
    std::optional<double> budget;
    unsigned seed = 0;
    std::string ladder_text, scale_name;

    app.add_option("--model,-m", model_path, "model file")->required();
    app.add_option("--out,-o", sink.out_path, "report file (stdout when absent)");
    app.add_option("--report-format", sink.format, "table | sidecar")
        ->check(CLI::IsMember({"table", "sidecar"}));
    app.add_option("--alpha", alpha, "influence attenuation coefficient");
    app.add_option("--seed", seed, "random seed (reserved for batch experiments)");
    app.add_option("--ladder", ladder_text, "override alpha ladder, e.g. 0,0.25,0.5,0.75,1");
    app.add_option("--scale", scale_name, "override value scale (L3, L5, L7)");

    auto* c_eval = app.add_subcommand("evaluate", "evaluate a hierarchical model");
    auto* c_sim = app.add_subcommand("simulate", "run the dynamic threat simulation");
    auto* c_infl = app.add_subcommand("influence", "cognitive-map influence analysis");
    c_infl->add_option("--from", from_vertex, "source vertex");
    c_infl->add_option("--to", to_vertex, "target vertex");
    c_infl->add_option("--steps", steps, "forecast steps (default: vertex count)");
    auto* c_infer = app.add_subcommand("infer", "fuzzy rule inference");
    c_infer->add_option("--input", input_flags, "crisp input var=value (repeatable)");
    auto* c_team = app.add_subcommand("assign-team", "candidate-task assignment search");
    auto* c_sel = app.add_subcommand("select-measures", "countermeasure portfolio selection");
    c_sel->add_option("--budget", budget, "ownership cost cap");
    auto* c_traffic = app.add_subcommand("traffic", "traffic anomaly pipeline");
    auto* c_plan = app.add_subcommand("plan", "closed-form planners (channels, choose, place)");

    CLI11_PARSE(app, argc, argv);

    try {
        ModelDocument doc = load_model(model_path);
        log_note("loaded " + model_path + " (mode " + doc.mode + ")");

        auto need_mode = [&](const char* mode) {
            if (doc.mode != mode) {
                throw LoadError("model mode is '" + doc.mode + "', command needs '" + mode + "'");
            }
        };
        if (c_eval->parsed()) {
            need_mode("evaluate");
            return run_evaluate(doc, sink);
        }
        if (c_sim->parsed()) {
            need_mode("simulate");
            return run_simulate(doc, sink);
        }
        if (c_infl->parsed()) {
            need_mode("influence");
            return run_influence(doc, sink, from_vertex, to_vertex, alpha, steps);
        }
        if (c_infer->parsed()) {
            need_mode("infer");
            return run_infer(doc, sink, input_flags);
        }
        if (c_team->parsed()) {
            need_mode("assign-team");
            return run_assign_team(doc, sink);
        }
        if (c_sel->parsed()) {
            need_mode("select-measures");
            return run_select_measures(doc, sink, budget);
        }
        if (c_traffic->parsed()) {
            need_mode("traffic");
            return run_traffic(doc, sink);
        }
        if (c_plan->parsed()) {
            need_mode("plan");
            return run_plan(doc, sink);
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
