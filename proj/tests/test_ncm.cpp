#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riskfuzz/ncm.hpp"
#include "riskfuzz/weights.hpp"

#include <cmath>
#include <random>

using namespace riskfuzz;

namespace {

CognitiveModel integral_competence_model() {
    LinguisticScale l5 = LinguisticScale::standard(5);
    CognitiveModel m(l5);
    m.add_node({"K", 0, {}, Convolution::Multiplicative});
    m.add_node({"UK1", 1, l5.etalon("ВС"), Convolution::Multiplicative});
    m.add_node({"UK2", 1, l5.etalon("ВС"), Convolution::Multiplicative});
    m.add_node({"UK3", 1, l5.etalon("С"), Convolution::Multiplicative});
    m.add_edge({"UK1", "K", 0.25, false});
    m.add_edge({"UK2", "K", 0.25, false});
    m.add_edge({"UK3", "K", 0.5, false});
    return m;
}

} // namespace

TEST_CASE("model validation catches broken structure") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    SUBCASE("two roots") {
        CognitiveModel m(l5);
        m.add_node({"a", 0, l5.etalon("С"), Convolution::Additive});
        m.add_node({"b", 0, l5.etalon("С"), Convolution::Additive});
        CHECK_THROWS_AS(m.validate(), ModelError);
    }
    SUBCASE("edge skipping a level") {
        CognitiveModel m(l5);
        m.add_node({"root", 0, {}, Convolution::Additive});
        m.add_node({"leaf", 2, l5.etalon("С"), Convolution::Additive});
        m.add_edge({"leaf", "root", 1.0, false});
        CHECK_THROWS_AS(m.validate(), ModelError);
    }
    SUBCASE("weights must sum to 1 for additive and multiplicative nodes") {
        CognitiveModel m(l5);
        m.add_node({"root", 0, {}, Convolution::Additive});
        m.add_node({"a", 1, l5.etalon("С"), Convolution::Additive});
        m.add_node({"b", 1, l5.etalon("В"), Convolution::Additive});
        m.add_edge({"a", "root", 0.5, false});
        m.add_edge({"b", "root", 0.4, false});
        CHECK_THROWS_AS(m.validate(), ModelError);
    }
    SUBCASE("unvalued leaf") {
        CognitiveModel m(l5);
        m.add_node({"root", 0, {}, Convolution::Additive});
        m.add_node({"a", 1, {}, Convolution::Additive});
        m.add_edge({"a", "root", 1.0, false});
        CHECK_THROWS_AS(m.validate(), ModelError);
    }
    SUBCASE("duplicate node id") {
        CognitiveModel m(l5);
        m.add_node({"a", 0, {}, Convolution::Additive});
        CHECK_THROWS_AS(m.add_node({"a", 1, {}, Convolution::Additive}), ModelError);
    }
}

TEST_CASE("single child with weight 1 passes through unchanged") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    for (Convolution conv : {Convolution::Multiplicative, Convolution::Additive,
                             Convolution::Max, Convolution::Min}) {
        CognitiveModel m(l5);
        m.add_node({"root", 0, {}, conv});
        m.add_node({"leaf", 1, l5.etalon("ВС"), conv});
        m.add_edge({"leaf", "root", 1.0, false});
        auto res = evaluate(m);
        const FuzzyNumber& v = res.at("root").value;
        CHECK(v.left_support() == doctest::Approx(0.55));
        CHECK(v.right_support() == doctest::Approx(0.85));
        CHECK(res.at("root").recognition.best_label == "ВС");
    }
}

TEST_CASE("integral competence example: root recognized as С near 0.56") {
    CognitiveModel m = integral_competence_model();
    auto res = evaluate(m);
    const Recognition& r = res.at("K").recognition;
    CHECK(r.best_label == "С");
    CHECK(r.omegas[2] == doctest::Approx(0.56).epsilon(0.1));
    CHECK(r.omegas[3] == doctest::Approx(0.44).epsilon(0.12));
}

TEST_CASE("multiplicative convolution with all-equal children equals the child") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    for (const char* label : {"Н", "НС", "С", "ВС", "В"}) {
        CognitiveModel m(l5);
        m.add_node({"root", 0, {}, Convolution::Multiplicative});
        for (int i = 0; i < 3; ++i) {
            std::string id = "c" + std::to_string(i);
            m.add_node({id, 1, l5.etalon(label), Convolution::Multiplicative});
            m.add_edge({id, "root", (i == 0) ? 0.5 : 0.25, false});
        }
        auto res = evaluate(m);
        const FuzzyNumber& v = res.at("root").value;
        const FuzzyNumber& e = l5.etalon(label);
        for (std::size_t i = 0; i < v.cuts().size(); ++i) {
            CHECK(v.cuts()[i].lo == doctest::Approx(e.cuts()[i].lo).epsilon(1e-9));
            CHECK(v.cuts()[i].hi == doctest::Approx(e.cuts()[i].hi).epsilon(1e-9));
        }
    }
}

TEST_CASE("education-quality model labels under 3-level reporting") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    LinguisticScale l3 = LinguisticScale::standard(3);
    CognitiveModel m(l5, l3);
    m.add_node({"K0", 0, {}, Convolution::Multiplicative});
    for (const char* k : {"K1", "K2", "K3"}) {
        m.add_node({k, 1, {}, Convolution::Multiplicative});
    }
    for (const char* u : {"U1", "U2", "U3"}) {
        m.add_node({u, 2, {}, Convolution::Multiplicative});
    }
    m.add_node({"N1", 3, l5.etalon("С"), Convolution::Multiplicative});
    m.add_node({"N2", 3, l5.etalon("Н"), Convolution::Multiplicative});
    m.add_node({"N3", 3, l5.etalon("В"), Convolution::Multiplicative});
    m.add_node({"N4", 3, l5.etalon("С"), Convolution::Multiplicative});
    m.add_node({"N5", 3, l5.etalon("С"), Convolution::Multiplicative});
    m.add_node({"N6", 3, l5.etalon("Н"), Convolution::Multiplicative});
    m.add_node({"N7", 3, l5.etalon("С"), Convolution::Multiplicative});
    m.add_node({"N8", 3, l5.etalon("В"), Convolution::Multiplicative});
    // Fishburn weights of the published preference systems
    m.add_edge({"K1", "K0", 2.0 / 4.0, false});
    m.add_edge({"K2", "K0", 1.0 / 4.0, false});
    m.add_edge({"K3", "K0", 1.0 / 4.0, false});
    m.add_edge({"U1", "K1", 2.0 / 5.0, false});
    m.add_edge({"U2", "K1", 2.0 / 5.0, false});
    m.add_edge({"U3", "K1", 1.0 / 5.0, false});
    m.add_edge({"U1", "K2", 3.0 / 6.0, false});
    m.add_edge({"U2", "K2", 2.0 / 6.0, false});
    m.add_edge({"U3", "K2", 1.0 / 6.0, false});
    m.add_edge({"U1", "K3", 2.0 / 5.0, false});
    m.add_edge({"U3", "K3", 2.0 / 5.0, false});
    m.add_edge({"U2", "K3", 1.0 / 5.0, false});
    m.add_edge({"N1", "U1", 2.0 / 5.0, false});
    m.add_edge({"N5", "U1", 2.0 / 5.0, false});
    m.add_edge({"N8", "U1", 1.0 / 5.0, false});
    m.add_edge({"N3", "U2", 2.0 / 5.0, false});
    m.add_edge({"N6", "U2", 2.0 / 5.0, false});
    m.add_edge({"N2", "U2", 1.0 / 5.0, false});
    m.add_edge({"N4", "U3", 2.0 / 4.0, false});
    m.add_edge({"N7", "U3", 1.0 / 4.0, false});
    m.add_edge({"N8", "U3", 1.0 / 4.0, false});

    auto res = evaluate(m);
    CHECK(res.at("K0").recognition.best_label == "Н");
    CHECK(res.at("U1").recognition.best_label == "С");
    CHECK(res.at("U1").recognition.best_omega() == doctest::Approx(0.96).epsilon(0.08));
    CHECK(res.at("U3").recognition.best_label == "С");
    CHECK(res.at("U3").recognition.best_omega() == doctest::Approx(0.95).epsilon(0.08));
}

TEST_CASE("inversion flags flip the monotone direction") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    CognitiveModel m(l5);
    m.add_node({"root", 0, {}, Convolution::Multiplicative});
    m.add_node({"protect", 1, l5.etalon("В"), Convolution::Multiplicative});
    m.add_edge({"protect", "root", 1.0, true});
    auto res = evaluate(m);
    // a high protection level inverts to a low residual level
    CHECK(res.at("root").recognition.best_label == "Н");
}

TEST_CASE("evaluate monotonicity on random three-level models") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LinguisticScale l5 = LinguisticScale::standard(5);
    const char* labels[5] = {"Н", "НС", "С", "ВС", "В"};
    for (int it = 0; it < 60; ++it) {
        Convolution conv = static_cast<Convolution>(rng() % 4);
        std::size_t leaves = 2 + rng() % 3;
        bool invert_one = (rng() % 2) == 1;
        std::size_t inverted = rng() % leaves;
        std::vector<int> level_idx(leaves);
        CognitiveModel m(l5);
        m.add_node({"root", 0, {}, conv});
        std::vector<double> w(leaves);
        double ws = 0.0;
        for (std::size_t i = 0; i < leaves; ++i) {
            w[i] = 0.1 + u(rng);
            ws += w[i];
        }
        for (std::size_t i = 0; i < leaves; ++i) {
            level_idx[i] = static_cast<int>(rng() % 4); // leave room to raise
            std::string id = "leaf" + std::to_string(i);
            m.add_node({id, 1, l5.etalon(labels[level_idx[i]]), conv});
            m.add_edge({id, "root", w[i] / ws, invert_one && i == inverted});
        }
        double base = centroid(evaluate(m).at("root").value);
        // raise one leaf by one level
        std::size_t target = rng() % leaves;
        CognitiveModel m2 = m;
        m2.set_value("leaf" + std::to_string(target), std::string(labels[level_idx[target] + 1]));
        double raised = centroid(evaluate(m2).at("root").value);
        if (invert_one && target == inverted) {
            REQUIRE(raised <= base + 1e-9);
        } else {
            REQUIRE(raised >= base - 1e-9);
        }
    }
}

TEST_CASE("weakest-link behavior of product-style aggregation") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    // with normalized weights the root is a generalized mean: its centroid
    // never exceeds the best child's centroid
    std::mt19937 rng(99);
    const char* labels[5] = {"Н", "НС", "С", "ВС", "В"};
    for (int it = 0; it < 40; ++it) {
        std::size_t leaves = 2 + rng() % 3;
        CognitiveModel m(l5);
        m.add_node({"root", 0, {}, Convolution::Multiplicative});
        double max_child_centroid = 0.0;
        int min_label = 4;
        for (std::size_t i = 0; i < leaves; ++i) {
            int li = static_cast<int>(rng() % 5);
            min_label = std::min(min_label, li);
            std::string id = "leaf" + std::to_string(i);
            m.add_node({id, 1, l5.etalon(labels[li]), Convolution::Multiplicative});
            m.add_edge({id, "root", 1.0 / static_cast<double>(leaves), false});
            max_child_centroid = std::max(max_child_centroid, centroid(l5.etalon(labels[li])));
        }
        auto res = evaluate(m);
        REQUIRE(centroid(res.at("root").value) <= max_child_centroid + 1e-9);
        // the plain product (unnormalized exponents) obeys the strict
        // weakest-link rule: never above the minimal child label
        FuzzyNumber prod = l5.etalon(labels[min_label]);
        bool first = true;
        FuzzyNumber acc;
        for (const auto& n : m.nodes()) {
            if (n.level == 1) {
                acc = first ? *n.value : mul(acc, *n.value);
                first = false;
            }
        }
        Recognition r = recognize(acc, l5);
        REQUIRE(static_cast<int>(r.best_index) <= min_label);
    }
}

TEST_CASE("criterion extrapolation") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    SUBCASE("neutral trend freezes the level") {
        CriterionRow row{"K1", l5.etalon("С"), 0, 0.3, 5.0, 1.0};
        FuzzyNumber v = extrapolate_criterion(row, 12.0);
        CHECK(v.left_support() == doctest::Approx(0.35));
        CHECK(v.right_support() == doctest::Approx(0.65));
    }
    SUBCASE("direct arithmetic on a crisp level") {
        CriterionRow row{"K1", FuzzyNumber::singleton(0.3), +1, 0.2, 10.0, 1.0};
        CHECK(centroid(extrapolate_criterion(row, 10.0)) == doctest::Approx(0.5));
    }
    SUBCASE("clamping at the carrier edge") {
        CriterionRow row{"K1", FuzzyNumber::singleton(0.95), +1, 0.2, 1.0, 1.0};
        CHECK(centroid(extrapolate_criterion(row, 1.0)) == doctest::Approx(1.0));
    }
    SUBCASE("negative time is rejected") {
        CriterionRow row{"K1", l5.etalon("С"), 0, 0.0, 1.0, 1.0};
        CHECK_THROWS_AS(extrapolate_criterion(row, -1.0), DomainError);
    }
}

TEST_CASE("preventive and liquidation matrix algebra") {
    SUBCASE("all-one preventive coefficients keep the influence") {
        EffectMatrix n = EffectMatrix::crisp({{0.8, 0.4}, {0.2, 0.6}});
        EffectMatrix z = EffectMatrix::crisp({{1.0, 1.0}, {1.0, 1.0}});
        EffectMatrix r = apply_preventive(n, {z});
        CHECK(centroid(r.at(0, 0)) == doctest::Approx(0.8));
        CHECK(centroid(r.at(1, 1)) == doctest::Approx(0.6));
    }
    SUBCASE("all-zero preventive coefficients kill the influence") {
        EffectMatrix n = EffectMatrix::crisp({{0.8}});
        EffectMatrix z = EffectMatrix::crisp({{0.0}});
        EffectMatrix r = apply_preventive(n, {z});
        CHECK(centroid(r.at(0, 0)) == doctest::Approx(0.0));
    }
    SUBCASE("strongest preventive matrix wins per cell") {
        EffectMatrix n = EffectMatrix::crisp({{0.8}});
        EffectMatrix z1 = EffectMatrix::crisp({{0.5}});
        EffectMatrix z2 = EffectMatrix::crisp({{0.25}});
        EffectMatrix r = apply_preventive(n, {z1, z2});
        CHECK(centroid(r.at(0, 0)) == doctest::Approx(0.4));
    }
    SUBCASE("shape mismatch") {
        EffectMatrix n = EffectMatrix::crisp({{0.8}});
        EffectMatrix z = EffectMatrix::crisp({{0.5, 0.5}});
        CHECK_THROWS_AS(apply_preventive(n, {z}), ModelError);
    }
    SUBCASE("loss and liquidation") {
        EffectMatrix safe = EffectMatrix::crisp({{0.9}});
        EffectMatrix cur = EffectMatrix::crisp({{0.5}});
        EffectMatrix liq = EffectMatrix::crisp({{0.5}});
        auto [q, qhat] = loss_and_liquidation(safe, cur, liq);
        CHECK(centroid(q.at(0, 0)) == doctest::Approx(0.4));
        CHECK(centroid(qhat.at(0, 0)) == doctest::Approx(0.2));
        // identical matrices give a zero loss
        auto [q0, q0hat] = loss_and_liquidation(safe, safe, liq);
        CHECK(centroid(q0.at(0, 0)) == doctest::Approx(0.0).epsilon(1e-12));
        // unit liquidation keeps the loss
        EffectMatrix unit = EffectMatrix::crisp({{1.0}});
        auto [q1, q1hat] = loss_and_liquidation(safe, cur, unit);
        CHECK(centroid(q1hat.at(0, 0)) == doctest::Approx(centroid(q1.at(0, 0))));
    }
}

namespace {

DynamicModel crisp_scenario() {
    DynamicModel dm;
    dm.attack_threshold = FuzzyNumber::singleton(0.25);
    dm.incident_critical_time = 2.0;
    dm.time_step = 1.0;
    dm.horizon = 6.0;
    dm.measures["shield"] = FuzzyNumber::singleton(0.5);
    dm.measures["patch"] = FuzzyNumber::singleton(1.0);
    AssetBlock asset;
    asset.id = "core";
    asset.rollup_weight = 1.0;
    ThreatBlock th;
    th.id = "t1";
    th.base_probability = FuzzyNumber::singleton(0.5);
    VulnerabilityEntry v;
    v.id = "v1";
    v.level = FuzzyNumber::singleton(0.6);
    v.integration_weight = 1.0;
    th.vulnerabilities.push_back(v);
    th.damping.push_back({"damp", FuzzyNumber::singleton(0.5), 1.0, 1.0, 4.0});
    asset.threats.push_back(th);
    ServiceBlock sv;
    sv.id = "availability";
    sv.rollup_weight = 1.0;
    sv.attack_weights = {{"t1", 1.0}};
    asset.services.push_back(sv);
    dm.assets.push_back(asset);
    return dm;
}

} // namespace

TEST_CASE("simulation identities") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    SUBCASE("measures at level 0 leave threats and vulnerabilities unchanged") {
        DynamicModel dm = crisp_scenario();
        dm.measures["off"] = FuzzyNumber::singleton(0.0);
        dm.assets[0].threats[0].protections = {{"off", 1.0}};
        dm.assets[0].threats[0].vulnerabilities[0].protections = {{"off", 1.0}};
        dm.assets[0].threats[0].damping.clear();
        SimulationResult res = simulate(dm, l5);
        for (const TraceRow& row : res.rows) {
            if (row.kind == "residual-vulnerability") {
                REQUIRE(row.centroid_value == doctest::Approx(0.6).epsilon(1e-12));
            }
            if (row.kind == "residual-threat") {
                REQUIRE(row.centroid_value == doctest::Approx(0.5).epsilon(1e-12));
            }
        }
    }
    SUBCASE("a full-strength protection zeroes the vulnerability") {
        DynamicModel dm = crisp_scenario();
        dm.assets[0].threats[0].vulnerabilities[0].protections = {{"patch", 1.0}};
        SimulationResult res = simulate(dm, l5);
        for (const TraceRow& row : res.rows) {
            if (row.kind == "residual-vulnerability") {
                REQUIRE(row.centroid_value == doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
    SUBCASE("crisp attack level and damping follow scalar arithmetic") {
        DynamicModel dm = crisp_scenario();
        SimulationResult res = simulate(dm, l5);
        // A = 0.5 * 0.6 = 0.30 > 0.25 -> incident at t = 0; damping window
        // [1, 4) multiplies by Inv(0.5) = 0.5
        for (const TraceRow& row : res.rows) {
            if (row.kind != "residual-attack") {
                continue;
            }
            if (row.time < 1.0 || row.time >= 4.0) {
                REQUIRE(row.centroid_value == doctest::Approx(0.30).epsilon(1e-9));
            } else {
                REQUIRE(row.centroid_value == doctest::Approx(0.15).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("simulation trace values stay on the unit carrier") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    DynamicModel dm = crisp_scenario();
    dm.assets[0].threats[0].vulnerabilities[0].amplification_weight = 0.8;
    dm.assets[0].services[0].recovery.push_back(
        {"shield", FuzzyNumber::singleton(0.5), 1.0, 2.0, 5.0});
    SimulationResult res = simulate(dm, l5);
    for (const TraceRow& row : res.rows) {
        REQUIRE(row.value.left_support() >= -1e-12);
        REQUIRE(row.value.right_support() <= 1.0 + 1e-12);
    }
}

TEST_CASE("simulation rejects broken annotations") {
    LinguisticScale l5 = LinguisticScale::standard(5);
    SUBCASE("weights that do not sum to 1") {
        DynamicModel dm = crisp_scenario();
        dm.assets[0].threats[0].vulnerabilities[0].integration_weight = 0.4;
        CHECK_THROWS_AS(simulate(dm, l5), ModelError);
    }
    SUBCASE("negative window times") {
        DynamicModel dm = crisp_scenario();
        dm.assets[0].threats[0].damping[0].start_delay = -1.0;
        CHECK_THROWS_AS(simulate(dm, l5), ModelError);
    }
    SUBCASE("unknown measure reference") {
        DynamicModel dm = crisp_scenario();
        dm.assets[0].threats[0].protections = {{"ghost", 1.0}};
        CHECK_THROWS_AS(simulate(dm, l5), ModelError);
    }
}
