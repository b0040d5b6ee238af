#include "pomlab/serialize.hpp"

#include <gtest/gtest.h>

#include "pomlab/error.hpp"

using namespace pomlab;

TEST(Serialize, BoxRoundTrip) {
    auto box = make_isotropic_box(0.3);
    auto back = box_from_json(box_to_json(box));
    EXPECT_EQ(back.probs(), box.probs());
}

TEST(Serialize, BoxRejectsWrongLengthAndSignaling) {
    EXPECT_THROW(box_from_json(parse_json(R"({"probs":[1,0,0]})")), ValidationError);
    EXPECT_THROW(box_from_json(parse_json(R"({"p":[]})")), ValidationError);
    Json signaling{{"probs", Json::array()}};
    // Bob's output copies x.
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    signaling["probs"].push_back(a == 0 && b == x ? 1.0 : 0.0);
                }
            }
        }
    }
    EXPECT_THROW(box_from_json(signaling), BoxValidationError);
}

TEST(Serialize, EveryBuiltinStrategyRoundTrips) {
    PomInstance inst(2);
    for (const auto &name : builtin_names()) {
        auto strat = builtin_strategy(name);
        auto text = strategy_to_json(strat).dump();
        auto back = strategy_from_json(parse_json(text));
        EXPECT_EQ(back.theory(), strat.theory()) << name;
        EXPECT_NEAR(pom_success(inst, back).average, pom_success(inst, strat).average, 1e-12) << name;
    }
}

TEST(Serialize, HandWrittenToyStrategy) {
    auto j = parse_json(R"({
        "theory": "toybit", "n": 2,
        "encoding": [[0.5,0.5,0,0],[0.5,0.5,0,0],[0,0,0.5,0.5],[0,0,0.5,0.5]],
        "decoding": [{"partition": "12|34", "flip": 0}, {"partition": "13|24"}]
    })");
    auto strat = strategy_from_json(j);
    EXPECT_EQ(strat.theory(), Theory::toybit);
    EXPECT_NEAR(pom_success(PomInstance(2), strat).average, 0.75, 1e-15);
}

TEST(Serialize, QuantumAxisShorthand) {
    auto j = parse_json(R"({
        "theory": "quantum",
        "encoding": [{"bloch":[0,0,1]},{"bloch":[0,0,1]},{"bloch":[0,0,-1]},{"bloch":[0,0,-1]}],
        "decoding": [{"observable": {"axis": [0,0,1]}, "plus_bit": 0},
                     {"observable": {"re": [[0,1],[1,0]]}, "plus_bit": 0}]
    })");
    auto g = pom_success(PomInstance(2), strategy_from_json(j));
    EXPECT_NEAR(g.average, 0.75, 1e-15);
}

TEST(Serialize, MalformedStrategies) {
    EXPECT_THROW(strategy_from_json(parse_json(R"({"n":2})")), ValidationError);
    EXPECT_THROW(strategy_from_json(parse_json(R"({"theory":"quantum","encoding":3,"decoding":[]})")),
                 ValidationError);
    EXPECT_THROW(strategy_from_json(parse_json(R"({"theory":"classical","alphabet":2,
        "encoding":[[1,0],[1,0],[1,0]],"decoding":[[0,1],[0,0]]})")),
                 ValidationError);
    EXPECT_THROW(parse_json("{not json"), ValidationError);
    EXPECT_THROW(load_json_file("/nonexistent/file.json"), ValidationError);
}

TEST(Serialize, GameResultSchema) {
    PomInstance inst(2);
    auto j = game_result_to_json(inst, pom_success(inst, quantum_optimal_strategy()));
    ASSERT_TRUE(j.contains("per_pair"));
    ASSERT_TRUE(j.contains("average"));
    ASSERT_TRUE(j.contains("parity_leak"));
    EXPECT_EQ(j["per_pair"].size(), 8u);
    EXPECT_EQ(j["per_pair"][3]["x"], "01");
    EXPECT_EQ(j["per_pair"][3]["y"], 2);
}

TEST(Serialize, RoundLogSchema) {
    auto j = round_log_to_json({10, 7, 3, 0.7});
    EXPECT_EQ(j.dump(), R"({"rounds":10,"successes":7,"seed":3,"empirical_rate":0.7})");
}

TEST(Serialize, NumberFormatting) {
    EXPECT_EQ(format_number(0.5 * (1 + 1 / std::sqrt(2.0))), "0.8535533906");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(round_numbers(Json(2.0 / 3.0)).dump(), "0.6666666667");
    EXPECT_EQ(round_numbers(Json::array({1, 0.1 + 0.2})).dump(), "[1,0.3]");
}
