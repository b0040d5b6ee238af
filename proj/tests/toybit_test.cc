#include "pomlab/toybit.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "pomlab/error.hpp"

using namespace pomlab;

namespace {

// Independent brute force over supports written as 4-bit masks of the ontic
// states {1,2,3,4}. Probabilities are tracked in halves so every comparison
// is exact.
int best_toy_score_in_sixteenths(bool parity_constraint, bool mixed_only) {
    std::vector<int> supports{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111};
    if (mixed_only) {
        supports = {0b1111};
    }
    const int cells[3] = {0b0011, 0b0101, 0b1001};
    auto halves_in_cell = [](int support, int cell) {
        int size = __builtin_popcount(support);
        return 2 * __builtin_popcount(support & cell) / size;
    };
    auto weight = [](int support, int k) {
        return (support >> k & 1) ? 4 / __builtin_popcount(support) : 0;
    };
    int best = -1;
    const std::size_t s = supports.size();
    for (std::size_t i0 = 0; i0 < s; ++i0) {
        for (std::size_t i1 = 0; i1 < s; ++i1) {
            for (std::size_t i2 = 0; i2 < s; ++i2) {
                for (std::size_t i3 = 0; i3 < s; ++i3) {
                    int enc[4] = {supports[i0], supports[i1], supports[i2], supports[i3]};
                    if (parity_constraint) {
                        bool ok = true;
                        for (int k = 0; k < 4; ++k) {
                            ok &= weight(enc[0], k) + weight(enc[3], k) == weight(enc[1], k) + weight(enc[2], k);
                        }
                        if (!ok) {
                            continue;
                        }
                    }
                    int total = 0;
                    for (int y = 0; y < 2; ++y) {
                        int best_y = 0;
                        for (int cell : cells) {
                            for (int flip = 0; flip < 2; ++flip) {
                                int score = 0;
                                for (int x = 0; x < 4; ++x) {
                                    int bit = (x >> (1 - y)) & 1;
                                    int guess_zero = halves_in_cell(enc[x], cell);
                                    int p_zero = flip ? 2 - guess_zero : guess_zero;
                                    score += bit == 0 ? p_zero : 2 - p_zero;
                                }
                                best_y = std::max(best_y, score);
                            }
                        }
                        total += best_y;
                    }
                    best = std::max(best, total);
                }
            }
        }
    }
    return best;
}

}  // namespace

TEST(Toy, MeasurementProbabilities) {
    auto s = EpistemicState::pure(1, 2);
    EXPECT_EQ(toy_measure(s, ToyMeasurement::split_12_34), (std::array<double, 2>{1.0, 0.0}));
    EXPECT_EQ(toy_measure(s, ToyMeasurement::split_13_24), (std::array<double, 2>{0.5, 0.5}));
    for (auto m : kToyMeasurements) {
        EXPECT_EQ(toy_measure(EpistemicState::mixed(), m), (std::array<double, 2>{0.5, 0.5}));
    }
}

TEST(Toy, KnowledgeBalanceRejectsSharpStates) {
    EXPECT_THROW(EpistemicState::from_distribution({1, 0, 0, 0}), ValidationError);
    EXPECT_THROW(EpistemicState::from_distribution({0.5, 0.25, 0.25, 0}), ValidationError);
    EXPECT_THROW(EpistemicState::pure(2, 2), ValidationError);
    EXPECT_EQ(EpistemicState::all().size(), 7u);
}

TEST(Toy, PartitionNamesRoundTrip) {
    for (auto m : kToyMeasurements) {
        EXPECT_EQ(parse_toy_measurement(to_string(m)), m);
    }
    EXPECT_THROW(parse_toy_measurement("12|43x"), ValidationError);
}

TEST(Toy, SteeringReproducesTheThreeDecompositions) {
    auto e1 = steer(ToyMeasurement::split_12_34);
    ASSERT_EQ(e1.size(), 2u);
    EXPECT_EQ(e1[0].probability, 0.5);
    EXPECT_EQ(e1[0].state, EpistemicState::pure(1, 2));
    EXPECT_EQ(e1[1].state, EpistemicState::pure(3, 4));

    auto e2 = steer(ToyMeasurement::split_13_24);
    EXPECT_EQ(e2[0].state, EpistemicState::pure(1, 3));
    EXPECT_EQ(e2[1].state, EpistemicState::pure(2, 4));

    auto e3 = steer(ToyMeasurement::split_14_23);
    EXPECT_EQ(e3[0].state, EpistemicState::pure(1, 4));
    EXPECT_EQ(e3[1].state, EpistemicState::pure(2, 3));
}

TEST(Toy, CorrelatedPairMarginalsAreMixed) {
    const OnticDistribution flat{0.25, 0.25, 0.25, 0.25};
    EXPECT_EQ(CorrelatedToyState::alice_marginal(), flat);
    EXPECT_EQ(CorrelatedToyState::bob_marginal(), flat);
}

TEST(Toy, DecompositionsAreOperationallyAndOnticallyEquivalent) {
    std::vector<Ensemble> preps;
    for (auto m : kToyMeasurements) {
        preps.push_back(steer(m));
    }
    auto report = noncontextuality_check(preps);
    EXPECT_TRUE(report.noncontextual);
    for (const auto &d : report.ontic) {
        EXPECT_EQ(d, (OnticDistribution{0.25, 0.25, 0.25, 0.25}));
    }

    std::vector<Ensemble> single{{{1.0, EpistemicState::mixed()}}};
    EXPECT_TRUE(noncontextuality_check(single).noncontextual);

    std::vector<Ensemble> malformed{{{1.0, EpistemicState::pure(1, 2)}}};
    EXPECT_THROW(noncontextuality_check(malformed), ValidationError);
}

TEST(ToyOracle, MatchesIndependentEnumeration) {
    EXPECT_EQ(best_toy_score_in_sixteenths(true, false), 12);
    auto r = toy_pom_oracle();
    EXPECT_EQ(r.value, 12.0 / 16.0);
}

TEST(ToyOracle, MixedOnlyCarriesNothing) {
    EXPECT_EQ(best_toy_score_in_sixteenths(true, true), 8);
    EXPECT_EQ(toy_pom_oracle({.parity_constraint = true, .mixed_only = true}).value, 0.5);
}

TEST(ToyOracle, DroppingParityConstraintStillCapsAtThreeQuarters) {
    // Every toy state is sharp for at most one partition, so one system
    // cannot answer both bits with certainty even without the constraint.
    EXPECT_EQ(best_toy_score_in_sixteenths(false, false), 12);
    EXPECT_EQ(toy_pom_oracle({.parity_constraint = false, .mixed_only = false}).value, 0.75);
}

TEST(ToyOracle, WitnessIsParityOblivious) {
    auto r = toy_pom_oracle();
    OnticDistribution even{};
    OnticDistribution odd{};
    for (int k = 0; k < 4; ++k) {
        even[k] = r.encoding[0].distribution()[k] + r.encoding[3].distribution()[k];
        odd[k] = r.encoding[1].distribution()[k] + r.encoding[2].distribution()[k];
    }
    EXPECT_EQ(even, odd);
}
