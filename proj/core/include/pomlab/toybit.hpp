#pragma once

// Spekkens' toy bit: four ontic states, epistemic states obeying the knowledge
// balance principle, the three two-cell measurements, and the perfectly
// correlated pair used for steering.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pomlab/tolerance.hpp"

namespace pomlab {

/// Ontic states are labelled 1..4; arrays below are indexed by label - 1.
using OnticDistribution = std::array<double, 4>;

class EpistemicState {
  public:
    /// Accepts only distributions uniform on a support of size 2 or 4.
    static EpistemicState from_distribution(const OnticDistribution &dist, const Tolerances &tol = kDefaultTolerances);
    /// The pure state a v b, with a != b in 1..4.
    static EpistemicState pure(int a, int b);
    /// 1 v 2 v 3 v 4.
    static EpistemicState mixed();
    /// The six pure states followed by the mixed state.
    static std::array<EpistemicState, 7> all();

    const OnticDistribution &distribution() const {
        return dist_;
    }
    bool is_pure() const;
    /// "1v2", "1v2v3v4", ...
    std::string label() const;

    bool operator==(const EpistemicState &) const = default;

  private:
    explicit EpistemicState(const OnticDistribution &dist) : dist_(dist) {
    }
    OnticDistribution dist_;
};

/// A split of {1,2,3,4} into two cells; cell 0 always contains ontic state 1.
enum class ToyMeasurement { split_12_34, split_13_24, split_14_23 };

inline constexpr std::array<ToyMeasurement, 3> kToyMeasurements{
    ToyMeasurement::split_12_34, ToyMeasurement::split_13_24, ToyMeasurement::split_14_23};

/// Which cell (0 or 1) each ontic state falls in.
std::array<int, 4> toy_cells(ToyMeasurement m);
std::string to_string(ToyMeasurement m);
/// Parses "12|34", "13|24" or "14|23".
ToyMeasurement parse_toy_measurement(const std::string &text);

/// Outcome k has probability equal to the mass on cell k.
std::array<double, 2> toy_measure(const EpistemicState &state, ToyMeasurement m);

/// The fixed pair state (1.1) v (2.2) v (3.3) v (4.4).
struct CorrelatedToyState {
    /// joint[i][j] = P(Alice ontic i+1, Bob ontic j+1).
    static std::array<std::array<double, 4>, 4> joint();
    static OnticDistribution alice_marginal();
    static OnticDistribution bob_marginal();
};

struct EnsembleMember {
    double probability;
    EpistemicState state;
};
using Ensemble = std::vector<EnsembleMember>;

/// Alice measures `m` on her half of the correlated pair; returns Bob's
/// conditional state for each of her outcomes.
Ensemble steer(ToyMeasurement m);

/// Sum of probability * distribution over the ensemble.
OnticDistribution ensemble_average(const Ensemble &ensemble);

struct NoncontextualityReport {
    bool noncontextual;
    std::vector<OnticDistribution> ontic;
};

/// Every ensemble must average to the mixed state. Reports the ontic
/// distribution each preparation induces and whether they all agree.
NoncontextualityReport noncontextuality_check(std::span<const Ensemble> preparations,
                                              const Tolerances &tol = kDefaultTolerances);

/// Bob's decoding for one bit: measure, then guess outcome xor flip.
struct ToyDecoder {
    ToyMeasurement measurement;
    int flip;

    bool operator==(const ToyDecoder &) const = default;
};

struct ToyOracleOptions {
    bool parity_constraint = true;
    bool mixed_only = false;
};

struct ToyOracleResult {
    double value;
    /// Indexed by x = 2 x1 + x2.
    std::array<EpistemicState, 4> encoding;
    std::array<ToyDecoder, 2> decoding;
};

/// Exhaustive 2-bit game maximum over deterministic encodings into the seven
/// valid epistemic states and all decodings (measurement, flip) per bit.
ToyOracleResult toy_pom_oracle(const ToyOracleOptions &options = {});

}  // namespace pomlab
