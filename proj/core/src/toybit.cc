#include "pomlab/toybit.hpp"

#include <cmath>

#include "pomlab/error.hpp"

namespace pomlab {

EpistemicState EpistemicState::from_distribution(const OnticDistribution &dist, const Tolerances &tol) {
    double total = 0;
    int support = 0;
    for (double p : dist) {
        if (p < -tol.probability) {
            throw ValidationError("epistemic state has a negative entry");
        }
        total += p;
        if (p > tol.probability) {
            ++support;
        }
    }
    if (std::abs(total - 1.0) > tol.probability) {
        throw ValidationError("epistemic state sums to " + format_real(total));
    }
    if (support != 2 && support != 4) {
        throw ValidationError("knowledge balance violated: support of size " + std::to_string(support));
    }
    double level = 1.0 / support;
    for (double p : dist) {
        if (p > tol.probability && std::abs(p - level) > tol.probability) {
            throw ValidationError("knowledge balance violated: distribution not uniform on its support");
        }
    }
    return EpistemicState(dist);
}

EpistemicState EpistemicState::pure(int a, int b) {
    if (a < 1 || a > 4 || b < 1 || b > 4 || a == b) {
        throw ValidationError("pure toy state needs two distinct ontic labels in 1..4");
    }
    OnticDistribution d{};
    d[a - 1] = 0.5;
    d[b - 1] = 0.5;
    return EpistemicState(d);
}

EpistemicState EpistemicState::mixed() {
    return EpistemicState({0.25, 0.25, 0.25, 0.25});
}

std::array<EpistemicState, 7> EpistemicState::all() {
    return {pure(1, 2), pure(3, 4), pure(1, 3), pure(2, 4), pure(1, 4), pure(2, 3), mixed()};
}

bool EpistemicState::is_pure() const {
    int support = 0;
    for (double p : dist_) {
        support += p > 0 ? 1 : 0;
    }
    return support == 2;
}

std::string EpistemicState::label() const {
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (dist_[k] > 0) {
            if (!out.empty()) {
                out += 'v';
            }
            out += static_cast<char>('1' + k);
        }
    }
    return out;
}

std::array<int, 4> toy_cells(ToyMeasurement m) {
    switch (m) {
        case ToyMeasurement::split_12_34:
            return {0, 0, 1, 1};
        case ToyMeasurement::split_13_24:
            return {0, 1, 0, 1};
        case ToyMeasurement::split_14_23:
            return {0, 1, 1, 0};
    }
    throw ValidationError("unknown toy measurement");
}

std::string to_string(ToyMeasurement m) {
    switch (m) {
        case ToyMeasurement::split_12_34:
            return "12|34";
        case ToyMeasurement::split_13_24:
            return "13|24";
        case ToyMeasurement::split_14_23:
            return "14|23";
    }
    return "?";
}

ToyMeasurement parse_toy_measurement(const std::string &text) {
    for (auto m : kToyMeasurements) {
        if (to_string(m) == text) {
            return m;
        }
    }
    throw ValidationError("unknown toy measurement '" + text + "'");
}

std::array<double, 2> toy_measure(const EpistemicState &state, ToyMeasurement m) {
    auto cells = toy_cells(m);
    std::array<double, 2> out{};
    for (int k = 0; k < 4; ++k) {
        out[cells[k]] += state.distribution()[k];
    }
    return out;
}

std::array<std::array<double, 4>, 4> CorrelatedToyState::joint() {
    std::array<std::array<double, 4>, 4> j{};
    for (int k = 0; k < 4; ++k) {
        j[k][k] = 0.25;
    }
    return j;
}

OnticDistribution CorrelatedToyState::alice_marginal() {
    OnticDistribution m{};
    auto j = joint();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            m[a] += j[a][b];
        }
    }
    return m;
}

OnticDistribution CorrelatedToyState::bob_marginal() {
    OnticDistribution m{};
    auto j = joint();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            m[b] += j[a][b];
        }
    }
    return m;
}

Ensemble steer(ToyMeasurement m) {
    auto cells = toy_cells(m);
    auto j = CorrelatedToyState::joint();
    Ensemble out;
    for (int outcome = 0; outcome < 2; ++outcome) {
        OnticDistribution bob{};
        double p = 0;
        for (int a = 0; a < 4; ++a) {
            if (cells[a] != outcome) {
                continue;
            }
            for (int b = 0; b < 4; ++b) {
                bob[b] += j[a][b];
                p += j[a][b];
            }
        }
        for (double &v : bob) {
            v /= p;
        }
        out.push_back({p, EpistemicState::from_distribution(bob)});
    }
    return out;
}

OnticDistribution ensemble_average(const Ensemble &ensemble) {
    OnticDistribution avg{};
    for (const auto &member : ensemble) {
        for (int k = 0; k < 4; ++k) {
            avg[k] += member.probability * member.state.distribution()[k];
        }
    }
    return avg;
}

NoncontextualityReport noncontextuality_check(std::span<const Ensemble> preparations, const Tolerances &tol) {
    const auto mixed = EpistemicState::mixed().distribution();
    NoncontextualityReport report{true, {}};
    for (const auto &ensemble : preparations) {
        double total = 0;
        for (const auto &member : ensemble) {
            if (member.probability < 0) {
                throw ValidationError("ensemble has a negative weight");
            }
            total += member.probability;
        }
        auto avg = ensemble_average(ensemble);
        bool ok = std::abs(total - 1.0) <= tol.probability;
        for (int k = 0; k < 4; ++k) {
            ok = ok && std::abs(avg[k] - mixed[k]) <= tol.probability;
        }
        if (!ok) {
            throw ValidationError("ensemble does not average to the mixed state 1v2v3v4");
        }
        report.ontic.push_back(avg);
    }
    for (const auto &dist : report.ontic) {
        for (int k = 0; k < 4; ++k) {
            if (std::abs(dist[k] - report.ontic.front()[k]) > tol.probability) {
                report.noncontextual = false;
            }
        }
    }
    return report;
}

ToyOracleResult toy_pom_oracle(const ToyOracleOptions &options) {
    const auto alphabet = EpistemicState::all();
    const int first = options.mixed_only ? 6 : 0;

    // Outcome-0 probability of every (state, measurement) pair.
    std::array<std::array<double, 3>, 7> p0{};
    for (int s = 0; s < 7; ++s) {
        for (int m = 0; m < 3; ++m) {
            p0[s][m] = toy_measure(alphabet[s], kToyMeasurements[m])[0];
        }
    }

    ToyOracleResult best{-1.0, {alphabet[6], alphabet[6], alphabet[6], alphabet[6]}, {}};
    std::array<int, 4> enc{};
    for (enc[0] = first; enc[0] < 7; ++enc[0]) {
        for (enc[1] = first; enc[1] < 7; ++enc[1]) {
            for (enc[2] = first; enc[2] < 7; ++enc[2]) {
                for (enc[3] = first; enc[3] < 7; ++enc[3]) {
                    if (options.parity_constraint) {
                        // x = 00, 11 have even parity; 01, 10 odd.
                        const auto &d00 = alphabet[enc[0]].distribution();
                        const auto &d01 = alphabet[enc[1]].distribution();
                        const auto &d10 = alphabet[enc[2]].distribution();
                        const auto &d11 = alphabet[enc[3]].distribution();
                        bool oblivious = true;
                        for (int k = 0; k < 4; ++k) {
                            oblivious = oblivious && d00[k] + d11[k] == d01[k] + d10[k];
                        }
                        if (!oblivious) {
                            continue;
                        }
                    }
                    // Each bit's decoder is chosen independently.
                    double total = 0;
                    std::array<ToyDecoder, 2> decoders{};
                    for (int y = 0; y < 2; ++y) {
                        double best_y = -1;
                        for (int m = 0; m < 3; ++m) {
                            for (int flip = 0; flip < 2; ++flip) {
                                double score = 0;
                                for (int x = 0; x < 4; ++x) {
                                    int bit = y == 0 ? (x >> 1) & 1 : x & 1;
                                    double q0 = p0[enc[x]][m];
                                    // guess = outcome xor flip
                                    score += (bit == flip) ? q0 : 1.0 - q0;
                                }
                                if (score > best_y) {
                                    best_y = score;
                                    decoders[y] = {kToyMeasurements[m], flip};
                                }
                            }
                        }
                        total += best_y;
                    }
                    double value = total / 8.0;
                    if (value > best.value) {
                        best.value = value;
                        for (int x = 0; x < 4; ++x) {
                            best.encoding[x] = alphabet[enc[x]];
                        }
                        best.decoding = decoders;
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace pomlab
