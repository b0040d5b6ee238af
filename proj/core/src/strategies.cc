#include <cmath>
#include <numbers>

#include "pomlab/error.hpp"
#include "pomlab/parallel.hpp"
#include "pomlab/pomgame.hpp"
#include "pomlab/rng.hpp"

namespace pomlab {

namespace {

Observable dichotomic_combo(const Matrix &a, const Matrix &b, double sign) {
    return Observable::dichotomic((a + b * Complex(sign)) * Complex(1.0 / std::numbers::sqrt2));
}

const std::vector<std::string> kBuiltinNames{
    "quantum_optimal", "boxworld_optimal", "classical_single_bit:1", "classical_single_bit:2",
    "remote_state_prep", "pr_correlation",
};

}  // namespace

PomStrategy quantum_optimal_strategy() {
    QuantumStrategy s;
    for (BlochVector r : {BlochVector{1, 0, 0}, BlochVector{0, 0, 1}, BlochVector{0, 0, -1}, BlochVector{-1, 0, 0}}) {
        s.encoding.push_back(density_from_bloch(r));
    }
    s.decoding.push_back({dichotomic_combo(pauli::X(), pauli::Z(), 1.0), 0});
    s.decoding.push_back({dichotomic_combo(pauli::X(), pauli::Z(), -1.0), 0});
    return {2, std::move(s)};
}

PomStrategy boxworld_optimal_strategy() {
    BoxWorldStrategy s;
    s.encoding = {GBitState::from_coordinates(1, 1), GBitState::from_coordinates(1, 0),
                  GBitState::from_coordinates(0, 1), GBitState::from_coordinates(0, 0)};
    s.decoding = {{0, 0}, {1, 0}};
    return {2, std::move(s)};
}

PomStrategy classical_single_bit_strategy(int bit) {
    if (bit != 1 && bit != 2) {
        throw ValidationError("classical_single_bit needs bit 1 or 2");
    }
    PomInstance inst(2);
    ClassicalStrategy s;
    s.alphabet = 2;
    for (std::uint32_t x = 0; x < 4; ++x) {
        int m = inst.bit(x, bit);
        s.encoding.push_back({m == 0 ? 1.0 : 0.0, m == 1 ? 1.0 : 0.0});
    }
    for (int y = 1; y <= 2; ++y) {
        s.decoding.push_back(y == bit ? std::vector<int>{0, 1} : std::vector<int>{0, 0});
    }
    return {2, std::move(s)};
}

PomStrategy remote_state_prep_strategy() {
    auto singlet = PureState::normalized({0, 1, -1, 0});
    EntangledStrategy s{DensityOperator::from_pure(singlet), {}, {}, {pauli::I(), pauli::Y()}, {}};
    auto z = Observable::dichotomic(pauli::Z());
    auto x = Observable::dichotomic(pauli::X());
    // Alice's outcome k leaves Bob anti-aligned with her result, so the
    // target (+z, +x, -x, -z) is reached on k = 1 for x1 = 0 and on k = 0
    // for x1 = 1.
    s.alice = {z, x, x, z};
    s.message = {{{1, 0}}, {{1, 0}}, {{0, 1}}, {{0, 1}}};
    s.decoding.push_back({dichotomic_combo(pauli::Z(), pauli::X(), 1.0), 0});
    s.decoding.push_back({dichotomic_combo(pauli::Z(), pauli::X(), -1.0), 0});
    return {2, std::move(s)};
}

PomStrategy correlation_protocol(const NSBox &box) {
    CorrelationStrategy s{box, {}, {}, {}, {}};
    PomInstance inst(2);
    for (std::uint32_t x = 0; x < 4; ++x) {
        int x1 = inst.bit(x, 1);
        s.alice_input[x] = x1 ^ inst.bit(x, 2);
        s.message[x] = {x1, x1 ^ 1};
    }
    for (int y = 0; y < 2; ++y) {
        s.bob_input[y] = y;
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                s.answer[y][b][c] = b ^ c;
            }
        }
    }
    return {2, std::move(s)};
}

std::vector<std::string> builtin_names() {
    return kBuiltinNames;
}

PomStrategy builtin_strategy(const std::string &name) {
    if (name == "quantum_optimal") {
        return quantum_optimal_strategy();
    }
    if (name == "boxworld_optimal") {
        return boxworld_optimal_strategy();
    }
    if (name == "classical_single_bit" || name == "classical_single_bit:1") {
        return classical_single_bit_strategy(1);
    }
    if (name == "classical_single_bit:2") {
        return classical_single_bit_strategy(2);
    }
    if (name == "remote_state_prep") {
        return remote_state_prep_strategy();
    }
    if (name == "pr_correlation") {
        return correlation_protocol(make_pr_box());
    }
    throw ValidationError("unknown built-in strategy '" + name + "'");
}

RoundLog run_rounds(const PomInstance &inst, const PomStrategy &strat, std::uint64_t rounds, std::uint64_t seed,
                    unsigned threads) {
    const auto table = outcome_table(inst, strat);
    const int n = inst.n();
    const std::uint64_t chunks = (rounds + kRoundChunk - 1) / kRoundChunk;
    std::vector<std::uint64_t> wins(chunks, 0);

    parallel_for(chunks, resolve_thread_count(threads), [&](std::size_t c) {
        Rng rng(derive_seed(seed, c));
        std::uint64_t count = std::min<std::uint64_t>(kRoundChunk, rounds - c * kRoundChunk);
        std::uint64_t local = 0;
        for (std::uint64_t r = 0; r < count; ++r) {
            auto x = static_cast<std::uint32_t>(rng.next() >> (64 - n));
            int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            const auto &branches = table[x][y];
            double u = rng.uniform();
            int guess = branches.back().guess;
            for (const auto &branch : branches) {
                if (u < branch.probability) {
                    guess = branch.guess;
                    break;
                }
                u -= branch.probability;
            }
            local += guess == inst.bit(x, y + 1) ? 1 : 0;
        }
        wins[c] = local;
    });

    RoundLog log;
    log.rounds = rounds;
    log.seed = seed;
    for (auto w : wins) {
        log.successes += w;
    }
    log.empirical_rate = rounds == 0 ? 0.0 : static_cast<double>(log.successes) / static_cast<double>(rounds);
    return log;
}

}  // namespace pomlab
