#pragma once

// The parity-oblivious multiplexing game.
//
// Alice receives x in {0,1}^n, Bob receives y in {1..n} and must output x_y.
// Strings are indexed as integers with x_1 the most significant bit, so for
// n = 2 the index order is 00, 01, 10, 11. Whatever Alice transmits must carry
// no information about any parity x.s with |s| >= 2.

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pomlab/boxworld.hpp"
#include "pomlab/nsbox.hpp"
#include "pomlab/qcore.hpp"
#include "pomlab/tolerance.hpp"
#include "pomlab/toybit.hpp"

namespace pomlab {

class PomInstance {
  public:
    /// n in [2, 12].
    explicit PomInstance(int n);

    int n() const {
        return n_;
    }
    std::uint32_t num_strings() const {
        return 1u << n_;
    }
    /// All s with Hamming weight >= 2; 2^n - n - 1 of them.
    const std::vector<std::uint32_t> &parity_set() const {
        return parity_set_;
    }
    /// x_y for y in 1..n.
    int bit(std::uint32_t x, int y) const {
        return static_cast<int>((x >> (n_ - y)) & 1u);
    }
    /// "01...".
    std::string label(std::uint32_t x) const;

  private:
    int n_;
    std::vector<std::uint32_t> parity_set_;
};

/// s-parity of x.
int parity(std::uint32_t x, std::uint32_t s);

enum class Theory { classical, quantum, boxworld, toybit, correlation, entangled };

std::string to_string(Theory theory);
Theory parse_theory(const std::string &text);

/// Stochastic encoding p(m|x) and deterministic decodings d_y(m).
struct ClassicalStrategy {
    std::size_t alphabet = 0;
    /// encoding[x][m]
    std::vector<std::vector<double>> encoding;
    /// decoding[y-1][m] in {0, 1}
    std::vector<std::vector<int>> decoding;
};

/// Measure the dichotomic observable; outcome +1 means guess plus_bit.
struct QuantumDecoder {
    Observable observable;
    int plus_bit = 0;
};

struct QuantumStrategy {
    std::vector<DensityOperator> encoding;
    std::vector<QuantumDecoder> decoding;
};

/// Feed `input` to the g-bit; guess output a xor flip.
struct BoxWorldDecoder {
    int input = 0;
    int flip = 0;
};

struct BoxWorldStrategy {
    std::vector<GBitState> encoding;
    std::vector<BoxWorldDecoder> decoding;
};

struct ToyStrategy {
    std::vector<EpistemicState> encoding;
    std::vector<ToyDecoder> decoding;
};

/// Correlation-assisted scheme (n = 2): Alice inputs alice_input[x] into the
/// shared box, obtains a, and sends the bit message[x][a]; Bob inputs
/// bob_input[y-1], obtains b, and answers answer[y-1][b][c].
struct CorrelationStrategy {
    NSBox box;
    std::array<int, 4> alice_input{};
    std::array<std::array<int, 2>, 4> message{};
    std::array<int, 2> bob_input{};
    std::array<std::array<std::array<int, 2>, 2>, 2> answer{};
};

/// Entanglement-assisted scheme: Alice measures alice[x] on her half of the
/// shared state, obtains k, and sends the flag message[x][k]; Bob applies
/// correction[flag] to his half and decodes as in the prepare-and-measure
/// scheme.
struct EntangledStrategy {
    DensityOperator shared;
    std::vector<Observable> alice;
    std::vector<std::array<int, 2>> message;
    std::array<Matrix, 2> correction;
    std::vector<QuantumDecoder> decoding;
};

struct PomStrategy {
    int n = 2;
    std::variant<ClassicalStrategy, QuantumStrategy, BoxWorldStrategy, ToyStrategy, CorrelationStrategy,
                 EntangledStrategy>
        body;

    Theory theory() const;
};

/// Throws ValidationError if the strategy's tables do not fit the instance.
void validate_strategy(const PomInstance &inst, const PomStrategy &strat,
                       const Tolerances &tol = kDefaultTolerances);

/// One possible result of a round: its probability and Bob's resulting guess.
struct OutcomeBranch {
    double probability;
    int guess;
};

/// table[x][y-1] lists the branches of Bob's raw outcomes for that pair.
using OutcomeTable = std::vector<std::vector<std::vector<OutcomeBranch>>>;

OutcomeTable outcome_table(const PomInstance &inst, const PomStrategy &strat,
                           const Tolerances &tol = kDefaultTolerances);

struct GameResult {
    int n = 2;
    /// per_pair[x][y-1] = p(guess = x_y | x, y)
    std::vector<std::vector<double>> per_pair;
    double average = 0;
    double parity_leak = 0;

    bool legal(double tol = kDefaultTolerances.parity_leak) const {
        return parity_leak <= tol;
    }
};

/// Exact average success (1 / (n 2^n)) sum_{x,y} p(guess = x_y | x, y), plus
/// the strategy's parity leak.
GameResult pom_success(const PomInstance &inst, const PomStrategy &strat, const Tolerances &tol = kDefaultTolerances);

/// Largest distance, over s in the parity set, between the uniform mixtures
/// of parity-0 and parity-1 preparations in the theory's own representation:
/// trace distance (quantum and, on the flag-plus-system state, entangled),
/// Euclidean distance of g-bit coordinates, or total variation of the
/// message / epistemic / communicated-bit distributions.
double parity_check(const PomInstance &inst, const PomStrategy &strat, const Tolerances &tol = kDefaultTolerances);

struct RoundLog {
    std::uint64_t rounds = 0;
    std::uint64_t successes = 0;
    std::uint64_t seed = 0;
    double empirical_rate = 0;
};

/// Rounds per independently seeded chunk in run_rounds.
inline constexpr std::uint64_t kRoundChunk = 1u << 16;

/// Monte Carlo simulation. Rounds are split into chunks of kRoundChunk;
/// chunk i draws from Rng(derive_seed(seed, i)), so the result is a function
/// of (rounds, seed) only, whatever `threads` is.
RoundLog run_rounds(const PomInstance &inst, const PomStrategy &strat, std::uint64_t rounds, std::uint64_t seed,
                    unsigned threads = 0);

/// The 2-bit correlation-assisted protocol: Alice inputs x1 xor x2 and sends
/// c = x1 xor a; Bob inputs y - 1 and answers b xor c.
PomStrategy correlation_protocol(const NSBox &box);

/// Names accepted by builtin_strategy.
std::vector<std::string> builtin_names();

/// "quantum_optimal", "boxworld_optimal", "classical_single_bit:<i>"
/// (i in {1, 2}; bare "classical_single_bit" means 1), "remote_state_prep".
PomStrategy builtin_strategy(const std::string &name);

PomStrategy quantum_optimal_strategy();
PomStrategy boxworld_optimal_strategy();
PomStrategy classical_single_bit_strategy(int bit);
PomStrategy remote_state_prep_strategy();

/// One branch of the entangled scheme for a given x and Alice outcome k.
struct SteeredBranch {
    double probability;
    int flag;
    /// Bob's normalized conditional state before and after the correction.
    DensityOperator raw;
    DensityOperator corrected;
};

/// branches[x][k]. Branches with zero probability carry the maximally mixed
/// state.
std::vector<std::array<SteeredBranch, 2>> steered_branches(const EntangledStrategy &strat,
                                                           const Tolerances &tol = kDefaultTolerances);

/// Bob's state averaged over Alice's outcomes, before any correction.
DensityOperator bob_unconditional_state(const EntangledStrategy &strat, std::size_t x,
                                        const Tolerances &tol = kDefaultTolerances);

}  // namespace pomlab
