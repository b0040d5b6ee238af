#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pomlab/nsbox.hpp"
#include "pomlab/pomgame.hpp"
#include "pomlab/qcore.hpp"

namespace pomlab {

// ---------------------------------------------------------------------------
// Classical parity-oblivious oracle
// ---------------------------------------------------------------------------

struct ClassicalOracleOptions {
    /// Solve each LP over exact rationals (exhaustive mode only).
    bool exact_rational = false;
    /// Exhaustive decoding enumeration is used while (2^alphabet)^n stays at
    /// or below this; beyond it the alternating search takes over.
    std::uint64_t max_exhaustive_decodings = 1u << 16;
    /// Alternating search restarts and their base seed.
    unsigned restarts = 64;
    std::uint64_t seed = 0;
};

struct ClassicalOracleResult {
    double value = 0;
    /// "p/q" when solved in rational mode, empty otherwise.
    std::string exact;
    /// True when the alternating search produced the value; it is then a
    /// lower bound, not a certified maximum.
    bool heuristic = false;
    ClassicalStrategy witness;
};

/// Maximum average success of a stochastic classical encoding over the given
/// message alphabet, subject to parity obliviousness for every message, with
/// deterministic decodings.
ClassicalOracleResult classical_oracle(int n, std::size_t alphabet, const ClassicalOracleOptions &options = {});

/// Optimal encoding for a fixed decoding table (decoding[y-1][m]). Returns
/// the value and fills `encoding`.
double classical_encoding_lp(int n, std::size_t alphabet, const std::vector<std::vector<int>> &decoding,
                             std::vector<std::vector<double>> *encoding = nullptr);

// ---------------------------------------------------------------------------
// Seesaw
// ---------------------------------------------------------------------------

struct SeesawOptions {
    std::size_t dim = 2;
    unsigned restarts = 20;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    int max_iterations = 1000;
    /// When false Alice's pair stays fixed at its initial value.
    bool optimize_alice = true;
    unsigned threads = 0;
};

struct SeesawState {
    PureState psi;
    std::array<Observable, 2> alice;
    std::array<Observable, 2> bob;
    double score = 0;
    /// Score before the first step, then after each full iteration.
    std::vector<double> trace;
    bool converged = false;
};

struct SeesawResult {
    double best_score = 0;
    unsigned best_restart = 0;
    SeesawState state;
};

/// A (x) B + A' (x) B + A (x) B' - A' (x) B'.
Matrix bell_operator(const std::array<Observable, 2> &alice, const std::array<Observable, 2> &bob);
double bell_value(const PureState &psi, const std::array<Observable, 2> &alice, const std::array<Observable, 2> &bob);

/// Eigenvalues >= 0 map to +1, negative ones to -1.
Observable sign_polar(const Matrix &hermitian);

/// Random starting point drawn from `rng`.
SeesawState seesaw_random_start(std::size_t dim, Rng &rng, bool distinct_alice = true);

/// Runs the ascent from `init` until a full iteration gains less than tol.
SeesawState seesaw_from(SeesawState init, const SeesawOptions &options);

/// Best over `restarts` random starts; restart r is seeded with
/// derive_seed(seed, r). Ties go to the lowest restart index.
SeesawResult seesaw_chsh(const SeesawOptions &options);

/// "iteration,score" lines.
std::string seesaw_trace_csv(const SeesawState &state);

// ---------------------------------------------------------------------------
// Score conversions and the local-box oracle
// ---------------------------------------------------------------------------

/// (4 + S) / 8; S in [-4, 4].
double pom_from_chsh(double S);
/// 2 + S / 2; S in [-4, 4].
double chsh_B_from_S(double S);

struct LocalBoxOracleResult {
    double value = 0;
    LocalDeterministic best{};
    /// Success for each entry of local_deterministic_strategies().
    std::array<double, 16> per_box{};
};

/// Correlation-protocol success maximized over deterministic local boxes.
LocalBoxOracleResult local_box_oracle();

}  // namespace pomlab
