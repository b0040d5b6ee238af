#include "pomlab/optimize.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "pomlab/error.hpp"
#include "pomlab/lp.hpp"
#include "pomlab/parallel.hpp"
#include "pomlab/rng.hpp"

namespace pomlab {

namespace {

template <class Scalar>
Scalar ratio(long num, long den) {
    if constexpr (std::is_same_v<Scalar, double>) {
        return static_cast<double>(num) / static_cast<double>(den);
    } else {
        return Scalar(num, den);
    }
}

// Variables p(m|x) at index x * alphabet + m.
template <class Scalar>
LinearProgram<Scalar> encoding_lp(const PomInstance &inst, std::size_t alphabet,
                                  const std::vector<std::vector<int>> &decoding) {
    const std::size_t strings = inst.num_strings();
    LinearProgram<Scalar> lp(strings * alphabet);
    const Scalar weight = ratio<Scalar>(1, static_cast<long>(inst.n()) * static_cast<long>(strings));
    for (std::uint32_t x = 0; x < strings; ++x) {
        for (std::size_t m = 0; m < alphabet; ++m) {
            int hits = 0;
            for (int y = 1; y <= inst.n(); ++y) {
                hits += decoding[y - 1][m] == inst.bit(x, y) ? 1 : 0;
            }
            lp.objective[x * alphabet + m] = weight * Scalar(hits);
        }
    }
    for (std::uint32_t x = 0; x < strings; ++x) {
        std::vector<Scalar> row(lp.num_variables(), Scalar(0));
        for (std::size_t m = 0; m < alphabet; ++m) {
            row[x * alphabet + m] = Scalar(1);
        }
        lp.add_equality(std::move(row), Scalar(1));
    }
    for (std::uint32_t s : inst.parity_set()) {
        for (std::size_t m = 0; m < alphabet; ++m) {
            std::vector<Scalar> row(lp.num_variables(), Scalar(0));
            for (std::uint32_t x = 0; x < strings; ++x) {
                row[x * alphabet + m] = parity(x, s) ? Scalar(-1) : Scalar(1);
            }
            lp.add_equality(std::move(row), Scalar(0));
        }
    }
    return lp;
}

template <class Scalar>
std::vector<std::vector<double>> unpack_encoding(const std::vector<Scalar> &x, std::size_t strings,
                                                 std::size_t alphabet) {
    std::vector<std::vector<double>> enc(strings, std::vector<double>(alphabet, 0.0));
    for (std::size_t i = 0; i < strings; ++i) {
        for (std::size_t m = 0; m < alphabet; ++m) {
            enc[i][m] = std::max(0.0, static_cast<double>(x[i * alphabet + m]));
        }
    }
    return enc;
}

std::vector<std::vector<int>> decoding_from_code(std::uint64_t code, int n, std::size_t alphabet) {
    std::vector<std::vector<int>> d(n, std::vector<int>(alphabet, 0));
    for (int y = 0; y < n; ++y) {
        for (std::size_t m = 0; m < alphabet; ++m) {
            d[y][m] = static_cast<int>((code >> (y * alphabet + m)) & 1u);
        }
    }
    return d;
}

template <class Scalar>
ClassicalOracleResult exhaustive_oracle(const PomInstance &inst, std::size_t alphabet) {
    const int n = inst.n();
    const std::uint64_t codes = std::uint64_t{1} << (n * alphabet);
    std::optional<LpSolution<Scalar>> best;
    std::uint64_t best_code = 0;
    for (std::uint64_t code = 0; code < codes; ++code) {
        auto solution = solve_lp(encoding_lp<Scalar>(inst, alphabet, decoding_from_code(code, n, alphabet)));
        if (solution.status != LpStatus::optimal) {
            throw std::logic_error("parity-oblivious encoding LP is always feasible and bounded");
        }
        if (!best || solution.objective > best->objective) {
            best = std::move(solution);
            best_code = code;
        }
    }
    ClassicalOracleResult result;
    result.value = static_cast<double>(best->objective);
    if constexpr (!std::is_same_v<Scalar, double>) {
        result.exact = best->objective.str();
    }
    result.witness.alphabet = alphabet;
    result.witness.encoding = unpack_encoding(best->x, inst.num_strings(), alphabet);
    result.witness.decoding = decoding_from_code(best_code, n, alphabet);
    return result;
}

// Best decoding for a fixed encoding: guess the more likely value of x_y.
std::vector<std::vector<int>> greedy_decoding(const PomInstance &inst, const std::vector<std::vector<double>> &enc,
                                              std::size_t alphabet) {
    std::vector<std::vector<int>> d(inst.n(), std::vector<int>(alphabet, 0));
    for (int y = 1; y <= inst.n(); ++y) {
        for (std::size_t m = 0; m < alphabet; ++m) {
            double weight[2] = {0, 0};
            for (std::uint32_t x = 0; x < inst.num_strings(); ++x) {
                weight[inst.bit(x, y)] += enc[x][m];
            }
            d[y - 1][m] = weight[1] > weight[0] + 1e-12 ? 1 : 0;
        }
    }
    return d;
}

ClassicalOracleResult alternating_oracle(const PomInstance &inst, std::size_t alphabet,
                                         const ClassicalOracleOptions &options) {
    ClassicalOracleResult best;
    best.heuristic = true;
    best.value = -1;
    for (unsigned r = 0; r < std::max(1u, options.restarts); ++r) {
        Rng rng(derive_seed(options.seed, r));
        std::vector<std::vector<int>> d(inst.n(), std::vector<int>(alphabet, 0));
        for (auto &row : d) {
            for (auto &v : row) {
                v = static_cast<int>(rng.below(2));
            }
        }
        std::vector<std::vector<double>> enc;
        double value = classical_encoding_lp(inst.n(), alphabet, d, &enc);
        for (int step = 0; step < 100; ++step) {
            auto next = greedy_decoding(inst, enc, alphabet);
            if (next == d) {
                break;
            }
            d = std::move(next);
            value = classical_encoding_lp(inst.n(), alphabet, d, &enc);
        }
        if (value > best.value + 1e-12) {
            best.value = value;
            best.witness.alphabet = alphabet;
            best.witness.encoding = enc;
            best.witness.decoding = d;
        }
    }
    return best;
}

void check_seesaw_options(const SeesawOptions &options) {
    if (options.dim < 2 || options.dim > 4) {
        throw ValidationError("seesaw dimension must be 2, 3 or 4");
    }
    if (options.restarts < 1) {
        throw ValidationError("seesaw needs at least one restart");
    }
    if (!(options.tol > 0)) {
        throw ValidationError("seesaw tolerance must be positive");
    }
    if (options.max_iterations < 1) {
        throw ValidationError("seesaw iteration cap must be positive");
    }
}

Matrix hermitian_part(const Matrix &m) {
    return (m + m.adjoint()) * Complex(0.5);
}

void check_chsh_range(double S) {
    if (!(S >= -4.0 && S <= 4.0)) {
        throw ValidationError("CHSH correlator must lie in [-4, 4]");
    }
}

}  // namespace

double classical_encoding_lp(int n, std::size_t alphabet, const std::vector<std::vector<int>> &decoding,
                             std::vector<std::vector<double>> *encoding) {
    PomInstance inst(n);
    if (decoding.size() != static_cast<std::size_t>(n)) {
        throw ValidationError("one decoding row per bit is required");
    }
    auto solution = solve_lp(encoding_lp<double>(inst, alphabet, decoding));
    if (solution.status != LpStatus::optimal) {
        throw std::logic_error("parity-oblivious encoding LP is always feasible and bounded");
    }
    if (encoding) {
        *encoding = unpack_encoding(solution.x, inst.num_strings(), alphabet);
    }
    return solution.objective;
}

ClassicalOracleResult classical_oracle(int n, std::size_t alphabet, const ClassicalOracleOptions &options) {
    PomInstance inst(n);
    if (alphabet < 1) {
        throw ValidationError("message alphabet must have at least one symbol");
    }
    const std::size_t bits = static_cast<std::size_t>(n) * alphabet;
    const bool exhaustive = bits < 64 && (std::uint64_t{1} << bits) <= options.max_exhaustive_decodings;
    if (!exhaustive) {
        if (options.exact_rational) {
            throw ValidationError("rational mode needs an exhaustive search; alphabet too large for this n");
        }
        return alternating_oracle(inst, alphabet, options);
    }
    return options.exact_rational ? exhaustive_oracle<Rational>(inst, alphabet)
                                  : exhaustive_oracle<double>(inst, alphabet);
}

Matrix bell_operator(const std::array<Observable, 2> &alice, const std::array<Observable, 2> &bob) {
    const Matrix &a0 = alice[0].matrix();
    const Matrix &a1 = alice[1].matrix();
    const Matrix &b0 = bob[0].matrix();
    const Matrix &b1 = bob[1].matrix();
    return tensor(a0 + a1, b0) + tensor(a0 - a1, b1);
}

double bell_value(const PureState &psi, const std::array<Observable, 2> &alice, const std::array<Observable, 2> &bob) {
    return expectation(psi, bell_operator(alice, bob));
}

Observable sign_polar(const Matrix &hermitian) {
    auto eig = eigh(hermitian);
    std::vector<double> signs(eig.values.size());
    for (std::size_t k = 0; k < signs.size(); ++k) {
        signs[k] = eig.values[k] >= 0 ? 1.0 : -1.0;
    }
    Matrix out = eig.vectors * Matrix::diagonal(signs) * eig.vectors.adjoint();
    return Observable::dichotomic(hermitian_part(out));
}

SeesawState seesaw_random_start(std::size_t dim, Rng &rng, bool distinct_alice) {
    auto psi = random_pure_state(dim * dim, rng);
    auto a0 = random_dichotomic(dim, rng);
    auto a1 = distinct_alice ? random_dichotomic(dim, rng) : a0;
    auto b0 = random_dichotomic(dim, rng);
    auto b1 = random_dichotomic(dim, rng);
    SeesawState state{psi, {a0, a1}, {b0, b1}, 0.0, {}, false};
    state.score = bell_value(state.psi, state.alice, state.bob);
    return state;
}

SeesawState seesaw_from(SeesawState state, const SeesawOptions &options) {
    const std::size_t d = state.alice[0].dim();
    const BipartiteDims dims{d, d};
    const Matrix id = Matrix::identity(d);
    state.score = bell_value(state.psi, state.alice, state.bob);
    state.trace = {state.score};
    state.converged = false;

    for (int it = 0; it < options.max_iterations; ++it) {
        const double previous = state.score;
        Matrix rho = state.psi.projector();
        const Matrix &a0 = state.alice[0].matrix();
        const Matrix &a1 = state.alice[1].matrix();
        state.bob = {sign_polar(hermitian_part(partial_trace(tensor(a0 + a1, id) * rho, Subsystem::second, dims))),
                     sign_polar(hermitian_part(partial_trace(tensor(a0 - a1, id) * rho, Subsystem::second, dims)))};

        if (options.optimize_alice) {
            const Matrix &b0 = state.bob[0].matrix();
            const Matrix &b1 = state.bob[1].matrix();
            state.alice = {
                sign_polar(hermitian_part(partial_trace(tensor(id, b0 + b1) * rho, Subsystem::first, dims))),
                sign_polar(hermitian_part(partial_trace(tensor(id, b0 - b1) * rho, Subsystem::first, dims)))};
        }

        auto eig = eigh(bell_operator(state.alice, state.bob));
        state.psi = PureState::normalized(eig.vector(eig.values.size() - 1));
        state.score = bell_value(state.psi, state.alice, state.bob);
        state.trace.push_back(state.score);
        if (state.score - previous < options.tol) {
            state.converged = true;
            break;
        }
    }
    return state;
}

SeesawResult seesaw_chsh(const SeesawOptions &options) {
    check_seesaw_options(options);
    std::vector<std::optional<SeesawState>> runs(options.restarts);
    parallel_for(options.restarts, resolve_thread_count(options.threads), [&](std::size_t r) {
        Rng rng(derive_seed(options.seed, r));
        runs[r] = seesaw_from(seesaw_random_start(options.dim, rng, options.optimize_alice), options);
    });
    unsigned best = 0;
    for (unsigned r = 1; r < options.restarts; ++r) {
        if (runs[r]->score > runs[best]->score) {
            best = r;
        }
    }
    return {runs[best]->score, best, std::move(*runs[best])};
}

std::string seesaw_trace_csv(const SeesawState &state) {
    std::ostringstream out;
    out << "iteration,score\n";
    char buf[64];
    for (std::size_t i = 0; i < state.trace.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, state.trace[i]);
        out << buf;
    }
    return out.str();
}

double pom_from_chsh(double S) {
    check_chsh_range(S);
    return (4.0 + S) / 8.0;
}

double chsh_B_from_S(double S) {
    check_chsh_range(S);
    return 2.0 + S / 2.0;
}

LocalBoxOracleResult local_box_oracle() {
    LocalBoxOracleResult result;
    PomInstance inst(2);
    const auto strategies = local_deterministic_strategies();
    result.value = -1;
    for (std::size_t k = 0; k < strategies.size(); ++k) {
        double v = pom_success(inst, correlation_protocol(make_local_box(strategies[k]))).average;
        result.per_box[k] = v;
        if (v > result.value) {
            result.value = v;
            result.best = strategies[k];
        }
    }
    return result;
}

}  // namespace pomlab
