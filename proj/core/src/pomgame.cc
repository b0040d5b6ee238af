#include "pomlab/pomgame.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pomlab/error.hpp"

namespace pomlab {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require_bit(int v, const char *what) {
    if (v != 0 && v != 1) {
        throw ValidationError(std::string(what) + " must be 0 or 1");
    }
}

void require_sizes(const PomInstance &inst, std::size_t encodings, std::size_t decodings) {
    if (encodings != inst.num_strings()) {
        throw ValidationError("strategy encodes " + std::to_string(encodings) + " strings, game has " +
                              std::to_string(inst.num_strings()));
    }
    if (decodings != static_cast<std::size_t>(inst.n())) {
        throw ValidationError("strategy has " + std::to_string(decodings) + " decoders, game has " +
                              std::to_string(inst.n()) + " bits");
    }
}

void validate_decoders(const std::vector<QuantumDecoder> &decoding, std::size_t dim, const Tolerances &tol) {
    for (const auto &dec : decoding) {
        if (dec.observable.dim() != dim) {
            throw ValidationError("decoder dimension does not match the encoded system");
        }
        if (!dec.observable.is_dichotomic(tol.dichotomic)) {
            throw ValidationError("decoder observable is not dichotomic");
        }
        require_bit(dec.plus_bit, "plus_bit");
    }
}

bool is_unitary(const Matrix &u, double tol) {
    return (u.adjoint() * u).max_abs_diff(Matrix::identity(u.dim())) <= tol;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    double d = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        d += std::abs(p[k] - q[k]);
    }
    return 0.5 * d;
}

std::vector<OutcomeBranch> quantum_branches(const Matrix &state, const QuantumDecoder &dec) {
    auto effects = dichotomic_effects(dec.observable);
    double p_plus = std::clamp((state * effects[0]).trace().real(), 0.0, 1.0);
    return {{p_plus, dec.plus_bit}, {1.0 - p_plus, 1 - dec.plus_bit}};
}

// Unnormalized conditional state of Bob given Alice's outcome k.
Matrix bob_conditional(const EntangledStrategy &s, std::size_t x, int k) {
    const std::size_t da = s.alice[x].dim();
    const std::size_t db = s.shared.dim() / da;
    auto effects = dichotomic_effects(s.alice[x]);
    Matrix lifted = tensor(effects[k], Matrix::identity(db));
    return partial_trace(lifted * s.shared.matrix(), Subsystem::second, {da, db});
}

}  // namespace

PomInstance::PomInstance(int n) : n_(n) {
    if (n < 2 || n > 12) {
        throw ValidationError("number of bits must be in [2, 12], got " + std::to_string(n));
    }
    for (std::uint32_t s = 0; s < num_strings(); ++s) {
        if (std::popcount(s) >= 2) {
            parity_set_.push_back(s);
        }
    }
}

std::string PomInstance::label(std::uint32_t x) const {
    std::string out;
    for (int y = 1; y <= n_; ++y) {
        out += static_cast<char>('0' + bit(x, y));
    }
    return out;
}

int parity(std::uint32_t x, std::uint32_t s) {
    return std::popcount(x & s) & 1;
}

std::string to_string(Theory theory) {
    switch (theory) {
        case Theory::classical:
            return "classical";
        case Theory::quantum:
            return "quantum";
        case Theory::boxworld:
            return "boxworld";
        case Theory::toybit:
            return "toybit";
        case Theory::correlation:
            return "correlation";
        case Theory::entangled:
            return "entangled";
    }
    return "?";
}

Theory parse_theory(const std::string &text) {
    for (auto t : {Theory::classical, Theory::quantum, Theory::boxworld, Theory::toybit, Theory::correlation,
                   Theory::entangled}) {
        if (to_string(t) == text) {
            return t;
        }
    }
    throw ValidationError("unknown theory '" + text + "'");
}

Theory PomStrategy::theory() const {
    return static_cast<Theory>(body.index());
}

void validate_strategy(const PomInstance &inst, const PomStrategy &strat, const Tolerances &tol) {
    if (strat.n != inst.n()) {
        throw ValidationError("strategy is for " + std::to_string(strat.n) + " bits, game has " +
                              std::to_string(inst.n()));
    }
    std::visit(
        Overloaded{
            [&](const ClassicalStrategy &s) {
                require_sizes(inst, s.encoding.size(), s.decoding.size());
                if (s.alphabet == 0) {
                    throw ValidationError("classical alphabet must be nonempty");
                }
                for (const auto &row : s.encoding) {
                    if (row.size() != s.alphabet) {
                        throw ValidationError("classical encoding row has the wrong alphabet size");
                    }
                    double total = 0;
                    for (double p : row) {
                        if (p < -tol.probability) {
                            throw ValidationError("classical encoding has a negative probability");
                        }
                        total += p;
                    }
                    if (std::abs(total - 1.0) > tol.probability) {
                        throw ValidationError("classical encoding row sums to " + format_real(total));
                    }
                }
                for (const auto &row : s.decoding) {
                    if (row.size() != s.alphabet) {
                        throw ValidationError("classical decoding row has the wrong alphabet size");
                    }
                    for (int b : row) {
                        require_bit(b, "classical decoding");
                    }
                }
            },
            [&](const QuantumStrategy &s) {
                require_sizes(inst, s.encoding.size(), s.decoding.size());
                std::size_t dim = s.encoding.front().dim();
                for (const auto &rho : s.encoding) {
                    if (rho.dim() != dim) {
                        throw ValidationError("quantum encodings have different dimensions");
                    }
                }
                validate_decoders(s.decoding, dim, tol);
            },
            [&](const BoxWorldStrategy &s) {
                require_sizes(inst, s.encoding.size(), s.decoding.size());
                for (const auto &d : s.decoding) {
                    require_bit(d.input, "g-bit input");
                    require_bit(d.flip, "g-bit flip");
                }
            },
            [&](const ToyStrategy &s) {
                require_sizes(inst, s.encoding.size(), s.decoding.size());
                for (const auto &d : s.decoding) {
                    require_bit(d.flip, "toy flip");
                }
            },
            [&](const CorrelationStrategy &s) {
                if (inst.n() != 2) {
                    throw ValidationError("correlation-assisted strategies are defined for 2 bits");
                }
                for (int x = 0; x < 4; ++x) {
                    require_bit(s.alice_input[x], "alice_input");
                    require_bit(s.message[x][0], "message");
                    require_bit(s.message[x][1], "message");
                }
                for (int y = 0; y < 2; ++y) {
                    require_bit(s.bob_input[y], "bob_input");
                    for (int b = 0; b < 2; ++b) {
                        for (int c = 0; c < 2; ++c) {
                            require_bit(s.answer[y][b][c], "answer");
                        }
                    }
                }
            },
            [&](const EntangledStrategy &s) {
                require_sizes(inst, s.alice.size(), s.decoding.size());
                if (s.message.size() != s.alice.size()) {
                    throw ValidationError("entangled strategy needs one message rule per input");
                }
                std::size_t da = s.alice.front().dim();
                if (s.shared.dim() % da != 0) {
                    throw ValidationError("shared state does not factor with Alice's dimension");
                }
                std::size_t db = s.shared.dim() / da;
                for (std::size_t x = 0; x < s.alice.size(); ++x) {
                    if (s.alice[x].dim() != da || !s.alice[x].is_dichotomic(tol.dichotomic)) {
                        throw ValidationError("Alice's observables must be dichotomic on one system");
                    }
                    require_bit(s.message[x][0], "message");
                    require_bit(s.message[x][1], "message");
                }
                for (const auto &u : s.correction) {
                    if (u.dim() != db || !is_unitary(u, tol.projector)) {
                        throw ValidationError("corrections must be unitaries on Bob's system");
                    }
                }
                validate_decoders(s.decoding, db, tol);
            },
        },
        strat.body);
}

OutcomeTable outcome_table(const PomInstance &inst, const PomStrategy &strat, const Tolerances &tol) {
    validate_strategy(inst, strat, tol);
    const std::uint32_t strings = inst.num_strings();
    const int n = inst.n();
    OutcomeTable table(strings, std::vector<std::vector<OutcomeBranch>>(n));

    std::visit(
        Overloaded{
            [&](const ClassicalStrategy &s) {
                for (std::uint32_t x = 0; x < strings; ++x) {
                    for (int y = 0; y < n; ++y) {
                        for (std::size_t m = 0; m < s.alphabet; ++m) {
                            table[x][y].push_back({s.encoding[x][m], s.decoding[y][m]});
                        }
                    }
                }
            },
            [&](const QuantumStrategy &s) {
                for (std::uint32_t x = 0; x < strings; ++x) {
                    for (int y = 0; y < n; ++y) {
                        table[x][y] = quantum_branches(s.encoding[x].matrix(), s.decoding[y]);
                    }
                }
            },
            [&](const BoxWorldStrategy &s) {
                for (std::uint32_t x = 0; x < strings; ++x) {
                    for (int y = 0; y < n; ++y) {
                        const auto &dec = s.decoding[y];
                        auto effects = gbit_measurement(dec.input);
                        for (int a = 0; a < 2; ++a) {
                            table[x][y].push_back({gbit_prob(s.encoding[x], effects[a]), a ^ dec.flip});
                        }
                    }
                }
            },
            [&](const ToyStrategy &s) {
                for (std::uint32_t x = 0; x < strings; ++x) {
                    for (int y = 0; y < n; ++y) {
                        const auto &dec = s.decoding[y];
                        auto probs = toy_measure(s.encoding[x], dec.measurement);
                        for (int k = 0; k < 2; ++k) {
                            table[x][y].push_back({probs[k], k ^ dec.flip});
                        }
                    }
                }
            },
            [&](const CorrelationStrategy &s) {
                for (std::uint32_t x = 0; x < strings; ++x) {
                    for (int y = 0; y < n; ++y) {
                        for (int a = 0; a < 2; ++a) {
                            for (int b = 0; b < 2; ++b) {
                                double p = s.box.p(a, b, s.alice_input[x], s.bob_input[y]);
                                int c = s.message[x][a];
                                table[x][y].push_back({p, s.answer[y][b][c]});
                            }
                        }
                    }
                }
            },
            [&](const EntangledStrategy &s) {
                for (std::uint32_t x = 0; x < strings; ++x) {
                    for (int k = 0; k < 2; ++k) {
                        const Matrix &u = s.correction[s.message[x][k]];
                        Matrix corrected = u * bob_conditional(s, x, k) * u.adjoint();
                        for (int y = 0; y < n; ++y) {
                            auto effects = dichotomic_effects(s.decoding[y].observable);
                            for (int o = 0; o < 2; ++o) {
                                double p = std::max(0.0, (corrected * effects[o]).trace().real());
                                int guess = o == 0 ? s.decoding[y].plus_bit : 1 - s.decoding[y].plus_bit;
                                table[x][y].push_back({p, guess});
                            }
                        }
                    }
                }
            },
        },
        strat.body);
    return table;
}

GameResult pom_success(const PomInstance &inst, const PomStrategy &strat, const Tolerances &tol) {
    auto table = outcome_table(inst, strat, tol);
    GameResult result;
    result.n = inst.n();
    result.per_pair.assign(inst.num_strings(), std::vector<double>(inst.n(), 0.0));
    double total = 0;
    for (std::uint32_t x = 0; x < inst.num_strings(); ++x) {
        for (int y = 1; y <= inst.n(); ++y) {
            double win = 0;
            for (const auto &branch : table[x][y - 1]) {
                if (branch.guess == inst.bit(x, y)) {
                    win += branch.probability;
                }
            }
            result.per_pair[x][y - 1] = win;
            total += win;
        }
    }
    result.average = total / (static_cast<double>(inst.num_strings()) * inst.n());
    result.parity_leak = parity_check(inst, strat, tol);
    return result;
}

double parity_check(const PomInstance &inst, const PomStrategy &strat, const Tolerances &tol) {
    validate_strategy(inst, strat, tol);
    const std::uint32_t strings = inst.num_strings();
    const double half = static_cast<double>(strings / 2);
    double worst = 0;

    for (std::uint32_t s : inst.parity_set()) {
        double leak = std::visit(
            Overloaded{
                [&](const ClassicalStrategy &c) {
                    std::array<std::vector<double>, 2> avg{std::vector<double>(c.alphabet, 0.0),
                                                           std::vector<double>(c.alphabet, 0.0)};
                    for (std::uint32_t x = 0; x < strings; ++x) {
                        for (std::size_t m = 0; m < c.alphabet; ++m) {
                            avg[parity(x, s)][m] += c.encoding[x][m] / half;
                        }
                    }
                    return total_variation(avg[0], avg[1]);
                },
                [&](const QuantumStrategy &q) {
                    std::size_t dim = q.encoding.front().dim();
                    std::array<Matrix, 2> avg{Matrix(dim), Matrix(dim)};
                    for (std::uint32_t x = 0; x < strings; ++x) {
                        avg[parity(x, s)] += q.encoding[x].matrix() * Complex(1.0 / half);
                    }
                    return trace_distance(avg[0], avg[1]);
                },
                [&](const BoxWorldStrategy &b) {
                    std::array<double, 2> c0{};
                    std::array<double, 2> c1{};
                    for (std::uint32_t x = 0; x < strings; ++x) {
                        c0[parity(x, s)] += b.encoding[x].c0() / half;
                        c1[parity(x, s)] += b.encoding[x].c1() / half;
                    }
                    return std::hypot(c0[0] - c0[1], c1[0] - c1[1]);
                },
                [&](const ToyStrategy &t) {
                    std::array<std::array<double, 4>, 2> avg{};
                    for (std::uint32_t x = 0; x < strings; ++x) {
                        for (int k = 0; k < 4; ++k) {
                            avg[parity(x, s)][k] += t.encoding[x].distribution()[k] / half;
                        }
                    }
                    return total_variation(avg[0], avg[1]);
                },
                [&](const CorrelationStrategy &c) {
                    // Distribution of the communicated bit.
                    std::array<std::array<double, 2>, 2> avg{};
                    for (std::uint32_t x = 0; x < strings; ++x) {
                        for (int a = 0; a < 2; ++a) {
                            avg[parity(x, s)][c.message[x][a]] += c.box.alice_marginal(a, c.alice_input[x]) / half;
                        }
                    }
                    return total_variation(avg[0], avg[1]);
                },
                [&](const EntangledStrategy &e) {
                    // Flag together with Bob's (uncorrected) system: a
                    // block-diagonal classical-quantum state.
                    std::size_t db = e.shared.dim() / e.alice.front().dim();
                    std::array<std::array<Matrix, 2>, 2> avg{
                        std::array<Matrix, 2>{Matrix(db), Matrix(db)},
                        std::array<Matrix, 2>{Matrix(db), Matrix(db)}};
                    for (std::uint32_t x = 0; x < strings; ++x) {
                        for (int k = 0; k < 2; ++k) {
                            avg[parity(x, s)][e.message[x][k]] += bob_conditional(e, x, k) * Complex(1.0 / half);
                        }
                    }
                    return trace_distance(avg[0][0], avg[1][0]) + trace_distance(avg[0][1], avg[1][1]);
                },
            },
            strat.body);
        worst = std::max(worst, leak);
    }
    return worst;
}

std::vector<std::array<SteeredBranch, 2>> steered_branches(const EntangledStrategy &strat, const Tolerances &tol) {
    std::vector<std::array<SteeredBranch, 2>> out;
    std::size_t db = strat.shared.dim() / strat.alice.front().dim();
    for (std::size_t x = 0; x < strat.alice.size(); ++x) {
        auto make = [&](int k) {
            Matrix sigma = bob_conditional(strat, x, k);
            double p = sigma.trace().real();
            int flag = strat.message[x][k];
            if (p <= tol.psd) {
                auto mixed = DensityOperator::maximally_mixed(db);
                return SteeredBranch{0.0, flag, mixed, mixed};
            }
            Matrix raw = sigma * Complex(1.0 / p);
            const Matrix &u = strat.correction[flag];
            Matrix corrected = u * raw * u.adjoint();
            return SteeredBranch{p, flag, DensityOperator::from_matrix(raw, tol),
                                 DensityOperator::from_matrix(corrected, tol)};
        };
        out.push_back({make(0), make(1)});
    }
    return out;
}

DensityOperator bob_unconditional_state(const EntangledStrategy &strat, std::size_t x, const Tolerances &tol) {
    if (x >= strat.alice.size()) {
        throw ValidationError("input index out of range");
    }
    return DensityOperator::from_matrix(bob_conditional(strat, x, 0) + bob_conditional(strat, x, 1), tol);
}

}  // namespace pomlab
