#include "pomlab/optimize.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pomlab/error.hpp"
#include "pomlab/rng.hpp"

using namespace pomlab;

namespace {

const double kTsirelson = 2 * std::numbers::sqrt2;
const double kQuantum = 0.5 * (1 + 1 / std::numbers::sqrt2);

// Independent evaluation of the n = 2 encoding LP by enumerating every basic
// solution of the constraint system {sum_m p(m|x) = 1, parity rows}.
class VertexEnumeration {
  public:
    VertexEnumeration(std::size_t alphabet, const std::vector<std::vector<int>> &decoding)
        : m_(alphabet), vars_(4 * alphabet) {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        for (int x = 0; x < 4; ++x) {
            std::vector<double> r(vars_, 0.0);
            for (std::size_t m = 0; m < m_; ++m) {
                r[x * m_ + m] = 1;
            }
            rows.push_back(r);
            rhs.push_back(1);
        }
        for (std::size_t m = 0; m < m_; ++m) {
            std::vector<double> r(vars_, 0.0);
            for (int x = 0; x < 4; ++x) {
                // parity of x with s = 11
                r[x * m_ + m] = (x == 0 || x == 3) ? 1 : -1;
            }
            rows.push_back(r);
            rhs.push_back(0);
        }
        reduce(rows, rhs);
        cost_.assign(vars_, 0.0);
        for (int x = 0; x < 4; ++x) {
            for (std::size_t m = 0; m < m_; ++m) {
                int hits = (decoding[0][m] == (x >> 1)) + (decoding[1][m] == (x & 1));
                cost_[x * m_ + m] = hits / 8.0;
            }
        }
    }

    std::size_t rank() const {
        return rows_.size();
    }

    double maximum() const {
        double best = -1;
        std::vector<std::size_t> pick(rank());
        for (std::size_t i = 0; i < pick.size(); ++i) {
            pick[i] = i;
        }
        while (true) {
            std::vector<double> xb;
            if (solve(pick, xb)) {
                bool feasible = std::all_of(xb.begin(), xb.end(), [](double v) { return v >= -1e-12; });
                if (feasible) {
                    double value = 0;
                    for (std::size_t i = 0; i < pick.size(); ++i) {
                        value += cost_[pick[i]] * xb[i];
                    }
                    best = std::max(best, value);
                }
            }
            // next combination
            std::size_t k = pick.size();
            while (k > 0 && pick[k - 1] == vars_ - pick.size() + k - 1) {
                --k;
            }
            if (k == 0) {
                break;
            }
            ++pick[k - 1];
            for (std::size_t j = k; j < pick.size(); ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
        return best;
    }

  private:
    // Keep a maximal linearly independent subset of rows.
    void reduce(const std::vector<std::vector<double>> &rows, const std::vector<double> &rhs) {
        std::vector<std::vector<double>> echelon;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::vector<double> v = rows[r];
            for (const auto &e : echelon) {
                std::size_t lead = std::find_if(e.begin(), e.end(), [](double c) { return std::abs(c) > 1e-12; }) -
                                   e.begin();
                double f = v[lead] / e[lead];
                for (std::size_t c = 0; c < v.size(); ++c) {
                    v[c] -= f * e[c];
                }
            }
            if (std::any_of(v.begin(), v.end(), [](double c) { return std::abs(c) > 1e-12; })) {
                echelon.push_back(v);
                rows_.push_back(rows[r]);
                rhs_.push_back(rhs[r]);
            }
        }
    }

    bool solve(const std::vector<std::size_t> &cols, std::vector<double> &x) const {
        const std::size_t k = cols.size();
        std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) {
                a[r][c] = rows_[r][cols[c]];
            }
            a[r][k] = rhs_[r];
        }
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < k; ++r) {
                if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                    piv = r;
                }
            }
            if (std::abs(a[piv][c]) < 1e-10) {
                return false;
            }
            std::swap(a[c], a[piv]);
            for (std::size_t r = 0; r < k; ++r) {
                if (r != c) {
                    double f = a[r][c] / a[c][c];
                    for (std::size_t j = c; j <= k; ++j) {
                        a[r][j] -= f * a[c][j];
                    }
                }
            }
        }
        x.resize(k);
        for (std::size_t r = 0; r < k; ++r) {
            x[r] = a[r][k] / a[r][r];
        }
        return true;
    }

    std::size_t m_;
    std::size_t vars_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> rhs_;
    std::vector<double> cost_;
};

std::vector<std::vector<int>> decoding_from_bits(std::uint32_t code, std::size_t alphabet) {
    std::vector<std::vector<int>> d(2, std::vector<int>(alphabet));
    for (int y = 0; y < 2; ++y) {
        for (std::size_t m = 0; m < alphabet; ++m) {
            d[y][m] = (code >> (y * alphabet + m)) & 1;
        }
    }
    return d;
}

SeesawState standard_optimum() {
    auto psi = PureState::normalized({1, 0, 0, 1});
    std::array<Observable, 2> a{Observable::dichotomic(pauli::Z()), Observable::dichotomic(pauli::X())};
    std::array<Observable, 2> b{
        Observable::dichotomic((pauli::Z() + pauli::X()) * Complex(1 / std::numbers::sqrt2)),
        Observable::dichotomic((pauli::Z() - pauli::X()) * Complex(1 / std::numbers::sqrt2))};
    return SeesawState{psi, a, b, 0.0, {}, false};
}

}  // namespace

TEST(ClassicalOracle, TwoBitsFourMessagesExact) {
    auto r = classical_oracle(2, 4, {.exact_rational = true});
    EXPECT_EQ(r.exact, "3/4");
    EXPECT_EQ(r.value, 0.75);
    EXPECT_FALSE(r.heuristic);
    auto g = pom_success(PomInstance(2), PomStrategy{2, r.witness});
    EXPECT_NEAR(g.average, 0.75, 1e-12);
    EXPECT_LE(g.parity_leak, 1e-12);
}

TEST(ClassicalOracle, FloatingAndRationalAgree) {
    for (std::size_t m : {1u, 2u, 3u, 4u}) {
        auto exact = classical_oracle(2, m, {.exact_rational = true});
        auto approx = classical_oracle(2, m);
        EXPECT_NEAR(exact.value, approx.value, 1e-12) << "alphabet " << m;
    }
}

TEST(ClassicalOracle, SingleMessageCarriesNothing) {
    auto r = classical_oracle(2, 1, {.exact_rational = true});
    EXPECT_EQ(r.exact, "1/2");
}

TEST(ClassicalOracle, FifthMessageDoesNotHelp) {
    auto r = classical_oracle(2, 5, {.exact_rational = true});
    EXPECT_EQ(r.exact, "3/4");
}

TEST(ClassicalOracle, ThreeBitsHeuristic) {
    auto r = classical_oracle(3, 8);
    EXPECT_TRUE(r.heuristic);
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-6);
    auto g = pom_success(PomInstance(3), PomStrategy{3, r.witness});
    EXPECT_NEAR(g.average, r.value, 1e-9);
    EXPECT_LE(g.parity_leak, 1e-9);
}

TEST(ClassicalOracle, RejectsEmptyAlphabetAndOversizedRationalRuns) {
    EXPECT_THROW(classical_oracle(2, 0), ValidationError);
    EXPECT_THROW(classical_oracle(3, 8, {.exact_rational = true}), ValidationError);
}

TEST(ClassicalOracle, LpMatchesVertexEnumeration) {
    Rng rng(404);
    std::vector<std::uint32_t> codes{0, 0b1100'1010, 0b0011'0101, 0b1111'0000};
    for (int k = 0; k < 4; ++k) {
        codes.push_back(static_cast<std::uint32_t>(rng.below(256)));
    }
    for (auto code : codes) {
        auto d = decoding_from_bits(code, 4);
        VertexEnumeration oracle(4, d);
        EXPECT_EQ(oracle.rank(), 7u);
        EXPECT_NEAR(classical_encoding_lp(2, 4, d), oracle.maximum(), 1e-9) << "decoding " << code;
    }
}

TEST(ClassicalOracle, SharedRandomnessDoesNotHelp) {
    // Mix optimal (encoding, decoding) pairs for several decodings into one
    // strategy over a product alphabet; the mixture never beats the optimum.
    Rng rng(5);
    std::vector<ClassicalStrategy> parts;
    for (int k = 0; k < 3; ++k) {
        auto d = decoding_from_bits(static_cast<std::uint32_t>(rng.below(256)), 4);
        ClassicalStrategy s;
        s.alphabet = 4;
        s.decoding = d;
        classical_encoding_lp(2, 4, d, &s.encoding);
        parts.push_back(s);
    }
    parts.push_back(classical_oracle(2, 4).witness);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> w(parts.size());
        double total = 0;
        for (auto &v : w) {
            v = rng.uniform() + 1e-3;
            total += v;
        }
        ClassicalStrategy mix;
        mix.alphabet = 4 * parts.size();
        mix.encoding.assign(4, std::vector<double>(mix.alphabet, 0.0));
        mix.decoding.assign(2, std::vector<int>(mix.alphabet, 0));
        for (std::size_t k = 0; k < parts.size(); ++k) {
            for (std::size_t m = 0; m < 4; ++m) {
                for (int x = 0; x < 4; ++x) {
                    mix.encoding[x][4 * k + m] = w[k] / total * parts[k].encoding[x][m];
                }
                for (int y = 0; y < 2; ++y) {
                    mix.decoding[y][4 * k + m] = parts[k].decoding[y][m];
                }
            }
        }
        auto g = pom_success(PomInstance(2), PomStrategy{2, mix});
        EXPECT_LE(g.average, 0.75 + 1e-12);
        EXPECT_LE(g.parity_leak, 1e-9);
    }
}

TEST(Conversions, Examples) {
    EXPECT_NEAR(pom_from_chsh(kTsirelson), kQuantum, 1e-15);
    EXPECT_EQ(pom_from_chsh(2), 0.75);
    EXPECT_EQ(pom_from_chsh(0), 0.5);
    EXPECT_EQ(chsh_B_from_S(4), 4.0);
    EXPECT_EQ(chsh_B_from_S(-4), 0.0);
    EXPECT_THROW(pom_from_chsh(4.5), ValidationError);
    EXPECT_THROW(chsh_B_from_S(std::nan("")), ValidationError);
}

TEST(SignPolar, TieGoesToPlus) {
    auto zero = sign_polar(Matrix(2));
    EXPECT_LE(zero.matrix().max_abs_diff(Matrix::identity(2)), 1e-15);
    auto z = sign_polar(Matrix(2, {3, 0, 0, -0.5}));
    EXPECT_LE(z.matrix().max_abs_diff(pauli::Z()), 1e-15);
}

TEST(Seesaw, ReachesTsirelsonInDimensionTwo) {
    auto r = seesaw_chsh({.dim = 2, .restarts = 20, .tol = 1e-12, .seed = 7});
    EXPECT_GE(r.best_score, kTsirelson - 1e-6);
    EXPECT_LE(r.best_score, kTsirelson + 1e-9);
    EXPECT_NEAR(pom_from_chsh(r.best_score), kQuantum, 1e-6);
}

TEST(Seesaw, NeverExceedsTsirelsonAndIsMonotone) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        for (std::size_t dim : {2u, 3u}) {
            auto r = seesaw_chsh({.dim = dim, .restarts = 1, .tol = 1e-12, .seed = seed});
            EXPECT_LE(r.best_score, kTsirelson + 1e-9);
            const auto &trace = r.state.trace;
            for (std::size_t i = 1; i < trace.size(); ++i) {
                EXPECT_GE(trace[i], trace[i - 1] - 1e-12) << "seed " << seed << " step " << i;
            }
        }
    }
}

TEST(Seesaw, DimensionFourStaysBelowBound) {
    auto r = seesaw_chsh({.dim = 4, .restarts = 3, .tol = 1e-10, .seed = 1});
    EXPECT_LE(r.best_score, kTsirelson + 1e-9);
    EXPECT_GE(r.best_score, kTsirelson - 1e-4);
}

TEST(Seesaw, OptimalStartIsAFixedPoint) {
    auto init = standard_optimum();
    auto out = seesaw_from(init, {.tol = 1e-12});
    EXPECT_TRUE(out.converged);
    EXPECT_LE(out.trace.size(), 3u);
    EXPECT_NEAR(out.score, kTsirelson, 1e-12);
    EXPECT_NEAR(out.trace.front(), kTsirelson, 1e-12);
}

TEST(Seesaw, DegenerateAliceIsClassical) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto r = seesaw_chsh({.dim = 2, .restarts = 4, .tol = 1e-12, .seed = seed, .optimize_alice = false});
        EXPECT_LE(r.best_score, 2.0 + 1e-9);
        EXPECT_EQ(r.state.alice[0].matrix(), r.state.alice[1].matrix());
    }
}

TEST(Seesaw, ScheduleIndependent) {
    auto one = seesaw_chsh({.dim = 2, .restarts = 6, .tol = 1e-12, .seed = 3, .threads = 1});
    auto many = seesaw_chsh({.dim = 2, .restarts = 6, .tol = 1e-12, .seed = 3, .threads = 4});
    EXPECT_EQ(one.best_score, many.best_score);
    EXPECT_EQ(one.best_restart, many.best_restart);
}

TEST(Seesaw, RejectsBadOptions) {
    EXPECT_THROW(seesaw_chsh({.dim = 5}), ValidationError);
    EXPECT_THROW(seesaw_chsh({.dim = 2, .restarts = 0}), ValidationError);
    EXPECT_THROW(seesaw_chsh({.dim = 2, .restarts = 1, .tol = 0}), ValidationError);
}

TEST(Seesaw, TraceCsv) {
    auto out = seesaw_from(standard_optimum(), {});
    auto csv = seesaw_trace_csv(out);
    EXPECT_EQ(csv.rfind("iteration,score\n0,", 0), 0u);
}

TEST(Seesaw, BellValueMatchesQuantumBoxConversion) {
    // B of the Born-rule box equals 2 + S/2 for the seesaw's final state.
    auto r = seesaw_chsh({.dim = 2, .restarts = 2, .tol = 1e-10, .seed = 11});
    auto rho = DensityOperator::from_pure(r.state.psi);
    auto box = make_quantum_box(rho, r.state.alice, r.state.bob);
    EXPECT_NEAR(chsh_value(box), chsh_B_from_S(r.best_score), 1e-10);
}

TEST(LocalBoxOracle, ThreeQuarters) {
    auto r = local_box_oracle();
    EXPECT_NEAR(r.value, 0.75, 1e-12);
    for (double v : r.per_box) {
        EXPECT_LE(v, 0.75 + 1e-12);
    }
}

TEST(LocalBoxOracle, ConstantOutputsAndUniformMixture) {
    PomInstance inst(2);
    auto constant = make_local_box({{0, 0}, {0, 0}});
    EXPECT_EQ(pom_success(inst, correlation_protocol(constant)).average, 0.75);

    std::vector<NSBox> all;
    for (const auto &s : local_deterministic_strategies()) {
        all.push_back(make_local_box(s));
    }
    auto uniform = mix_boxes(all, std::vector<double>(16, 1.0 / 16));
    EXPECT_NEAR(pom_success(inst, correlation_protocol(uniform)).average, 0.5, 1e-15);
}
