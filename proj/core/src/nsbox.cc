#include "pomlab/nsbox.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pomlab/lp.hpp"

namespace pomlab {

namespace {

std::string setting(int x, int y) {
    return "x=" + std::to_string(x) + ",y=" + std::to_string(y);
}

std::string describe(const std::vector<BoxViolation> &violations) {
    std::ostringstream out;
    out << "invalid box:";
    for (const auto &v : violations) {
        out << "\n  " << to_string(v.kind) << " at " << v.where << " (residual " << v.residual << ")";
    }
    return out.str();
}

// Transformation g acting on an event (a, b, x, y).
struct Event {
    int a, b, x, y;
};

Event apply_group_element(int element, Event e) {
    // element = 4 i + 2 j + k encodes T1^i T2^j T3^k, applied right to left.
    if (element & 1) {
        e.a ^= 1;
        e.b ^= 1;
    }
    if (element & 2) {
        e.a ^= e.x;
        e.y ^= 1;
    }
    if (element & 4) {
        e.b ^= e.y;
        e.x ^= 1;
    }
    return e;
}

BoxTable isotropic_table(double gamma) {
    BoxTable t{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    bool win = (a ^ b) == (x & y);
                    t[box_index(a, b, x, y)] = win ? 0.25 * (1 + gamma) : 0.25 * (1 - gamma);
                }
            }
        }
    }
    return t;
}

}  // namespace

std::string to_string(BoxViolation::Kind kind) {
    switch (kind) {
        case BoxViolation::Kind::out_of_range:
            return "entry out of range";
        case BoxViolation::Kind::normalization:
            return "normalization";
        case BoxViolation::Kind::signaling:
            return "signaling";
    }
    return "?";
}

BoxValidationError::BoxValidationError(std::vector<BoxViolation> violations)
    : ValidationError(describe(violations)), violations_(std::move(violations)) {
}

std::vector<BoxViolation> box_violations(const BoxTable &probs, const Tolerances &tol) {
    std::vector<BoxViolation> out;
    auto p = [&](int a, int b, int x, int y) { return probs[box_index(a, b, x, y)]; };
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    double v = p(a, b, x, y);
                    if (!(v >= -tol.probability && v <= 1.0 + tol.probability)) {
                        out.push_back({BoxViolation::Kind::out_of_range,
                                       "p(" + std::to_string(a) + "," + std::to_string(b) + "|" + std::to_string(x) +
                                           "," + std::to_string(y) + ")",
                                       v < 0 ? -v : v - 1.0});
                    }
                }
            }
        }
    }
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double total = p(0, 0, x, y) + p(0, 1, x, y) + p(1, 0, x, y) + p(1, 1, x, y);
            if (std::abs(total - 1.0) > tol.probability) {
                out.push_back({BoxViolation::Kind::normalization, setting(x, y), total - 1.0});
            }
        }
    }
    for (int a = 0; a < 2; ++a) {
        for (int x = 0; x < 2; ++x) {
            double m0 = p(a, 0, x, 0) + p(a, 1, x, 0);
            double m1 = p(a, 0, x, 1) + p(a, 1, x, 1);
            if (std::abs(m0 - m1) > tol.no_signaling) {
                out.push_back({BoxViolation::Kind::signaling,
                               "Alice marginal a=" + std::to_string(a) + ",x=" + std::to_string(x), m0 - m1});
            }
        }
    }
    for (int b = 0; b < 2; ++b) {
        for (int y = 0; y < 2; ++y) {
            double m0 = p(0, b, 0, y) + p(1, b, 0, y);
            double m1 = p(0, b, 1, y) + p(1, b, 1, y);
            if (std::abs(m0 - m1) > tol.no_signaling) {
                out.push_back({BoxViolation::Kind::signaling,
                               "Bob marginal b=" + std::to_string(b) + ",y=" + std::to_string(y), m0 - m1});
            }
        }
    }
    return out;
}

NSBox validate_box(const BoxTable &probs, const Tolerances &tol) {
    auto violations = box_violations(probs, tol);
    if (!violations.empty()) {
        throw BoxValidationError(std::move(violations));
    }
    return NSBox(probs);
}

double NSBox::alice_marginal(int a, int x) const {
    return p(a, 0, x, 0) + p(a, 1, x, 0);
}

double NSBox::bob_marginal(int b, int y) const {
    return p(0, b, 0, y) + p(1, b, 0, y);
}

double chsh_value(const NSBox &box) {
    return chsh_symmetries(box)[0];
}

std::array<double, 8> chsh_symmetries(const NSBox &box) {
    std::array<double, 8> out{};
    for (int k = 0; k < 8; ++k) {
        int alpha = (k >> 2) & 1;
        int beta = (k >> 1) & 1;
        int gamma = k & 1;
        double total = 0;
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                int target = (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma;
                for (int a = 0; a < 2; ++a) {
                    total += box.p(a, a ^ target, x, y);
                }
            }
        }
        out[k] = total;
    }
    return out;
}

std::array<LocalDeterministic, 16> local_deterministic_strategies() {
    std::array<LocalDeterministic, 16> out{};
    for (int k = 0; k < 16; ++k) {
        out[k] = {{(k >> 3) & 1, (k >> 2) & 1}, {(k >> 1) & 1, k & 1}};
    }
    return out;
}

LocalityResult is_local(const NSBox &box) {
    LocalityResult result{};
    auto sym = chsh_symmetries(box);
    auto worst = std::max_element(sym.begin(), sym.end());
    result.witness_symmetry = static_cast<int>(worst - sym.begin());
    result.witness_value = *worst;
    if (*worst > 3.0 + 1e-9) {
        return result;
    }

    // w >= 0, sum_k w_k D_k = p (16 rows), sum_k w_k = 1.
    const auto strategies = local_deterministic_strategies();
    LinearProgram<double> lp(16);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    std::vector<double> row(16, 0.0);
                    for (int k = 0; k < 16; ++k) {
                        const auto &s = strategies[k];
                        row[k] = (s.alice[x] == a && s.bob[y] == b) ? 1.0 : 0.0;
                    }
                    lp.add_equality(std::move(row), box.p(a, b, x, y));
                }
            }
        }
    }
    lp.add_equality(std::vector<double>(16, 1.0), 1.0);
    auto solution = solve_lp(lp);
    result.local = solution.status == LpStatus::optimal;
    if (result.local) {
        for (int k = 0; k < 16; ++k) {
            result.weights[k] = std::max(0.0, solution.x[k]);
        }
        result.witness_symmetry = -1;
    }
    return result;
}

NSBox CanonicalBox::box() const {
    return validate_box(isotropic_table(gamma));
}

DepolarizedBox depolarize(const NSBox &box) {
    BoxTable t{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    double acc = 0;
                    for (int g = 0; g < 8; ++g) {
                        Event e = apply_group_element(g, {a, b, x, y});
                        acc += box.p(e.a, e.b, e.x, e.y);
                    }
                    t[box_index(a, b, x, y)] = acc / 8.0;
                }
            }
        }
    }
    NSBox out = validate_box(t);
    return {out, CanonicalBox{chsh_value(out) / 2.0 - 1.0}};
}

NSBox make_pr_box() {
    return validate_box(isotropic_table(1.0));
}

NSBox make_isotropic_box(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ValidationError("isotropic box needs gamma in [0, 1], got " + format_real(gamma));
    }
    return validate_box(isotropic_table(gamma));
}

NSBox make_local_box(const LocalDeterministic &s) {
    for (int v : {s.alice[0], s.alice[1], s.bob[0], s.bob[1]}) {
        if (v != 0 && v != 1) {
            throw ValidationError("local deterministic box outputs must be bits");
        }
    }
    BoxTable t{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            t[box_index(s.alice[x], s.bob[y], x, y)] = 1.0;
        }
    }
    return validate_box(t);
}

NSBox make_quantum_box(const DensityOperator &state, const std::array<Observable, 2> &alice,
                       const std::array<Observable, 2> &bob, const Tolerances &tol) {
    const std::size_t da = alice[0].dim();
    const std::size_t db = bob[0].dim();
    if (alice[1].dim() != da || bob[1].dim() != db || state.dim() != da * db) {
        throw ValidationError("quantum box: observable dimensions do not match the state");
    }
    for (const auto *obs : {&alice[0], &alice[1], &bob[0], &bob[1]}) {
        if (!obs->is_dichotomic(tol.dichotomic)) {
            throw ValidationError("quantum box: observable is not dichotomic");
        }
    }
    BoxTable t{};
    for (int x = 0; x < 2; ++x) {
        auto ea = dichotomic_effects(alice[x]);
        for (int y = 0; y < 2; ++y) {
            auto eb = dichotomic_effects(bob[y]);
            std::vector<Matrix> joint{tensor(ea[0], eb[0]), tensor(ea[0], eb[1]), tensor(ea[1], eb[0]),
                                      tensor(ea[1], eb[1])};
            auto probs = born_outcome_probs(state, joint, tol);
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    t[box_index(a, b, x, y)] = probs[2 * a + b];
                }
            }
        }
    }
    return validate_box(t, tol);
}

NSBox mix_boxes(const std::vector<NSBox> &boxes, const std::vector<double> &weights) {
    if (boxes.empty() || boxes.size() != weights.size()) {
        throw ValidationError("mix_boxes needs one weight per box");
    }
    BoxTable t{};
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        if (weights[k] < 0) {
            throw ValidationError("mix_boxes: negative weight");
        }
        for (std::size_t i = 0; i < 16; ++i) {
            t[i] += weights[k] * boxes[k].probs()[i];
        }
    }
    return validate_box(t);
}

double correlator(const NSBox &box, int x, int y) {
    double e = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            e += ((a ^ b) ? -1.0 : 1.0) * box.p(a, b, x, y);
        }
    }
    return e;
}

}  // namespace pomlab
