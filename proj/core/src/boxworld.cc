#include "pomlab/boxworld.hpp"

#include <cmath>
#include <string>

#include "pomlab/error.hpp"

namespace pomlab {

GBitState GBitState::from_coordinates(double c0, double c1, const Tolerances &tol) {
    auto in_unit = [&](double c) { return c >= -tol.probability && c <= 1.0 + tol.probability; };
    if (!in_unit(c0) || !in_unit(c1)) {
        throw ValidationError("g-bit coordinates (" + format_real(c0) + ", " + format_real(c1) +
                              ") outside the unit square");
    }
    return GBitState(c0, c1);
}

double GBitState::outcome_probability(int a, int x) const {
    if ((a != 0 && a != 1) || (x != 0 && x != 1)) {
        throw ValidationError("g-bit input and output are binary");
    }
    double p0 = x == 0 ? c0_ : c1_;
    return a == 0 ? p0 : 1.0 - p0;
}

std::array<double, 4> GBitState::weights() const {
    return {c0_ * c1_, c0_ * (1 - c1_), (1 - c0_) * (1 - c1_), (1 - c0_) * c1_};
}

GBitEffect GBitEffect::extremal(int j) {
    switch (j) {
        case 1:
            return GBitEffect(0, 1, 0);
        case 2:
            return GBitEffect(0, 0, 1);
        case 3:
            return GBitEffect(1, -1, 0);
        case 4:
            return GBitEffect(1, 0, -1);
        default:
            throw ValidationError("extremal g-bit effect index " + std::to_string(j) + " outside 1..4");
    }
}

GBitEffect GBitEffect::unit() {
    return GBitEffect(1, 0, 0);
}

GBitEffect GBitEffect::zero() {
    return GBitEffect(0, 0, 0);
}

GBitEffect GBitEffect::affine(double constant, double slope0, double slope1) {
    GBitEffect e(constant, slope0, slope1);
    for (int j = 1; j <= 4; ++j) {
        double v = gbit_prob(gbit_pure(j), e);
        if (v < -kDefaultTolerances.probability || v > 1.0 + kDefaultTolerances.probability) {
            throw ValidationError("affine functional takes value " + format_real(v) + " on omega_" +
                                  std::to_string(j));
        }
    }
    return e;
}

GBitState gbit_pure(int j) {
    switch (j) {
        case 1:
            return GBitState::from_coordinates(1, 1);
        case 2:
            return GBitState::from_coordinates(1, 0);
        case 3:
            return GBitState::from_coordinates(0, 0);
        case 4:
            return GBitState::from_coordinates(0, 1);
        default:
            throw ValidationError("pure g-bit index " + std::to_string(j) + " outside 1..4");
    }
}

GBitState gbit_mix(std::span<const GBitState> states, std::span<const double> weights, const Tolerances &tol) {
    if (states.empty() || states.size() != weights.size()) {
        throw ValidationError("gbit_mix needs one weight per state");
    }
    double total = 0;
    double c0 = 0;
    double c1 = 0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (weights[k] < 0) {
            throw ValidationError("gbit_mix: negative weight");
        }
        total += weights[k];
        c0 += weights[k] * states[k].c0();
        c1 += weights[k] * states[k].c1();
    }
    if (std::abs(total - 1.0) > tol.probability) {
        throw ValidationError("gbit_mix: weights sum to " + format_real(total));
    }
    return GBitState::from_coordinates(c0, c1, tol);
}

double gbit_prob(const GBitState &state, const GBitEffect &effect) {
    return effect.constant() + effect.slope0() * state.c0() + effect.slope1() * state.c1();
}

std::array<GBitEffect, 2> gbit_measurement(int input) {
    if (input == 0) {
        return {GBitEffect::extremal(1), GBitEffect::extremal(3)};
    }
    if (input == 1) {
        return {GBitEffect::extremal(2), GBitEffect::extremal(4)};
    }
    throw ValidationError("g-bit measurement input must be 0 or 1");
}

double gbit_distance(const GBitState &a, const GBitState &b) {
    return std::hypot(a.c0() - b.c0(), a.c1() - b.c1());
}

}  // namespace pomlab
