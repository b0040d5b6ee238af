#pragma once

// The g-bit: a single box-world system with binary input x and binary output a.
//
// States are points of the unit square with canonical coordinates
// (P(a=0|x=0), P(a=0|x=1)). The pure states are the corners, fixed by their
// deterministic input-output behavior:
//   omega_1: a = 0       -> (1, 1)
//   omega_2: a = x       -> (1, 0)
//   omega_3: a = 1       -> (0, 0)
//   omega_4: a = x xor 1 -> (0, 1)
// Extremal effects: e_1 = "a=0 on x=0", e_2 = "a=0 on x=1", e_3 = "a=1 on
// x=0", e_4 = "a=1 on x=1". The two measurements are {e_1, e_3} (input 0)
// and {e_2, e_4} (input 1).

#include <array>
#include <span>

#include "pomlab/tolerance.hpp"

namespace pomlab {

class GBitState {
  public:
    /// Validates c0, c1 in [0, 1].
    static GBitState from_coordinates(double c0, double c1, const Tolerances &tol = kDefaultTolerances);
    static GBitState maximally_mixed() {
        return GBitState(0.5, 0.5);
    }

    /// P(a=0|x=0).
    double c0() const {
        return c0_;
    }
    /// P(a=0|x=1).
    double c1() const {
        return c1_;
    }
    /// P(a|x).
    double outcome_probability(int a, int x) const;

    /// Bilinear convex weights over omega_1..omega_4. One valid decomposition
    /// among many; the center gives the uniform one.
    std::array<double, 4> weights() const;

    bool operator==(const GBitState &) const = default;

  private:
    GBitState(double c0, double c1) : c0_(c0), c1_(c1) {
    }
    double c0_;
    double c1_;
};

/// Affine functional f(state) = constant + slope0 * c0 + slope1 * c1, valued in
/// [0, 1] on every state.
class GBitEffect {
  public:
    static GBitEffect extremal(int j);
    static GBitEffect unit();
    static GBitEffect zero();
    /// Validates 0 <= f <= 1 on the four corners.
    static GBitEffect affine(double constant, double slope0, double slope1);

    double constant() const {
        return constant_;
    }
    double slope0() const {
        return slope0_;
    }
    double slope1() const {
        return slope1_;
    }

    /// Sum as affine functionals; the result need not be a valid effect, so it
    /// is returned unvalidated (e_1 + e_3 == unit is exact).
    friend GBitEffect operator+(const GBitEffect &a, const GBitEffect &b) {
        return GBitEffect(a.constant_ + b.constant_, a.slope0_ + b.slope0_, a.slope1_ + b.slope1_);
    }
    bool operator==(const GBitEffect &) const = default;

  private:
    GBitEffect(double constant, double slope0, double slope1)
        : constant_(constant), slope0_(slope0), slope1_(slope1) {
    }
    double constant_;
    double slope0_;
    double slope1_;
};

/// omega_j, j in 1..4.
GBitState gbit_pure(int j);

/// Convex combination; weights must be nonnegative and sum to 1.
GBitState gbit_mix(std::span<const GBitState> states, std::span<const double> weights,
                   const Tolerances &tol = kDefaultTolerances);

/// e(state).
double gbit_prob(const GBitState &state, const GBitEffect &effect);

/// The two-outcome measurement for `input`: {e_1, e_3} or {e_2, e_4}, indexed
/// by outcome a.
std::array<GBitEffect, 2> gbit_measurement(int input);

/// Euclidean distance between canonical coordinates.
double gbit_distance(const GBitState &a, const GBitState &b);

}  // namespace pomlab
