#pragma once

namespace pomlab {

/// Numerical tolerances used when validating domain objects.
///
/// A single record is threaded through every constructor that validates, so a
/// test can tighten (or loosen) one threshold without touching the others.
struct Tolerances {
    double hermitian = 1e-12;   // max |M - M^dagger| entry
    double trace = 1e-12;       // |tr rho - 1|
    double psd = 1e-12;         // smallest admissible eigenvalue is -psd
    double norm = 1e-12;        // | |psi|^2 - 1 |
    double bloch = 1e-12;       // |r| <= 1 + bloch
    double effect_sum = 1e-10;  // sum of effects vs identity
    double projector = 1e-10;   // |P^2 - P|, |P - P^dagger|
    double dichotomic = 1e-10;  // eigenvalues within [-1, 1]
    double imaginary = 1e-10;   // imaginary residue of a real expectation value
    double probability = 1e-12; // normalization of classical distributions
    double no_signaling = 1e-12;
    double parity_leak = 1e-10; // a strategy is legal when its leak is below this
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace pomlab
