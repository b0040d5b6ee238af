#pragma once

// Bipartite boxes p(a,b|x,y) with binary inputs and outputs.
//
// Entries are stored p[a][b][x][y], flattened a-major: index = 8a + 4b + 2x + y.

#include <array>
#include <string>
#include <vector>

#include "pomlab/error.hpp"
#include "pomlab/qcore.hpp"
#include "pomlab/tolerance.hpp"

namespace pomlab {

using BoxTable = std::array<double, 16>;

constexpr std::size_t box_index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(8 * a + 4 * b + 2 * x + y);
}

struct BoxViolation {
    enum class Kind { out_of_range, normalization, signaling };
    Kind kind;
    std::string where;
    double residual;
};

std::string to_string(BoxViolation::Kind kind);

/// Thrown by validate_box; carries every violated constraint.
class BoxValidationError : public ValidationError {
  public:
    explicit BoxValidationError(std::vector<BoxViolation> violations);
    const std::vector<BoxViolation> &violations() const {
        return violations_;
    }

  private:
    std::vector<BoxViolation> violations_;
};

/// Every constraint the table violates: entries outside [0, 1], settings
/// whose outcomes do not sum to 1, and marginals that depend on the remote
/// input.
std::vector<BoxViolation> box_violations(const BoxTable &probs, const Tolerances &tol = kDefaultTolerances);

class NSBox {
  public:
    double p(int a, int b, int x, int y) const {
        return probs_[box_index(a, b, x, y)];
    }
    const BoxTable &probs() const {
        return probs_;
    }
    /// P(a|x) for Alice.
    double alice_marginal(int a, int x) const;
    /// P(b|y) for Bob.
    double bob_marginal(int b, int y) const;

  private:
    friend NSBox validate_box(const BoxTable &probs, const Tolerances &tol);
    explicit NSBox(const BoxTable &probs) : probs_(probs) {
    }
    BoxTable probs_;
};

/// Throws BoxValidationError listing every violation.
NSBox validate_box(const BoxTable &probs, const Tolerances &tol = kDefaultTolerances);

/// sum over x, y of p(a xor b = xy | x, y); in [0, 4].
double chsh_value(const NSBox &box);

/// The eight relabelled CHSH quantities
///   B_k = sum_{x,y} p(a xor b = xy xor alpha x xor beta y xor gamma | x, y)
/// with k = 4 alpha + 2 beta + gamma. k = 0 is chsh_value. A box is local
/// exactly when all eight are at most 3.
std::array<double, 8> chsh_symmetries(const NSBox &box);

/// a = alice[x], b = bob[y].
struct LocalDeterministic {
    std::array<int, 2> alice;
    std::array<int, 2> bob;

    bool operator==(const LocalDeterministic &) const = default;
};

/// All 16 local deterministic strategies; entry k has
/// alice = {k>>3 & 1, k>>2 & 1}, bob = {k>>1 & 1, k & 1}.
std::array<LocalDeterministic, 16> local_deterministic_strategies();

struct LocalityResult {
    bool local;
    /// When local: convex weights over local_deterministic_strategies().
    std::array<double, 16> weights{};
    /// When nonlocal: the most violated CHSH symmetry and its value.
    int witness_symmetry = -1;
    double witness_value = 0;
};

/// LP feasibility over the 16 deterministic boxes, with the 8 CHSH symmetries
/// as a pre-filter and as the nonlocality witness.
LocalityResult is_local(const NSBox &box);

/// Box with p(a xor b = xy | x, y) = (1 + gamma)/2 for every setting.
struct CanonicalBox {
    double gamma;

    NSBox box() const;
};

struct DepolarizedBox {
    NSBox box;
    CanonicalBox canonical;
};

/// Uniform average over the 8-element group generated by
///   (x -> x^1, b -> b^y), (y -> y^1, a -> a^x), (a -> a^1, b -> b^1),
/// each of which preserves the event a xor b = xy. The result depends on the
/// entry only through a xor b xor xy, and gamma = B/2 - 1 (negative when
/// B < 2).
DepolarizedBox depolarize(const NSBox &box);

NSBox make_pr_box();
/// gamma in [0, 1].
NSBox make_isotropic_box(double gamma);
NSBox make_local_box(const LocalDeterministic &strategy);
/// Box produced by Born-rule statistics of the shared state with Alice
/// measuring alice[x] and Bob bob[y]; outcome 0 is the +1 side of each
/// dichotomic observable.
NSBox make_quantum_box(const DensityOperator &state, const std::array<Observable, 2> &alice,
                       const std::array<Observable, 2> &bob, const Tolerances &tol = kDefaultTolerances);
/// Convex mixture of boxes.
NSBox mix_boxes(const std::vector<NSBox> &boxes, const std::vector<double> &weights);

/// Correlator <A_x B_y> = sum (-1)^(a+b) p(a,b|x,y).
double correlator(const NSBox &box, int x, int y);

}  // namespace pomlab
