#pragma once

// Small-dimension dense complex linear algebra and the quantum objects built
// on it: density operators, pure states, observables and Bloch vectors.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pomlab/rng.hpp"
#include "pomlab/tolerance.hpp"

namespace pomlab {

using Complex = std::complex<double>;

/// Largest supported matrix dimension. Single systems use d <= 8; the seesaw
/// optimizer needs the joint space of two d = 4 systems.
inline constexpr std::size_t kMaxDimension = 16;

/// Dense dim x dim complex matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    /// Zero matrix.
    explicit Matrix(std::size_t dim);
    Matrix(std::size_t dim, std::vector<Complex> entries);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(std::span<const double> values);
    /// |ket><bra|
    static Matrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    Matrix adjoint() const;
    Complex trace() const;
    /// Largest absolute entry of this - other.
    double max_abs_diff(const Matrix &other) const;
    bool is_hermitian(double tol) const;
    /// Matrix-vector product.
    std::vector<Complex> apply(std::span<const Complex> v) const;

    Matrix &operator+=(const Matrix &rhs);
    Matrix &operator-=(const Matrix &rhs);
    Matrix &operator*=(Complex scale);

    friend Matrix operator+(Matrix lhs, const Matrix &rhs) {
        return lhs += rhs;
    }
    friend Matrix operator-(Matrix lhs, const Matrix &rhs) {
        return lhs -= rhs;
    }
    friend Matrix operator*(Matrix lhs, Complex scale) {
        return lhs *= scale;
    }
    friend Matrix operator*(Complex scale, Matrix rhs) {
        return rhs *= scale;
    }
    friend Matrix operator*(const Matrix &lhs, const Matrix &rhs);
    bool operator==(const Matrix &other) const = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
}  // namespace pauli

/// Kronecker product a (x) b.
Matrix tensor(const Matrix &a, const Matrix &b);

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending, and the
/// matching orthonormal eigenvectors as the columns of `vectors`.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;

    std::vector<Complex> vector(std::size_t k) const;
};

/// Cyclic complex Jacobi rotations; iterates until the off-diagonal Frobenius
/// norm is below 1e-14 relative to the matrix norm.
EigenDecomposition eigh(const Matrix &hermitian);

/// 1/2 * sum |eigenvalues(a - b)| for Hermitian a, b.
double trace_distance(const Matrix &a, const Matrix &b);

enum class Subsystem { first, second };

struct BipartiteDims {
    std::size_t first;
    std::size_t second;
};

/// Partial trace of an arbitrary operator on C^first (x) C^second, keeping
/// `keep`.
Matrix partial_trace(const Matrix &op, Subsystem keep, BipartiteDims dims);

class PureState {
  public:
    static PureState from_amplitudes(std::vector<Complex> amplitudes, const Tolerances &tol = kDefaultTolerances);
    /// Normalizes before validation; rejects the zero vector.
    static PureState normalized(std::vector<Complex> amplitudes);

    std::size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    Matrix projector() const;

  private:
    explicit PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    }
    std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
  public:
    static DensityOperator from_matrix(Matrix mat, const Tolerances &tol = kDefaultTolerances);
    static DensityOperator from_pure(const PureState &psi);
    static DensityOperator maximally_mixed(std::size_t dim);

    std::size_t dim() const {
        return mat_.dim();
    }
    const Matrix &matrix() const {
        return mat_;
    }

  private:
    explicit DensityOperator(Matrix mat) : mat_(std::move(mat)) {
    }
    Matrix mat_;
};

/// Hermitian operator.
class Observable {
  public:
    static Observable from_matrix(Matrix mat, const Tolerances &tol = kDefaultTolerances);
    /// Additionally requires every eigenvalue in [-1, 1].
    static Observable dichotomic(Matrix mat, const Tolerances &tol = kDefaultTolerances);

    std::size_t dim() const {
        return mat_.dim();
    }
    const Matrix &matrix() const {
        return mat_;
    }
    bool is_dichotomic(double tol = kDefaultTolerances.dichotomic) const;

  private:
    explicit Observable(Matrix mat) : mat_(std::move(mat)) {
    }
    Matrix mat_;
};

struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm() const;
    bool operator==(const BlochVector &) const = default;
};

/// 1/2 (I + x X + y Y + z Z). Rejects |r| > 1 + tol.bloch.
DensityOperator density_from_bloch(const BlochVector &r, const Tolerances &tol = kDefaultTolerances);
/// Inverse of density_from_bloch; requires a qubit.
BlochVector density_to_bloch(const DensityOperator &rho);

/// Tr(rho E_k) for each effect. Effects must be PSD and resolve the identity.
/// Values in [-psd, 0) are clamped to 0.
std::vector<double> born_outcome_probs(const DensityOperator &rho, std::span<const Matrix> effects,
                                       const Tolerances &tol = kDefaultTolerances);

/// Tr(rho O), after checking the imaginary residue is below tol.imaginary.
double expectation(const DensityOperator &rho, const Observable &obs, const Tolerances &tol = kDefaultTolerances);
/// <psi|O|psi> for an arbitrary Hermitian matrix.
double expectation(const PureState &psi, const Matrix &hermitian, const Tolerances &tol = kDefaultTolerances);

DensityOperator partial_trace(const DensityOperator &rho, Subsystem keep, BipartiteDims dims,
                              const Tolerances &tol = kDefaultTolerances);

/// 2P - I for a Hermitian idempotent P.
Observable dichotomic_from_projector(const Matrix &projector, const Tolerances &tol = kDefaultTolerances);

/// Two-outcome effects {(I + O)/2, (I - O)/2} of a dichotomic observable; for
/// an observable with eigenvalues exactly +-1 these are its eigenprojectors.
std::array<Matrix, 2> dichotomic_effects(const Observable &obs);

// Random sampling, all driven by the caller's Rng for determinism.
PureState random_pure_state(std::size_t dim, Rng &rng);
Matrix random_hermitian(std::size_t dim, Rng &rng);
/// Projector onto `rank` eigenvectors of a random Hermitian sample.
Matrix random_projector(std::size_t dim, std::size_t rank, Rng &rng);
/// 2P - I with P a random projector of rank in [1, dim - 1].
Observable random_dichotomic(std::size_t dim, Rng &rng);
DensityOperator random_density(std::size_t dim, Rng &rng);

}  // namespace pomlab
