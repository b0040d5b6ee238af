#include "pomlab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pomlab/error.hpp"

namespace pomlab {

namespace {

void check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxDimension) {
        throw ValidationError("matrix dimension " + std::to_string(dim) + " outside [1, " +
                              std::to_string(kMaxDimension) + "]");
    }
}

void require_same_dim(const Matrix &a, const Matrix &b, const char *what) {
    if (a.dim() != b.dim()) {
        throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()) + ")");
    }
}

}  // namespace

Matrix::Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    check_dim(dim);
}

Matrix::Matrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    check_dim(dim);
    if (entries_.size() != dim * dim) {
        throw ValidationError("matrix of dimension " + std::to_string(dim) + " needs " + std::to_string(dim * dim) +
                              " entries, got " + std::to_string(entries_.size()));
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        m(k, k) = values[k];
    }
    return m;
}

Matrix Matrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    if (ket.size() != bra.size()) {
        throw ValidationError("outer: length mismatch");
    }
    Matrix m(ket.size());
    for (std::size_t r = 0; r < ket.size(); ++r) {
        for (std::size_t c = 0; c < bra.size(); ++c) {
            m(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Complex Matrix::trace() const {
    Complex t = 0;
    for (std::size_t k = 0; k < dim_; ++k) {
        t += (*this)(k, k);
    }
    return t;
}

double Matrix::max_abs_diff(const Matrix &other) const {
    require_same_dim(*this, other, "max_abs_diff");
    double worst = 0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
    }
    return worst;
}

bool Matrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Complex> Matrix::apply(std::span<const Complex> v) const {
    if (v.size() != dim_) {
        throw ValidationError("apply: vector length mismatch");
    }
    std::vector<Complex> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex acc = 0;
        for (std::size_t c = 0; c < dim_; ++c) {
            acc += (*this)(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

Matrix &Matrix::operator+=(const Matrix &rhs) {
    require_same_dim(*this, rhs, "operator+");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += rhs.entries_[k];
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &rhs) {
    require_same_dim(*this, rhs, "operator-");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= rhs.entries_[k];
    }
    return *this;
}

Matrix &Matrix::operator*=(Complex scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

Matrix operator*(const Matrix &lhs, const Matrix &rhs) {
    require_same_dim(lhs, rhs, "operator*");
    std::size_t d = lhs.dim();
    Matrix out(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            Complex a = lhs(r, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < d; ++c) {
                out(r, c) += a * rhs(k, c);
            }
        }
    }
    return out;
}

namespace pauli {
Matrix I() {
    return Matrix::identity(2);
}
Matrix X() {
    return Matrix(2, {0, 1, 1, 0});
}
Matrix Y() {
    return Matrix(2, {0, Complex(0, -1), Complex(0, 1), 0});
}
Matrix Z() {
    return Matrix(2, {1, 0, 0, -1});
}
}  // namespace pauli

Matrix tensor(const Matrix &a, const Matrix &b) {
    std::size_t da = a.dim();
    std::size_t db = b.dim();
    Matrix out(da * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            Complex aij = a(i, j);
            for (std::size_t k = 0; k < db; ++k) {
                for (std::size_t l = 0; l < db; ++l) {
                    out(i * db + k, j * db + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> EigenDecomposition::vector(std::size_t k) const {
    std::vector<Complex> v(vectors.dim());
    for (std::size_t r = 0; r < v.size(); ++r) {
        v[r] = vectors(r, k);
    }
    return v;
}

EigenDecomposition eigh(const Matrix &hermitian) {
    const std::size_t d = hermitian.dim();
    double scale = 0;
    for (auto e : hermitian.entries()) {
        scale += std::norm(e);
    }
    scale = std::sqrt(scale);
    if (!hermitian.is_hermitian(1e-9 * std::max(1.0, scale))) {
        throw ValidationError("eigh: matrix is not Hermitian");
    }

    Matrix a = hermitian;
    Matrix v = Matrix::identity(d);
    auto off_norm = [&] {
        double s = 0;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                if (r != c) {
                    s += std::norm(a(r, c));
                }
            }
        }
        return std::sqrt(s);
    };

    const double threshold = 1e-14 * std::max(1.0, scale);
    for (int sweep = 0; sweep < 64 && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                Complex apq = a(p, q);
                double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                // Phase-rotate q so the (p, q) entry is real, then apply a
                // real Jacobi rotation that annihilates it.
                Complex phase = std::conj(apq / mag);
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = (aqq - app) / (2.0 * mag);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                // U restricted to the (p, q) block, column-major meaning:
                // U(p,p)=c, U(p,q)=s, U(q,p)=-s*phase, U(q,q)=c*phase.
                Complex upp = c;
                Complex upq = s;
                Complex uqp = -s * phase;
                Complex uqq = c * phase;
                for (std::size_t k = 0; k < d; ++k) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < d; ++k) {
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    EigenDecomposition out{std::vector<double>(d), Matrix(d)};
    for (std::size_t k = 0; k < d; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < d; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

double trace_distance(const Matrix &a, const Matrix &b) {
    auto eig = eigh(a - b);
    double sum = 0;
    for (double ev : eig.values) {
        sum += std::abs(ev);
    }
    return 0.5 * sum;
}

Matrix partial_trace(const Matrix &op, Subsystem keep, BipartiteDims dims) {
    if (dims.first == 0 || dims.second == 0 || dims.first * dims.second != op.dim()) {
        throw ValidationError("partial_trace: dimension " + std::to_string(op.dim()) + " does not factor as " +
                              std::to_string(dims.first) + " x " + std::to_string(dims.second));
    }
    const std::size_t d1 = dims.first;
    const std::size_t d2 = dims.second;
    if (keep == Subsystem::first) {
        Matrix out(d1);
        for (std::size_t i = 0; i < d1; ++i) {
            for (std::size_t j = 0; j < d1; ++j) {
                Complex acc = 0;
                for (std::size_t k = 0; k < d2; ++k) {
                    acc += op(i * d2 + k, j * d2 + k);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }
    Matrix out(d2);
    for (std::size_t k = 0; k < d2; ++k) {
        for (std::size_t l = 0; l < d2; ++l) {
            Complex acc = 0;
            for (std::size_t i = 0; i < d1; ++i) {
                acc += op(i * d2 + k, i * d2 + l);
            }
            out(k, l) = acc;
        }
    }
    return out;
}

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes, const Tolerances &tol) {
    check_dim(amplitudes.size());
    double norm2 = 0;
    for (auto a : amplitudes) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > tol.norm) {
        throw ValidationError("pure state is not normalized: |psi|^2 = " + format_real(norm2));
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
    check_dim(amplitudes.size());
    double norm2 = 0;
    for (auto a : amplitudes) {
        norm2 += std::norm(a);
    }
    if (norm2 == 0.0) {
        throw ValidationError("cannot normalize the zero vector");
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : amplitudes) {
        a *= inv;
    }
    return PureState(std::move(amplitudes));
}

Matrix PureState::projector() const {
    return Matrix::outer(amplitudes_, amplitudes_);
}

DensityOperator DensityOperator::from_matrix(Matrix mat, const Tolerances &tol) {
    if (!mat.is_hermitian(tol.hermitian)) {
        throw ValidationError("density operator is not Hermitian");
    }
    Complex tr = mat.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw ValidationError("density operator trace is " + format_real(tr.real()) + ", not 1");
    }
    auto eig = eigh(mat);
    if (eig.values.front() < -tol.psd) {
        throw ValidationError("density operator has negative eigenvalue " + format_real(eig.values.front()));
    }
    return DensityOperator(std::move(mat));
}

DensityOperator DensityOperator::from_pure(const PureState &psi) {
    return DensityOperator(psi.projector());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    return DensityOperator(Matrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

Observable Observable::from_matrix(Matrix mat, const Tolerances &tol) {
    if (!mat.is_hermitian(tol.hermitian)) {
        throw ValidationError("observable is not Hermitian");
    }
    return Observable(std::move(mat));
}

Observable Observable::dichotomic(Matrix mat, const Tolerances &tol) {
    Observable obs = from_matrix(std::move(mat), tol);
    if (!obs.is_dichotomic(tol.dichotomic)) {
        throw ValidationError("observable has eigenvalues outside [-1, 1]");
    }
    return obs;
}

bool Observable::is_dichotomic(double tol) const {
    auto eig = eigh(mat_);
    return eig.values.front() >= -1.0 - tol && eig.values.back() <= 1.0 + tol;
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

DensityOperator density_from_bloch(const BlochVector &r, const Tolerances &tol) {
    if (r.norm() > 1.0 + tol.bloch) {
        throw ValidationError("Bloch vector norm " + format_real(r.norm()) + " exceeds 1");
    }
    Matrix m(2, {Complex(0.5 * (1 + r.z)), Complex(0.5 * r.x, -0.5 * r.y), Complex(0.5 * r.x, 0.5 * r.y),
                 Complex(0.5 * (1 - r.z))});
    return DensityOperator::from_matrix(std::move(m), tol);
}

BlochVector density_to_bloch(const DensityOperator &rho) {
    if (rho.dim() != 2) {
        throw ValidationError("density_to_bloch requires a qubit");
    }
    const Matrix &m = rho.matrix();
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

std::vector<double> born_outcome_probs(const DensityOperator &rho, std::span<const Matrix> effects,
                                       const Tolerances &tol) {
    if (effects.empty()) {
        throw ValidationError("measurement has no effects");
    }
    Matrix sum(rho.dim());
    for (const auto &e : effects) {
        if (e.dim() != rho.dim()) {
            throw ValidationError("effect dimension does not match state");
        }
        if (!e.is_hermitian(tol.effect_sum) || eigh(e).values.front() < -tol.effect_sum) {
            throw ValidationError("effect is not positive semidefinite");
        }
        sum += e;
    }
    if (sum.max_abs_diff(Matrix::identity(rho.dim())) > tol.effect_sum) {
        throw ValidationError("effects do not sum to the identity");
    }
    std::vector<double> probs;
    probs.reserve(effects.size());
    for (const auto &e : effects) {
        double p = (rho.matrix() * e).trace().real();
        if (p < 0 && p >= -tol.psd) {
            p = 0;
        }
        probs.push_back(p);
    }
    return probs;
}

double expectation(const DensityOperator &rho, const Observable &obs, const Tolerances &tol) {
    if (rho.dim() != obs.dim()) {
        throw ValidationError("expectation: dimension mismatch");
    }
    Complex v = (rho.matrix() * obs.matrix()).trace();
    if (std::abs(v.imag()) > tol.imaginary) {
        throw ValidationError("expectation value has imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

double expectation(const PureState &psi, const Matrix &hermitian, const Tolerances &tol) {
    if (psi.dim() != hermitian.dim()) {
        throw ValidationError("expectation: dimension mismatch");
    }
    auto hv = hermitian.apply(psi.amplitudes());
    Complex v = 0;
    for (std::size_t k = 0; k < hv.size(); ++k) {
        v += std::conj(psi.amplitudes()[k]) * hv[k];
    }
    if (std::abs(v.imag()) > tol.imaginary) {
        throw ValidationError("expectation value has imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

DensityOperator partial_trace(const DensityOperator &rho, Subsystem keep, BipartiteDims dims, const Tolerances &tol) {
    return DensityOperator::from_matrix(partial_trace(rho.matrix(), keep, dims), tol);
}

Observable dichotomic_from_projector(const Matrix &projector, const Tolerances &tol) {
    if (!projector.is_hermitian(tol.projector) || (projector * projector).max_abs_diff(projector) > tol.projector) {
        throw ValidationError("input is not a Hermitian idempotent");
    }
    Matrix a = projector * Complex(2.0) - Matrix::identity(projector.dim());
    return Observable::dichotomic(std::move(a), tol);
}

std::array<Matrix, 2> dichotomic_effects(const Observable &obs) {
    Matrix id = Matrix::identity(obs.dim());
    return {(id + obs.matrix()) * Complex(0.5), (id - obs.matrix()) * Complex(0.5)};
}

PureState random_pure_state(std::size_t dim, Rng &rng) {
    std::vector<Complex> amps(dim);
    for (auto &a : amps) {
        double re = rng.normal();
        double im = rng.normal();
        a = Complex(re, im);
    }
    return PureState::normalized(std::move(amps));
}

Matrix random_hermitian(std::size_t dim, Rng &rng) {
    Matrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        m(r, r) = rng.normal();
        for (std::size_t c = r + 1; c < dim; ++c) {
            double re = rng.normal();
            double im = rng.normal();
            m(r, c) = Complex(re, im) * M_SQRT1_2;
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

Matrix random_projector(std::size_t dim, std::size_t rank, Rng &rng) {
    if (rank > dim) {
        throw ValidationError("projector rank exceeds dimension");
    }
    auto eig = eigh(random_hermitian(dim, rng));
    Matrix p(dim);
    for (std::size_t k = 0; k < rank; ++k) {
        auto v = eig.vector(k);
        p += Matrix::outer(v, v);
    }
    return p;
}

Observable random_dichotomic(std::size_t dim, Rng &rng) {
    std::size_t rank = dim < 2 ? 1 : 1 + static_cast<std::size_t>(rng.below(dim - 1));
    return dichotomic_from_projector(random_projector(dim, rank, rng));
}

DensityOperator random_density(std::size_t dim, Rng &rng) {
    // Induced measure from a purification on dim x dim.
    auto psi = random_pure_state(dim * dim, rng);
    return partial_trace(DensityOperator::from_pure(psi), Subsystem::first, {dim, dim});
}

}  // namespace pomlab
