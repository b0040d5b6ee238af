#pragma once

// Small dense two-phase primal simplex with Bland's rule.
//
// Solves: maximize objective . x subject to equality rows and per-variable
// nonnegativity. Works over double or exact rationals.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pomlab/error.hpp"

namespace pomlab {

using Rational = boost::multiprecision::cpp_rational;

template <class Scalar>
struct LinearProgram {
    std::vector<Scalar> objective;
    std::vector<std::vector<Scalar>> equality_rows;
    std::vector<Scalar> equality_rhs;
    /// One flag per variable; a variable without the flag is free. Empty means
    /// every variable is nonnegative.
    std::vector<bool> nonnegative;

    explicit LinearProgram(std::size_t num_variables) : objective(num_variables, Scalar(0)) {
    }

    std::size_t num_variables() const {
        return objective.size();
    }
    void add_equality(std::vector<Scalar> row, Scalar rhs) {
        if (row.size() != objective.size()) {
            throw ValidationError("LP row length does not match the number of variables");
        }
        equality_rows.push_back(std::move(row));
        equality_rhs.push_back(std::move(rhs));
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

template <class Scalar>
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Scalar objective = Scalar(0);
    std::vector<Scalar> x;
};

template <class Scalar>
struct LpTraits {
    static bool is_zero(const Scalar &v) {
        return v == 0;
    }
    static bool is_positive(const Scalar &v) {
        return v > 0;
    }
};

template <>
struct LpTraits<double> {
    static constexpr double eps = 1e-11;
    static bool is_zero(double v) {
        return std::abs(v) <= eps;
    }
    static bool is_positive(double v) {
        return v > eps;
    }
};

namespace detail {

template <class Scalar>
class SimplexTableau {
  public:
    using Traits = LpTraits<Scalar>;

    SimplexTableau(std::vector<std::vector<Scalar>> rows, std::vector<std::size_t> basis)
        : rows_(std::move(rows)), basis_(std::move(basis)) {
    }

    /// Runs Bland's-rule iterations maximizing `cost` over columns with
    /// `allowed[j]`. Returns false when unbounded.
    bool maximize(const std::vector<Scalar> &cost, const std::vector<bool> &allowed) {
        const std::size_t cols = cost.size();
        while (true) {
            std::size_t entering = cols;
            for (std::size_t j = 0; j < cols && entering == cols; ++j) {
                if (!allowed[j] || is_basic(j)) {
                    continue;
                }
                Scalar reduced = cost[j];
                for (std::size_t i = 0; i < rows_.size(); ++i) {
                    if (!Traits::is_zero(rows_[i][j])) {
                        reduced -= cost[basis_[i]] * rows_[i][j];
                    }
                }
                if (Traits::is_positive(reduced)) {
                    entering = j;
                }
            }
            if (entering == cols) {
                return true;
            }
            std::size_t leaving = rows_.size();
            Scalar best_ratio = Scalar(0);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (!Traits::is_positive(rows_[i][entering])) {
                    continue;
                }
                Scalar ratio = rows_[i].back() / rows_[i][entering];
                if (leaving == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving == rows_.size()) {
                return false;
            }
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        Scalar inv = Scalar(1) / rows_[row][col];
        for (auto &v : rows_[row]) {
            v *= inv;
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row || Traits::is_zero(rows_[i][col])) {
                continue;
            }
            Scalar factor = rows_[i][col];
            for (std::size_t j = 0; j < rows_[i].size(); ++j) {
                if (!Traits::is_zero(rows_[row][j])) {
                    rows_[i][j] -= factor * rows_[row][j];
                }
            }
            rows_[i][col] = Scalar(0);
        }
        basis_[row] = col;
    }

    bool is_basic(std::size_t col) const {
        for (auto b : basis_) {
            if (b == col) {
                return true;
            }
        }
        return false;
    }

    Scalar value(const std::vector<Scalar> &cost) const {
        Scalar v = Scalar(0);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            v += cost[basis_[i]] * rows_[i].back();
        }
        return v;
    }

    std::vector<std::vector<Scalar>> &rows() {
        return rows_;
    }
    std::vector<std::size_t> &basis() {
        return basis_;
    }

  private:
    std::vector<std::vector<Scalar>> rows_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

template <class Scalar>
LpSolution<Scalar> solve_lp(const LinearProgram<Scalar> &lp) {
    using Traits = LpTraits<Scalar>;
    const std::size_t n = lp.num_variables();
    const std::size_t m = lp.equality_rows.size();
    if (!lp.nonnegative.empty() && lp.nonnegative.size() != n) {
        throw ValidationError("LP nonnegativity flags do not match the number of variables");
    }

    // Free variables split into a positive and a negative part.
    struct Column {
        std::size_t var;
        bool negated;
    };
    std::vector<Column> columns;
    for (std::size_t v = 0; v < n; ++v) {
        columns.push_back({v, false});
        if (!lp.nonnegative.empty() && !lp.nonnegative[v]) {
            columns.push_back({v, true});
        }
    }
    const std::size_t structural = columns.size();
    const std::size_t total = structural + m;

    std::vector<std::vector<Scalar>> rows(m, std::vector<Scalar>(total + 1, Scalar(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = lp.equality_rhs[i] < 0;
        for (std::size_t j = 0; j < structural; ++j) {
            Scalar a = lp.equality_rows[i][columns[j].var];
            if (columns[j].negated) {
                a = -a;
            }
            rows[i][j] = flip ? Scalar(-a) : a;
        }
        rows[i][structural + i] = Scalar(1);
        rows[i][total] = flip ? Scalar(-lp.equality_rhs[i]) : lp.equality_rhs[i];
        basis[i] = structural + i;
    }
    detail::SimplexTableau<Scalar> tableau(std::move(rows), std::move(basis));

    // Phase I: drive the artificial variables to zero.
    std::vector<Scalar> phase1(total, Scalar(0));
    for (std::size_t j = structural; j < total; ++j) {
        phase1[j] = Scalar(-1);
    }
    std::vector<bool> all(total, true);
    tableau.maximize(phase1, all);
    LpSolution<Scalar> out;
    if (!Traits::is_zero(tableau.value(phase1))) {
        out.status = LpStatus::infeasible;
        return out;
    }
    // Pivot remaining artificials out of the basis where possible; rows where
    // that fails are redundant and stay pinned at zero.
    for (std::size_t i = 0; i < m; ++i) {
        if (tableau.basis()[i] < structural) {
            continue;
        }
        for (std::size_t j = 0; j < structural; ++j) {
            if (!Traits::is_zero(tableau.rows()[i][j]) && !tableau.is_basic(j)) {
                tableau.pivot(i, j);
                break;
            }
        }
    }

    std::vector<Scalar> phase2(total, Scalar(0));
    for (std::size_t j = 0; j < structural; ++j) {
        phase2[j] = columns[j].negated ? Scalar(-lp.objective[columns[j].var]) : lp.objective[columns[j].var];
    }
    std::vector<bool> structural_only(total, false);
    for (std::size_t j = 0; j < structural; ++j) {
        structural_only[j] = true;
    }
    if (!tableau.maximize(phase2, structural_only)) {
        out.status = LpStatus::unbounded;
        return out;
    }

    out.status = LpStatus::optimal;
    out.x.assign(n, Scalar(0));
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t b = tableau.basis()[i];
        if (b < structural) {
            const Scalar &v = tableau.rows()[i].back();
            if (columns[b].negated) {
                out.x[columns[b].var] -= v;
            } else {
                out.x[columns[b].var] += v;
            }
        }
    }
    out.objective = Scalar(0);
    for (std::size_t v = 0; v < n; ++v) {
        out.objective += lp.objective[v] * out.x[v];
    }
    return out;
}

}  // namespace pomlab
