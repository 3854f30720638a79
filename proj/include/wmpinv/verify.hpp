#pragma once

// Ground truth for the recursions, independent of the partition engine:
//  * the four defining equations as a residual check,
//  * a closed-form inverse from a full-rank factorization A = F G, which needs
//    no square roots and so runs in exact arithmetic,
//  * a side-by-side run of both recursions.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partition.hpp"

namespace wmp {

/// Residuals of AXA = A, XAX = X, (MAX)^* = MAX, (NXA)^* = NXA.
struct PenroseResiduals {
    bool exact = true;
    /// Per equation: the residual matrix is exactly zero.
    std::array<bool, 4> vanishes{};
    /// Frobenius norms; populated for float matrices only (NaN otherwise).
    std::array<double, 4> norm{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};

    [[nodiscard]] bool passes(std::size_t eq, double tol) const { return exact ? vanishes[eq] : norm[eq] <= tol; }

    [[nodiscard]] bool all_pass(double tol = 0.0) const
    {
        for (std::size_t i = 0; i < 4; ++i)
            if (!passes(i, tol)) return false;
        return true;
    }

    static constexpr std::array<const char*, 4> labels{"(1) AXA=A", "(2) XAX=X", "(3M) (MAX)*=MAX", "(4N) (NXA)*=NXA"};
};

template <Field T>
PenroseResiduals penrose_residuals(const Matrix<T>& a, const Matrix<T>& x, const Matrix<T>& m, const Matrix<T>& n)
{
    const std::size_t rows = a.rows(), cols = a.cols();
    if (x.rows() != cols || x.cols() != rows || m.rows() != rows || m.cols() != rows || n.rows() != cols ||
        n.cols() != cols) {
        throw Error(ErrorKind::DimensionMismatch,
                    "penrose_residuals: A " + Matrix<T>::shape_string(rows, cols) + ", X " +
                        Matrix<T>::shape_string(x.rows(), x.cols()) + ", M " +
                        Matrix<T>::shape_string(m.rows(), m.cols()) + ", N " +
                        Matrix<T>::shape_string(n.rows(), n.cols()));
    }
    const Matrix<T> ax = a * x;
    const Matrix<T> xa = x * a;
    const Matrix<T> max = m * ax;
    const Matrix<T> nxa = n * xa;
    const std::array<Matrix<T>, 4> r{ax * a - a, xa * x - x, conj_transpose(max) - max, conj_transpose(nxa) - nxa};

    PenroseResiduals out;
    out.exact = is_exact_v<T>;
    for (std::size_t i = 0; i < 4; ++i) {
        out.vanishes[i] = r[i].is_zero();
        if constexpr (!is_exact_v<T>) out.norm[i] = fro_norm(r[i]);
    }
    return out;
}

template <Field T>
struct FullRankFactorization {
    Matrix<T> f; // m x r, the pivot columns of A
    Matrix<T> g; // r x n, nonzero rows of rref(A)
    std::vector<std::size_t> pivots;
    [[nodiscard]] std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form over an exact field, with the pivot columns.
template <Field T>
std::pair<Matrix<T>, std::vector<std::size_t>> rref(Matrix<T> a)
{
    using F = field_traits<T>;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pr = row;
        while (pr < a.rows() && F::is_zero(a(pr, col))) ++pr;
        if (pr == a.rows()) continue;
        if (pr != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pr, j), a(row, j));
        const T inv = F::inv(a(row, col));
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || F::is_zero(a(i, col))) continue;
            const T f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

template <Field T>
FullRankFactorization<T> full_rank_factorize(const Matrix<T>& a)
{
    if constexpr (!is_exact_v<T>) {
        (void)a;
        throw Error(ErrorKind::UnsupportedField, "full_rank_factorize needs an exact field");
    } else {
        auto [r, pivots] = rref(a);
        FullRankFactorization<T> out;
        out.pivots = pivots;
        out.g = Matrix<T>(pivots.size(), a.cols());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) out.g(i, j) = r(i, j);
        out.f = Matrix<T>(a.rows(), pivots.size());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < pivots.size(); ++k) out.f(i, k) = a(i, pivots[k]);
        return out;
    }
}

/// A^dagger_{M,N} = N^{-1} G^* (G N^{-1} G^*)^{-1} (F^* M F)^{-1} F^* M, self-checked
/// against the four equations before it is returned.
template <Field T>
Matrix<T> wmp_oracle(const Matrix<T>& a, const Matrix<T>& m, const Matrix<T>& n)
{
    const FullRankFactorization<T> fg = full_rank_factorize(a);
    Matrix<T> x(a.cols(), a.rows());
    if (fg.rank() > 0) {
        const Matrix<T> n_inv = gauss_inverse(n);
        const Matrix<T> gt = conj_transpose(fg.g);
        const Matrix<T> ft_m = conj_transpose(fg.f) * m;
        x = n_inv * gt * gauss_inverse(Matrix<T>(fg.g * n_inv * gt)) * gauss_inverse(Matrix<T>(ft_m * fg.f)) * ft_m;
    }
    if (!penrose_residuals(a, x, m, n).all_pass()) {
        throw std::logic_error("wmp_oracle: closed-form candidate fails the defining equations");
    }
    return x;
}

struct EquivalenceReport {
    bool exact_equal = false;
    /// Largest entrywise |X_W - X_U| as a double (+inf for unequal non-constant entries).
    double max_entry_gap = 0.0;
    /// ||X_W - X_U||_F and ||X_W||_F, float fields only.
    double fro_gap = 0.0;
    double fro_wang = 0.0;
    std::vector<Branch> branch_trace_wang;
    std::vector<Branch> branch_trace_udwadia;

    [[nodiscard]] bool traces_match() const { return branch_trace_wang == branch_trace_udwadia; }

    /// Exact fields: entrywise identity. Floats: ||X_W - X_U||_F <= rel * max(1, ||X_W||_F).
    [[nodiscard]] bool equivalent(bool exact_field, double rel = 1e-8) const
    {
        return exact_field ? exact_equal : fro_gap <= rel * std::max(1.0, fro_wang);
    }

    [[nodiscard]] std::size_t zero_branches() const
    {
        std::size_t z = 0;
        for (Branch b : branch_trace_wang) z += b == Branch::Zero ? 1 : 0;
        return z;
    }
};

template <Field T>
EquivalenceReport compare_inverses(const SweepResult<T>& wang, const SweepResult<T>& udwadia)
{
    using F = field_traits<T>;
    EquivalenceReport rep;
    rep.branch_trace_wang = wang.trace;
    rep.branch_trace_udwadia = udwadia.trace;
    rep.exact_equal = wang.inverse == udwadia.inverse;
    const auto& xw = wang.inverse.data();
    const auto& xu = udwadia.inverse.data();
    if (xw.size() != xu.size()) {
        rep.max_entry_gap = std::numeric_limits<double>::infinity();
        return rep;
    }
    for (std::size_t k = 0; k < xw.size(); ++k) {
        if (!(xw[k] == xu[k])) rep.max_entry_gap = std::max(rep.max_entry_gap, F::magnitude(T(xw[k] - xu[k])));
    }
    if constexpr (!is_exact_v<T>) {
        rep.fro_gap = fro_norm(Matrix<T>(wang.inverse - udwadia.inverse));
        rep.fro_wang = fro_norm(wang.inverse);
    }
    return rep;
}

/// Runs both recursions on (A, M, N) and compares outputs and branch traces.
template <Field T>
EquivalenceReport equivalence_check(const Matrix<T>& a, const Matrix<T>& m, const Matrix<T>& n,
                                    const RecursionConfig& cfg = {})
{
    return compare_inverses(wang_sweep(a, m, n, cfg), udwadia_sweep(a, m, n, cfg));
}

} // namespace wmp
