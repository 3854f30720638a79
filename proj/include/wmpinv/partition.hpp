#pragma once

// Column-partitioning recursions for the weighted Moore-Penrose inverse
// A^dagger_{M,N} (left weight M of order m, right weight N of order n).
//
// Both recursions sweep the columns of A. With A_k = [A_{k-1} | a_k] and the
// bordering
//
//     N_k = [ N_{k-1}  l_k  ]
//           [ l_k^*    n_kk ]
//
// the inverse X_k of A_k is obtained from X_{k-1} by a rank-one style update
// whose form depends on whether the residual (I - A_{k-1} X_{k-1}) a_k
// vanishes (a_k dependent on earlier columns) or not.
//
//  * wang_step      Wang's form: d_k = X_{k-1} a_k, c_k = a_k - A_{k-1} d_k,
//                   zero branch through the scalar delta_k.
//  * udwadia_step   Udwadia-Phohomsiri LM-inverse form: projector residual d,
//                   zero branch through q^* M_k U / q^* M_k q.
//
// N_k^{-1} is never formed by a fresh inversion; it is grown one bordering at
// a time by bordered_inverse_step, interleaved with the column sweep.
//
// The first column: a nonzero a_1 gives X_1 = (a_1^* M a_1)^{-1} a_1^* M and
// a zero a_1 gives the zero row.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace wmp {

enum class Algorithm { Wang, Udwadia, Both };

enum class Branch { Nonzero, Zero };

inline const char* to_string(Branch b) noexcept { return b == Branch::Zero ? "zero" : "nonzero"; }

struct RecursionConfig {
    /// Float fields only: a residual column r counts as zero when
    /// ||r||_2 <= zero_tol_rel * max(1, ||a_k||_2). Exact fields test exact zero.
    double zero_tol_rel = 1e-9;
    Algorithm algorithm = Algorithm::Both;
    bool validate_weights = true;
};

/// The k-th bordering of a weight: leading (k-1)x(k-1) block, border column
/// of k-1 entries and the corner entry.
template <Field T>
struct WeightPartition {
    Matrix<T> leading;
    Matrix<T> border;
    T corner;

    static WeightPartition of(const Matrix<T>& w, std::size_t k)
    {
        return {leading_principal(w, k - 1), border_column(w, k), wmp::corner(w, k)};
    }

    [[nodiscard]] std::size_t order() const noexcept { return leading.rows() + 1; }

    [[nodiscard]] Matrix<T> assemble() const
    {
        Matrix<T> corner_block(1, 1);
        corner_block(0, 0) = corner;
        return vstack(hstack(leading, border), hstack(conj_transpose(border), corner_block));
    }
};

template <Field T>
struct BorderedInverseState {
    std::size_t k = 0;
    Matrix<T> inv; // N_k^{-1}
    T last_g{};    // g_kk of the latest step
    Matrix<T> last_f;
};

template <Field T>
struct IterationScratch {
    Branch branch = Branch::Nonzero;
    Matrix<T> d;      // Wang d_k = X_{k-1} a_k; Udwadia v
    Matrix<T> c;      // residual (I - A_{k-1} X_{k-1}) a_k; Udwadia d
    Matrix<T> b_star; // new last row of X_k
    std::optional<T> delta;
    Matrix<T> p; // (I - X_{k-1} A_{k-1}) N_{k-1}^{-1} l_k
    Matrix<T> q; // zero branch (Udwadia)
    Matrix<T> u; // zero branch (Udwadia)
};

template <Field T>
struct StepResult {
    Matrix<T> x;
    IterationScratch<T> scratch;
};

template <Field T>
struct SweepResult {
    Matrix<T> inverse;
    std::vector<Branch> trace;
    std::vector<Matrix<T>> prefixes; // filled only on request
};

namespace detail {

inline double vec_norm(const Matrix<double>& v) { return fro_norm(v); }

// Whether the column `r` counts as zero relative to `ref`.
template <Field T>
bool negligible_column(const Matrix<T>& r, const Matrix<T>& ref, double tol_rel)
{
    if constexpr (is_exact_v<T>) {
        (void)ref;
        (void)tol_rel;
        return r.is_zero();
    } else {
        return vec_norm(r) <= tol_rel * std::max(1.0, vec_norm(ref));
    }
}

template <Field T>
bool negligible_scalar(const T& s, double scale, double tol_rel)
{
    return field_traits<T>::approx_zero(s, tol_rel * std::max(1.0, scale));
}

template <Field T>
double weight_scale(const Matrix<T>& w)
{
    if constexpr (is_exact_v<T>) {
        (void)w;
        return 1.0;
    } else {
        return fro_norm(w);
    }
}

template <Field T>
Matrix<T> row_times_inverse(const Matrix<T>& row, const T& denom)
{
    return row * field_traits<T>::inv(denom);
}

template <Field T>
void check_inputs(const Matrix<T>& a, const Matrix<T>& left, const Matrix<T>& right, const RecursionConfig& cfg)
{
    if (a.rows() == 0 || a.cols() == 0) throw Error(ErrorKind::DimensionMismatch, "empty input matrix");
    if (left.rows() != a.rows() || left.cols() != a.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "left weight must be " + Matrix<T>::shape_string(a.rows(), a.rows()) +
                                                      ", got " + Matrix<T>::shape_string(left.rows(), left.cols()));
    }
    if (right.rows() != a.cols() || right.cols() != a.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "right weight must be " + Matrix<T>::shape_string(a.cols(), a.cols()) +
                                                      ", got " + Matrix<T>::shape_string(right.rows(), right.cols()));
    }
    if (!(cfg.zero_tol_rel >= 0.0)) throw Error(ErrorKind::DimensionMismatch, "zero_tol_rel must be nonnegative");
    if (!cfg.validate_weights) return;
    auto check = [&](const Matrix<T>& w, const char* which) {
        SpdCertificate cert = is_spd(w, cfg.zero_tol_rel);
        if (cert.ok) return;
        std::string why = cert.failing_minor_index
                              ? "leading principal minor " + std::to_string(*cert.failing_minor_index) + " not positive"
                              : "not symmetric";
        throw Error(ErrorKind::WeightNotSPD, std::string(which) + " weight is not symmetric positive definite: " + why);
    };
    check(left, "left");
    check(right, "right");
}

} // namespace detail

namespace detail {

// Floats only: one more projection pass on the residual column. X c = 0 in
// exact arithmetic, so this changes nothing there; in floating point it
// removes the component of c that cancellation left inside range(A_{k-1}),
// keeping a_k = A_{k-1} d + c.
template <Field T>
void reproject(Matrix<T>& d, Matrix<T>& c, const Matrix<T>& x_prev, const Matrix<T>& a_prev)
{
    if constexpr (!is_exact_v<T>) {
        const Matrix<T> dc = x_prev * c;
        c -= a_prev * dc;
        d += dc;
    }
}

} // namespace detail

/// X_1 for the first column a1 under left weight `left`.
template <Field T>
Matrix<T> init_first_column(const Matrix<T>& a1, const Matrix<T>& left, const RecursionConfig& cfg,
                            Branch* branch = nullptr)
{
    if (a1.cols() != 1 || left.rows() != a1.rows() || left.cols() != a1.rows())
        throw Error(ErrorKind::DimensionMismatch, "init_first_column");
    const Matrix<T> zero(a1.rows(), 1);
    if (detail::negligible_column(a1, zero, cfg.zero_tol_rel)) {
        if (branch) *branch = Branch::Zero;
        return Matrix<T>(1, a1.rows());
    }
    if (branch) *branch = Branch::Nonzero;
    const Matrix<T> row = conj_transpose(a1) * left;
    const T denom = as_scalar(row * a1);
    double scale = 1.0;
    if constexpr (!is_exact_v<T>) scale = detail::weight_scale(left) * as_scalar(conj_transpose(a1) * a1);
    if (detail::negligible_scalar(denom, scale, cfg.zero_tol_rel))
        throw Error(ErrorKind::DegenerateWeight, "a1^* M a1 vanishes for a nonzero first column");
    return detail::row_times_inverse(row, denom);
}

/// N_1^{-1} = [1 / n_11].
template <Field T>
BorderedInverseState<T> bordered_inverse_start(const Matrix<T>& w, double zero_tol_rel = 0.0)
{
    const T& n11 = corner(w, 1);
    if (detail::negligible_scalar(n11, 1.0, zero_tol_rel))
        throw Error(ErrorKind::DegenerateWeight, "weight has a zero (1,1) entry");
    BorderedInverseState<T> s;
    s.k = 1;
    s.inv = Matrix<T>(1, 1);
    s.inv(0, 0) = field_traits<T>::inv(n11);
    s.last_g = s.inv(0, 0);
    s.last_f = Matrix<T>(0, 1);
    return s;
}

/// One bordering step: N_{k-1}^{-1} -> N_k^{-1} through the Schur complement
/// g_kk = (n_kk - l_k^* N_{k-1}^{-1} l_k)^{-1}.
template <Field T>
BorderedInverseState<T> bordered_inverse_step(const BorderedInverseState<T>& state, const WeightPartition<T>& part,
                                              double zero_tol_rel = 0.0)
{
    using F = field_traits<T>;
    if (state.inv.rows() != part.leading.rows() || part.border.rows() != part.leading.rows())
        throw Error(ErrorKind::DimensionMismatch, "bordered_inverse_step");
    const Matrix<T> inv_l = state.inv * part.border;
    const T schur = part.corner - as_scalar(conj_transpose(part.border) * inv_l);
    if (detail::negligible_scalar(schur, F::magnitude(part.corner), zero_tol_rel))
        throw Error(ErrorKind::DegenerateWeight,
                    "Schur complement vanishes at order " + std::to_string(part.order()) + " (weight not p.d.)");
    const T g = F::inv(schur);
    const Matrix<T> f = inv_l * (-g);
    const Matrix<T> e = state.inv + (f * conj_transpose(f)) * schur; // g^{-1} f f^*

    Matrix<T> g_block(1, 1);
    g_block(0, 0) = g;
    BorderedInverseState<T> next;
    next.k = part.order();
    next.inv = vstack(hstack(e, f), hstack(conj_transpose(f), g_block));
    next.last_g = g;
    next.last_f = f;
    return next;
}

/// Wang's update from X_{k-1} to X_k. `left` is M; `part` borders N and
/// `right_inv_prev` is N_{k-1}^{-1}.
template <Field T>
StepResult<T> wang_step(const Matrix<T>& x_prev, const Matrix<T>& a_prev, const Matrix<T>& a_k,
                        const WeightPartition<T>& part, const Matrix<T>& right_inv_prev, const Matrix<T>& left,
                        const RecursionConfig& cfg)
{
    using F = field_traits<T>;
    const std::size_t km1 = a_prev.cols();
    if (x_prev.rows() != km1 || x_prev.cols() != a_prev.rows() || a_k.rows() != a_prev.rows() || a_k.cols() != 1 ||
        part.leading.rows() != km1 || right_inv_prev.rows() != km1)
        throw Error(ErrorKind::DimensionMismatch, "wang_step operands");

    StepResult<T> out;
    auto& s = out.scratch;
    s.d = x_prev * a_k;
    s.c = a_k - a_prev * s.d;
    detail::reproject(s.d, s.c, x_prev, a_prev);
    const Matrix<T> xa_compl = Matrix<T>::identity(km1) - x_prev * a_prev;
    s.p = xa_compl * (right_inv_prev * part.border);

    if (!detail::negligible_column(s.c, a_k, cfg.zero_tol_rel)) {
        s.branch = Branch::Nonzero;
        const Matrix<T> cm = conj_transpose(s.c) * left;
        const T denom = as_scalar(cm * s.c);
        double scale = 1.0;
        if constexpr (!is_exact_v<T>) scale = detail::weight_scale(left) * as_scalar(conj_transpose(s.c) * s.c);
        if (detail::negligible_scalar(denom, scale, cfg.zero_tol_rel))
            throw Error(ErrorKind::DegenerateWeight, "c_k^* M c_k vanishes at column " + std::to_string(km1 + 1));
        s.b_star = detail::row_times_inverse(cm, denom);
    } else {
        s.branch = Branch::Zero;
        const Matrix<T> dt = conj_transpose(s.d);
        const Matrix<T> lt = conj_transpose(part.border);
        T delta = part.corner + as_scalar(dt * part.leading * s.d) -
                  (as_scalar(dt * part.border) + as_scalar(lt * s.d)) - as_scalar(lt * s.p);
        if (detail::negligible_scalar(delta, F::magnitude(part.corner), cfg.zero_tol_rel))
            throw Error(ErrorKind::DegenerateDelta, "delta_k vanishes at column " + std::to_string(km1 + 1));
        s.b_star = detail::row_times_inverse(Matrix<T>((dt * part.leading - lt) * x_prev), delta);
        s.delta = std::move(delta);
    }
    out.x = vstack(x_prev - (s.d + s.p) * s.b_star, s.b_star);
    return out;
}

/// Udwadia-Phohomsiri update. Roles: `left` is L (Wang's M); `part` borders
/// the right weight M (Wang's N); `right_inv_prev` is M_{k-1}^{-1} and
/// `right_k` the leading k x k block M_k.
template <Field T>
StepResult<T> udwadia_step(const Matrix<T>& x_prev, const Matrix<T>& a_prev, const Matrix<T>& a_k,
                           const WeightPartition<T>& part, const Matrix<T>& right_inv_prev, const Matrix<T>& left,
                           const Matrix<T>& right_k, const RecursionConfig& cfg)
{
    const std::size_t m = a_prev.rows();
    const std::size_t km1 = a_prev.cols();
    if (x_prev.rows() != km1 || x_prev.cols() != m || a_k.rows() != m || a_k.cols() != 1 ||
        part.leading.rows() != km1 || right_inv_prev.rows() != km1 || right_k.rows() != km1 + 1)
        throw Error(ErrorKind::DimensionMismatch, "udwadia_step operands");

    StepResult<T> out;
    auto& s = out.scratch;
    s.d = x_prev * a_k; // v
    s.c = (Matrix<T>::identity(m) - a_prev * x_prev) * a_k;
    detail::reproject(s.d, s.c, x_prev, a_prev);
    s.p = (Matrix<T>::identity(km1) - x_prev * a_prev) * (right_inv_prev * part.border);

    if (!detail::negligible_column(s.c, a_k, cfg.zero_tol_rel)) {
        s.branch = Branch::Nonzero;
        const Matrix<T> dl = conj_transpose(s.c) * left;
        const T denom = as_scalar(dl * s.c);
        double scale = 1.0;
        if constexpr (!is_exact_v<T>) scale = detail::weight_scale(left) * as_scalar(conj_transpose(s.c) * s.c);
        if (detail::negligible_scalar(denom, scale, cfg.zero_tol_rel))
            throw Error(ErrorKind::DegenerateWeight, "d^* L d vanishes at column " + std::to_string(km1 + 1));
        s.b_star = detail::row_times_inverse(dl, denom);
    } else {
        s.branch = Branch::Zero;
        Matrix<T> minus_one(1, 1);
        minus_one(0, 0) = -field_traits<T>::one();
        s.q = vstack(Matrix<T>(s.d + s.p), minus_one);
        s.u = vstack(x_prev, Matrix<T>(1, m));
        const Matrix<T> qm = conj_transpose(s.q) * right_k;
        T denom = as_scalar(qm * s.q);
        if (detail::negligible_scalar(denom, field_traits<T>::magnitude(part.corner), cfg.zero_tol_rel))
            throw Error(ErrorKind::DegenerateDelta, "q^* M_k q vanishes at column " + std::to_string(km1 + 1));
        s.b_star = detail::row_times_inverse(Matrix<T>(qm * s.u), denom);
        s.delta = std::move(denom);
    }
    out.x = vstack(x_prev - s.d * s.b_star - s.p * s.b_star, s.b_star);
    return out;
}

namespace detail {

template <Field T, class Step>
SweepResult<T> sweep(const Matrix<T>& a, const Matrix<T>& left, const Matrix<T>& right, const RecursionConfig& cfg,
                     bool keep_prefixes, Step&& step)
{
    check_inputs(a, left, right, cfg);
    SweepResult<T> r;
    Branch b0 = Branch::Nonzero;
    Matrix<T> x = init_first_column(column(a, 0), left, cfg, &b0);
    r.trace.push_back(b0);
    if (keep_prefixes) r.prefixes.push_back(x);
    BorderedInverseState<T> state = bordered_inverse_start(right, cfg.zero_tol_rel);
    for (std::size_t k = 2; k <= a.cols(); ++k) {
        const auto part = WeightPartition<T>::of(right, k);
        StepResult<T> st = step(x, take_cols(a, k - 1), column(a, k - 1), part, state.inv, k);
        if (k < a.cols()) state = bordered_inverse_step(state, part, cfg.zero_tol_rel);
        x = std::move(st.x);
        r.trace.push_back(st.scratch.branch);
        if (keep_prefixes) r.prefixes.push_back(x);
    }
    r.inverse = std::move(x);
    return r;
}

} // namespace detail

/// Full Wang sweep with branch trace.
template <Field T>
SweepResult<T> wang_sweep(const Matrix<T>& a, const Matrix<T>& m, const Matrix<T>& n, const RecursionConfig& cfg = {},
                          bool keep_prefixes = false)
{
    return detail::sweep(a, m, n, cfg, keep_prefixes,
                         [&](const Matrix<T>& x, const Matrix<T>& a_prev, const Matrix<T>& a_k,
                             const WeightPartition<T>& part, const Matrix<T>& n_inv, std::size_t) {
                             return wang_step(x, a_prev, a_k, part, n_inv, m, cfg);
                         });
}

/// Full Udwadia sweep: `l` is the left weight, `m` the right weight.
template <Field T>
SweepResult<T> udwadia_sweep(const Matrix<T>& a, const Matrix<T>& l, const Matrix<T>& m,
                             const RecursionConfig& cfg = {}, bool keep_prefixes = false)
{
    return detail::sweep(a, l, m, cfg, keep_prefixes,
                         [&](const Matrix<T>& x, const Matrix<T>& a_prev, const Matrix<T>& a_k,
                             const WeightPartition<T>& part, const Matrix<T>& m_inv, std::size_t k) {
                             return udwadia_step(x, a_prev, a_k, part, m_inv, l, leading_principal(m, k), cfg);
                         });
}

/// A^dagger_{M,N} by Wang's recursion.
template <Field T>
Matrix<T> wmp_wang(const Matrix<T>& a, const Matrix<T>& m, const Matrix<T>& n, const RecursionConfig& cfg = {})
{
    return wang_sweep(a, m, n, cfg).inverse;
}

/// A^dagger_{L,M} (LM-inverse) by the Udwadia-Phohomsiri recursion.
template <Field T>
Matrix<T> lm_udwadia(const Matrix<T>& a, const Matrix<T>& l, const Matrix<T>& m, const RecursionConfig& cfg = {})
{
    return udwadia_sweep(a, l, m, cfg).inverse;
}

/// X_k = (A_k)^dagger_{M, N_k} for k = 1..n.
template <Field T>
std::vector<Matrix<T>> prefix_inverses(const Matrix<T>& a, const Matrix<T>& m, const Matrix<T>& n,
                                       const RecursionConfig& cfg = {})
{
    return wang_sweep(a, m, n, cfg, true).prefixes;
}

} // namespace wmp
