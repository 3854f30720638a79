#pragma once

// Dense row-major matrices over a scalar field, plus the structural helpers
// the column-partitioning recursions need (column slicing, leading principal
// blocks, borders, stacking) and two square-root-free kernels: an explicit
// inverse and a positive-definiteness certificate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace wmp {

template <Field T>
class Matrix {
public:
    using scalar_type = T;
    using traits = field_traits<T>;

    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, traits::zero())
    {
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorKind::DimensionMismatch, "entry count " + std::to_string(data_.size()) +
                                                          " does not match " + shape_string(rows_, cols_));
        }
    }

    /// Row-wise literal: Matrix<Rational>{{1, 2}, {3, 4}}.
    Matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = traits::one();
        return m;
    }

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    T& at(std::size_t i, std::size_t j)
    {
        check_index(i, j);
        return (*this)(i, j);
    }
    const T& at(std::size_t i, std::size_t j) const
    {
        check_index(i, j);
        return (*this)(i, j);
    }

    [[nodiscard]] bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const T& v) { return traits::is_zero(v); });
    }

    Matrix& operator+=(const Matrix& o)
    {
        require_same_shape(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o)
    {
        require_same_shape(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(const T& s)
    {
        for (auto& v : data_) v *= s;
        return *this;
    }

    Matrix operator-() const
    {
        Matrix r = *this;
        for (auto& v : r.data_) v = -v;
        return r;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << "[";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : " [");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j == 0 ? "" : ", ") << traits::to_string(m(i, j));
            os << "]";
        }
        return os << "]";
    }

    static std::string shape_string(std::size_t r, std::size_t c)
    {
        return std::to_string(r) + "x" + std::to_string(c);
    }

private:
    void check_index(std::size_t i, std::size_t j) const
    {
        if (i >= rows_ || j >= cols_) {
            throw Error(ErrorKind::IndexOutOfRange, "(" + std::to_string(i) + ", " + std::to_string(j) +
                                                        ") outside " + shape_string(rows_, cols_));
        }
    }

    void require_same_shape(const Matrix& o, const char* op) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorKind::DimensionMismatch, std::string("operator") + op + " on " +
                                                          shape_string(rows_, cols_) + " and " +
                                                          shape_string(o.rows_, o.cols_));
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Field T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matmul " + Matrix<T>::shape_string(a.rows(), a.cols()) + " * " +
                        Matrix<T>::shape_string(b.rows(), b.cols()));
    }
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (field_traits<T>::is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (!field_traits<T>::is_zero(b(k, j))) c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

template <Field T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b)
{
    return matmul(a, b);
}

template <Field T>
Matrix<T> conj_transpose(const Matrix<T>& a)
{
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = field_traits<T>::conj(a(i, j));
    return t;
}

/// The single entry of a 1x1 matrix.
template <Field T>
const T& as_scalar(const Matrix<T>& a)
{
    if (a.rows() != 1 || a.cols() != 1) {
        throw Error(ErrorKind::DimensionMismatch, "expected 1x1, got " + Matrix<T>::shape_string(a.rows(), a.cols()));
    }
    return a(0, 0);
}

// ---------------------------------------------------------------------------
// Block helpers. `k` counts columns / block order (1-based, as in A_k and
// N_k); `j` in column() is a 0-based column index.

template <Field T>
Matrix<T> column(const Matrix<T>& a, std::size_t j)
{
    if (j >= a.cols()) throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(j));
    Matrix<T> c(a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, 0) = a(i, j);
    return c;
}

/// First k columns.
template <Field T>
Matrix<T> take_cols(const Matrix<T>& a, std::size_t k)
{
    if (k > a.cols()) throw Error(ErrorKind::IndexOutOfRange, "take_cols " + std::to_string(k));
    Matrix<T> c(a.rows(), k);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) c(i, j) = a(i, j);
    return c;
}

/// Top-left k x k block.
template <Field T>
Matrix<T> leading_principal(const Matrix<T>& a, std::size_t k)
{
    if (k > a.rows() || k > a.cols()) throw Error(ErrorKind::IndexOutOfRange, "leading_principal " + std::to_string(k));
    Matrix<T> c(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) c(i, j) = a(i, j);
    return c;
}

/// First k-1 entries of column k, as a column vector.
template <Field T>
Matrix<T> border_column(const Matrix<T>& a, std::size_t k)
{
    if (k == 0 || k > a.cols() || k - 1 > a.rows()) throw Error(ErrorKind::IndexOutOfRange, "border_column " + std::to_string(k));
    Matrix<T> c(k - 1, 1);
    for (std::size_t i = 0; i + 1 < k; ++i) c(i, 0) = a(i, k - 1);
    return c;
}

/// Diagonal entry (k, k), 1-based.
template <Field T>
const T& corner(const Matrix<T>& a, std::size_t k)
{
    if (k == 0 || k > a.rows() || k > a.cols()) throw Error(ErrorKind::IndexOutOfRange, "corner " + std::to_string(k));
    return a(k - 1, k - 1);
}

template <Field T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hstack row counts differ");
    Matrix<T> c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

template <Field T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack column counts differ");
    std::vector<T> data;
    data.reserve(a.size() + b.size());
    data.insert(data.end(), a.data().begin(), a.data().end());
    data.insert(data.end(), b.data().begin(), b.data().end());
    return Matrix<T>(a.rows() + b.rows(), a.cols(), std::move(data));
}

// ---------------------------------------------------------------------------

template <Field T>
double fro_norm(const Matrix<T>& a)
{
    if constexpr (!std::same_as<T, double>) {
        throw Error(ErrorKind::UnsupportedField,
                    "fro_norm is defined for float matrices only, got " + std::string(field_traits<T>::name));
    } else {
        double s = 0.0;
        for (double v : a.data()) s += v * v;
        return std::sqrt(s);
    }
}

/// Largest entrywise |a - b| (float), for reporting gaps.
inline double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a.data()[k] - b.data()[k]));
    return m;
}

namespace detail {

template <Field T>
void require_square(const Matrix<T>& a, const char* what)
{
    if (!a.is_square()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " needs a square matrix, got " + Matrix<T>::shape_string(a.rows(), a.cols()));
    }
}

// Gauss-Jordan with full pivoting.
inline Matrix<double> gauss_inverse_float(const Matrix<double>& a, double tol)
{
    const std::size_t n = a.rows();
    Matrix<double> w = a;
    Matrix<double> inv = Matrix<double>::identity(n);
    std::vector<std::size_t> colperm(n);
    std::iota(colperm.begin(), colperm.end(), 0);
    if (tol < 0) {
        double amax = 0.0;
        for (double v : a.data()) amax = std::max(amax, std::fabs(v));
        tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * amax;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        double best = -1.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::fabs(w(i, j)) > best) {
                    best = std::fabs(w(i, j));
                    pr = i;
                    pc = j;
                }
        if (best <= tol) throw Error(ErrorKind::SingularMatrix, "pivot below tolerance at step " + std::to_string(k + 1));
        if (pr != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(pr, j), w(k, j));
                std::swap(inv(pr, j), inv(k, j));
            }
        }
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(w(i, pc), w(i, k));
            std::swap(colperm[pc], colperm[k]);
        }
        const double p = w(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            w(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || w(i, k) == 0.0) continue;
            const double f = w(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    // Column swaps of A permute the rows of A^{-1}.
    Matrix<double> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(colperm[i], j) = inv(i, j);
    return out;
}

// Fraction-free (Bareiss) Gauss-Jordan on [A | I]. After the sweep the left
// block is d*I with d = +-det(A), so the inverse is the right block over d.
template <Field T>
Matrix<T> gauss_inverse_exact(const Matrix<T>& a)
{
    using F = field_traits<T>;
    const std::size_t n = a.rows();
    const std::size_t w = 2 * n;
    Matrix<T> aug = hstack(a, Matrix<T>::identity(n));
    T prev = F::one();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k;
        while (pr < n && F::is_zero(aug(pr, k))) ++pr;
        if (pr == n) throw Error(ErrorKind::SingularMatrix, "no nonzero pivot in column " + std::to_string(k + 1));
        if (pr != k)
            for (std::size_t j = 0; j < w; ++j) std::swap(aug(pr, j), aug(k, j));
        const T pivot = aug(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const T f = aug(i, k);
            for (std::size_t j = 0; j < w; ++j) {
                if (j == k) continue;
                aug(i, j) = (pivot * aug(i, j) - f * aug(k, j)) / prev;
            }
            aug(i, k) = F::zero();
        }
        prev = pivot;
    }
    const T det_inv = F::inv(prev);
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j) * det_inv;
    return out;
}

} // namespace detail

/// Explicit inverse. Exact fields use fraction-free elimination; floats use
/// full pivoting and treat pivots <= tol as zero (tol < 0 picks n*eps*max|a|).
template <Field T>
Matrix<T> gauss_inverse(const Matrix<T>& a, double tol = -1.0)
{
    detail::require_square(a, "gauss_inverse");
    if constexpr (std::same_as<T, double>) {
        return detail::gauss_inverse_float(a, tol);
    } else {
        return detail::gauss_inverse_exact(a);
    }
}

struct SpdCertificate {
    bool ok = false;
    /// 1-based order of the first leading principal minor found non-positive
    /// (or of undecidable sign).
    std::optional<std::size_t> failing_minor_index;
    double symmetry_defect = 0.0;
};

/// Symmetric positive-definiteness via leading principal minors.
///
/// Exact fields require exact symmetry and take minor signs from fraction-free
/// elimination without pivoting (the k-th pivot is the k-th minor). Floats
/// accept a symmetry defect up to tol*max(1, ||A||_F) and check the pivots of
/// unpivoted elimination, which are ratios of consecutive minors.
template <Field T>
SpdCertificate is_spd(const Matrix<T>& a, double tol = 0.0)
{
    using F = field_traits<T>;
    detail::require_square(a, "is_spd");
    const std::size_t n = a.rows();
    SpdCertificate cert;

    bool symmetric = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const T diff = a(i, j) - F::conj(a(j, i));
            if (!F::is_zero(diff)) {
                symmetric = false;
                cert.symmetry_defect = std::max(cert.symmetry_defect, F::magnitude(diff));
            }
        }
    }
    if constexpr (is_exact_v<T>) {
        if (!symmetric) return cert;
    } else {
        if (cert.symmetry_defect > tol * std::max(1.0, fro_norm(a))) return cert;
    }

    Matrix<T> w = a;
    T prev = F::one();
    for (std::size_t k = 0; k < n; ++k) {
        const auto s = sign_of(w(k, k));
        if (!s || *s <= 0) {
            cert.failing_minor_index = k + 1;
            return cert;
        }
        const T pivot = w(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                if constexpr (is_exact_v<T>) {
                    w(i, j) = (pivot * w(i, j) - w(i, k) * w(k, j)) / prev;
                } else {
                    w(i, j) -= w(i, k) / pivot * w(k, j);
                }
            }
        }
        if constexpr (is_exact_v<T>) prev = pivot;
    }
    cert.ok = true;
    return cert;
}

} // namespace wmp
