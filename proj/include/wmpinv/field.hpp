#pragma once

// The scalar-field contract shared by every algorithm in the library.
//
// A field type T provides the arithmetic operators (+ - * / and unary -)
// and a specialization of field_traits<T> with:
//   exact            whether equality tests are exact
//   name             the textual field tag ("rational", "float", "ratfun")
//   zero(), one()
//   is_zero(a)       exact zero test
//   approx_zero(a,t) zero test honouring a caller-supplied tolerance (floats only)
//   conj(a)          conjugation hook; the identity for every real field here
//   inv(a)           reciprocal, throws DivisionByZero on zero
//   magnitude(a)     |a| as a double where that makes sense
//   to_string(a)

#include <cmath>
#include <cstdio>
#include <optional>
#include <concepts>
#include <limits>
#include <string>
#include <string_view>

#include "ratfun.hpp"
#include "rational.hpp"

namespace wmp {

template <class T>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr std::string_view name = "rational";
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& a) { return a.is_zero(); }
    static bool approx_zero(const Rational& a, double /*tol*/) { return a.is_zero(); }
    static Rational conj(const Rational& a) { return a; }
    static Rational inv(const Rational& a) { return a.inverse(); }
    static double magnitude(const Rational& a) { return std::fabs(a.to_double()); }
    static std::string to_string(const Rational& a) { return a.to_string(); }
};

template <>
struct field_traits<double> {
    static constexpr bool exact = false;
    static constexpr std::string_view name = "float";
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double a) { return a == 0.0; }
    static bool approx_zero(double a, double tol) { return std::fabs(a) <= tol; }
    static double conj(double a) { return a; }
    static double inv(double a)
    {
        if (a == 0.0) throw Error(ErrorKind::DivisionByZero, "inverse of float zero");
        return 1.0 / a;
    }
    static double magnitude(double a) { return std::fabs(a); }
    static std::string to_string(double a)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", a);
        return buf;
    }
};

template <>
struct field_traits<RatFun> {
    static constexpr bool exact = true;
    static constexpr std::string_view name = "ratfun";
    static RatFun zero() { return RatFun(0); }
    static RatFun one() { return RatFun(1); }
    static bool is_zero(const RatFun& a) { return a.is_zero(); }
    static bool approx_zero(const RatFun& a, double /*tol*/) { return a.is_zero(); }
    static RatFun conj(const RatFun& a) { return a; }
    static RatFun inv(const RatFun& a) { return a.inverse(); }
    /// Only constants have a magnitude; non-constant entries report +inf.
    static double magnitude(const RatFun& a)
    {
        if (a.is_zero()) return 0.0;
        if (!a.is_constant()) return std::numeric_limits<double>::infinity();
        return std::fabs((a.num().leading() / a.den().leading()).to_double());
    }
    static std::string to_string(const RatFun& a) { return a.to_string(); }
};

template <class T>
concept Field = requires(const T a, const T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { field_traits<T>::zero() } -> std::convertible_to<T>;
    { field_traits<T>::one() } -> std::convertible_to<T>;
    { field_traits<T>::is_zero(a) } -> std::same_as<bool>;
    { field_traits<T>::approx_zero(a, 0.0) } -> std::same_as<bool>;
    { field_traits<T>::conj(a) } -> std::convertible_to<T>;
    { field_traits<T>::inv(a) } -> std::convertible_to<T>;
};

template <Field T>
inline constexpr bool is_exact_v = field_traits<T>::exact;

/// Sign of a scalar when it is decidable: +1, 0, -1. Non-constant rational
/// functions have no order and report std::nullopt.
inline std::optional<int> sign_of(const Rational& a) { return a.sign(); }
inline std::optional<int> sign_of(double a) { return (a > 0) - (a < 0); }
inline std::optional<int> sign_of(const RatFun& a)
{
    if (a.is_zero()) return 0;
    if (!a.is_constant()) return std::nullopt;
    return (a.num().leading() / a.den().leading()).sign();
}

/// Embeds an integer into the field.
template <Field T>
T from_integer(long v)
{
    if constexpr (std::same_as<T, double>) {
        return static_cast<double>(v);
    } else {
        return T(v);
    }
}

/// Embeds a rational into the field (rounded for floats).
template <Field T>
T from_rational(const Rational& v)
{
    if constexpr (std::same_as<T, double>) {
        return v.to_double();
    } else {
        return T(v);
    }
}

} // namespace wmp
