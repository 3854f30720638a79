#pragma once

// Rational functions over Q in one variable, kept in canonical form:
// numerator and denominator coprime, denominator monic. Canonical forms make
// structural equality coincide with equality of rational functions.

#include <ostream>
#include <string>
#include <utility>

#include "poly_gcd.hpp"

namespace wmp {

class RatFun {
public:
    RatFun() : den_(1) {}
    RatFun(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFun(long c) : RatFun(Rational(c)) {}          // NOLINT(google-explicit-constructor)
    RatFun(int c) : RatFun(Rational(c)) {}           // NOLINT(google-explicit-constructor)
    RatFun(const Polynomial& p) : num_(p), den_(1) {} // NOLINT(google-explicit-constructor)

    /// Canonicalizes num/den. Throws DivisionByZero when den is the zero polynomial.
    static RatFun normalize(const Polynomial& num, const Polynomial& den)
    {
        if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
        if (num.is_zero()) return {};
        Polynomial g = poly_gcd(num, den);
        Polynomial n = num;
        Polynomial d = den;
        if (!g.is_one()) {
            n = divmod(num, g).first;
            d = divmod(den, g).first;
        }
        return from_coprime(std::move(n), std::move(d));
    }

    [[nodiscard]] const Polynomial& num() const noexcept { return num_; }
    [[nodiscard]] const Polynomial& den() const noexcept { return den_; }

    [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
    [[nodiscard]] bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

    [[nodiscard]] RatFun inverse() const
    {
        if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero rational function");
        return from_coprime(den_, num_);
    }

    /// Value at a rational point; DivisionByZero at a pole.
    [[nodiscard]] Rational eval(const Rational& at) const { return num_.eval(at) / den_.eval(at); }

    RatFun operator-() const
    {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) { return add(a, b, false); }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return add(a, b, true); }

    friend RatFun operator*(const RatFun& a, const RatFun& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        // Cross-cancel before multiplying: gcd(a.num, b.den) and gcd(b.num, a.den).
        Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        cancel(an, bd);
        cancel(bn, ad);
        return from_coprime(an * bn, ad * bd);
    }

    friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// "x+1" when the denominator is 1, otherwise "num/(den)" with the numerator
    /// parenthesized only if it has more than one term.
    [[nodiscard]] std::string to_string() const
    {
        std::string n = num_.to_string();
        if (den_.is_one()) return n;
        std::size_t terms = 0;
        for (const auto& c : num_.coefficients()) terms += c.is_zero() ? 0 : 1;
        if (terms > 1) n = "(" + n + ")";
        return n + "/(" + den_.to_string() + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const RatFun& r) { return os << r.to_string(); }

private:
    RatFun(Polynomial n, Polynomial d, int /*tag*/) : num_(std::move(n)), den_(std::move(d)) {}

    // Inputs already coprime; only the monic scaling remains.
    static RatFun from_coprime(Polynomial n, Polynomial d)
    {
        if (n.is_zero()) return {};
        Rational lead = d.leading();
        if (lead != Rational(1)) {
            Rational inv = lead.inverse();
            n *= inv;
            d *= inv;
        }
        return RatFun(std::move(n), std::move(d), 0);
    }

    static void cancel(Polynomial& p, Polynomial& q)
    {
        if (p.is_constant() || q.is_constant()) return;
        Polynomial g = poly_gcd(p, q);
        if (g.is_one()) return;
        p = divmod(p, g).first;
        q = divmod(q, g).first;
    }

    static RatFun add(const RatFun& a, const RatFun& b, bool subtract)
    {
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        const Polynomial bn = subtract ? -b.num_ : b.num_;
        if (a.den_ == b.den_) {
            return normalize(a.num_ + bn, a.den_);
        }
        // With g = gcd(a.den, b.den), a.den = g*a', b.den = g*b':
        // sum = (a.num*b' + b.num*a') / (g*a'*b'), and only g can share factors
        // with the new numerator.
        Polynomial g = poly_gcd(a.den_, b.den_);
        if (g.is_one()) {
            return from_coprime(a.num_ * b.den_ + bn * a.den_, a.den_ * b.den_);
        }
        Polynomial ar = divmod(a.den_, g).first;
        Polynomial br = divmod(b.den_, g).first;
        Polynomial t = a.num_ * br + bn * ar;
        if (t.is_zero()) return {};
        Polynomial g2 = poly_gcd(t, g);
        if (!g2.is_one()) {
            t = divmod(t, g2).first;
            g = divmod(g, g2).first;
        }
        return from_coprime(std::move(t), g * ar * br);
    }

    Polynomial num_;
    Polynomial den_;
};

} // namespace wmp
