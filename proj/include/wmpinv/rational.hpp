#pragma once

// Exact rationals over arbitrary-precision integers (GMP). Values are always
// kept canonical: positive denominator, numerator and denominator coprime.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace wmp {

class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {} // NOLINT(google-explicit-constructor)
    Rational(int value) : q_(value) {}  // NOLINT(google-explicit-constructor)

    Rational(const mpz_class& num, const mpz_class& den)
    {
        if (den == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses `int` or `int/uint`; returns false on malformed text or zero denominator.
    static bool try_parse(std::string_view text, Rational& out)
    {
        auto digits = [](std::string_view s) {
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        std::string_view num = text;
        std::string_view den;
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            num = text.substr(0, slash);
            den = text.substr(slash + 1);
            if (!digits(den)) return false;
        }
        std::string_view body = num;
        if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
        if (!digits(body)) return false;
        mpz_class n(std::string(body), 10);
        if (num.front() == '-') n = -n;
        mpz_class d = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
        if (d == 0) return false;
        out = Rational(n, d);
        return true;
    }

    [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const noexcept { return q_; }

    [[nodiscard]] bool is_zero() const noexcept { return sgn(q_) == 0; }
    [[nodiscard]] int sign() const noexcept { return sgn(q_); }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
    [[nodiscard]] double to_double() const { return q_.get_d(); }

    [[nodiscard]] std::string to_string() const { return q_.get_str(10); }

    [[nodiscard]] Rational inverse() const
    {
        if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of rational zero");
        return Rational(mpq_class(1) / q_);
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace wmp
