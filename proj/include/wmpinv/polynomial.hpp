#pragma once

// Dense univariate polynomials over Q in the variable x.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace wmp {

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c) { if (!c.is_zero()) c_.push_back(c); } // NOLINT
    Polynomial(long c) : Polynomial(Rational(c)) {}                      // NOLINT
    Polynomial(int c) : Polynomial(Rational(c)) {}                       // NOLINT

    /// Coefficients indexed by degree; trailing zeros are trimmed.
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial x() { return monomial(Rational(1), 1); }

    static Polynomial monomial(const Rational& c, std::size_t degree)
    {
        if (c.is_zero()) return {};
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return Polynomial(std::move(v));
    }

    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] bool is_constant() const noexcept { return c_.size() <= 1; }
    [[nodiscard]] bool is_one() const { return c_.size() == 1 && c_[0] == Rational(1); }

    /// Degree; the zero polynomial reports -1.
    [[nodiscard]] long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

    [[nodiscard]] const std::vector<Rational>& coefficients() const noexcept { return c_; }

    [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(); }
    [[nodiscard]] Rational leading() const { return c_.empty() ? Rational() : c_.back(); }

    [[nodiscard]] Polynomial monic() const
    {
        if (is_zero() || leading() == Rational(1)) return *this;
        return *this * leading().inverse();
    }

    [[nodiscard]] Rational eval(const Rational& at) const
    {
        Rational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    Polynomial& operator*=(const Rational& s)
    {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.c_.size() == 1) return b * a.c_[0];
        if (b.c_.size() == 1) return a * b.c_[0];
        std::vector<mpq_class> acc(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += a.c_[i].raw() * b.c_[j].raw();
        }
        std::vector<Rational> out;
        out.reserve(acc.size());
        for (auto& q : acc) out.emplace_back(std::move(q));
        return Polynomial(std::move(out));
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    /// Euclidean division: returns (quotient, remainder) with deg r < deg d.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& n, const Polynomial& d)
    {
        if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
        if (n.degree() < d.degree()) return {Polynomial(), n};
        std::vector<Rational> rem = n.c_;
        const std::size_t dn = d.c_.size() - 1;
        const Rational inv_lead = d.c_.back().inverse();
        std::vector<Rational> quot(rem.size() - dn);
        for (std::size_t k = quot.size(); k-- > 0;) {
            Rational q = rem[k + dn] * inv_lead;
            if (!q.is_zero()) {
                for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= q * d.c_[j];
            }
            quot[k] = std::move(q);
        }
        rem.resize(dn);
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Canonical display, highest degree first, e.g. "3*x^2+2*x-2", "1/2*x", "-x+1".
    [[nodiscard]] std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const Rational& c = c_[k];
            if (c.is_zero()) continue;
            const bool neg = c.sign() < 0;
            if (!s.empty()) s += neg ? "-" : "+";
            else if (neg) s += "-";
            const Rational mag = neg ? -c : c;
            if (k == 0) {
                s += mag.to_string();
                continue;
            }
            if (mag != Rational(1)) s += mag.to_string() + "*";
            s += "x";
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Plain Euclidean remainder sequence over Q, normalized to a monic result.
/// Slow on large inputs (coefficient swell); kept as a reference route.
inline Polynomial poly_gcd_euclid(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

} // namespace wmp
