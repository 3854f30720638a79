#pragma once

// Monic gcd of polynomials over Q.
//
// Inputs are scaled to primitive integer polynomials, their gcd is computed
// modulo a sequence of word-size primes and lifted by Chinese remaindering
// until the lifted candidate divides both inputs. A single prime is enough to
// certify coprimality, which is the common case inside rational-function
// arithmetic.

#include <cstdint>
#include <vector>

#include "polynomial.hpp"

namespace wmp {

namespace detail {

using u64 = std::uint64_t;
using ZPoly = std::vector<mpz_class>; // index = degree, trimmed
using PPoly = std::vector<u64>;       // coefficients mod p, trimmed

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

inline u64 powmod(u64 a, u64 e, u64 p)
{
    u64 r = 1;
    a %= p;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1U;
    }
    return r;
}

inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

inline bool is_prime_u32(u64 n)
{
    if (n < 2) return false;
    for (u64 small : {2U, 3U, 5U, 7U}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // Deterministic for n < 4'759'123'141.
    for (u64 a : {2U, 7U, 61U}) {
        if (a % n == 0) continue;
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Descending primes below 2^31, computed once.
inline const std::vector<u64>& gcd_primes()
{
    static const std::vector<u64> primes = [] {
        std::vector<u64> v;
        v.reserve(4096);
        for (u64 n = (u64{1} << 31) - 1; v.size() < 4096; n -= 2) {
            if (is_prime_u32(n)) v.push_back(n);
        }
        return v;
    }();
    return primes;
}

template <class Vec>
void trim(Vec& v)
{
    while (!v.empty() && v.back() == 0) v.pop_back();
}

/// Primitive integer polynomial with positive leading coefficient, same roots as p.
inline ZPoly primitive_integer(const Polynomial& p)
{
    mpz_class lcm = 1;
    for (const auto& c : p.coefficients()) {
        if (!c.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.raw().get_den_mpz_t());
    }
    ZPoly z;
    z.reserve(p.coefficients().size());
    mpz_class content = 0;
    for (const auto& c : p.coefficients()) {
        mpz_class v = c.raw().get_num() * (lcm / c.raw().get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        z.push_back(std::move(v));
    }
    if (z.back() < 0) content = -content;
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    return z;
}

inline PPoly reduce(const ZPoly& z, u64 p)
{
    PPoly r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = mpz_fdiv_ui(z[i].get_mpz_t(), p);
    trim(r);
    return r;
}

/// In-place remainder a mod b over F_p; b nonzero.
inline void rem_inplace(PPoly& a, const PPoly& b, u64 p)
{
    const std::size_t db = b.size() - 1;
    const u64 inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 q = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j <= db; ++j) {
            a[shift + j] = (a[shift + j] + p - mulmod(q, b[j], p)) % p;
        }
        trim(a);
    }
}

inline PPoly monic_gcd_mod(PPoly a, PPoly b, u64 p)
{
    while (!b.empty()) {
        rem_inplace(a, b, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        const u64 inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

inline Polynomial to_polynomial(const ZPoly& z)
{
    std::vector<Rational> v;
    v.reserve(z.size());
    for (const auto& c : z) v.emplace_back(mpq_class(c));
    return Polynomial(std::move(v));
}

} // namespace detail

/// Monic gcd over Q. gcd(p, 0) = monic(p); gcd(0, 0) = 0.
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);

    using namespace detail;
    const ZPoly za = primitive_integer(a);
    const ZPoly zb = primitive_integer(b);
    mpz_class gamma;
    mpz_gcd(gamma.get_mpz_t(), za.back().get_mpz_t(), zb.back().get_mpz_t());

    long bound = std::min(a.degree(), b.degree());
    ZPoly lifted;
    ZPoly previous;
    mpz_class modulus = 0;
    const Polynomial pa(to_polynomial(za));
    const Polynomial pb(to_polynomial(zb));

    for (u64 p : gcd_primes()) {
        if (mpz_fdiv_ui(za.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(zb.back().get_mpz_t(), p) == 0)
            continue;
        PPoly g = monic_gcd_mod(reduce(za, p), reduce(zb, p), p);
        const long dg = static_cast<long>(g.size()) - 1;
        if (dg == 0) return Polynomial(1);
        if (dg > bound) continue; // unlucky prime
        const u64 gamma_p = mpz_fdiv_ui(gamma.get_mpz_t(), p);
        for (auto& c : g) c = mulmod(c, gamma_p, p);

        if (dg < bound || modulus == 0) {
            bound = dg;
            lifted.assign(g.size(), 0);
            for (std::size_t i = 0; i < g.size(); ++i) lifted[i] = static_cast<unsigned long>(g[i]);
            modulus = static_cast<unsigned long>(p);
            previous.clear();
        } else {
            // Combine H (mod modulus) with g (mod p).
            const u64 m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
            const u64 m_inv = invmod(m_mod_p, p);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const u64 h_mod_p = mpz_fdiv_ui(lifted[i].get_mpz_t(), p);
                const u64 t = mulmod((g[i] + p - h_mod_p) % p, m_inv, p);
                lifted[i] += modulus * static_cast<unsigned long>(t);
            }
            modulus *= static_cast<unsigned long>(p);
        }

        // Symmetric representative.
        ZPoly candidate = lifted;
        const mpz_class half = modulus / 2;
        for (auto& c : candidate) {
            if (c > half) c -= modulus;
        }
        if (candidate != previous) {
            previous = std::move(candidate);
            continue;
        }
        // Stable across one more prime: verify by trial division.
        Polynomial h = to_polynomial(candidate).monic();
        if (divmod(pa, h).second.is_zero() && divmod(pb, h).second.is_zero()) return h;
    }
    return poly_gcd_euclid(a, b);
}

} // namespace wmp
