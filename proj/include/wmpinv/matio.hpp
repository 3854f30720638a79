#pragma once

// Text I/O for matrices over the three fields and the random generators.
//
// MatrixFile format (UTF-8; LF or CRLF accepted, LF written):
//
//     matrix <rows> <cols> field=<rational|float|ratfun>
//     <entry> <entry> ...        one line per matrix row
//
// Entries are whitespace-separated tokens: `int` or `int/uint` for rational,
// decimal or scientific for float, and a space-free expression for ratfun:
//
//     expr   := ['-'] term (('+' | '-') term)*
//     term   := factor (('*' | '/') factor)*
//     factor := base ['^' uint]
//     base   := integer | 'x' | '(' expr ')'
//
// Juxtaposition is not multiplication ("2x" is an error).

#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matrix.hpp"

namespace wmp {

enum class FieldTag { Rational, Float, RatFun };

inline std::string_view to_string(FieldTag f) noexcept
{
    switch (f) {
    case FieldTag::Rational: return "rational";
    case FieldTag::Float: return "float";
    case FieldTag::RatFun: return "ratfun";
    }
    return "?";
}

inline std::optional<FieldTag> parse_field_tag(std::string_view s)
{
    if (s == "rational") return FieldTag::Rational;
    if (s == "float") return FieldTag::Float;
    if (s == "ratfun") return FieldTag::RatFun;
    return std::nullopt;
}

template <Field T>
constexpr FieldTag field_tag_of()
{
    if constexpr (std::same_as<T, Rational>) return FieldTag::Rational;
    else if constexpr (std::same_as<T, double>) return FieldTag::Float;
    else return FieldTag::RatFun;
}

/// A matrix whose field is only known at run time.
using AnyMatrix = std::variant<Matrix<Rational>, Matrix<double>, Matrix<RatFun>>;

inline FieldTag field_of(const AnyMatrix& m) { return static_cast<FieldTag>(m.index()); }

// ---------------------------------------------------------------------------
// Expression parser

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text, std::size_t line = 1, std::size_t col0 = 1)
        : s_(text), line_(line), col0_(col0)
    {
    }

    RatFun parse()
    {
        skip_ws();
        RatFun r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character", {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return r;
    }

private:
    static constexpr unsigned long kMaxExponent = 100000;

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const
    {
        std::string found = pos_ < s_.size() ? std::string("'") + s_[pos_] + "'" : std::string("end of input");
        throw ParseError(line_, col0_ + pos_, msg + ", found " + found, std::move(expected));
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFun expr()
    {
        const bool neg = eat('-');
        RatFun acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    RatFun term()
    {
        RatFun acc = factor();
        for (;;) {
            if (eat('*')) {
                acc *= factor();
            } else if (eat('/')) {
                const std::size_t at = pos_;
                RatFun d = factor();
                if (d.is_zero()) {
                    throw Error(ErrorKind::DivisionByZero,
                                "line " + std::to_string(line_) + ", column " + std::to_string(col0_ + at) +
                                    ": division by zero");
                }
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RatFun factor()
    {
        RatFun b = base();
        if (!eat('^')) return b;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (start == pos_) fail("bad exponent", {"unsigned integer"});
        unsigned long e = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, e);
        if (ec != std::errc() || e > kMaxExponent) {
            pos_ = start;
            fail("exponent too large", {"unsigned integer <= " + std::to_string(kMaxExponent)});
        }
        RatFun result(1);
        while (e != 0) {
            if (e & 1U) result *= b;
            e >>= 1U;
            if (e != 0) b *= b;
        }
        return result;
    }

    RatFun base()
    {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input", {"integer", "'x'", "'('"});
        const char c = s_[pos_];
        if (c == 'x') {
            ++pos_;
            return RatFun(Polynomial::x());
        }
        if (c == '(') {
            ++pos_;
            RatFun inner = expr();
            if (!eat(')')) fail("unbalanced parenthesis", {"')'", "'+'", "'-'", "'*'", "'/'"});
            return inner;
        }
        if (c >= '0' && c <= '9') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
            return RatFun(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)), 10), mpz_class(1)));
        }
        fail("unexpected character", {"integer", "'x'", "'('"});
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col0_;
};

} // namespace detail

/// Parses an expression in x into a canonical rational function.
inline RatFun parse_ratfun_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

// ---------------------------------------------------------------------------
// Scalars

namespace detail {

template <Field T>
T parse_token(std::string_view tok, std::size_t line, std::size_t col)
{
    if constexpr (std::same_as<T, Rational>) {
        Rational r;
        if (!Rational::try_parse(tok, r)) {
            throw ParseError(line, col, "malformed rational '" + std::string(tok) + "'", {"int", "int/uint"});
        }
        return r;
    } else if constexpr (std::same_as<T, double>) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw ParseError(line, col, "malformed float '" + std::string(tok) + "'", {"decimal", "scientific"});
        }
        return v;
    } else {
        try {
            return ExprParser(tok, line, col).parse();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line, col, std::string("invalid expression: ") + e.what());
        }
    }
}

inline std::vector<std::pair<std::string_view, std::size_t>> split_ws(std::string_view line)
{
    std::vector<std::pair<std::string_view, std::size_t>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        out.emplace_back(line.substr(start, i - start), start + 1);
    }
    return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view l = text.substr(start, end - start);
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        lines.push_back(l);
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

template <Field T>
Matrix<T> parse_body(const std::vector<std::string_view>& lines, std::size_t rows, std::size_t cols)
{
    std::vector<T> data;
    data.reserve(rows * cols);
    std::size_t seen = 0;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        auto toks = split_ws(lines[ln]);
        if (toks.empty()) continue;
        if (seen == rows) {
            throw Error(ErrorKind::DimensionMismatch,
                        "line " + std::to_string(ln + 1) + ": more than " + std::to_string(rows) + " rows");
        }
        if (toks.size() != cols) {
            throw Error(ErrorKind::DimensionMismatch, "line " + std::to_string(ln + 1) + ": expected " +
                                                          std::to_string(cols) + " entries, found " +
                                                          std::to_string(toks.size()));
        }
        for (auto [tok, col] : toks) data.push_back(parse_token<T>(tok, ln + 1, col));
        ++seen;
    }
    if (seen != rows) {
        throw Error(ErrorKind::DimensionMismatch,
                    "header declares " + std::to_string(rows) + " rows, found " + std::to_string(seen));
    }
    return Matrix<T>(rows, cols, std::move(data));
}

inline std::size_t parse_dim(std::string_view tok, std::size_t col)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0) {
        throw ParseError(1, col, "bad dimension '" + std::string(tok) + "'", {"positive integer"});
    }
    return v;
}

} // namespace detail

template <Field T>
T parse_scalar(std::string_view token)
{
    return detail::parse_token<T>(token, 1, 1);
}

/// Parses MatrixFile text in whatever field its header declares.
inline AnyMatrix parse_matrix(std::string_view text)
{
    const auto lines = detail::split_lines(text);
    const auto head = detail::split_ws(lines.front());
    if (head.empty() || head[0].first != "matrix") {
        throw ParseError(1, head.empty() ? 1 : head[0].second, "missing header", {"'matrix'"});
    }
    if (head.size() != 4) {
        const std::size_t col = head.size() > 4 ? head[4].second : lines.front().size() + 1;
        throw ParseError(1, col, "header must be 'matrix <rows> <cols> field=<tag>'");
    }
    const std::size_t rows = detail::parse_dim(head[1].first, head[1].second);
    const std::size_t cols = detail::parse_dim(head[2].first, head[2].second);
    std::string_view ftok = head[3].first;
    std::optional<FieldTag> tag;
    if (ftok.starts_with("field=")) tag = parse_field_tag(ftok.substr(6));
    if (!tag) throw ParseError(1, head[3].second, "unknown field", {"field=rational", "field=float", "field=ratfun"});

    switch (*tag) {
    case FieldTag::Rational: return detail::parse_body<Rational>(lines, rows, cols);
    case FieldTag::Float: return detail::parse_body<double>(lines, rows, cols);
    case FieldTag::RatFun: return detail::parse_body<RatFun>(lines, rows, cols);
    }
    throw std::logic_error("unreachable");
}

/// Brings a parsed matrix into field T. Rational matrices embed into every
/// field; other cross-field conversions are refused.
template <Field T>
Matrix<T> convert_to(const AnyMatrix& any)
{
    if (const auto* same = std::get_if<Matrix<T>>(&any)) return *same;
    if (const auto* q = std::get_if<Matrix<Rational>>(&any)) {
        std::vector<T> data;
        data.reserve(q->size());
        for (const auto& v : q->data()) data.push_back(from_rational<T>(v));
        return Matrix<T>(q->rows(), q->cols(), std::move(data));
    }
    throw Error(ErrorKind::UnsupportedField, "cannot use a " + std::string(to_string(field_of(any))) +
                                                 " matrix where a " + std::string(field_traits<T>::name) +
                                                 " matrix is required");
}

template <Field T>
std::string serialize_matrix(const Matrix<T>& m)
{
    std::string out = "matrix " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " field=" +
                      std::string(field_traits<T>::name) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != 0) out += ' ';
            out += field_traits<T>::to_string(m(i, j));
        }
        out += '\n';
    }
    return out;
}

inline std::string serialize_matrix(const AnyMatrix& m)
{
    return std::visit([](const auto& mm) { return serialize_matrix(mm); }, m);
}

// ---------------------------------------------------------------------------
// Random generators
//
// Every draw comes from std::mt19937_64, whose output sequence is fixed by
// the standard, mapped to integers and reals by the portable helpers below
// (never by <random> distributions, whose outputs vary between libraries).
// Entry (i, j) of an r x c matrix draws from its own engine seeded with
// split_seed(seed, i * c + j), so entries do not depend on fill order.

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream)
{
    return splitmix64(seed ^ splitmix64(stream + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    /// Uniform in [lo, hi] by rejection.
    long uniform_int(long lo, long hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<long>(engine_());
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t v = 0;
        do {
            v = engine_();
        } while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

private:
    std::mt19937_64 engine_;
};

struct GenSpec {
    std::size_t rows = 1;
    std::size_t cols = 1;
    unsigned degree = 0;
    double prob1 = 1.0;
    double prob2 = 1.0;
    long coeff_lo = -10;
    long coeff_hi = 10;
    std::uint64_t seed = 0;

    void validate() const
    {
        if (rows == 0 || cols == 0) throw std::invalid_argument("rows and cols must be positive");
        if (!(prob1 >= 0.0 && prob1 <= 1.0) || !(prob2 >= 0.0 && prob2 <= 1.0))
            throw std::invalid_argument("probabilities must lie in [0, 1]");
        if (coeff_lo > coeff_hi) throw std::invalid_argument("empty coefficient range");
    }
};

/// One random polynomial entry.
///
/// With probability 1 - prob1 the entry is 0. Otherwise each degree i in
/// 0..degree contributes c*x^i, c uniform in the coefficient range, kept with
/// probability prob2. A zero sum is replaced by 1 when prob1 >= 1.
inline Polynomial random_poly(const GenSpec& spec, Rng& rng)
{
    if (rng.uniform_real() > spec.prob1) return {};
    std::vector<Rational> coeffs(spec.degree + 1);
    for (unsigned i = 0; i <= spec.degree; ++i) {
        const bool keep = rng.uniform_real() < spec.prob2;
        const long c = rng.uniform_int(spec.coeff_lo, spec.coeff_hi);
        coeffs[i] = Rational(keep ? c : 0L);
    }
    Polynomial s(std::move(coeffs));
    if (s.is_zero() && spec.prob1 >= 1.0) s = Polynomial(1);
    return s;
}

/// Matrix of independent random_poly entries. Constant fields require degree 0.
template <Field T>
Matrix<T> random_matrix(const GenSpec& spec)
{
    spec.validate();
    if constexpr (!std::same_as<T, RatFun>) {
        if (spec.degree != 0) {
            throw std::invalid_argument("degree > 0 requires the ratfun field");
        }
    }
    Matrix<T> m(spec.rows, spec.cols);
    for (std::size_t i = 0; i < spec.rows; ++i) {
        for (std::size_t j = 0; j < spec.cols; ++j) {
            Rng rng(split_seed(spec.seed, i * spec.cols + j));
            Polynomial p = random_poly(spec, rng);
            if constexpr (std::same_as<T, RatFun>) m(i, j) = RatFun(p);
            else m(i, j) = from_rational<T>(p.coeff(0));
        }
    }
    return m;
}

/// Random symmetric positive definite n x n weight: B^T B + I for exact
/// fields, B^T B + n I for floats, B with integer entries in [lo, hi].
template <Field T>
Matrix<T> random_spd(std::size_t n, std::uint64_t seed, long lo = -10, long hi = 10)
{
    Matrix<Rational> b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rng rng(split_seed(seed, i * n + j));
            b(i, j) = Rational(rng.uniform_int(lo, hi));
        }
    Matrix<Rational> w = conj_transpose(b) * b;
    const Rational shift = is_exact_v<T> ? Rational(1) : Rational(static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) w(i, i) += shift;
    return convert_to<T>(AnyMatrix(std::move(w)));
}

} // namespace wmp
