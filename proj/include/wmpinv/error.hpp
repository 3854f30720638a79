#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wmp {

enum class ErrorKind {
    DivisionByZero,
    DimensionMismatch,
    IndexOutOfRange,
    SingularMatrix,
    UnsupportedField,
    DegenerateWeight,
    DegenerateDelta,
    WeightNotSPD,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::DegenerateWeight: return "DegenerateWeight";
    case ErrorKind::DegenerateDelta: return "DegenerateDelta";
    case ErrorKind::WeightNotSPD: return "WeightNotSPD";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Positioned parse failure. Line and column are 1-based; `expected` lists the
/// token classes that would have been accepted at that position.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message,
               std::vector<std::string> expected = {})
        : Error(ErrorKind::ParseError, format(line, column, message, expected)),
          line_(line), column_(column), expected_(std::move(expected))
    {
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& message,
                              const std::vector<std::string>& expected)
    {
        std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": " + message;
        if (!expected.empty()) {
            s += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i != 0) s += " | ";
                s += expected[i];
            }
            s += ")";
        }
        return s;
    }

    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

} // namespace wmp
