#pragma once

#include <stdexcept>
#include <string>

namespace geocoord {

/// A lexical or syntax error at a 1-based line and column.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          message_(std::move(message)),
          line_(line),
          column_(column) {}

    [[nodiscard]] const std::string& message() const { return message_; }
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace geocoord
