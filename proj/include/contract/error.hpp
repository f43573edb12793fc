#pragma once

#include <stdexcept>
#include <string>

namespace contract {

// All library failures carry a short machine-readable reason code (e.g.
// "syntax-error", "curve-through-vertex") next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(std::string code, const std::string& message, int line, int column)
        : Error(std::move(code), "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace contract
