#pragma once

/// Exception types. Every module reports contract violations by throwing one
/// of these; the CLI maps them onto exit codes.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace g2fib {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OddClass : Error { using Error::Error; };
struct UnknownCase : Error { using Error::Error; };
struct NotSquarefree : Error { using Error::Error; };
struct NonIntegral : Error { using Error::Error; };
struct LimitsTooSmall : Error { using Error::Error; };
struct IndivisibleOrder : Error { using Error::Error; };
struct Inapplicable : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };

/// Two independent computations of the same quantity disagreed.
struct Mismatch : Error {
    Mismatch(const std::string& what, std::string first, std::string second)
        : Error(what + ": " + first + " != " + second),
          first_value(std::move(first)), second_value(std::move(second)) {}
    std::string first_value;
    std::string second_value;
};

struct SyntaxError : Error {
    SyntaxError(std::size_t line_no, std::size_t col, const std::string& msg)
        : Error("line " + std::to_string(line_no) + ", column " + std::to_string(col) + ": " + msg),
          line(line_no), column(col), message(msg) {}
    std::size_t line;
    std::size_t column;
    std::string message;
};

struct SemanticError : Error { using Error::Error; };

} // namespace g2fib

namespace g2fib {

/// Process exit status for an error: 2 for malformed input, 3 for any other
/// library error, 1 for anything unexpected.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const SyntaxError*>(&e) != nullptr) return 2;
    if (dynamic_cast<const Error*>(&e) != nullptr) return 3;
    return 1;
}

/// Short class name used in diagnostics and golden manifests.
inline std::string error_class(const std::exception& e) {
    if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
    if (dynamic_cast<const SemanticError*>(&e)) return "SemanticError";
    if (dynamic_cast<const NonIntegral*>(&e)) return "NonIntegral";
    if (dynamic_cast<const Inapplicable*>(&e)) return "Inapplicable";
    if (dynamic_cast<const UnknownCase*>(&e)) return "UnknownCase";
    if (dynamic_cast<const OddClass*>(&e)) return "OddClass";
    if (dynamic_cast<const NotSquarefree*>(&e)) return "NotSquarefree";
    if (dynamic_cast<const LimitsTooSmall*>(&e)) return "LimitsTooSmall";
    if (dynamic_cast<const IndivisibleOrder*>(&e)) return "IndivisibleOrder";
    if (dynamic_cast<const BadParameter*>(&e)) return "BadParameter";
    if (dynamic_cast<const Mismatch*>(&e)) return "Mismatch";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "InternalError";
}

} // namespace g2fib
