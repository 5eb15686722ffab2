#pragma once

#include <stdexcept>
#include <string>

namespace coha {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Input text could not be parsed. Carries 1-based line/column.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_;
    int col_;
};

// An internal invariant failed; indicates a bug, not a user error.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

// An enumeration or endomorphism-algebra sweep would exceed the size guard.
class SizeGuardError : public PreconditionError {
public:
    SizeGuardError(const std::string& msg, unsigned long long estimated)
        : PreconditionError(msg + " (estimated size " + std::to_string(estimated) + ")"),
          estimated_(estimated) {}
    unsigned long long estimated() const { return estimated_; }

private:
    unsigned long long estimated_;
};

}  // namespace coha
