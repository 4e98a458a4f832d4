//
// kronkit -- error types shared across modules
//

#ifndef KRONKIT_ERRORS_HPP
#define KRONKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kronkit {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Partition (m,n,p,q) does not tile the given matrix.
class InvalidPartitionError : public Error {
public:
    using Error::Error;
};

// Matrix shape incompatible with the requested operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Operation requires a nonzero matrix.
class ZeroMatrixError : public Error {
public:
    using Error::Error;
};

// Real-field operation invoked on complex data.
class FieldError : public Error {
public:
    using Error::Error;
};

// Iterative solver failed to converge within its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Malformed matrix file; line() is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace kronkit

#endif  // KRONKIT_ERRORS_HPP
