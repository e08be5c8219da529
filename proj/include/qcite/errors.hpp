#pragma once

#include <stdexcept>
#include <string>

namespace qcite {

/// Base class of all qcite errors. Math-domain violations use
/// std::domain_error directly.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Input violates a data invariant (negative counts, duplicate entities, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// Too few usable points to run the requested operation.
class InsufficientDataError : public DataError {
public:
    InsufficientDataError(const std::string& msg, long found, long required)
        : DataError(msg + ": " + std::to_string(found) + " usable points, need " +
                    std::to_string(required)),
          found_(found), required_(required) {}
    long found() const noexcept { return found_; }
    long required() const noexcept { return required_; }

private:
    long found_;
    long required_;
};

/// The optimizer could not produce a trustworthy result.
class FitError : public Error {
public:
    using Error::Error;
};

}  // namespace qcite
