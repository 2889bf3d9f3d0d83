#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nnst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A specification or parameter lies outside its valid domain.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

/// Input series disagree in length.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// A generated or supplied value is NaN or infinite.
class NonFiniteData : public Error {
public:
    using Error::Error;
};

/// The least-squares design matrix is singular (e.g. constant regressor).
class SingularDesign : public Error {
public:
    using Error::Error;
};

/// The Gauss-Newton Jacobian lost column rank at an iterate.
class RankDeficient : public Error {
public:
    using Error::Error;
};

/// Null-model estimation did not converge.
class EstimationFailure : public Error {
public:
    using Error::Error;
};

/// V_n^2 == 0: no kernel overlap between distinct observations.
class DegenerateStatistic : public Error {
public:
    using Error::Error;
};

/// A kernel moment integral diverges.
class DivergentMoment : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Row numbers are 1-based and count the header line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::string column)
        : Error(what), row_(row), column_(std::move(column)) {}

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

}  // namespace nnst
