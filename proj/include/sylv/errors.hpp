#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace sylv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not fit together.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A NaN or infinity reached a public entry point.
class NonFiniteInput : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// Shared shape of errors that can be pinned to one point of the evaluation grid.
class GridLocatedError : public Error {
public:
    explicit GridLocatedError(const std::string& what, std::optional<std::size_t> phi_index = std::nullopt)
        : Error(phi_index ? what + " (grid index " + std::to_string(*phi_index) + ")" : what),
          phi_index_(phi_index) {}

    std::optional<std::size_t> phi_index() const noexcept { return phi_index_; }

private:
    std::optional<std::size_t> phi_index_;
};

class ConvergenceFailure : public GridLocatedError {
public:
    using GridLocatedError::GridLocatedError;
};

/// The spectra of A and B intersect (numerically), so AX - XB = C has no unique solution.
class SpectraOverlap : public GridLocatedError {
public:
    using GridLocatedError::GridLocatedError;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class NotCoprime : public Error {
public:
    using Error::Error;
};

class DescriptorMismatch : public Error {
public:
    using Error::Error;
};

class BandwidthOverflow : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class InsufficientGrid : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed problem, result or certificate file.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace sylv
