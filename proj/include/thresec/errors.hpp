#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thresec {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class FieldMismatchError : public Error {
  public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class SingularMatrixError : public Error {
  public:
    using Error::Error;
};

// x * A = b has no solution.
class InconsistentSystemError : public Error {
  public:
    using Error::Error;
};

// x * A = b has more than one solution; kept distinct from inconsistency so
// callers can tell ambiguity apart from impossibility.
class UnderdeterminedError : public Error {
  public:
    using Error::Error;
};

// A scheme matrix failed one of the two rank conditions.
class NotProperError : public Error {
  public:
    enum class Side { Message, Key };

    NotProperError(Side side, std::size_t rank_found, std::size_t rank_needed)
        : Error(std::string("scheme is not proper: ") +
                (side == Side::Message ? "message" : "key") +
                "-side submatrix has rank " + std::to_string(rank_found) +
                ", needs " + std::to_string(rank_needed)),
          side(side), rank_found(rank_found), rank_needed(rank_needed) {}

    Side side;
    std::size_t rank_found;
    std::size_t rank_needed;
};

// Received word is not a valid encoding under the given scheme and key.
class IntegrityError : public Error {
  public:
    using Error::Error;
};

// Channel corruption exceeded what the decoder can repair.
class DecodingFailure : public Error {
  public:
    using Error::Error;
};

// Requested operation is outside what this build/configuration supports
// (wrong decoder for the scheme, enumeration budget exceeded, ...).
class CapabilityError : public Error {
  public:
    using Error::Error;
};

class BudgetExceededError : public CapabilityError {
  public:
    using CapabilityError::CapabilityError;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace thresec
