#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nshmc {

/// Argument outside the mathematical domain of an operation (t <= 0, p < 1, NaN, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vector lengths or image dimensions that do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An energy was asked for something it does not expose (gradient, prox, subgradient sampler).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The prox objective has no minimizer: the bracket grew past 2^60.
class NoMinimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that makes a statistic undefined (empty histogram, constant chain).
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad command-line input or experiment parameters.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed PGM data. offset() is the byte position where parsing failed.
class PgmParseError : public std::runtime_error {
 public:
  PgmParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace nshmc
