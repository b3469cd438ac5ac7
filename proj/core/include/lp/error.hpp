#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace lp {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NotPositive,
  NoConvergence,
  ShapeMismatch,
  DimMismatch,
  EmptyInput,
  BadRank,
  BadDim,
  NotUnit,
  NotRankOne,
  NotProjection,
  NotPure,
  NotUnbiased,
  NotOddPrime,
  IndexOutOfRange,
  NullProjection,
  NullVector,
  InvalidState,
  InvalidEffect,
  InvalidPovm,
  BadOperands,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` is the machine-readable
/// category. `index()` is set for errors tied to one element of a sequence
/// (e.g. the projection that annihilated the probe vector).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace lp
