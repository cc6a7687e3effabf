#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hyperaut {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed form expression; `position` is a 0-based byte offset into the
/// input text.
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

struct UnknownVariableError : SyntaxError {
  UnknownVariableError(unsigned index, unsigned num_vars, std::size_t position)
      : SyntaxError("unknown variable x" + std::to_string(index) +
                        ": only " + std::to_string(num_vars) +
                        " variables declared",
                    position),
        index(index) {}
  unsigned index;
};

struct NotHomogeneousError : Error {
  NotHomogeneousError(unsigned deg_a, unsigned deg_b)
      : Error("form is not homogeneous: saw terms of degree " +
              std::to_string(deg_a) + " and " + std::to_string(deg_b)),
        degree_a(deg_a),
        degree_b(deg_b) {}
  unsigned degree_a;
  unsigned degree_b;
};

/// All terms cancelled; the zero polynomial has no degree.
struct ZeroFormError : Error {
  ZeroFormError() : Error("form is identically zero") {}
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

/// The requested (family, n, d) is outside the range the closed-form group
/// tables cover.
struct OutOfTableRangeError : Error {
  using Error::Error;
};

/// The exponent-difference lattice has positive corank: the projective
/// diagonal stabilizer is positive-dimensional.
struct InfiniteStabilizerError : Error {
  explicit InfiniteStabilizerError(int rank_defect)
      : Error("diagonal stabilizer is infinite (lattice rank defect " +
              std::to_string(rank_defect) + ")"),
        rank_defect(rank_defect) {}
  int rank_defect;
};

struct NotDivisibleError : Error {
  using Error::Error;
};

struct BudgetExceededError : Error {
  BudgetExceededError(std::string estimated, std::uint64_t budget)
      : Error("enumeration needs " + estimated + " tuples, budget is " +
              std::to_string(budget)),
        estimated_tuples(std::move(estimated)),
        budget(budget) {}
  std::string estimated_tuples;  // exact (d-1)^(n+2), decimal
  std::uint64_t budget;
};

struct EmptySpectrumError : Error {
  EmptySpectrumError() : Error("all spectrum sets are empty") {}
};

}  // namespace hyperaut
