#pragma once

#include <hyperaut/forms.hpp>
#include <hyperaut/integer.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace hyperaut {

/// Minimum pairwise L1 distance between exponent vectors; infinite when the
/// form has fewer than two monomials. Finite values are even.
struct Sparsity {
  bool infinite = false;
  int value = 0;

  static Sparsity inf() { return {true, 0}; }
  static Sparsity finite(int v) { return {false, v}; }
  bool exceeds(int k) const { return infinite || value > k; }
  bool operator==(const Sparsity&) const = default;
};

/// The relation x_i <= x_j iff vars(dF/dx_i) ⊆ vars(dF/dx_j), stored
/// transitively closed without reflexive pairs.
struct PosetReport {
  std::vector<std::pair<int, int>> relation;     // (i, j) meaning x_i <= x_j
  bool is_poset = true;                          // antisymmetry on the closure
  bool is_trivial = true;                        // relation empty
  std::optional<std::pair<int, int>> witness;    // antisymmetry violation, i < j
};

struct SimpleBlock {
  enum class Kind { klein, delsarte };
  Kind kind;
  std::vector<int> variables;  // cyclic order for Klein, chain order for Delsarte
};

/// Decomposition of a form as a disjoint-variable sum of Klein and Delsarte
/// template blocks (coefficients 1, variables renamed only).
struct SimpleDecomposition {
  std::vector<SimpleBlock> blocks;

  std::vector<int> klein_sizes() const;
  std::vector<int> delsarte_sizes() const;
};

enum class ConstraintKind {
  not_applicable,
  generalized_triangular,
  generalized_permutation,
  simple_form_permutation,
};

enum class NotApplicableReason {
  sparsity_too_low,
  not_a_poset,
  hypothesis_out_of_range,
};

struct AutConstraint {
  ConstraintKind kind;
  std::optional<NotApplicableReason> reason;           // when not_applicable
  PosetReport poset;                                   // always populated when computed
  std::optional<SimpleDecomposition> decomposition;    // when simple
};

Sparsity sparsity(const Form& f);

/// Indices of the variables actually appearing, ascending.
std::vector<int> vars(const Form& f);

/// Rank of the linear map x -> dF/dx: the exact rank of the matrix whose
/// row i lists the coefficients of dF/dx_i over the lex-ordered monomials.
int diff_rank(const Form& f);

/// diff_rank of the directional derivative along c; 0 when the derivative
/// vanishes (c in the kernel is data, not an error).
int diff_rank_directional(const Form& f, const std::vector<Int>& c);

PosetReport le_relation(const Form& f);

std::optional<SimpleDecomposition> detect_simple(const Form& f);

/// Constraint on Aut(X) for the smooth hypersurface X = V(F). The caller
/// asserts smoothness; dimension/degree hypotheses are checked here.
AutConstraint classify(const Form& f);

/// Checks, for the Klein cubic in n+2 variables, that the differential rank
/// of dK/dx is 3 exactly on the coordinate directions: all coordinate
/// directions are verified to give rank 3, and `trials` pseudo-random
/// directions with at least two nonzero entries (entries drawn from [-5, 5],
/// deterministic from `seed`) are verified to give rank >= 4.
struct DirectionScanReport {
  bool passed = false;
  int coordinate_checked = 0;
  int random_checked = 0;
  std::optional<std::vector<Int>> counterexample;
  int counterexample_rank = -1;
};

DirectionScanReport klein_cubic_direction_scan(int n, int trials,
                                               std::uint64_t seed);

}  // namespace hyperaut
