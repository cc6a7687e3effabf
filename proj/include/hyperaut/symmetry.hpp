#pragma once

#include <hyperaut/forms.hpp>
#include <hyperaut/integer.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hyperaut {

/// Generalized permutation matrix whose nonzero entries are roots of unity,
/// kept symbolic: entry at (perm[i], i) is zeta_N^{phases[i]} with N the
/// tracked modulus. Roots of unity are never evaluated numerically; all
/// phase arithmetic is residue arithmetic, moduli merged by lcm on
/// composition.
class PhaseMatrix {
 public:
  PhaseMatrix(std::vector<int> perm, Int modulus, std::vector<Int> phases);

  static PhaseMatrix identity(int n);
  static PhaseMatrix cyclic_shift(int n);  // x_i -> x_{i+1 mod n}
  static PhaseMatrix diagonal(Int modulus, std::vector<Int> phases);

  int size() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  const Int& modulus() const { return modulus_; }
  const std::vector<Int>& phases() const { return phases_; }

  bool is_diagonal() const;
  bool is_scalar() const;    // diagonal with all phases equal
  bool is_identity() const;  // diagonal with all phases 0

 private:
  std::vector<int> perm_;
  Int modulus_;               // N >= 1
  std::vector<Int> phases_;   // reduced mod N
};

/// Matrix product a*b; moduli are lifted to their lcm.
PhaseMatrix compose(const PhaseMatrix& a, const PhaseMatrix& b);
PhaseMatrix inverse(const PhaseMatrix& g);
PhaseMatrix power(const PhaseMatrix& g, const Int& e);  // e may be negative
PhaseMatrix lift_modulus(const PhaseMatrix& g, const Int& n);

bool equal(const PhaseMatrix& a, const PhaseMatrix& b);
/// Equal up to a global scalar phase.
bool projectively_equal(const PhaseMatrix& a, const PhaseMatrix& b);

/// Exact order in GL and in PGL (both computed arithmetically, not by
/// iterated composition).
Int order(const PhaseMatrix& g);
Int projective_order(const PhaseMatrix& g);

/// The scalar exponent c with F∘g = zeta_N^c F, if any: every monomial of F
/// must map onto a monomial of F with the same coefficient, and all
/// monomials must pick up one common phase.
std::optional<Int> invariance_check(const Form& f, const PhaseMatrix& g);

/// The finite abelian group of diagonal projective automorphisms of V(F),
/// as invariant factors of L/L' (L the trace-zero exponent lattice, L' the
/// lattice of monomial exponent differences), via Smith normal form.
/// Generators are diagonal phase vectors over the common modulus (the last
/// invariant factor).
struct DiagonalGroup {
  std::vector<Int> invariant_factors;       // each >= 2, divisibility chain
  Int order;                                // product of the factors
  Int modulus;                              // common phase denominator
  std::vector<std::vector<Int>> generators; // phase vectors mod `modulus`

  std::vector<PhaseMatrix> generator_matrices() const;
};

/// Throws InfiniteStabilizerError when the difference lattice has positive
/// corank (positive-dimensional diagonal stabilizer).
DiagonalGroup diagonal_automorphisms(const Form& f);

/// m = ((d-1)^{n+2} - (-1)^{n+2}) / d, the order of the diagonal subgroup of
/// the Klein hypersurface; the division is always exact.
Int klein_m(int n, int d);

enum class Family { fermat, delsarte, klein };

struct GroupDescriptor {
  enum class Kind {
    cyclic_tower,                  // Z/f1 x ... with f1 | f2 | ...
    semidirect_cyclic,             // (Z/m) x| (Z/k)
    diagonal_semidirect_symmetric, // (Z/d)^power x| Sym(sym_degree)
    named,
  };
  enum class NamedTag { psl2_f7, psl2_f11, sym5, elliptic_semidirect, unknown_infinite };
  enum class OrderKind { finite, infinite, unknown };

  Kind kind;
  std::vector<Int> invariant_factors;  // cyclic_tower
  Int m, k;                            // semidirect_cyclic
  Int d;                               // diagonal_semidirect_symmetric
  int power = 0;
  int sym_degree = 0;
  NamedTag tag = NamedTag::unknown_infinite;
  OrderKind order_kind = OrderKind::finite;
  Int order;                           // meaningful when finite

  std::string describe() const;
};

Form family_form(Family family, int n, int d);

/// Closed-form automorphism groups of the classical families, including the
/// exceptional Klein cases; throws OutOfTableRangeError outside the proved
/// ranges.
GroupDescriptor family_aut_group(Family family, int n, int d);

/// Builds the Klein generators sigma (diagonal, phases (1-d)^i mod dm) and
/// nu (cyclic shift) and checks: both leave K invariant up to scalar,
/// projective orders are m and n+2, and nu sigma nu^{-1} = sigma^{1-d}.
/// When gcd(d, m) = 1 the mod-m normalization of sigma is verified too.
struct KleinGeneratorCheck {
  bool sigma_invariant = false;
  bool nu_invariant = false;
  Int sigma_phase, nu_phase;  // the scalar exponents c
  bool sigma_order_ok = false;
  bool nu_order_ok = false;
  bool conjugation_ok = false;
  bool coprime_branch = false;      // gcd(d, m) = 1
  bool coprime_branch_ok = true;    // trivially true otherwise
  bool passed() const {
    return sigma_invariant && nu_invariant && sigma_order_ok && nu_order_ok &&
           conjugation_ok && coprime_branch_ok;
  }
};

KleinGeneratorCheck verify_klein_generators(int n, int d);

}  // namespace hyperaut
