#pragma once

#include <hyperaut/errors.hpp>
#include <hyperaut/integer.hpp>

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyperaut {

/// Exponent vector of one monomial. Comparison is lexicographic, which is
/// the canonical term order everywhere in this library (rendering, JSON,
/// matrix column indexing).
struct Monomial {
  std::vector<int> exps;

  int degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
  }
  auto operator<=>(const Monomial&) const = default;
};

/// Sparse homogeneous form with exact integer coefficients in num_vars
/// variables x0..x_{num_vars-1}. Immutable after construction; every stored
/// monomial has the same total degree and a nonzero coefficient.
class Form {
 public:
  using TermMap = std::map<Monomial, Int>;

  /// Canonicalizes (merges duplicates, drops zeros) and validates
  /// homogeneity. Throws ZeroFormError / NotHomogeneousError /
  /// PreconditionError.
  static Form from_terms(int num_vars, TermMap terms, bool known_smooth = false);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  bool known_smooth() const { return known_smooth_; }
  const TermMap& terms() const { return terms_; }

  bool operator==(const Form& o) const {
    return num_vars_ == o.num_vars_ && terms_ == o.terms_;
  }

 private:
  Form() = default;
  int num_vars_ = 0;
  int degree_ = 0;
  bool known_smooth_ = false;
  TermMap terms_;
};

/// Parses the form grammar:
///   form   := ['-'] term (('+'|'-') term)*
///   term   := [integer '*'] factor ('*' factor)* | integer
///   factor := 'x' index ['^' exponent]
/// Whitespace-insensitive. Throws SyntaxError (position-annotated),
/// UnknownVariableError, NotHomogeneousError, ZeroFormError.
Form parse_form(const std::string& text, int num_vars);

/// Canonical text rendering; parse_form(render(f), f.num_vars()) == f.
std::string render(const Form& f);

/// Reads the two-part form file: header line `vars=<n> degree=<d>`, then the
/// expression on the remaining lines. Validates the declared degree.
Form read_form_file(std::istream& in);
Form load_form_file(const std::string& path);

/// Exact formal partial derivative; nullopt when x_i does not appear.
std::optional<Form> partial_derivative(const Form& f, int i);

/// Sum_i c_i * dF/dx_i; nullopt when the result vanishes. c must have
/// num_vars entries, not all zero.
std::optional<Form> directional_derivative(const Form& f,
                                           const std::vector<Int>& c);
std::optional<Form> directional_derivative(const Form& f, const IntVec& c);

/// F ∘ A where variable x_i is replaced by row i of A dotted with x.
/// A must be square of dimension num_vars (DimensionMismatchError); a
/// substitution that kills every term raises ZeroFormError.
Form apply_substitution(const Form& f, const IntMat& a);

/// Same-degree, same-arity sum; throws ZeroFormError if everything cancels.
Form add(const Form& a, const Form& b);
Form scale(const Form& f, const Int& c);  // c != 0
Form multiply(const Form& a, const Form& b);
Form multiply_by_variable(const Form& f, int i);

/// The classical families (all known smooth for n >= 1, d >= 3).
Form fermat_form(int n, int d);    // x0^d + ... + x_{n+1}^d
Form delsarte_form(int n, int d);  // x0^{d-1}x1 + ... + x_n^{d-1}x_{n+1} + x_{n+1}^d
Form klein_form(int n, int d);     // x0^{d-1}x1 + ... + x_{n+1}^{d-1}x0

}  // namespace hyperaut
