#pragma once

#include <hyperaut/errors.hpp>
#include <hyperaut/integer.hpp>

#include <string>
#include <vector>

namespace hyperaut {

enum class Primality { prime, composite, probable_prime };

/// Primality of N >= 0. Deterministic (Miller-Rabin over staged prime base
/// sets) for N < 3'317'044'064'679'887'385'961'981; Baillie-PSW (Miller-Rabin
/// base 2 + strong Lucas with Selfridge parameters) above, reported as
/// probable_prime and never as a false composite.
Primality is_prime(const Int& n);

/// p = ((d-1)^{n+2} + 1) / d; throws NotDivisibleError when d does not
/// divide the numerator (n + 2 even).
Int wagstaff_p(int n, int d);

/// Multiplicative order of a modulo the prime p; a not divisible by p.
Int multiplicative_order(const Int& a, const Int& p);

struct WagstaffResult {
  int n = 0, d = 0;
  Int p;
  bool n_plus_2_prime = false;
  Primality p_primality = Primality::composite;
  bool is_wagstaff_type = false;
  /// (3,3) is of Wagstaff type but excluded from the stabilizer conjecture;
  /// the census renders it as a dash.
  bool excluded = false;

  bool shown_in_table() const { return is_wagstaff_type && !excluded; }
};

/// The census over 3 <= n <= n_max with n+2 prime and 3 <= d <= d_max,
/// row-major (n ascending, then d ascending).
std::vector<WagstaffResult> wagstaff_scan(int n_max, int d_max);

/// Text grid: rows n, columns d, cell p or "--".
std::string render_wagstaff_table(const std::vector<WagstaffResult>& results);

const char* to_string(Primality p);

}  // namespace hyperaut
