#include <hyperaut/numbertheory.hpp>

#include <array>
#include <sstream>

namespace hyperaut {

namespace {

constexpr std::array<int, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
    47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Strong probable prime test to base a; n odd, n > 2.
bool miller_rabin(const Int& n, const Int& a) {
  Int base = mod_floor(a, n);
  if (base == 0) return true;
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  Int x = powm(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Deterministic witness thresholds for prefix sets {2, 3, 5, ...} of prime
// bases (Jaeschke; Sorenson-Webster for the 11-13 base rows).
struct MillerRabinStage {
  const char* bound;
  int bases;
};
constexpr std::array<MillerRabinStage, 10> kStages = {{
    {"2047", 1},
    {"1373653", 2},
    {"25326001", 3},
    {"3215031751", 4},
    {"2152302898747", 5},
    {"3474749660383", 6},
    {"341550071728321", 7},
    {"3825123056546413051", 9},
    {"318665857834031151167461", 12},
    {"3317044064679887385961981", 13},
}};

// Strong Lucas probable prime test with Selfridge (method A) parameters.
// n is odd, coprime to small primes, and not a perfect square.
bool strong_lucas(const Int& n) {
  long d_small = 5;
  Int d;
  for (;;) {
    d = d_small;
    int j = mpz_jacobi(d.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) return false;  // shares a factor with D: composite here
    d_small = d_small > 0 ? -(d_small + 2) : -(d_small - 2);
  }
  // P = 1, Q = (1 - D) / 4.
  Int q = (1 - d) / 4;
  Int k = n + 1;
  unsigned long s = mpz_scan1(k.get_mpz_t(), 0);
  Int l = k >> s;
  // Compute U_l, V_l, Q^l mod n by binary expansion of l (MSB first).
  Int u = 1, v = 1, qk = mod_floor(q, n);
  auto halve = [&n](Int x) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    x >>= 1;
    return mod_floor(x, n);
  };
  std::size_t bits = mpz_sizeinbase(l.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    // double: (U, V, Q^k) -> (U V, V^2 - 2 Q^k, Q^{2k})
    u = u * v % n;
    v = mod_floor(v * v - 2 * qk, n);
    qk = qk * qk % n;
    if (mpz_tstbit(l.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      // increment: U' = (P U + V)/2, V' = (D U + P V)/2, Q^{k+1}
      Int nu = halve(u + v);
      Int nv = halve(d * u + v);
      u = nu;
      v = mod_floor(nv, n);
      qk = qk * mod_floor(q, n) % n;
    }
  }
  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = mod_floor(v * v - 2 * qk, n);
    if (v == 0) return true;
    qk = qk * qk % n;
  }
  return false;
}

}  // namespace

Primality is_prime(const Int& n) {
  if (n < 0) throw PreconditionError("is_prime expects N >= 0");
  if (n < 2) return Primality::composite;
  for (int p : kSmallPrimes) {
    if (n == p) return Primality::prime;
    if (n % p == 0) return Primality::composite;
  }
  if (n < 101 * 101) return Primality::prime;
  for (const auto& stage : kStages) {
    if (n < Int(stage.bound)) {
      for (int i = 0; i < stage.bases; ++i)
        if (!miller_rabin(n, kSmallPrimes[static_cast<std::size_t>(i)]))
          return Primality::composite;
      return Primality::prime;
    }
  }
  // Baillie-PSW beyond the deterministic range.
  if (mpz_perfect_square_p(n.get_mpz_t())) return Primality::composite;
  if (!miller_rabin(n, 2)) return Primality::composite;
  if (!strong_lucas(n)) return Primality::composite;
  return Primality::probable_prime;
}

Int wagstaff_p(int n, int d) {
  if (n < 1 || d < 3) throw PreconditionError("wagstaff_p needs n >= 1, d >= 3");
  Int num = pow_int(Int(d - 1), static_cast<unsigned long>(n + 2)) + 1;
  if (num % d != 0)
    throw NotDivisibleError("d = " + std::to_string(d) +
                            " does not divide (d-1)^{n+2} + 1 for n = " +
                            std::to_string(n) + " (n + 2 must be odd)");
  return num / d;
}

Int multiplicative_order(const Int& a, const Int& p) {
  Int base = mod_floor(a, p);
  if (base == 0) throw PreconditionError("multiplicative_order: a divisible by p");
  Int ord = 1;
  Int x = base;
  while (x != 1) {
    x = x * base % p;
    ++ord;
    if (ord > p) throw PreconditionError("multiplicative_order: p not prime?");
  }
  return ord;
}

std::vector<WagstaffResult> wagstaff_scan(int n_max, int d_max) {
  if (n_max < 3 || d_max < 3) throw PreconditionError("scan bounds must be >= 3");
  std::vector<WagstaffResult> out;
  for (int n = 3; n <= n_max; ++n) {
    if (is_prime(Int(n + 2)) != Primality::prime) continue;
    for (int d = 3; d <= d_max; ++d) {
      WagstaffResult r;
      r.n = n;
      r.d = d;
      r.p = wagstaff_p(n, d);
      r.n_plus_2_prime = true;
      r.p_primality = is_prime(r.p);
      r.is_wagstaff_type = r.p_primality != Primality::composite;
      r.excluded = (n == 3 && d == 3);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string render_wagstaff_table(const std::vector<WagstaffResult>& results) {
  if (results.empty()) return "";
  std::vector<int> ds;
  for (const auto& r : results) {
    if (r.n != results.front().n) break;
    ds.push_back(r.d);
  }
  const std::size_t cols = ds.size();
  std::vector<std::vector<std::string>> grid;
  grid.push_back({});
  grid.back().push_back("n\\d");
  for (int d : ds) grid.back().push_back(std::to_string(d));
  for (std::size_t i = 0; i < results.size(); i += cols) {
    grid.push_back({});
    grid.back().push_back(std::to_string(results[i].n));
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& r = results[i + j];
      grid.back().push_back(r.shown_in_table() ? r.p.get_str() : "--");
    }
  }
  std::vector<std::size_t> width(cols + 1, 0);
  for (const auto& row : grid)
    for (std::size_t j = 0; j < row.size(); ++j)
      width[j] = std::max(width[j], row[j].size());
  std::ostringstream text;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid[i].size(); ++j) {
      if (j) text << " | ";
      text << std::string(width[j] - grid[i][j].size(), ' ') << grid[i][j];
    }
    text << "\n";
    if (i == 0) {
      for (std::size_t j = 0; j <= cols; ++j) {
        if (j) text << "-+-";
        text << std::string(width[j], '-');
      }
      text << "\n";
    }
  }
  return text.str();
}

const char* to_string(Primality p) {
  switch (p) {
    case Primality::prime: return "prime";
    case Primality::composite: return "composite";
    case Primality::probable_prime: return "probable_prime";
  }
  return "?";
}

}  // namespace hyperaut
