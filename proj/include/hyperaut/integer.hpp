#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace hyperaut {

/// Exact arbitrary-precision integer used throughout the library.
using Int = mpz_class;

/// Dense integer matrix/vector types. All exact linear algebra in this
/// library runs on these.
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline Int int_from_string(const std::string& s) { return Int(s); }

inline std::string to_decimal(const Int& v) { return v.get_str(); }

/// base^exp for a machine-size non-negative exponent.
inline Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// base^exp mod m (m > 0, exp >= 0).
inline Int powm(const Int& base, const Int& exp, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Canonical representative of v mod m in [0, m).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Inverse of a mod m; requires gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (!ok) throw std::invalid_argument("mod_inverse: argument not invertible");
  return r;
}

inline bool fits_u64(const Int& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Int& v) {
  std::uint64_t lo = mpz_getlimbn(v.get_mpz_t(), 0);
  return mpz_size(v.get_mpz_t()) == 0 ? 0 : lo;
}

}  // namespace hyperaut

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

// Allow `2 * m` style expressions with plain integer literals.
template <typename BinaryOp>
struct ScalarBinaryOpTraits<mpz_class, long, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<long, mpz_class, BinaryOp> {
  typedef mpz_class ReturnType;
};

}  // namespace Eigen
