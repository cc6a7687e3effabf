#pragma once

#include <hyperaut/errors.hpp>
#include <hyperaut/integer.hpp>
#include <hyperaut/numbertheory.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hyperaut {

/// One eigenvalue-exponent set S_q = { sum_i beta_i (1-d)^i mod p } over the
/// bounded compositions beta in {0..d-2}^{n+2} with sum beta = d(q+1)-n-2.
struct SpectrumSet {
  int q = 0;
  long target_sum = 0;
  std::uint64_t count = 0;             // tuples hitting the set, with multiplicity
  std::vector<std::uint64_t> residues; // sorted distinct, in [0, p-1]; only
                                       // populated when p <= materialize_limit
};

/// Result of the single-pass enumeration of the whole cube {0..d-2}^{n+2},
/// bucketed by digit sum. `color[r]` is 0 when no tuple of any bucketed sum
/// hits residue r, else 1 + the smallest q hitting it; extra hits are listed
/// in `violations` (residue, total multiplicity >= 2).
struct SpectrumData {
  int n = 0, d = 0;
  std::uint64_t p = 0;
  std::uint64_t shift = 0;  // (1-d) mod p
  std::vector<std::uint8_t> color;
  std::vector<SpectrumSet> sets;  // q = 0..n
  bool materialized = false;
  std::uint64_t zero_hits = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> violations;
  Int tuples_enumerated;  // (d-1)^{n+2}

  std::uint64_t total_count() const {
    std::uint64_t t = 0;
    for (const auto& s : sets) t += s.count;
    return t;
  }
};

struct EnumerationOptions {
  std::uint64_t budget = 200'000'000;        // max tuples
  int threads = 1;                           // workers over beta_0 slices
  std::uint64_t materialize_limit = 1'000'000;  // residue lists kept if p <= limit
};

/// Enumerates all (d-1)^{n+2} exponent tuples in one odometer pass (split
/// over beta_0 slices when threads > 1; the merged result is identical for
/// any worker count). Throws BudgetExceededError when the cube exceeds the
/// budget. Requires n odd (so that p is defined); p need not be prime here.
SpectrumData enumerate_spectra(int n, int d, const EnumerationOptions& opts = {});

/// Same enumeration with all residue arithmetic on arbitrary-precision
/// integers; used to cross-check the fixed-width fast path.
SpectrumData enumerate_spectra_bigint(int n, int d,
                                      const EnumerationOptions& opts = {});

struct ExtremalityReport {
  std::uint64_t total_count = 0;
  std::uint64_t rank_expected = 0;  // p - 1
  std::uint64_t zero_hits = 0;
  bool distinct_union = false;   // disjoint union of the S_q is {1..p-1}, multiplicity one
  bool hodge_symmetry = false;   // S_{n-q} = -S_q for every q
  bool extremal = false;         // total == p-1 and zero_hits == 0 and distinct_union
};

ExtremalityReport extremality_report(const SpectrumData& data);

/// The exact spectrum facts the Torelli condition rests on.
struct SpectrumInvariants {
  bool partition = false;       // same as distinct_union
  bool hodge_symmetry = false;
  bool shift_invariance = false;  // (1-d) * S_q = S_q for every q
  bool order_n_plus_2 = false;    // ord of (1-d) mod p
};

SpectrumInvariants verify_spectrum_invariants(const SpectrumData& data);

struct StabilizerResult {
  std::vector<std::uint64_t> stabilizer;  // sorted
  std::vector<std::uint64_t> expected;    // <1-d> mod p, sorted
  bool condition_holds = false;           // stabilizer == expected
};

/// Simultaneous multiplicative stabilizer {m : m S_q = S_q for all q} by
/// candidate pruning: candidates are t * s0^{-1} for t in a smallest
/// nonempty S_q. Requires a multiplicity-one spectrum and at least one
/// nonempty set.
StabilizerResult stabilizer(const SpectrumData& data);

/// Oracle route: scans every m in (Z/pZ)^x. Intended for p <= 10^4.
StabilizerResult stabilizer_exhaustive(const SpectrumData& data);

std::vector<std::uint64_t> subgroup_generated(std::uint64_t a, std::uint64_t p);

/// Stabilizer of a single residue set under multiplication mod p.
std::vector<std::uint64_t> stabilizer_of_set(const std::vector<std::uint64_t>& set,
                                             std::uint64_t p);

/// The appendix construction for d = 3: the pair-sum set
/// {(-2)^i + (-2)^j mod p : 0 <= i < j <= n+1}. Coincides with the S_q of
/// target sum 2 when 3 | n+4 (then q is reported).
struct AppendixCubicSet {
  int n = 0;
  std::uint64_t p = 0;
  std::vector<std::uint64_t> residues;  // sorted distinct
  std::uint64_t pair_count = 0;         // (n+2 choose 2)
  bool all_distinct = false;
  std::optional<int> q;
};

AppendixCubicSet appendix_cubic_sets(int n);

struct TorelliOptions {
  std::uint64_t budget = 200'000'000;
  int threads = 1;
  std::uint64_t materialize_limit = 1'000'000;
};

/// Full pipeline: Wagstaff gate, budget gate, enumeration, extremality,
/// stabilizer, condition verdict.
struct TorelliVerdict {
  enum class Status { ok, not_wagstaff_type, budget_exceeded };

  int n = 0, d = 0;
  Status status = Status::not_wagstaff_type;
  std::string gate_message;        // why a gate stopped the run
  bool n_plus_2_prime = false;
  std::optional<Int> p;
  Primality p_primality = Primality::composite;
  bool wagstaff_type = false;
  bool excluded_case = false;      // (3,3): conjecture hypothesis excludes it
  Int tuples_needed;
  std::uint64_t budget = 0;

  std::optional<ExtremalityReport> extremality;
  std::optional<SpectrumInvariants> invariants;
  std::optional<StabilizerResult> stab;
  std::vector<SpectrumSet> spectra;  // from the run (residues when materialized)
  bool generated_by_1_minus_d = false;
  bool condition_holds = false;
  Int ord_1_minus_d;
  double enumerate_seconds = 0;
  double stabilizer_seconds = 0;

  int exit_code() const {
    switch (status) {
      case Status::budget_exceeded: return 3;
      case Status::not_wagstaff_type: return 4;
      case Status::ok: return condition_holds ? 0 : 1;
    }
    return 1;
  }
};

TorelliVerdict torelli_check(int n, int d, const TorelliOptions& opts = {});

}  // namespace hyperaut
