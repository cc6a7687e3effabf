#include <hyperaut/torelli.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <thread>

namespace hyperaut {

namespace {

struct SliceAccum {
  std::vector<std::uint8_t> color;
  std::map<std::uint64_t, std::uint64_t> extra;  // residue -> hits beyond the first
  std::vector<std::uint64_t> counts;             // per q
  bool materialize = false;
  std::vector<std::vector<std::uint64_t>> members;  // per q, with duplicates
};

// Residue arithmetic for the two instantiations of the odometer.
struct U64Ops {
  using Res = std::uint64_t;
  std::uint64_t p;
  Res reduce(std::uint64_t v) const { return v % p; }
  Res add(Res a, Res b) const {
    Res s = a + b;
    return s >= p ? s - p : s;
  }
  Res sub(Res a, Res b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t index(Res r) const { return r; }
};

struct BigOps {
  using Res = Int;
  Int p;
  Res reduce(std::uint64_t v) const { return mod_floor(Int(static_cast<unsigned long>(v)), p); }
  Res add(const Res& a, const Res& b) const {
    Int s = a + b;
    if (s >= p) s -= p;
    return s;
  }
  Res sub(const Res& a, const Res& b) const {
    Int s = a - b;
    if (s < 0) s += p;
    return s;
  }
  std::uint64_t index(const Res& r) const { return to_u64(r); }
};

// One beta_0 slice of the cube odometer. Digits run b[0] (slowest, fixed per
// outer step) to b[last] (fastest); the residue and digit sum are maintained
// incrementally.
template <typename Ops>
void run_slice(const Ops& ops, int n, int d, int beta0_lo, int beta0_hi,
               const std::vector<int>& sum_to_q, SliceAccum& acc) {
  using Res = typename Ops::Res;
  const int nv = n + 2;
  const int top = d - 2;  // max digit
  std::vector<Res> wp(nv);  // (1-d)^i mod p
  wp[0] = ops.reduce(1);
  Res w = ops.sub(ops.reduce(0), ops.reduce(static_cast<std::uint64_t>(d - 1)));
  for (int i = 1; i < nv; ++i) {
    // wp[i] = wp[i-1] * (1-d): repeated subtraction avoided; multiply then reduce.
    if constexpr (std::is_same_v<Res, std::uint64_t>) {
      wp[i] = (static_cast<unsigned __int128>(wp[i - 1]) * w) % ops.p;
    } else {
      wp[i] = mod_floor(wp[i - 1] * w, ops.p);
    }
  }
  // Rolling the suffix j..last back from `top` to 0 subtracts
  // top * sum_{i>=j} wp[i].
  std::vector<Res> suffix_roll(nv + 1);
  suffix_roll[nv] = ops.reduce(0);
  for (int j = nv - 1; j >= 0; --j) {
    Res t = suffix_roll[j + 1];
    for (int k = 0; k < top; ++k) t = ops.add(t, wp[j]);
    suffix_roll[j] = t;
  }
  std::vector<int> b(nv, 0);
  auto record = [&](const Res& r, int q) {
    std::uint64_t idx = ops.index(r);
    ++acc.counts[static_cast<std::size_t>(q)];
    if (acc.materialize) acc.members[static_cast<std::size_t>(q)].push_back(idx);
    std::uint8_t& cell = acc.color[idx];
    if (cell == 0) {
      cell = static_cast<std::uint8_t>(q + 1);
    } else {
      ++acc.extra[idx];
      if (q + 1 < cell) cell = static_cast<std::uint8_t>(q + 1);
    }
  };
  for (int beta0 = beta0_lo; beta0 < beta0_hi; ++beta0) {
    std::fill(b.begin(), b.end(), 0);
    b[0] = beta0;
    Res r = ops.reduce(0);
    for (int k = 0; k < beta0; ++k) r = ops.add(r, wp[0]);
    int s = beta0;
    for (;;) {
      int q = sum_to_q[static_cast<std::size_t>(s)];
      if (q >= 0) record(r, q);
      // Advance the odometer over digits 1..nv-1.
      int i = nv - 1;
      while (i >= 1 && b[i] == top) --i;
      if (i < 1) break;
      ++b[i];
      r = ops.add(r, wp[i]);
      ++s;
      if (i < nv - 1) {
        r = ops.sub(r, suffix_roll[i + 1]);
        s -= top * (nv - 1 - i);
        std::fill(b.begin() + i + 1, b.end(), 0);
      }
    }
  }
}

template <typename Ops>
SpectrumData enumerate_impl(const Ops& ops, int n, int d,
                            const EnumerationOptions& opts) {
  if (n < 1 || d < 3) throw PreconditionError("enumeration needs n >= 1, d >= 3");
  if (n % 2 == 0)
    throw PreconditionError("p = ((d-1)^{n+2}+1)/d needs n odd");
  const int nv = n + 2;
  const int top = d - 2;
  Int tuples = pow_int(Int(d - 1), static_cast<unsigned long>(nv));
  if (tuples > Int(static_cast<unsigned long>(opts.budget)))
    throw BudgetExceededError(to_decimal(tuples), opts.budget);

  SpectrumData out;
  out.n = n;
  out.d = d;
  Int p_big = wagstaff_p(n, d);
  // Keeps the residue bitmap addressable and 64-bit products exact.
  if (!fits_u64(p_big) || to_u64(p_big) >= (std::uint64_t(1) << 32))
    throw PreconditionError("p too large for in-memory enumeration");
  out.p = to_u64(p_big);
  out.shift = to_u64(mod_floor(Int(1 - d), p_big));
  out.tuples_enumerated = tuples;

  const int max_sum = top * nv;
  std::vector<int> sum_to_q(static_cast<std::size_t>(max_sum) + 1, -1);
  for (int q = 0; q <= n; ++q) {
    long t = static_cast<long>(d) * (q + 1) - nv;
    if (t >= 0 && t <= max_sum) sum_to_q[static_cast<std::size_t>(t)] = q;
  }

  const bool materialize = out.p <= opts.materialize_limit;
  int threads = std::max(1, std::min(opts.threads, d - 1));
  std::vector<SliceAccum> accs(static_cast<std::size_t>(threads));
  for (auto& a : accs) {
    a.color.assign(out.p, 0);
    a.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    a.materialize = materialize;
    if (materialize) a.members.resize(static_cast<std::size_t>(n) + 1);
  }
  if (threads == 1) {
    run_slice(ops, n, d, 0, top + 1, sum_to_q, accs[0]);
  } else {
    std::vector<std::thread> pool;
    int slices = top + 1;
    for (int t = 0; t < threads; ++t) {
      int lo = slices * t / threads;
      int hi = slices * (t + 1) / threads;
      pool.emplace_back([&, t, lo, hi] {
        run_slice(ops, n, d, lo, hi, sum_to_q, accs[static_cast<std::size_t>(t)]);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Merge: cell color is the smallest q across slices; every further hit is
  // a multiplicity. Order-independent by construction.
  SliceAccum& main = accs[0];
  for (std::size_t t = 1; t < accs.size(); ++t) {
    SliceAccum& other = accs[t];
    for (std::uint64_t r = 0; r < out.p; ++r) {
      if (other.color[r] == 0) continue;
      if (main.color[r] == 0) {
        main.color[r] = other.color[r];
      } else {
        main.extra[r] += 1;
        if (other.color[r] < main.color[r]) main.color[r] = other.color[r];
      }
    }
    for (const auto& [r, extra] : other.extra) main.extra[r] += extra;
    for (std::size_t q = 0; q < main.counts.size(); ++q)
      main.counts[q] += other.counts[q];
  }

  out.color = std::move(main.color);
  out.sets.resize(static_cast<std::size_t>(n) + 1);
  for (int q = 0; q <= n; ++q) {
    out.sets[static_cast<std::size_t>(q)].q = q;
    out.sets[static_cast<std::size_t>(q)].target_sum =
        static_cast<long>(d) * (q + 1) - nv;
    out.sets[static_cast<std::size_t>(q)].count =
        main.counts[static_cast<std::size_t>(q)];
  }
  if (out.color[0] != 0) out.zero_hits = 1 + main.extra[0];
  for (const auto& [r, extra] : main.extra)
    out.violations.emplace_back(r, extra + 1);
  out.materialized = materialize;
  if (materialize) {
    for (int q = 0; q <= n; ++q) {
      auto& residues = out.sets[static_cast<std::size_t>(q)].residues;
      for (const auto& a : accs)
        residues.insert(residues.end(),
                        a.members[static_cast<std::size_t>(q)].begin(),
                        a.members[static_cast<std::size_t>(q)].end());
      std::sort(residues.begin(), residues.end());
      residues.erase(std::unique(residues.begin(), residues.end()),
                     residues.end());
    }
  }
  return out;
}

}  // namespace

SpectrumData enumerate_spectra(int n, int d, const EnumerationOptions& opts) {
  Int p_big = wagstaff_p(n, d);
  if (fits_u64(p_big) && to_u64(p_big) < (std::uint64_t(1) << 32)) {
    U64Ops ops{to_u64(p_big)};
    return enumerate_impl(ops, n, d, opts);
  }
  BigOps ops{p_big};
  return enumerate_impl(ops, n, d, opts);
}

SpectrumData enumerate_spectra_bigint(int n, int d,
                                      const EnumerationOptions& opts) {
  BigOps ops{wagstaff_p(n, d)};
  return enumerate_impl(ops, n, d, opts);
}

ExtremalityReport extremality_report(const SpectrumData& data) {
  ExtremalityReport out;
  out.total_count = data.total_count();
  out.rank_expected = data.p - 1;
  out.zero_hits = data.zero_hits;
  bool covered = data.color[0] == 0;
  for (std::uint64_t r = 1; r < data.p && covered; ++r)
    covered = data.color[r] != 0;
  out.distinct_union = covered && data.violations.empty();
  const int nv = data.n + 2;
  bool hodge = true;
  for (std::uint64_t r = 1; r < data.p && hodge; ++r) {
    std::uint8_t c = data.color[r];
    std::uint8_t mirror = data.color[data.p - r];
    hodge = (c == 0) ? (mirror == 0)
                     : (mirror == static_cast<std::uint8_t>(nv - c));
  }
  out.hodge_symmetry = hodge;
  out.extremal = out.total_count == out.rank_expected && out.zero_hits == 0 &&
                 out.distinct_union;
  return out;
}

SpectrumInvariants verify_spectrum_invariants(const SpectrumData& data) {
  SpectrumInvariants out;
  ExtremalityReport rep = extremality_report(data);
  out.partition = rep.distinct_union && rep.zero_hits == 0 &&
                  rep.total_count == rep.rank_expected;
  out.hodge_symmetry = rep.hodge_symmetry;
  bool shift = true;
  for (std::uint64_t r = 0; r < data.p && shift; ++r)
    shift = data.color[(r * data.shift) % data.p] == data.color[r];
  out.shift_invariance = shift;
  out.order_n_plus_2 =
      multiplicative_order(Int(1 - data.d), Int(static_cast<unsigned long>(data.p))) ==
      data.n + 2;
  return out;
}

std::vector<std::uint64_t> subgroup_generated(std::uint64_t a, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  std::uint64_t x = 1 % p;
  do {
    out.push_back(x);
    x = (x * a) % p;
  } while (x != 1 % p && out.size() <= p);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool preserves_coloring(const SpectrumData& data, std::uint64_t m) {
  for (std::uint64_t r = 1; r < data.p; ++r)
    if (data.color[(m * r) % data.p] != data.color[r]) return false;
  return true;
}

StabilizerResult finish_stabilizer(const SpectrumData& data,
                                   std::vector<std::uint64_t> stab) {
  std::sort(stab.begin(), stab.end());
  // Group closure sanity: the stabilizer of a coloring is a group.
  for (std::uint64_t a : stab)
    for (std::uint64_t b : stab)
      if (!std::binary_search(stab.begin(), stab.end(), (a * b) % data.p))
        throw Error("stabilizer closure violated; arithmetic bug");
  StabilizerResult out;
  out.stabilizer = std::move(stab);
  out.expected = subgroup_generated(data.shift, data.p);
  out.condition_holds = out.stabilizer == out.expected;
  return out;
}

}  // namespace

StabilizerResult stabilizer(const SpectrumData& data) {
  if (!data.violations.empty())
    throw PreconditionError("stabilizer needs a multiplicity-one spectrum");
  // Smallest nonempty S_q anchors the candidate set.
  int best_q = -1;
  std::uint64_t best = 0;
  for (const auto& s : data.sets) {
    if (s.count == 0) continue;
    if (best_q < 0 || s.count < best) {
      best_q = s.q;
      best = s.count;
    }
  }
  if (best_q < 0) throw EmptySpectrumError();
  std::vector<std::uint64_t> members;
  members.reserve(best);
  for (std::uint64_t r = 0; r < data.p; ++r)
    if (data.color[r] == best_q + 1) members.push_back(r);
  const std::uint64_t s0 = members.front();
  Int inv = mod_inverse(Int(static_cast<unsigned long>(s0)),
                        Int(static_cast<unsigned long>(data.p)));
  const std::uint64_t s0_inv = to_u64(inv);
  std::vector<std::uint64_t> stab;
  for (std::uint64_t t : members) {
    std::uint64_t m = (t * s0_inv) % data.p;
    if (preserves_coloring(data, m)) stab.push_back(m);
  }
  return finish_stabilizer(data, std::move(stab));
}

StabilizerResult stabilizer_exhaustive(const SpectrumData& data) {
  if (!data.violations.empty())
    throw PreconditionError("stabilizer needs a multiplicity-one spectrum");
  std::vector<std::uint64_t> stab;
  for (std::uint64_t m = 1; m < data.p; ++m)
    if (preserves_coloring(data, m)) stab.push_back(m);
  return finish_stabilizer(data, std::move(stab));
}

std::vector<std::uint64_t> stabilizer_of_set(const std::vector<std::uint64_t>& set,
                                             std::uint64_t p) {
  if (set.empty()) throw EmptySpectrumError();
  std::vector<std::uint64_t> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  auto contains = [&sorted](std::uint64_t v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  };
  const std::uint64_t s0 = sorted.front();
  const std::uint64_t s0_inv =
      to_u64(mod_inverse(Int(static_cast<unsigned long>(s0)),
                         Int(static_cast<unsigned long>(p))));
  std::vector<std::uint64_t> stab;
  for (std::uint64_t t : sorted) {
    std::uint64_t m = (t * s0_inv) % p;
    bool ok = true;
    for (std::uint64_t s : sorted) {
      if (!contains((m * s) % p)) {
        ok = false;
        break;
      }
    }
    if (ok) stab.push_back(m);
  }
  std::sort(stab.begin(), stab.end());
  return stab;
}

AppendixCubicSet appendix_cubic_sets(int n) {
  if (n < 3) throw PreconditionError("appendix construction needs n >= 3");
  if (is_prime(Int(n + 2)) != Primality::prime)
    throw PreconditionError("appendix construction needs n + 2 prime");
  Int p_big = wagstaff_p(n, 3);
  if (is_prime(p_big) == Primality::composite)
    throw PreconditionError("appendix construction needs p prime");
  AppendixCubicSet out;
  out.n = n;
  out.p = to_u64(p_big);
  const int nv = n + 2;
  std::vector<std::uint64_t> pw(static_cast<std::size_t>(nv));
  pw[0] = 1;
  const std::uint64_t w = out.p - 2;  // -2 mod p
  for (int i = 1; i < nv; ++i) pw[static_cast<std::size_t>(i)] = (pw[static_cast<std::size_t>(i - 1)] * w) % out.p;
  std::vector<std::uint64_t> sums;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      sums.push_back((pw[static_cast<std::size_t>(i)] + pw[static_cast<std::size_t>(j)]) % out.p);
  out.pair_count = sums.size();
  std::sort(sums.begin(), sums.end());
  out.all_distinct = std::adjacent_find(sums.begin(), sums.end()) == sums.end();
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  out.residues = std::move(sums);
  if ((n + 4) % 3 == 0) out.q = (n + 4) / 3 - 1;
  return out;
}

TorelliVerdict torelli_check(int n, int d, const TorelliOptions& opts) {
  TorelliVerdict v;
  v.n = n;
  v.d = d;
  v.budget = opts.budget;
  if (n < 3 || d < 3) {
    v.status = TorelliVerdict::Status::not_wagstaff_type;
    v.gate_message = "the modular criterion covers n >= 3, d >= 3";
    return v;
  }
  v.n_plus_2_prime = is_prime(Int(n + 2)) == Primality::prime;
  if (!v.n_plus_2_prime) {
    v.status = TorelliVerdict::Status::not_wagstaff_type;
    v.gate_message = "n + 2 = " + std::to_string(n + 2) + " is not prime";
    return v;
  }
  v.p = wagstaff_p(n, d);
  v.p_primality = is_prime(*v.p);
  v.wagstaff_type = v.p_primality != Primality::composite;
  if (!v.wagstaff_type) {
    v.status = TorelliVerdict::Status::not_wagstaff_type;
    v.gate_message = "p = " + to_decimal(*v.p) + " is composite";
    return v;
  }
  v.excluded_case = (n == 3 && d == 3);
  v.tuples_needed = pow_int(Int(d - 1), static_cast<unsigned long>(n + 2));
  if (v.tuples_needed > Int(static_cast<unsigned long>(opts.budget))) {
    v.status = TorelliVerdict::Status::budget_exceeded;
    v.gate_message = "needs " + to_decimal(v.tuples_needed) +
                     " tuples, budget is " + std::to_string(opts.budget);
    return v;
  }
  v.status = TorelliVerdict::Status::ok;
  EnumerationOptions eopts;
  eopts.budget = opts.budget;
  eopts.threads = opts.threads;
  eopts.materialize_limit = opts.materialize_limit;
  auto t0 = std::chrono::steady_clock::now();
  SpectrumData data = enumerate_spectra(n, d, eopts);
  auto t1 = std::chrono::steady_clock::now();
  v.extremality = extremality_report(data);
  v.invariants = verify_spectrum_invariants(data);
  auto t2 = std::chrono::steady_clock::now();
  StabilizerResult st = stabilizer(data);
  auto t3 = std::chrono::steady_clock::now();
  v.generated_by_1_minus_d = st.condition_holds;
  v.condition_holds = v.extremality->extremal && st.condition_holds;
  v.stab = std::move(st);
  v.spectra = std::move(data.sets);
  v.ord_1_minus_d = multiplicative_order(
      Int(1 - d), Int(static_cast<unsigned long>(data.p)));
  v.enumerate_seconds = std::chrono::duration<double>(t1 - t0).count();
  v.stabilizer_seconds = std::chrono::duration<double>(t3 - t2).count();
  return v;
}

}  // namespace hyperaut
