#include <hyperaut/symmetry.hpp>

#include <hyperaut/linalg.hpp>

#include <numeric>

namespace hyperaut {

PhaseMatrix::PhaseMatrix(std::vector<int> perm, Int modulus,
                         std::vector<Int> phases)
    : perm_(std::move(perm)), modulus_(std::move(modulus)),
      phases_(std::move(phases)) {
  const int n = static_cast<int>(perm_.size());
  if (n == 0) throw PreconditionError("empty phase matrix");
  if (modulus_ < 1) throw PreconditionError("phase modulus must be positive");
  if (static_cast<int>(phases_.size()) != n)
    throw DimensionMismatchError("phase vector arity mismatch");
  std::vector<bool> hit(n, false);
  for (int v : perm_) {
    if (v < 0 || v >= n || hit[v])
      throw PreconditionError("perm is not a permutation");
    hit[v] = true;
  }
  for (Int& p : phases_) p = mod_floor(p, modulus_);
}

PhaseMatrix PhaseMatrix::identity(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return PhaseMatrix(std::move(perm), 1, std::vector<Int>(n, 0));
}

PhaseMatrix PhaseMatrix::cyclic_shift(int n) {
  // x_i -> x_{i+1}: column i carries its entry in row i-1.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (i + n - 1) % n;
  return PhaseMatrix(std::move(perm), 1, std::vector<Int>(n, 0));
}

PhaseMatrix PhaseMatrix::diagonal(Int modulus, std::vector<Int> phases) {
  std::vector<int> perm(phases.size());
  std::iota(perm.begin(), perm.end(), 0);
  return PhaseMatrix(std::move(perm), std::move(modulus), std::move(phases));
}

bool PhaseMatrix::is_diagonal() const {
  for (int i = 0; i < size(); ++i)
    if (perm_[i] != i) return false;
  return true;
}

bool PhaseMatrix::is_scalar() const {
  if (!is_diagonal()) return false;
  for (const Int& p : phases_)
    if (p != phases_.front()) return false;
  return true;
}

bool PhaseMatrix::is_identity() const {
  if (!is_diagonal()) return false;
  for (const Int& p : phases_)
    if (p != 0) return false;
  return true;
}

PhaseMatrix lift_modulus(const PhaseMatrix& g, const Int& n) {
  if (n % g.modulus() != 0)
    throw PreconditionError("lift target must be a multiple of the modulus");
  Int scale = n / g.modulus();
  std::vector<Int> phases = g.phases();
  for (Int& p : phases) p *= scale;
  return PhaseMatrix(g.perm(), n, std::move(phases));
}

PhaseMatrix compose(const PhaseMatrix& a, const PhaseMatrix& b) {
  if (a.size() != b.size())
    throw DimensionMismatchError("cannot compose phase matrices of different size");
  const Int n = lcm_int(a.modulus(), b.modulus());
  const Int sa = n / a.modulus(), sb = n / b.modulus();
  const int sz = a.size();
  std::vector<int> perm(sz);
  std::vector<Int> phases(sz);
  for (int i = 0; i < sz; ++i) {
    perm[i] = a.perm()[b.perm()[i]];
    phases[i] = a.phases()[b.perm()[i]] * sa + b.phases()[i] * sb;
  }
  return PhaseMatrix(std::move(perm), n, std::move(phases));
}

PhaseMatrix inverse(const PhaseMatrix& g) {
  const int sz = g.size();
  std::vector<int> perm(sz);
  std::vector<Int> phases(sz);
  for (int i = 0; i < sz; ++i) {
    perm[g.perm()[i]] = i;
    phases[g.perm()[i]] = -g.phases()[i];
  }
  return PhaseMatrix(std::move(perm), g.modulus(), std::move(phases));
}

PhaseMatrix power(const PhaseMatrix& g, const Int& e) {
  if (e < 0) return power(inverse(g), -e);
  PhaseMatrix acc = PhaseMatrix::identity(g.size());
  PhaseMatrix base = g;
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = compose(acc, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return acc;
}

bool equal(const PhaseMatrix& a, const PhaseMatrix& b) {
  if (a.size() != b.size() || a.perm() != b.perm()) return false;
  const Int n = lcm_int(a.modulus(), b.modulus());
  const Int sa = n / a.modulus(), sb = n / b.modulus();
  for (int i = 0; i < a.size(); ++i)
    if (mod_floor(a.phases()[i] * sa, n) != mod_floor(b.phases()[i] * sb, n))
      return false;
  return true;
}

bool projectively_equal(const PhaseMatrix& a, const PhaseMatrix& b) {
  if (a.size() != b.size() || a.perm() != b.perm()) return false;
  const Int n = lcm_int(a.modulus(), b.modulus());
  const Int sa = n / a.modulus(), sb = n / b.modulus();
  Int delta = mod_floor(a.phases()[0] * sa - b.phases()[0] * sb, n);
  for (int i = 1; i < a.size(); ++i)
    if (mod_floor(a.phases()[i] * sa - b.phases()[i] * sb, n) != delta)
      return false;
  return true;
}

namespace {

int permutation_order(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  long long ord = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = perm[cur];
      ++len;
    }
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

// Order of a diagonal phase matrix: N / gcd(N, all phases); projectively,
// phase differences replace phases.
Int diagonal_order(const PhaseMatrix& g, bool projective) {
  Int acc = g.modulus();
  const Int& ref = g.phases()[0];
  for (int i = 0; i < g.size(); ++i) {
    Int v = projective ? Int(g.phases()[i] - ref) : g.phases()[i];
    acc = gcd_int(acc, v);
  }
  return g.modulus() / acc;
}

}  // namespace

Int order(const PhaseMatrix& g) {
  int r = permutation_order(g.perm());
  return Int(r) * diagonal_order(power(g, r), false);
}

Int projective_order(const PhaseMatrix& g) {
  int r = permutation_order(g.perm());
  return Int(r) * diagonal_order(power(g, r), true);
}

std::optional<Int> invariance_check(const Form& f, const PhaseMatrix& g) {
  if (g.size() != f.num_vars())
    throw DimensionMismatchError("phase matrix size does not match the form");
  const int nv = f.num_vars();
  std::optional<Int> common;
  for (const auto& [mono, coeff] : f.terms()) {
    // F∘g sends x^alpha to zeta^e x^beta with beta[i] = alpha[perm[i]].
    Monomial image;
    image.exps.resize(nv);
    Int e = 0;
    for (int i = 0; i < nv; ++i) {
      int a = mono.exps[g.perm()[i]];
      image.exps[i] = a;
      if (a != 0) e += g.phases()[i] * a;
    }
    auto it = f.terms().find(image);
    if (it == f.terms().end() || it->second != coeff) return std::nullopt;
    e = mod_floor(e, g.modulus());
    if (!common) common = e;
    else if (*common != e) return std::nullopt;
  }
  return common;
}

std::vector<PhaseMatrix> DiagonalGroup::generator_matrices() const {
  std::vector<PhaseMatrix> out;
  out.reserve(generators.size());
  for (const auto& phases : generators)
    out.push_back(PhaseMatrix::diagonal(modulus, phases));
  return out;
}

DiagonalGroup diagonal_automorphisms(const Form& f) {
  const int nv = f.num_vars();
  const auto& terms = f.terms();
  const Monomial& base = terms.begin()->first;
  // Exponent differences in the basis {e_0 - e_{n+1}, ..., e_n - e_{n+1}} of
  // the trace-zero lattice: coordinates are just the first nv-1 entries.
  IntMat m(static_cast<Eigen::Index>(terms.size()) - 1, nv - 1);
  Eigen::Index r = 0;
  for (auto it = std::next(terms.begin()); it != terms.end(); ++it, ++r)
    for (int j = 0; j + 1 < nv; ++j)
      m(r, j) = it->first.exps[j] - base.exps[j];
  SmithDecomposition snf = smith_normal_form(m);
  if (snf.rank < nv - 1)
    throw InfiniteStabilizerError(static_cast<int>(nv - 1 - snf.rank));
  DiagonalGroup group;
  group.order = 1;
  for (Eigen::Index i = 0; i < snf.rank; ++i) {
    if (snf.diagonal[static_cast<std::size_t>(i)] == 1) continue;
    group.invariant_factors.push_back(snf.diagonal[static_cast<std::size_t>(i)]);
    group.order *= group.invariant_factors.back();
  }
  group.modulus = group.invariant_factors.empty() ? Int(1)
                                                  : group.invariant_factors.back();
  // Character generators: factor d_i at diagonal position i acts through
  // column i of V (coordinates of the dual vector), rescaled to the common
  // modulus.
  for (Eigen::Index i = 0; i < snf.rank; ++i) {
    const Int& di = snf.diagonal[static_cast<std::size_t>(i)];
    if (di == 1) continue;
    Int scale = group.modulus / di;
    std::vector<Int> phases(nv, 0);
    for (int j = 0; j + 1 < nv; ++j)
      phases[j] = mod_floor(snf.right(j, i) * scale, group.modulus);
    group.generators.push_back(std::move(phases));
  }
  return group;
}

Int klein_m(int n, int d) {
  if (n < 1 || d < 3) throw PreconditionError("klein_m needs n >= 1, d >= 3");
  Int num = pow_int(Int(d - 1), static_cast<unsigned long>(n + 2));
  num -= (n % 2 == 0) ? 1 : -1;  // (-1)^{n+2}
  if (num % d != 0) throw NotDivisibleError("klein_m identity violated");
  return num / d;
}

Form family_form(Family family, int n, int d) {
  switch (family) {
    case Family::fermat: return fermat_form(n, d);
    case Family::delsarte: return delsarte_form(n, d);
    case Family::klein: return klein_form(n, d);
  }
  throw PreconditionError("unknown family");
}

std::string GroupDescriptor::describe() const {
  auto order_text = [this]() -> std::string {
    switch (order_kind) {
      case OrderKind::finite: return "order " + order.get_str();
      case OrderKind::infinite: return "infinite";
      case OrderKind::unknown: return "order unknown";
    }
    return {};
  };
  switch (kind) {
    case Kind::cyclic_tower: {
      std::string s;
      for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + invariant_factors[i].get_str() + "Z";
      }
      if (invariant_factors.empty()) s = "trivial";
      return s + ", " + order_text();
    }
    case Kind::semidirect_cyclic:
      return "(Z/" + m.get_str() + "Z) x| Z/" + k.get_str() + "Z, " + order_text();
    case Kind::diagonal_semidirect_symmetric:
      return "(Z/" + d.get_str() + "Z)^" + std::to_string(power) + " x| Sym(" +
             std::to_string(sym_degree) + "), " + order_text();
    case Kind::named:
      switch (tag) {
        case NamedTag::psl2_f7: return "PSL2(F7), " + order_text();
        case NamedTag::psl2_f11: return "PSL2(F11), " + order_text();
        case NamedTag::sym5: return "Sym(5), " + order_text();
        case NamedTag::elliptic_semidirect:
          return "E x| Z/6Z (elliptic curve translations), " + order_text();
        case NamedTag::unknown_infinite: return "unknown (infinite)";
      }
  }
  return {};
}

namespace {

GroupDescriptor named_group(GroupDescriptor::NamedTag tag, long order) {
  GroupDescriptor g;
  g.kind = GroupDescriptor::Kind::named;
  g.tag = tag;
  g.order_kind = GroupDescriptor::OrderKind::finite;
  g.order = order;
  return g;
}

GroupDescriptor named_infinite(GroupDescriptor::NamedTag tag) {
  GroupDescriptor g;
  g.kind = GroupDescriptor::Kind::named;
  g.tag = tag;
  g.order_kind = GroupDescriptor::OrderKind::infinite;
  return g;
}

Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

GroupDescriptor family_aut_group(Family family, int n, int d) {
  if (n < 1 || d < 3)
    throw OutOfTableRangeError("automorphism tables cover n >= 1, d >= 3");
  switch (family) {
    case Family::fermat: {
      if ((n == 1 && d == 3) || (n == 2 && d == 4))
        throw OutOfTableRangeError(
            "Fermat (1,3) and (2,4) have no finite closed-form entry");
      GroupDescriptor g;
      g.kind = GroupDescriptor::Kind::diagonal_semidirect_symmetric;
      g.d = d;
      g.power = n + 1;
      g.sym_degree = n + 2;
      g.order_kind = GroupDescriptor::OrderKind::finite;
      g.order = pow_int(Int(d), static_cast<unsigned long>(n + 1)) * factorial(n + 2);
      return g;
    }
    case Family::delsarte: {
      if (n < 2 || d < 4 || (n == 2 && d == 4))
        throw OutOfTableRangeError(
            "the Delsarte group is only established for n >= 2, d >= 4, (n,d) != (2,4)");
      GroupDescriptor g;
      g.kind = GroupDescriptor::Kind::cyclic_tower;
      g.invariant_factors = {pow_int(Int(d - 1), static_cast<unsigned long>(n + 1))};
      g.order_kind = GroupDescriptor::OrderKind::finite;
      g.order = g.invariant_factors.front();
      return g;
    }
    case Family::klein: {
      if (n == 1 && d == 3)
        return named_infinite(GroupDescriptor::NamedTag::elliptic_semidirect);
      if (n == 1 && d == 4) return named_group(GroupDescriptor::NamedTag::psl2_f7, 168);
      if (n == 2 && d == 3) return named_group(GroupDescriptor::NamedTag::sym5, 120);
      if (n == 2 && d == 4)
        return named_infinite(GroupDescriptor::NamedTag::unknown_infinite);
      if (n == 3 && d == 3) return named_group(GroupDescriptor::NamedTag::psl2_f11, 660);
      GroupDescriptor g;
      g.kind = GroupDescriptor::Kind::semidirect_cyclic;
      g.m = klein_m(n, d);
      g.k = n + 2;
      g.order_kind = GroupDescriptor::OrderKind::finite;
      g.order = g.m * g.k;
      return g;
    }
  }
  throw PreconditionError("unknown family");
}

KleinGeneratorCheck verify_klein_generators(int n, int d) {
  const Form k = klein_form(n, d);
  const int nv = n + 2;
  const Int m = klein_m(n, d);
  const Int dm = Int(d) * m;
  std::vector<Int> phases(nv);
  Int w = 1;
  for (int i = 0; i < nv; ++i) {
    phases[i] = mod_floor(w, dm);
    w *= (1 - d);
  }
  PhaseMatrix sigma = PhaseMatrix::diagonal(dm, std::move(phases));
  PhaseMatrix nu = PhaseMatrix::cyclic_shift(nv);

  KleinGeneratorCheck out;
  auto cs = invariance_check(k, sigma);
  out.sigma_invariant = cs.has_value();
  if (cs) out.sigma_phase = *cs;
  auto cn = invariance_check(k, nu);
  out.nu_invariant = cn.has_value();
  if (cn) out.nu_phase = *cn;
  out.sigma_order_ok = projective_order(sigma) == m;
  out.nu_order_ok = order(nu) == nv && projective_order(nu) == nv;
  PhaseMatrix lhs = compose(compose(nu, sigma), inverse(nu));
  PhaseMatrix rhs = power(sigma, Int(1 - d));
  out.conjugation_ok = projectively_equal(lhs, rhs);

  out.coprime_branch = gcd_int(Int(d), m) == 1;
  if (out.coprime_branch) {
    std::vector<Int> mp(nv);
    Int v = 1;
    for (int i = 0; i < nv; ++i) {
      mp[i] = mod_floor(v, m);
      v *= (1 - d);
    }
    PhaseMatrix sigma_m = PhaseMatrix::diagonal(m, std::move(mp));
    out.coprime_branch_ok = invariance_check(k, sigma_m).has_value() &&
                            projective_order(sigma_m) == m &&
                            projectively_equal(
                                compose(compose(nu, sigma_m), inverse(nu)),
                                power(sigma_m, Int(1 - d)));
  }
  return out;
}

}  // namespace hyperaut
