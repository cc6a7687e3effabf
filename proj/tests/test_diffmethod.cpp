#include <doctest.h>

#include <hyperaut/diffmethod.hpp>
#include <hyperaut/linalg.hpp>

#include <random>
#include <set>

using namespace hyperaut;

namespace {

Form random_sparse_form(std::mt19937_64& rng, int nv, int deg, int terms) {
  Form::TermMap map;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    m.exps.assign(static_cast<std::size_t>(nv), 0);
    int left = deg;
    for (int i = 0; i + 1 < nv; ++i) {
      int e = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
      m.exps[static_cast<std::size_t>(i)] = e;
      left -= e;
    }
    m.exps[static_cast<std::size_t>(nv - 1)] = left;
    long c = static_cast<long>(rng() % 19) - 9;
    if (c == 0) c = 1;
    map[std::move(m)] += c;
  }
  for (auto it = map.begin(); it != map.end();) {
    if (it->second == 0) it = map.erase(it);
    else ++it;
  }
  if (map.empty()) {
    Monomial m;
    m.exps.assign(static_cast<std::size_t>(nv), 0);
    m.exps[0] = deg;
    map[std::move(m)] = 1;
  }
  return Form::from_terms(nv, std::move(map));
}

// Product of random elementary operations: unimodular by construction.
IntMat random_unimodular(std::mt19937_64& rng, int n) {
  IntMat m = IntMat::Identity(n, n);
  for (int step = 0; step < 3 * n; ++step) {
    int kind = static_cast<int>(rng() % 3);
    int i = static_cast<int>(rng() % static_cast<unsigned>(n));
    int j = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (kind == 0 && i != j) {
      long c = static_cast<long>(rng() % 5) - 2;
      m.row(i) += Int(c) * m.row(j);
    } else if (kind == 1 && i != j) {
      m.row(i).swap(m.row(j));
    } else if (kind == 2) {
      m.row(i) = -m.row(i);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("sparsity of the classical families") {
  CHECK(sparsity(fermat_form(3, 5)) == Sparsity::finite(10));
  for (int n : {1, 2, 4})
    for (int d : {3, 4, 5, 7}) {
      CHECK(sparsity(fermat_form(n, d)) == Sparsity::finite(2 * d));
      CHECK(sparsity(klein_form(n, d)) == Sparsity::finite(2 * d - 2));
      CHECK(sparsity(delsarte_form(n, d)) == Sparsity::finite(2 * d - 2));
    }
  CHECK(sparsity(klein_form(4, 3)) == Sparsity::finite(4));
  CHECK(sparsity(parse_form("x0^3", 2)) == Sparsity::inf());
  CHECK(Sparsity::inf().exceeds(4));
}

TEST_CASE("sparsity is even") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    Form f = random_sparse_form(rng, 2 + static_cast<int>(rng() % 4),
                                1 + static_cast<int>(rng() % 6),
                                2 + static_cast<int>(rng() % 4));
    Sparsity s = sparsity(f);
    if (!s.infinite) CHECK(s.value % 2 == 0);
  }
}

TEST_CASE("vars") {
  CHECK(vars(parse_form("x0^2*x1 + x1^2*x2", 3)) == std::vector<int>{0, 1, 2});
  CHECK(vars(parse_form("x1^3", 4)) == std::vector<int>{1});
  // Delsarte dT/dx1 (0-based) involves exactly x0, x1, x2.
  auto dt = partial_derivative(delsarte_form(2, 5), 1);
  REQUIRE(dt.has_value());
  CHECK(vars(*dt) == std::vector<int>{0, 1, 2});
}

TEST_CASE("differential rank examples") {
  CHECK(diff_rank(fermat_form(3, 5)) == 5);
  CHECK(diff_rank(parse_form("x0^4", 3)) == 1);
  // Klein cubic n=5: dK/dx0 = x6^2 + 2 x0 x1 has rank 3.
  auto d0 = partial_derivative(klein_form(5, 3), 0);
  REQUIRE(d0.has_value());
  CHECK(*d0 == parse_form("x6^2 + 2*x0*x1", 7));
  CHECK(diff_rank(*d0) == 3);
}

TEST_CASE("directional differential ranks on the Klein cubic") {
  Form k = klein_form(5, 3);
  const int nv = 7;
  for (int i = 0; i < nv; ++i) {
    std::vector<Int> e(nv, 0);
    e[static_cast<std::size_t>(i)] = 1;
    CHECK(diff_rank_directional(k, e) == 3);
  }
  std::vector<Int> gap(nv, 0);
  gap[0] = 1;
  gap[3] = 1;  // c_i c_{i+l} != 0 with l = 3
  CHECK(diff_rank_directional(k, gap) >= 4);
  std::vector<Int> adj(nv, 0);
  adj[0] = 1;
  adj[1] = 1;  // exactly two adjacent entries
  CHECK(diff_rank_directional(k, adj) >= 4);
}

TEST_CASE("drank equals number of variables when sparsity exceeds 2") {
  std::mt19937_64 rng(43);
  int checked = 0;
  while (checked < 200) {
    Form f = random_sparse_form(rng, 2 + static_cast<int>(rng() % 5),
                                2 + static_cast<int>(rng() % 5),
                                1 + static_cast<int>(rng() % 4));
    if (!sparsity(f).exceeds(2)) continue;
    ++checked;
    CHECK(diff_rank(f) == static_cast<int>(vars(f).size()));
  }
}

TEST_CASE("diff_rank is invariant under invertible substitutions") {
  std::mt19937_64 rng(47);
  Form bases[] = {klein_form(2, 4), fermat_form(2, 3),
                  parse_form("x0^3 + x0*x1*x2 + x2^3", 3)};
  for (const Form& f : bases) {
    int expect = diff_rank(f);
    for (int t = 0; t < 40; ++t) {
      IntMat a = random_unimodular(rng, f.num_vars());
      CHECK(diff_rank(apply_substitution(f, a)) == expect);
    }
  }
}

TEST_CASE("le relation on the classical families") {
  for (int n : {2, 3, 4})
    for (int d : {3, 4, 6}) {
      PosetReport r = le_relation(klein_form(n, d));
      CHECK(r.is_poset);
      CHECK(r.is_trivial);
    }
  // With only three variables every Klein partial involves all of them, so
  // every pair is related both ways.
  CHECK_FALSE(le_relation(klein_form(1, 5)).is_poset);
  // Standard Delsarte: x0 <= x1 and x_{n+1} <= x_n are the nontrivial pairs.
  {
    PosetReport r = le_relation(delsarte_form(2, 5));
    CHECK(r.is_poset);
    CHECK_FALSE(r.is_trivial);
    CHECK(r.relation ==
          std::vector<std::pair<int, int>>{{0, 1}, {3, 2}});
  }
  {
    PosetReport r = le_relation(delsarte_form(1, 5));  // 3 variables
    CHECK(r.is_poset);
    CHECK(r.relation ==
          std::vector<std::pair<int, int>>{{0, 1}, {2, 1}});
  }
}

TEST_CASE("antisymmetry failure is witnessed") {
  Form f = parse_form("x0^4*x1 + x1^4*x0 + x2^5 + x3^5", 4);
  PosetReport r = le_relation(f);
  CHECK_FALSE(r.is_poset);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == std::make_pair(0, 1));
  CHECK_FALSE(r.is_trivial);
}

TEST_CASE("closure is idempotent") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 100; ++t) {
    Form f = random_sparse_form(rng, 3 + static_cast<int>(rng() % 3),
                                2 + static_cast<int>(rng() % 4),
                                2 + static_cast<int>(rng() % 3));
    PosetReport r = le_relation(f);
    // Close again by hand; nothing new may appear.
    std::set<std::pair<int, int>> rel(r.relation.begin(), r.relation.end());
    std::set<std::pair<int, int>> closed = rel;
    for (auto [i, j] : rel)
      for (auto [k, l] : rel)
        if (j == k && i != l) closed.insert({i, l});
    CHECK(closed == rel);
  }
}

TEST_CASE("simple decomposition detection") {
  auto klein = detect_simple(klein_form(3, 5));
  REQUIRE(klein.has_value());
  CHECK(klein->klein_sizes() == std::vector<int>{5});
  CHECK(klein->delsarte_sizes().empty());

  auto fermat = detect_simple(fermat_form(3, 4));
  REQUIRE(fermat.has_value());
  CHECK(fermat->klein_sizes().empty());
  CHECK(fermat->delsarte_sizes() == std::vector<int>{1, 1, 1, 1, 1});

  auto delsarte = detect_simple(delsarte_form(2, 5));
  REQUIRE(delsarte.has_value());
  CHECK(delsarte->delsarte_sizes() == std::vector<int>{4});

  // K2 + T1 (d = 3): the 2-cycle Klein block is a legitimate template match.
  auto k2t1 = detect_simple(parse_form("x0^2*x1 + x1^2*x0 + x2^3", 3));
  REQUIRE(k2t1.has_value());
  CHECK(k2t1->klein_sizes() == std::vector<int>{2});
  CHECK(k2t1->delsarte_sizes() == std::vector<int>{1});

  // Mixed blocks with disjoint variables.
  auto mixed = detect_simple(
      parse_form("x0^3*x1 + x1^3*x2 + x2^3*x0 + x3^3*x4 + x4^4", 5));
  REQUIRE(mixed.has_value());
  CHECK(mixed->klein_sizes() == std::vector<int>{3});
  CHECK(mixed->delsarte_sizes() == std::vector<int>{2});

  // Non-matches: wrong coefficient, wrong pattern, shared variables,
  // missing variable.
  CHECK_FALSE(detect_simple(parse_form("2*x0^3 + x1^3", 2)).has_value());
  CHECK_FALSE(detect_simple(parse_form("x0^2*x1^2 + x2^4", 3)).has_value());
  CHECK_FALSE(detect_simple(parse_form("x0^3*x1 + x1^2*x0^2", 2)).has_value());
  CHECK_FALSE(detect_simple(parse_form("x0^4 + x1^4", 3)).has_value());
  // x0^{d-1}x1 + x1^{d-1}x0 is exactly the Klein 2-cycle.
  auto k2 = detect_simple(parse_form("x0^3*x1 + x1^3*x0", 2));
  REQUIRE(k2.has_value());
  CHECK(k2->klein_sizes() == std::vector<int>{2});
}

TEST_CASE("classifier golden set") {
  AutConstraint k25 = classify(klein_form(2, 5));
  CHECK(k25.kind == ConstraintKind::generalized_permutation);

  AutConstraint d25 = classify(delsarte_form(2, 5));
  CHECK(d25.kind == ConstraintKind::simple_form_permutation);
  REQUIRE(d25.decomposition.has_value());

  AutConstraint np = classify(parse_form("x0^4*x1 + x1^4*x0 + x2^5 + x3^5", 4));
  CHECK(np.kind == ConstraintKind::not_applicable);
  CHECK(np.reason == NotApplicableReason::not_a_poset);
  REQUIRE(np.poset.witness.has_value());
  CHECK(*np.poset.witness == std::make_pair(0, 1));

  for (int n : {4, 5, 6}) {
    AutConstraint kc = classify(klein_form(n, 3));
    CHECK(kc.kind == ConstraintKind::not_applicable);
    CHECK(kc.reason == NotApplicableReason::sparsity_too_low);
  }

  CHECK(classify(klein_form(1, 3)).reason ==
        NotApplicableReason::hypothesis_out_of_range);
  CHECK(classify(klein_form(2, 4)).reason ==
        NotApplicableReason::hypothesis_out_of_range);

  // A nontrivial poset that is not simple (coefficient 2 breaks the
  // Delsarte template but not the sparsity or the order relation).
  AutConstraint tri =
      classify(parse_form("x0^4*x1 + x1^4*x2 + x2^4*x3 + 2*x3^5", 4));
  CHECK(tri.kind == ConstraintKind::generalized_triangular);
  CHECK_FALSE(tri.poset.is_trivial);
}

TEST_CASE("generalized permutation verdicts have trivial posets") {
  std::mt19937_64 rng(59);
  int seen = 0;
  for (int t = 0; t < 400 && seen < 30; ++t) {
    Form f = random_sparse_form(rng, 3 + static_cast<int>(rng() % 3),
                                5 + static_cast<int>(rng() % 3),
                                2 + static_cast<int>(rng() % 3));
    AutConstraint c = classify(f);
    if (c.kind == ConstraintKind::generalized_permutation) {
      ++seen;
      CHECK(c.poset.is_trivial);
    }
  }
}

TEST_CASE("klein cubic direction scan") {
  for (int n : {4, 5}) {
    DirectionScanReport r = klein_cubic_direction_scan(n, 200, 1);
    CHECK(r.passed);
    CHECK(r.coordinate_checked == n + 2);
    CHECK(r.random_checked == 200);
  }
  CHECK(klein_cubic_direction_scan(4, 1000, 0).passed);
  CHECK_THROWS_AS(klein_cubic_direction_scan(3, 10, 0), PreconditionError);
}
