#include <doctest.h>

#include <hyperaut/linalg.hpp>

#include <random>

using namespace hyperaut;

namespace {

// Independent rank oracle: plain Gaussian elimination over rationals.
Eigen::Index rank_rational(IntMat m) {
  using Rat = mpq_class;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Rat>> a(static_cast<std::size_t>(rows),
                                  std::vector<Rat>(static_cast<std::size_t>(cols)));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rat(m(i, j));
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = rank; i < rows; ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(rank)]);
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      Rat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] /
              a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (Eigen::Index j = col; j < cols; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
    }
    ++rank;
  }
  return rank;
}

IntMat random_matrix(std::mt19937_64& rng, int rows, int cols, int span) {
  IntMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = static_cast<long>(rng() % (2 * span + 1)) - span;
  return m;
}

}  // namespace

TEST_CASE("bareiss rank on hand-checked matrices") {
  IntMat a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  CHECK(rank_bareiss(a) == 2);
  IntMat id = IntMat::Identity(4, 4);
  CHECK(rank_bareiss(id) == 4);
  IntMat z = IntMat::Zero(3, 5);
  CHECK(rank_bareiss(z) == 0);
  IntMat col(3, 1);
  col << 2, 4, 6;
  CHECK(rank_bareiss(col) == 1);
}

TEST_CASE("bareiss rank agrees with rational elimination on random matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    int rows = 1 + static_cast<int>(rng() % 7);
    int cols = 1 + static_cast<int>(rng() % 7);
    IntMat m = random_matrix(rng, rows, cols, 4);
    // Plant extra rank deficiency now and then.
    if (rows >= 2 && rng() % 2 == 0) m.row(rows - 1) = m.row(0) * Int(3);
    CHECK(rank_bareiss(m) == rank_rational(m));
  }
}

TEST_CASE("determinant via bareiss") {
  IntMat a(2, 2);
  a << 3, 5, 7, 11;
  CHECK(determinant_bareiss(a) == Int(-2));
  IntMat s(3, 3);
  s << 2, 0, 0, 0, 3, 0, 0, 0, 5;
  CHECK(determinant_bareiss(s) == Int(30));
  IntMat sing(2, 2);
  sing << 1, 2, 2, 4;
  CHECK(determinant_bareiss(sing) == 0);
}

TEST_CASE("smith normal form of small known matrices") {
  IntMat a(2, 2);
  a << 2, 0, 0, 3;
  auto snf = smith_normal_form(a);
  CHECK(snf.rank == 2);
  CHECK(snf.diagonal == std::vector<Int>{1, 6});

  IntMat b(2, 3);
  b << 2, 4, 4, -6, 6, 12;
  auto sb = smith_normal_form(b);
  CHECK(sb.rank == 2);
  REQUIRE(sb.diagonal.size() == 2);
  CHECK(sb.diagonal[0] == 2);
  CHECK(sb.diagonal[1] == 6);

  IntMat z = IntMat::Zero(3, 2);
  CHECK(smith_normal_form(z).rank == 0);
}

TEST_CASE("smith normal form invariants on random matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 6);
    IntMat m = random_matrix(rng, rows, cols, 5);
    auto snf = smith_normal_form(m);
    CHECK(snf.rank == rank_bareiss(m));
    // Divisibility chain, positive entries.
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
      CHECK(snf.diagonal[i] > 0);
      if (i) CHECK(snf.diagonal[i] % snf.diagonal[i - 1] == 0);
    }
    // V is unimodular.
    Int dv = determinant_bareiss(snf.right);
    CHECK((dv == 1 || dv == -1));
    // For square nonsingular input, |det| is the product of the factors.
    if (rows == cols && snf.rank == rows) {
      Int prod = 1;
      for (const Int& v : snf.diagonal) prod *= v;
      CHECK(prod == abs(determinant_bareiss(m)));
    }
  }
}
