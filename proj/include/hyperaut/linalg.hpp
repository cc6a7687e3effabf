#pragma once

#include <hyperaut/integer.hpp>

#include <cstdlib>
#include <vector>

namespace hyperaut {

namespace detail {

// Pick the nonzero entry of smallest |.| in the trailing submatrix starting
// at (t, t); returns false when the submatrix is zero.
template <typename Mat>
bool find_pivot(const Mat& a, Eigen::Index t, Eigen::Index& pi,
                Eigen::Index& pj) {
  bool found = false;
  Int best;
  for (Eigen::Index i = t; i < a.rows(); ++i) {
    for (Eigen::Index j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Int v = abs(a(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
        pj = j;
        if (best == 1) return true;
      }
    }
  }
  return found;
}

}  // namespace detail

/// Exact rank by fraction-free (Bareiss) elimination with full pivoting.
/// Every intermediate value is a minor of the input, so all divisions are
/// exact and no rationals appear.
template <typename Derived>
Eigen::Index rank_bareiss(const Eigen::MatrixBase<Derived>& m) {
  IntMat a = m.template cast<Int>();
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Int prev(1);
  Eigen::Index t = 0;
  while (t < rows && t < cols) {
    Eigen::Index pi, pj;
    if (!detail::find_pivot(a, t, pi, pj)) break;
    if (pi != t) a.row(t).swap(a.row(pi));
    if (pj != t) a.col(t).swap(a.col(pj));
    const Int pivot = a(t, t);
    for (Eigen::Index i = t + 1; i < rows; ++i) {
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        a(i, j) = (a(i, j) * pivot - a(i, t) * a(t, j)) / prev;
      }
      a(i, t) = 0;
    }
    prev = pivot;
    ++t;
  }
  return t;
}

/// Exact determinant of a square matrix via Bareiss elimination.
template <typename Derived>
Int determinant_bareiss(const Eigen::MatrixBase<Derived>& m) {
  IntMat a = m.template cast<Int>();
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return 1;
  Int prev(1);
  int sign = 1;
  for (Eigen::Index t = 0; t + 1 < n; ++t) {
    Eigen::Index pi, pj;
    if (!detail::find_pivot(a, t, pi, pj)) return 0;
    if (pi != t) {
      a.row(t).swap(a.row(pi));
      sign = -sign;
    }
    if (pj != t) {
      a.col(t).swap(a.col(pj));
      sign = -sign;
    }
    const Int pivot = a(t, t);
    for (Eigen::Index i = t + 1; i < n; ++i) {
      for (Eigen::Index j = t + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * pivot - a(i, t) * a(t, j)) / prev;
      }
      a(i, t) = 0;
    }
    prev = pivot;
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

/// Smith normal form restricted to what the callers need: the diagonal
/// (invariant factors, positive, each dividing the next) and the right
/// unimodular multiplier V, so that row_ops(M) * V is diagonal. Column
/// operations are mirrored on V; row operations need no bookkeeping.
struct SmithDecomposition {
  std::vector<Int> diagonal;  // nonzero pivots, divisibility chain
  IntMat right;               // V, cols(M) x cols(M), unimodular
  Eigen::Index rank = 0;
};

inline SmithDecomposition smith_normal_form(IntMat a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  SmithDecomposition out;
  out.right = IntMat::Identity(cols, cols);
  IntMat& v = out.right;
  Eigen::Index t = 0;
  while (t < rows && t < cols) {
    Eigen::Index pi, pj;
    if (!detail::find_pivot(a, t, pi, pj)) break;
    if (pi != t) a.row(t).swap(a.row(pi));
    if (pj != t) {
      a.col(t).swap(a.col(pj));
      v.col(t).swap(v.col(pj));
    }
    bool clean = true;
    for (Eigen::Index i = t + 1; i < rows; ++i) {
      if (a(i, t) == 0) continue;
      Int q = a(i, t) / a(t, t);  // truncated: remainder shrinks
      if (q != 0) a.row(i) -= q * a.row(t);
      if (a(i, t) != 0) clean = false;
    }
    for (Eigen::Index j = t + 1; j < cols; ++j) {
      if (a(t, j) == 0) continue;
      Int q = a(t, j) / a(t, t);
      if (q != 0) {
        a.col(j) -= q * a.col(t);
        v.col(j) -= q * v.col(t);
      }
      if (a(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // nonzero remainders: re-pick pivot at this step
    // The pivot must divide the whole trailing submatrix; if not, fold the
    // offending row in and reduce again.
    bool divides = true;
    for (Eigen::Index i = t + 1; i < rows && divides; ++i) {
      for (Eigen::Index j = t + 1; j < cols && divides; ++j) {
        if (a(i, j) % a(t, t) != 0) {
          a.row(t) += a.row(i);
          divides = false;
        }
      }
    }
    if (!divides) continue;
    if (a(t, t) < 0) a.row(t) = -a.row(t);
    ++t;
  }
  out.rank = t;
  out.diagonal.reserve(static_cast<std::size_t>(t));
  for (Eigen::Index i = 0; i < t; ++i) out.diagonal.push_back(a(i, i));
  return out;
}

}  // namespace hyperaut
