#pragma once

// Exact elimination over Surd / Gauss matrices. All routines skip zero
// entries explicitly; with GMP scalars that dominates the running time.

#include "samelson/number.hpp"

#include <optional>
#include <vector>

namespace samelson {

template <class S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c) {
  Mat<S> m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = S(0);
  return m;
}

template <class S>
Mat<S> identity(Eigen::Index n) {
  Mat<S> m = zeros<S>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

template <class S>
bool is_zero_matrix(const Mat<S>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Sparse-aware product; Eigen's generic kernel touches every zero.
template <class S>
Mat<S> mul(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
  Mat<S> out = zeros<S>(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const S& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <class S>
struct Echelon {
  Mat<S> reduced;            // reduced row echelon form
  std::vector<int> pivots;   // pivot column per nonzero row
};

template <class S>
Echelon<S> rref(Mat<S> m) {
  Echelon<S> e;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    S inv = S(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      S f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

template <class S>
int rank(const Mat<S>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<int>(rref(m).pivots.size());
}

/// Columns form a basis of the null space.
template <class S>
Mat<S> kernel(const Mat<S>& m) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return identity<S>(cols);
  Echelon<S> e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Mat<S> k = zeros<S>(cols, static_cast<Eigen::Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (!is_zero(e.reduced(r, free[f]))) k(e.pivots[r], f) = -e.reduced(r, free[f]);
  }
  return k;
}

/// Independent subset of the columns spanning the column space.
template <class S>
Mat<S> column_basis(const Mat<S>& m) {
  if (m.cols() == 0) return zeros<S>(m.rows(), 0);
  Echelon<S> e = rref(m);
  Mat<S> out(m.rows(), static_cast<Eigen::Index>(e.pivots.size()));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.col(i) = m.col(e.pivots[i]);
  return out;
}

/// Columns of `w` (a subset) completing the columns of `u` to a basis of
/// span(u) + span(w). `u` need not be independent.
template <class S>
Mat<S> extend_basis(const Mat<S>& u, const Mat<S>& w) {
  const Eigen::Index n = u.rows() > 0 ? u.rows() : w.rows();
  Mat<S> both(n, u.cols() + w.cols());
  if (u.cols() > 0) both.leftCols(u.cols()) = u;
  if (w.cols() > 0) both.rightCols(w.cols()) = w;
  if (both.cols() == 0) return zeros<S>(n, 0);
  Echelon<S> e = rref(both);
  std::vector<Eigen::Index> picked;
  for (int p : e.pivots)
    if (p >= u.cols()) picked.push_back(p - u.cols());
  Mat<S> out(n, static_cast<Eigen::Index>(picked.size()));
  for (std::size_t i = 0; i < picked.size(); ++i) out.col(i) = w.col(picked[i]);
  return out;
}

/// Some x with a x = b, or nothing if the system is inconsistent.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const Eigen::Index n = a.cols();
  Mat<S> aug(a.rows(), n + b.cols());
  if (n > 0) aug.leftCols(n) = a;
  aug.rightCols(b.cols()) = b;
  Echelon<S> e = rref(aug);
  Mat<S> x = zeros<S>(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    x.row(e.pivots[r]) = e.reduced.row(r).tail(b.cols());
  }
  return x;
}

template <class S>
Mat<S> inverse(const Mat<S>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  auto x = solve<S>(a, identity<S>(a.rows()));
  if (!x || rank(a) != a.rows()) throw std::domain_error("inverse: singular matrix");
  return *x;
}

/// Basis of span(u) ∩ span(w), expressed in ambient coordinates.
template <class S>
Mat<S> intersect(const Mat<S>& u, const Mat<S>& w) {
  const Eigen::Index n = u.rows();
  if (u.cols() == 0 || w.cols() == 0) return zeros<S>(n, 0);
  Mat<S> both(n, u.cols() + w.cols());
  both.leftCols(u.cols()) = u;
  both.rightCols(w.cols()) = -w;
  Mat<S> k = kernel(both);
  return column_basis<S>(mul<S>(u, Mat<S>(k.topRows(u.cols()))));
}

template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

template <class S>
Mat<S> vcat(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() + b.rows(), a.cols());
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

template <class S>
Mat<S> transpose(const Mat<S>& a) {
  Mat<S> out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

}  // namespace samelson
