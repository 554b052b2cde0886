#pragma once

#include <vector>

#include "pcalc/rational.hpp"

namespace pcalc {

// Dense square-ish matrix over Q(i). Sizes here are tiny (residues of rank
// <= ~8 and their block expansions), so everything is straightforward exact
// arithmetic with no cleverness.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GaussRat& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const GaussRat& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  GaussRat trace() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const GaussRat& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const GaussRat& s) { return a *= s; }
  friend Matrix operator*(const GaussRat& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  // P[k] = old index of the k-th new basis vector; returns P^-1 A P, i.e.
  // the same operator written in the reordered basis.
  Matrix conjugate_by_permutation(const std::vector<int>& perm) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<GaussRat> a_;
};

// coeffs[k] multiplies x^k; normalized so the vector has no trailing zeros
// except the constant polynomial 0 which is {}.
using Poly = std::vector<GaussRat>;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& p, long e);
bool poly_eq(const Poly& a, const Poly& b);

// Monic characteristic polynomial det(xI - A) by Faddeev-LeVerrier.
// Division-free apart from exact divisions by 1..n, so it stays in Q(i).
Poly char_poly(const Matrix& a);

// tr(A^1), ..., tr(A^count).
std::vector<GaussRat> power_traces(const Matrix& a, int count);

// Diagonal entries when the matrix is lower triangular, nullopt-style via
// empty return + flag. Kept dumb on purpose: spectra are only ever read off
// triangular matrices in this calculus.
bool is_lower_triangular(const Matrix& a);
std::vector<GaussRat> triangular_eigenvalues(const Matrix& a);

}  // namespace pcalc
