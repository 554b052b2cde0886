#include "pcalc/matrix.hpp"

namespace pcalc {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GaussRat(1);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

GaussRat Matrix::trace() const {
  if (!is_square()) throw internal_error("trace of non-square matrix");
  GaussRat t;
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw internal_error("matrix shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw internal_error("matrix shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(const GaussRat& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw internal_error("matrix shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const GaussRat& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

Matrix Matrix::conjugate_by_permutation(const std::vector<int>& perm) const {
  if (!is_square() || int(perm.size()) != rows_) throw internal_error("bad permutation");
  Matrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(perm[i], perm[j]);
  return out;
}

static Poly poly_trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(c));
}

Poly poly_pow(const Poly& p, long e) {
  Poly r{GaussRat(1)};
  for (long k = 0; k < e; ++k) r = poly_mul(r, p);
  return r;
}

bool poly_eq(const Poly& a, const Poly& b) { return poly_trim(a) == poly_trim(b); }

Poly char_poly(const Matrix& a) {
  if (!a.is_square()) throw internal_error("char poly of non-square matrix");
  int n = a.rows();
  Poly c(n + 1);
  c[n] = GaussRat(1);
  Matrix m = a;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      Matrix shifted = m;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
      m = a * shifted;
    }
    GaussRat t = m.trace();
    c[n - k] = GaussRat(0) - t / GaussRat(Rat(k));
  }
  return c;
}

std::vector<GaussRat> power_traces(const Matrix& a, int count) {
  if (!a.is_square()) throw internal_error("power trace of non-square matrix");
  std::vector<GaussRat> out;
  out.reserve(count);
  Matrix p = a;
  for (int i = 1; i <= count; ++i) {
    out.push_back(p.trace());
    if (i < count) p = p * a;
  }
  return out;
}

bool is_lower_triangular(const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) return false;
  return true;
}

std::vector<GaussRat> triangular_eigenvalues(const Matrix& a) {
  if (!a.is_square() || !is_lower_triangular(a))
    throw precondition_error("eigenvalues are only read off triangular matrices");
  std::vector<GaussRat> d;
  d.reserve(a.rows());
  for (int i = 0; i < a.rows(); ++i) d.push_back(a.at(i, i));
  return d;
}

}  // namespace pcalc
