#include "pcalc/spectral.hpp"

#include <algorithm>
#include <numeric>

namespace pcalc {

const char* to_string(FieldKind k) {
  return k == FieldKind::higgs ? "higgs" : "connection";
}

FieldKind parse_field_kind(const std::string& s) {
  if (s == "higgs") return FieldKind::higgs;
  if (s == "connection") return FieldKind::connection;
  throw parse_error("unknown field kind '" + s + "'");
}

bool operator==(const LocalSpectralField& a, const LocalSpectralField& b) {
  return a.kind == b.kind && a.order == b.order && a.coeffs == b.coeffs && a.flag == b.flag;
}

LocalSpectralField make_spectral_field(FieldKind kind, long order, std::vector<Matrix> coeffs,
                                       Flag flag) {
  if (order < 1) throw validation_error("pole order bound must be >= 1");
  if (long(coeffs.size()) != order)
    throw validation_error("expected exactly `order` coefficient matrices");
  long r = flag.rank();
  for (const auto& m : coeffs)
    if (m.rows() != r || m.cols() != r)
      throw validation_error("coefficient matrix size does not match the flag rank");
  return LocalSpectralField{kind, order, std::move(coeffs), std::move(flag)};
}

bool check_parabolic(const Matrix& m, const Flag& flag) {
  std::vector<Rat> w = flag.position_weights();
  if (m.rows() != long(w.size()) || !m.is_square()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (w[i] < w[j] && !m.at(i, j).is_zero()) return false;
  return true;
}

bool check_strongly_parabolic(const Matrix& m, const Flag& flag) {
  std::vector<Rat> w = flag.position_weights();
  if (m.rows() != long(w.size()) || !m.is_square()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (w[i] <= w[j] && !m.at(i, j).is_zero()) return false;
  return true;
}

bool check_residual(const Matrix& m, const Flag& flag) {
  if (!check_parabolic(m, flag)) return false;
  std::vector<Rat> w = flag.position_weights();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (w[i] != w[j]) continue;
      GaussRat expect = (i == j) ? GaussRat(w[i]) : GaussRat();
      if (m.at(i, j) != expect) return false;
    }
  return true;
}

Matrix pullback_residue_higgs(long m, const Matrix& res) {
  if (m < 1) throw precondition_error("multiplicity must be >= 1");
  return res * GaussRat(Rat(m));
}

TransportedResidue pullback_residue(FieldKind kind, long m, const Matrix& res, const Flag& flag) {
  if (m < 1) throw precondition_error("multiplicity must be >= 1");
  if (!check_parabolic(res, flag))
    throw precondition_error("residue is not parabolic for the given flag");
  std::vector<Rat> w = flag.position_weights();
  int r = int(w.size());
  std::vector<long> floor_class(r);
  std::vector<Rat> new_w(r);
  for (int i = 0; i < r; ++i) {
    Rat scaled = m * w[i];
    floor_class[i] = floor_rat(scaled);
    new_w[i] = scaled - floor_class[i];
  }
  Matrix t(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (floor_class[i] != floor_class[j]) continue;  // killed by the frame twist
      t.at(i, j) = res.at(i, j) * GaussRat(Rat(m));
      if (i == j && kind == FieldKind::connection) t.at(i, j) -= GaussRat(Rat(floor_class[i]));
    }
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return new_w[a] < new_w[b]; });
  std::vector<Rat> sorted_w;
  sorted_w.reserve(r);
  for (int i = 0; i < r; ++i) sorted_w.push_back(new_w[perm[i]]);
  TransportedResidue out;
  out.matrix = t.conjugate_by_permutation(perm);
  out.flag = flag_from_multiset(sorted_w);
  out.perm = std::move(perm);
  return out;
}

DirectImageResidue direct_image_residue(const LocalSpectralField& f) {
  long m = f.order;
  long r = f.rank();
  int n = int(m * r);
  GaussRat inv_m = GaussRat(Rat(1)) / GaussRat(Rat(m));
  Matrix big(n, n);
  for (long bi = 0; bi < m; ++bi)
    for (long bj = 0; bj <= bi; ++bj) {
      const Matrix& block = f.coeffs[std::size_t(bi - bj)];
      for (long s = 0; s < r; ++s)
        for (long t = 0; t < r; ++t) {
          GaussRat v = block.at(int(s), int(t));
          if (f.kind == FieldKind::connection && bi == bj && s == t) v += GaussRat(Rat(bi));
          big.at(int(bi * r + s), int(bj * r + t)) = v * inv_m;
        }
    }
  std::vector<Rat> src_w = f.flag.position_weights();
  std::vector<Rat> new_w(static_cast<std::size_t>(n));
  for (long k = 0; k < m; ++k)
    for (long s = 0; s < r; ++s) new_w[std::size_t(k * r + s)] = (k + src_w[std::size_t(s)]) / m;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return new_w[std::size_t(a)] < new_w[std::size_t(b)]; });
  std::vector<Rat> sorted_w;
  sorted_w.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) sorted_w.push_back(new_w[std::size_t(perm[std::size_t(i)])]);
  DirectImageResidue out;
  out.matrix = std::move(big);
  out.flag = flag_from_multiset(sorted_w);
  out.perm = std::move(perm);
  return out;
}

std::vector<GaussRat> hitchin_traces(const Matrix& res, int count) {
  return power_traces(res, count);
}

}  // namespace pcalc
