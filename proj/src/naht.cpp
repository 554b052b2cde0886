#include "pcalc/naht.hpp"

#include <algorithm>

namespace pcalc {

bool operator==(const SpectralPoint& a, const SpectralPoint& b) {
  return a.kind == b.kind && a.jump == b.jump && a.eigenvalue == b.eigenvalue &&
         a.multiplicity == b.multiplicity;
}

bool spectral_point_less(const SpectralPoint& a, const SpectralPoint& b) {
  if (a.jump != b.jump) return a.jump < b.jump;
  if (!(a.eigenvalue == b.eigenvalue)) return a.eigenvalue < b.eigenvalue;
  return a.multiplicity < b.multiplicity;
}

SpectralPoint normalize_point(FieldKind kind, const Rat& raw_jump, const GaussRat& eigenvalue,
                              long multiplicity) {
  if (multiplicity < 1) throw validation_error("spectral point multiplicity must be >= 1");
  long k = floor_rat(raw_jump);
  SpectralPoint p;
  p.kind = kind;
  p.jump = raw_jump - k;
  p.eigenvalue = eigenvalue;
  if (kind == FieldKind::connection) p.eigenvalue.re -= k;
  p.multiplicity = multiplicity;
  return p;
}

SpectralPoint higgs_to_conn(const SpectralPoint& p) {
  if (p.kind != FieldKind::higgs) throw precondition_error("expected Higgs spectral data");
  // (a, b+ci) -> jump a-2b, eigenvalue a+2ci, both reduced together.
  Rat raw_jump = p.jump - 2 * p.eigenvalue.re;
  GaussRat raw_eig(p.jump, 2 * p.eigenvalue.im);
  return normalize_point(FieldKind::connection, raw_jump, raw_eig, p.multiplicity);
}

SpectralPoint conn_to_higgs(const SpectralPoint& p) {
  if (p.kind != FieldKind::connection) throw precondition_error("expected connection spectral data");
  // Inverse of the above: a = Re(e') mod 1, b = (Re(e') - a') / 2, c = Im(e') / 2.
  Rat a = frac_rat(p.eigenvalue.re);
  Rat b = (p.eigenvalue.re - p.jump) / 2;
  Rat c = p.eigenvalue.im / 2;
  SpectralPoint out;
  out.kind = FieldKind::higgs;
  out.jump = a;
  out.eigenvalue = GaussRat(b, c);
  out.multiplicity = p.multiplicity;
  return out;
}

std::vector<SpectralPoint> pullback_spectrum(FieldKind kind, long m,
                                             const std::vector<SpectralPoint>& pts) {
  if (m < 1) throw precondition_error("multiplicity must be >= 1");
  std::vector<SpectralPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.kind != kind) throw precondition_error("mixed field kinds in one spectrum");
    Rat raw_jump = m * p.jump;
    GaussRat eig = p.eigenvalue * GaussRat(Rat(m));
    out.push_back(normalize_point(kind, raw_jump, eig, p.multiplicity));
  }
  return normalize_spectrum(std::move(out));
}

std::vector<SpectralPoint> direct_image_spectrum(FieldKind kind,
                                                 const std::vector<FiberPointSpectrum>& fiber) {
  std::vector<SpectralPoint> out;
  for (const auto& fp : fiber) {
    if (fp.multiplicity < 1) throw precondition_error("multiplicity must be >= 1");
    long m = fp.multiplicity;
    for (const auto& p : fp.points) {
      if (p.kind != kind) throw precondition_error("mixed field kinds in one spectrum");
      for (long k = 0; k < m; ++k) {
        SpectralPoint q;
        q.kind = kind;
        q.jump = (p.jump + k) / m;
        if (kind == FieldKind::higgs)
          q.eigenvalue = p.eigenvalue / GaussRat(Rat(m));
        else
          q.eigenvalue = GaussRat((p.eigenvalue.re + k) / m, p.eigenvalue.im / m);
        q.multiplicity = p.multiplicity;
        out.push_back(q);
      }
    }
  }
  return normalize_spectrum(std::move(out));
}

std::vector<SpectralPoint> normalize_spectrum(std::vector<SpectralPoint> pts) {
  std::sort(pts.begin(), pts.end(), spectral_point_less);
  std::vector<SpectralPoint> out;
  for (auto& p : pts) {
    if (!out.empty() && out.back().kind == p.kind && out.back().jump == p.jump &&
        out.back().eigenvalue == p.eigenvalue)
      out.back().multiplicity += p.multiplicity;
    else
      out.push_back(std::move(p));
  }
  return out;
}

bool same_spectrum(const std::vector<SpectralPoint>& a, const std::vector<SpectralPoint>& b) {
  std::vector<SpectralPoint> ca = normalize_spectrum(a);
  std::vector<SpectralPoint> cb = normalize_spectrum(b);
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i] == cb[i])) return false;
  return true;
}

}  // namespace pcalc
