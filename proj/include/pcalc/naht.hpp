#pragma once

#include <vector>

#include "pcalc/rational.hpp"
#include "pcalc/spectral.hpp"

namespace pcalc {

// One point of local spectral data: a parabolic jump in [0,1) together with
// the residue eigenvalue attached to it, counted with multiplicity.
struct SpectralPoint {
  FieldKind kind = FieldKind::higgs;
  Rat jump;
  GaussRat eigenvalue;
  long multiplicity = 1;
};

bool operator==(const SpectralPoint& a, const SpectralPoint& b);
bool spectral_point_less(const SpectralPoint& a, const SpectralPoint& b);

// Reduces a raw jump into [0,1). For connections the integer part k that was
// subtracted from the jump is also subtracted from the eigenvalue; a Higgs
// eigenvalue is insensitive to the frame twist.
SpectralPoint normalize_point(FieldKind kind, const Rat& raw_jump, const GaussRat& eigenvalue,
                              long multiplicity = 1);

// The exact shadow of the Hodge correspondence on one spectral point:
// Higgs (a, b+ci) <-> connection (a-2b mod 1, ...), with the eigenvalue
// renormalized together with the jump. Mutually inverse bijections that
// exchange the nilpotent locus (b = c = 0) with the residual one
// (eigenvalue == jump).
SpectralPoint higgs_to_conn(const SpectralPoint& p);
SpectralPoint conn_to_higgs(const SpectralPoint& p);

// Pullback along a local cover of multiplicity m: jumps scale by m mod 1,
// eigenvalues by m, with connection eigenvalues renormalized by the jump
// reduction.
std::vector<SpectralPoint> pullback_spectrum(FieldKind kind, long m,
                                             const std::vector<SpectralPoint>& pts);

// Spectral data sitting at one fiber point of multiplicity m.
struct FiberPointSpectrum {
  long multiplicity = 1;
  std::vector<SpectralPoint> points;
};

// Direct image of the spectra over one branch point: a point (a, e) at a
// fiber point of multiplicity m spreads into the m points with jumps
// (a+k)/m; a Higgs eigenvalue divides by m, a connection eigenvalue turns
// into (e+k)/m in step with its jump.
std::vector<SpectralPoint> direct_image_spectrum(FieldKind kind,
                                                 const std::vector<FiberPointSpectrum>& fiber);

// Sort + merge equal points; the canonical multiset form used for equality.
std::vector<SpectralPoint> normalize_spectrum(std::vector<SpectralPoint> pts);

bool same_spectrum(const std::vector<SpectralPoint>& a, const std::vector<SpectralPoint>& b);

}  // namespace pcalc
