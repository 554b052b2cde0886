#pragma once

#include <vector>

#include "pcalc/matrix.hpp"
#include "pcalc/parabolic.hpp"

namespace pcalc {

enum class FieldKind { higgs, connection };

const char* to_string(FieldKind k);
FieldKind parse_field_kind(const std::string& s);

// Principal part of a Higgs field or connection at one marked point, in a
// local frame adapted to the flag: coefficient matrices of z^-1, z^0, ...,
// z^(order-2) against (dz/z), where `order` is the pole order bound m.
//
// Basis convention used throughout: basis vectors come in contiguous blocks,
// one block per flag step, in increasing weight order. "Parabolic" means
// block lower triangular for that ordering, "strongly parabolic" strictly
// so, and "residual" means parabolic with k-th diagonal block equal to
// weight_k * I.
struct LocalSpectralField {
  FieldKind kind = FieldKind::higgs;
  long order = 1;
  std::vector<Matrix> coeffs;  // size == order, each rank x rank
  Flag flag;

  long rank() const { return flag.rank(); }
  const Matrix& residue() const { return coeffs.front(); }
};

bool operator==(const LocalSpectralField& a, const LocalSpectralField& b);

LocalSpectralField make_spectral_field(FieldKind kind, long order, std::vector<Matrix> coeffs,
                                       Flag flag);

bool check_parabolic(const Matrix& m, const Flag& flag);
bool check_strongly_parabolic(const Matrix& m, const Flag& flag);
bool check_residual(const Matrix& m, const Flag& flag);

// Residue of the pullback of a Higgs field along a local cover of
// multiplicity m: dz/z picks up a factor m.
Matrix pullback_residue_higgs(long m, const Matrix& res);

// A residue carried to the cover together with its flag data: the matrix in
// the weight-sorted basis upstairs, the new flag, and the permutation that
// produced the sorting (perm[new] = pre-sort position).
struct TransportedResidue {
  Matrix matrix;
  Flag flag;
  std::vector<int> perm;
};

// Flag-aware pullback of a residue along multiplicity m.
//
// Upstairs the weight at a position of weight a is m*a mod 1, and positions
// are re-sorted by the new weights. Working in the frame that realizes the
// new weights (each section divided by z^floor(m*a)) multiplies the (i,j)
// entry by z^(floor(m*a_i) - floor(m*a_j)); at the point itself only entries
// whose floors agree survive. Connections additionally pick up the frame
// twist -floor(m*a) on the diagonal. Dropping the floor mask would break
// residual/parabolic preservation whenever the sort interleaves floors.
TransportedResidue pullback_residue(FieldKind kind, long m, const Matrix& res, const Flag& flag);

// Residue of the direct image, written in the k-major basis: position
// (k, s) = k * rank + s is the k-th principal-part slot of source position
// s, k = 0..m-1, carrying weight (k + a_s)/m. Block row i, column j holds
// coeffs[i-j]/m below and on the diagonal (zero above); connections add
// k/m * I to the k-th diagonal block. `perm` sorts positions by the new
// weights; `matrix_weight_sorted` rewrites the matrix in that order.
struct DirectImageResidue {
  Matrix matrix;
  Flag flag;
  std::vector<int> perm;

  Matrix matrix_weight_sorted() const { return matrix.conjugate_by_permutation(perm); }
};

DirectImageResidue direct_image_residue(const LocalSpectralField& f);

// tr(res^1), ..., tr(res^count); the exact shadow of the Hitchin map.
std::vector<GaussRat> hitchin_traces(const Matrix& res, int count);

}  // namespace pcalc
