#pragma once

#include <map>
#include <string>
#include <vector>

#include "pcalc/rational.hpp"

namespace pcalc {

// Genus plus a finite set of labelled marked points. Everything downstream
// identifies points by label only.
struct MarkedCurve {
  long genus = 0;
  std::vector<std::string> points;

  bool has_point(const std::string& label) const;
};

// Equality is structural: same genus, same point set (order ignored).
bool operator==(const MarkedCurve& a, const MarkedCurve& b);
bool operator!=(const MarkedCurve& a, const MarkedCurve& b);

MarkedCurve make_curve(long genus, std::vector<std::string> points);

struct Divisor {
  std::map<std::string, long> coeffs;

  long total_degree() const;
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.coeffs == b.coeffs; }
};

struct FiberEntry {
  std::string target;
  long multiplicity = 1;

  friend bool operator==(const FiberEntry& a, const FiberEntry& b) {
    return a.target == b.target && a.multiplicity == b.multiplicity;
  }
};

// Ramification profile of a degree-n covering. Only finitely many points are
// listed; an unlisted source point is implicitly unramified with an
// unspecified image. Fibers over every target point that appears must be
// completely listed (multiplicities summing to the degree).
struct CoveringMap {
  MarkedCurve source;
  MarkedCurve target;
  long degree = 1;
  std::map<std::string, FiberEntry> point_map;

  long multiplicity_at(const std::string& source_point) const;
};

bool operator==(const CoveringMap& a, const CoveringMap& b);
bool operator!=(const CoveringMap& a, const CoveringMap& b);

// First failed clause, by name, so callers can report exactly what broke.
// Clauses, in check order: "degree", "curve points", "point membership",
// "multiplicity", "fiber sum", "Riemann-Hurwitz".
struct ValidationReport {
  bool ok = true;
  std::string clause;
  std::string detail;
};

ValidationReport validate_covering(const CoveringMap& f);

// Throwing wrapper around validate_covering.
void require_valid(const CoveringMap& f);

// Identity covering with every point listed, so composing with it is exact
// on the nose in both orders.
CoveringMap identity_covering(const MarkedCurve& c);

// Completes the fibers over the given target points, inventing unramified
// points labelled "<target>#k" (k = 1, 2, ...; existing labels skipped).
// Errors if a fiber is already over-full.
CoveringMap saturate(const CoveringMap& f, const std::vector<std::string>& targets);

// compose(g, f) is "g then f": g : Y -> X, f : X -> Z gives Y -> Z.
// g is saturated over f's listed source points first. A listed g-entry whose
// image is unlisted in f passes through only if unramified; otherwise the
// composite multiplicity would be unknown and this errors.
CoveringMap compose(const CoveringMap& g, const CoveringMap& f);

// Union of the listed fibers over the given target points, deduplicated and
// sorted. Errors when a fiber is not completely listed; saturate first.
std::vector<std::string> reduced_preimage(const CoveringMap& f,
                                          const std::vector<std::string>& targets);

// Image of (ramification points union the given source points). Every point
// involved must be listed, since unlisted points have no recorded image.
std::vector<std::string> delta_locus(const CoveringMap& f,
                                     const std::vector<std::string>& source_points);

// Sum of (m - 1) over listed points.
Divisor ramification_divisor(const CoveringMap& f);

// Fiberwise-constant multiplicity. This is the working stand-in for "Galois":
// it is what the direct-image/pullback comparison below actually consumes.
bool is_galois_profile(const CoveringMap& f);

}  // namespace pcalc
