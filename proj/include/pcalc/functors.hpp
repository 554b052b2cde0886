#pragma once

#include "pcalc/curve.hpp"
#include "pcalc/parabolic.hpp"

namespace pcalc {

// Parabolic pullback along f for a line on f's target: at a listed source
// point y of multiplicity m over x, the weight becomes m*a mod 1 and the
// integer part twists the underlying degree. Requires every weighted point
// to have a completely listed fiber; saturate first.
ParaLine pullback_line(const CoveringMap& f, const ParaLine& l);

// Summand-wise pullback, order preserved.
SplitParabolicBundle pullback_split(const CoveringMap& f, const SplitParabolicBundle& e);

// Same formulas applied to each element of each weight multiset.
ParabolicChar pullback_char(const CoveringMap& f, const ParabolicChar& c);

// One listed fiber point's contribution at a branch point: the weights it
// carries upstairs and the weights it produces downstairs.
struct FiberContribution {
  std::string source_point;
  long multiplicity = 1;
  std::vector<Rat> source_weights;
  std::vector<Rat> produced_weights;
};

struct DirectImageResult {
  ParabolicChar char_data;
  // Keyed by branch/weight-image point downstairs; contributions sorted by
  // source point label.
  std::map<std::string, std::vector<FiberContribution>> breakdown;
};

// Direct image of a characteristic datum along phi. A fiber point of
// multiplicity m holding weight a produces the m weights (k+a)/m. The
// underlying degree is fixed by par-degree preservation, and the
// Grothendieck-Riemann-Roch count deg + r(1-g_src) - r n (1-g_tgt) is
// recomputed independently; disagreement is an internal error.
DirectImageResult direct_image_char(const CoveringMap& phi, const ParabolicChar& c);

// For fiberwise-constant-multiplicity profiles: direct image followed by
// pullback along the same map. Errors on non-constant fibers.
ParabolicChar galois_pullback_of_direct_image(const CoveringMap& phi, const ParabolicChar& c);

}  // namespace pcalc
