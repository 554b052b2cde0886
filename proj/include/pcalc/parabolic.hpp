#pragma once

#include <map>
#include <string>
#include <vector>

#include "pcalc/curve.hpp"
#include "pcalc/rational.hpp"

namespace pcalc {

// Line bundle with a parabolic weight in [0,1) at finitely many marked
// points. Weight 0 and "no weight" are the same thing; the map only stores
// nonzero weights so equality is canonical.
struct ParaLine {
  MarkedCurve curve;
  long degree = 0;
  std::map<std::string, Rat> weights;

  Rat weight_at(const std::string& point) const;
  Rat par_deg() const;
};

bool operator==(const ParaLine& a, const ParaLine& b);
bool operator!=(const ParaLine& a, const ParaLine& b);

// Validates weight range and point membership, drops zero weights.
ParaLine make_para_line(MarkedCurve curve, long degree, std::map<std::string, Rat> weights);

// Direct sum of parabolic lines; the split objects all computations run on.
struct SplitParabolicBundle {
  std::vector<ParaLine> summands;

  const MarkedCurve& curve() const { return summands.front().curve; }
  long rank() const { return long(summands.size()); }
  Rat par_deg() const;
};

bool operator==(const SplitParabolicBundle& a, const SplitParabolicBundle& b);

SplitParabolicBundle make_split_bundle(std::vector<ParaLine> summands);

// Discrete invariants of a parabolic bundle: rank, underlying degree, and at
// each point the full multiset of weights (counted with multiplicity, stored
// sorted, exactly rank entries). Points where every weight is 0 are dropped.
struct ParabolicChar {
  MarkedCurve curve;
  long rank = 1;
  long degree = 0;
  std::map<std::string, std::vector<Rat>> weight_multisets;

  std::vector<Rat> multiset_at(const std::string& point) const;  // zero-padded
  Rat par_deg() const;
  Rat slope() const;
};

bool operator==(const ParabolicChar& a, const ParabolicChar& b);
bool operator!=(const ParabolicChar& a, const ParabolicChar& b);

ParabolicChar make_char(MarkedCurve curve, long rank, long degree,
                        std::map<std::string, std::vector<Rat>> weight_multisets);

ParabolicChar char_of(const SplitParabolicBundle& e);

// Weight filtration at one point, recorded as (weight, multiplicity) steps
// with strictly increasing weights. Rank-0 steps never appear.
struct FlagStep {
  Rat weight;
  long multiplicity = 0;

  friend bool operator==(const FlagStep& a, const FlagStep& b) {
    return a.weight == b.weight && a.multiplicity == b.multiplicity;
  }
};

struct Flag {
  std::vector<FlagStep> steps;

  long rank() const;
  // Weight of each basis position, blockwise: rank() entries, ascending.
  std::vector<Rat> position_weights() const;

  friend bool operator==(const Flag& a, const Flag& b) { return a.steps == b.steps; }
  friend bool operator!=(const Flag& a, const Flag& b) { return !(a == b); }
};

Flag make_flag(std::vector<FlagStep> steps);
Flag flag_from_multiset(const std::vector<Rat>& weights);
Flag flag_at(const ParabolicChar& c, const std::string& point);

// Parabolic dual: degree -> -degree - #{nonzero weights}, weight a -> 1 - a
// (0 stays 0). An involution with par_deg(dual) == -par_deg.
ParaLine dual_line(const ParaLine& l);

// Parabolic tensor product of lines: weights add mod 1 and the carry bumps
// the underlying degree, so par_deg stays additive.
ParaLine tensor_lines(const ParaLine& a, const ParaLine& b);

// Invariants of the parabolic endomorphism bundle sum_{i,j} L_i (x) L_j^v.
ParabolicChar end_p_char(const SplitParabolicBundle& e);

// All nonempty proper sub-sums of summands, in subset-mask order.
std::vector<SplitParabolicBundle> sub_sums(const SplitParabolicBundle& e);

// Slope test against every split subobject. For split bundles this agrees
// with comparing summand slopes, which the property suite checks.
bool is_semistable_split(const SplitParabolicBundle& e);
bool is_polystable_split(const SplitParabolicBundle& e);

}  // namespace pcalc
