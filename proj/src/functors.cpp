#include "pcalc/functors.hpp"

#include <algorithm>

namespace pcalc {

// Fibers over every weighted point must be fully known, otherwise the
// result would silently miss twist contributions.
static void require_complete_fiber(const CoveringMap& f, const std::string& tgt,
                                   const char* who) {
  long sum = 0;
  for (const auto& [src, fib] : f.point_map)
    if (fib.target == tgt) sum += fib.multiplicity;
  if (sum != f.degree)
    throw precondition_error(std::string(who) + ": fiber over '" + tgt +
                             "' is not completely listed; saturate first");
}

ParaLine pullback_line(const CoveringMap& f, const ParaLine& l) {
  require_valid(f);
  if (l.curve != f.target) throw precondition_error("pullback: line lives on a different curve");
  for (const auto& [p, w] : l.weights) require_complete_fiber(f, p, "pullback");
  ParaLine out;
  out.curve = f.source;
  long deg = f.degree * l.degree;
  std::map<std::string, Rat> weights;
  for (const auto& [y, fib] : f.point_map) {
    Rat a = l.weight_at(fib.target);
    if (a == 0) continue;
    Rat scaled = fib.multiplicity * a;
    long twist = floor_rat(scaled);
    deg += twist;
    Rat rem = scaled - twist;
    if (rem != 0) weights.emplace(y, std::move(rem));
  }
  out.degree = deg;
  out.weights = std::move(weights);
  return out;
}

SplitParabolicBundle pullback_split(const CoveringMap& f, const SplitParabolicBundle& e) {
  std::vector<ParaLine> lines;
  lines.reserve(e.summands.size());
  for (const auto& l : e.summands) lines.push_back(pullback_line(f, l));
  return make_split_bundle(std::move(lines));
}

ParabolicChar pullback_char(const CoveringMap& f, const ParabolicChar& c) {
  require_valid(f);
  if (c.curve != f.target) throw precondition_error("pullback: datum lives on a different curve");
  for (const auto& [p, ws] : c.weight_multisets) require_complete_fiber(f, p, "pullback");
  long deg = f.degree * c.degree;
  std::map<std::string, std::vector<Rat>> multisets;
  for (const auto& [y, fib] : f.point_map) {
    auto it = c.weight_multisets.find(fib.target);
    if (it == c.weight_multisets.end()) continue;
    std::vector<Rat> ws;
    ws.reserve(it->second.size());
    for (const auto& a : it->second) {
      Rat scaled = fib.multiplicity * a;
      long twist = floor_rat(scaled);
      deg += twist;
      ws.push_back(scaled - twist);
    }
    multisets.emplace(y, std::move(ws));
  }
  return make_char(f.source, c.rank, deg, std::move(multisets));
}

DirectImageResult direct_image_char(const CoveringMap& phi, const ParabolicChar& c) {
  require_valid(phi);
  if (c.curve != phi.source)
    throw precondition_error("direct image: datum lives on a different curve");
  std::vector<std::string> support;
  for (const auto& [p, ws] : c.weight_multisets) {
    if (phi.point_map.find(p) == phi.point_map.end())
      throw precondition_error("direct image: weighted point '" + p +
                               "' has no listed image under the covering");
    support.push_back(p);
  }
  std::vector<std::string> delta = delta_locus(phi, support);
  for (const auto& z : delta) require_complete_fiber(phi, z, "direct image");

  long n = phi.degree;
  long r = c.rank;
  std::map<std::string, std::vector<FiberContribution>> breakdown;
  std::map<std::string, std::vector<Rat>> multisets;
  Rat produced_total(0);
  for (const auto& z : delta) {
    std::vector<FiberContribution> contribs;
    std::vector<Rat> downstairs;
    downstairs.reserve(std::size_t(n) * r);
    for (const auto& [x, fib] : phi.point_map) {
      if (fib.target != z) continue;
      FiberContribution fc;
      fc.source_point = x;
      fc.multiplicity = fib.multiplicity;
      fc.source_weights = c.multiset_at(x);
      for (const auto& a : fc.source_weights)
        for (long k = 0; k < fib.multiplicity; ++k) {
          Rat w = (k + a) / fib.multiplicity;
          produced_total += w;
          fc.produced_weights.push_back(w);
        }
      std::sort(fc.produced_weights.begin(), fc.produced_weights.end());
      downstairs.insert(downstairs.end(), fc.produced_weights.begin(),
                        fc.produced_weights.end());
      contribs.push_back(std::move(fc));
    }
    multisets.emplace(z, std::move(downstairs));
    breakdown.emplace(z, std::move(contribs));
  }

  // par_deg is preserved on the nose, which pins the underlying degree.
  Rat deg_rat = c.par_deg() - produced_total;
  if (!is_integer(deg_rat))
    throw internal_error("direct image: par-degree bookkeeping gave a fractional degree");
  long degree = floor_rat(deg_rat);
  long grr = c.degree + r * (1 - c.curve.genus) - r * n * (1 - phi.target.genus);
  if (degree != grr)
    throw internal_error("direct image: degree disagrees with the Euler-characteristic count");

  DirectImageResult out;
  out.char_data = make_char(phi.target, n * r, degree, std::move(multisets));
  out.breakdown = std::move(breakdown);
  return out;
}

ParabolicChar galois_pullback_of_direct_image(const CoveringMap& phi, const ParabolicChar& c) {
  if (!is_galois_profile(phi))
    throw precondition_error("profile does not have fiberwise-constant multiplicities");
  DirectImageResult di = direct_image_char(phi, c);
  return pullback_char(phi, di.char_data);
}

}  // namespace pcalc
