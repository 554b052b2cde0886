#include "pcalc/curve.hpp"

#include <algorithm>
#include <set>

namespace pcalc {

bool MarkedCurve::has_point(const std::string& label) const {
  return std::find(points.begin(), points.end(), label) != points.end();
}

bool operator==(const MarkedCurve& a, const MarkedCurve& b) {
  if (a.genus != b.genus || a.points.size() != b.points.size()) return false;
  std::vector<std::string> pa = a.points, pb = b.points;
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  return pa == pb;
}

bool operator!=(const MarkedCurve& a, const MarkedCurve& b) { return !(a == b); }

MarkedCurve make_curve(long genus, std::vector<std::string> points) {
  if (genus < 0) throw validation_error("curve genus must be >= 0");
  std::set<std::string> seen;
  for (const auto& p : points) {
    if (p.empty()) throw validation_error("empty point label");
    if (!seen.insert(p).second) throw validation_error("duplicate point label '" + p + "'");
  }
  return MarkedCurve{genus, std::move(points)};
}

long Divisor::total_degree() const {
  long d = 0;
  for (const auto& [p, c] : coeffs) d += c;
  return d;
}

long CoveringMap::multiplicity_at(const std::string& source_point) const {
  auto it = point_map.find(source_point);
  return it == point_map.end() ? 1 : it->second.multiplicity;
}

bool operator==(const CoveringMap& a, const CoveringMap& b) {
  return a.degree == b.degree && a.source == b.source && a.target == b.target &&
         a.point_map == b.point_map;
}

bool operator!=(const CoveringMap& a, const CoveringMap& b) { return !(a == b); }

ValidationReport validate_covering(const CoveringMap& f) {
  auto fail = [](std::string clause, std::string detail) {
    return ValidationReport{false, std::move(clause), std::move(detail)};
  };
  if (f.degree < 1) return fail("degree", "covering degree must be >= 1");
  {
    std::set<std::string> seen;
    for (const auto& p : f.source.points)
      if (p.empty() || !seen.insert(p).second)
        return fail("curve points", "bad source point label '" + p + "'");
    seen.clear();
    for (const auto& p : f.target.points)
      if (p.empty() || !seen.insert(p).second)
        return fail("curve points", "bad target point label '" + p + "'");
    if (f.source.genus < 0 || f.target.genus < 0)
      return fail("curve points", "negative genus");
  }
  for (const auto& [src, fib] : f.point_map) {
    if (!f.source.has_point(src))
      return fail("point membership", "'" + src + "' is not a source point");
    if (!f.target.has_point(fib.target))
      return fail("point membership", "'" + fib.target + "' is not a target point");
  }
  for (const auto& [src, fib] : f.point_map)
    if (fib.multiplicity < 1)
      return fail("multiplicity", "multiplicity at '" + src + "' must be >= 1");
  // Fibers over listed targets must account for the whole degree.
  std::map<std::string, long> fiber_sum;
  for (const auto& [src, fib] : f.point_map) fiber_sum[fib.target] += fib.multiplicity;
  for (const auto& [tgt, sum] : fiber_sum)
    if (sum != f.degree)
      return fail("fiber sum", "fiber over '" + tgt + "' sums to " + std::to_string(sum) +
                                   ", expected " + std::to_string(f.degree));
  long ram = 0;
  for (const auto& [src, fib] : f.point_map) ram += fib.multiplicity - 1;
  long lhs = 2 * f.source.genus - 2;
  long rhs = f.degree * (2 * f.target.genus - 2) + ram;
  if (lhs != rhs)
    return fail("Riemann-Hurwitz", "2g-2 of source is " + std::to_string(lhs) +
                                       " but degree and ramification give " + std::to_string(rhs));
  return {};
}

void require_valid(const CoveringMap& f) {
  ValidationReport r = validate_covering(f);
  if (!r.ok) throw validation_error("invalid covering (" + r.clause + "): " + r.detail);
}

CoveringMap identity_covering(const MarkedCurve& c) {
  CoveringMap id;
  id.source = c;
  id.target = c;
  id.degree = 1;
  for (const auto& p : c.points) id.point_map[p] = {p, 1};
  return id;
}

CoveringMap saturate(const CoveringMap& f, const std::vector<std::string>& targets) {
  CoveringMap out = f;
  std::set<std::string> used(out.source.points.begin(), out.source.points.end());
  std::vector<std::string> sorted_targets(targets.begin(), targets.end());
  std::sort(sorted_targets.begin(), sorted_targets.end());
  sorted_targets.erase(std::unique(sorted_targets.begin(), sorted_targets.end()),
                       sorted_targets.end());
  for (const auto& tgt : sorted_targets) {
    if (!out.target.has_point(tgt))
      throw precondition_error("saturate: '" + tgt + "' is not a target point");
    long sum = 0;
    for (const auto& [src, fib] : out.point_map)
      if (fib.target == tgt) sum += fib.multiplicity;
    if (sum > out.degree)
      throw validation_error("saturate: fiber over '" + tgt + "' exceeds the degree");
    long counter = 1;
    while (sum < out.degree) {
      std::string label = tgt + "#" + std::to_string(counter++);
      if (used.count(label)) continue;
      used.insert(label);
      out.source.points.push_back(label);
      out.point_map[label] = {tgt, 1};
      sum += 1;
    }
  }
  return out;
}

CoveringMap compose(const CoveringMap& g, const CoveringMap& f) {
  if (g.target != f.source)
    throw precondition_error("compose: middle curves do not match");
  std::vector<std::string> mids;
  mids.reserve(f.point_map.size());
  for (const auto& [x, fib] : f.point_map) mids.push_back(x);
  CoveringMap gs = saturate(g, mids);
  CoveringMap out;
  out.source = gs.source;
  out.target = f.target;
  out.degree = g.degree * f.degree;
  for (const auto& [y, gfib] : gs.point_map) {
    auto it = f.point_map.find(gfib.target);
    if (it != f.point_map.end()) {
      out.point_map[y] = {it->second.target, gfib.multiplicity * it->second.multiplicity};
    } else if (gfib.multiplicity != 1) {
      // Ramified over a point whose image is unknown: the composite entry
      // cannot be written down.
      throw precondition_error("compose: '" + y + "' is ramified over the unlisted point '" +
                               gfib.target + "'");
    }
  }
  return out;
}

std::vector<std::string> reduced_preimage(const CoveringMap& f,
                                          const std::vector<std::string>& targets) {
  std::set<std::string> acc;
  for (const auto& tgt : targets) {
    if (!f.target.has_point(tgt))
      throw precondition_error("reduced_preimage: '" + tgt + "' is not a target point");
    long sum = 0;
    for (const auto& [src, fib] : f.point_map)
      if (fib.target == tgt) {
        acc.insert(src);
        sum += fib.multiplicity;
      }
    if (sum != f.degree)
      throw precondition_error("reduced_preimage: fiber over '" + tgt +
                               "' is not completely listed; saturate first");
  }
  return {acc.begin(), acc.end()};
}

std::vector<std::string> delta_locus(const CoveringMap& f,
                                     const std::vector<std::string>& source_points) {
  std::set<std::string> acc;
  for (const auto& [src, fib] : f.point_map)
    if (fib.multiplicity >= 2) acc.insert(fib.target);
  for (const auto& p : source_points) {
    auto it = f.point_map.find(p);
    if (it == f.point_map.end())
      throw precondition_error("delta_locus: image of '" + p + "' is not listed");
    acc.insert(it->second.target);
  }
  return {acc.begin(), acc.end()};
}

Divisor ramification_divisor(const CoveringMap& f) {
  Divisor d;
  for (const auto& [src, fib] : f.point_map)
    if (fib.multiplicity >= 2) d.coeffs[src] = fib.multiplicity - 1;
  return d;
}

bool is_galois_profile(const CoveringMap& f) {
  std::map<std::string, long> mult;
  for (const auto& [src, fib] : f.point_map) {
    auto [it, fresh] = mult.emplace(fib.target, fib.multiplicity);
    if (!fresh && it->second != fib.multiplicity) return false;
  }
  return true;
}

}  // namespace pcalc
