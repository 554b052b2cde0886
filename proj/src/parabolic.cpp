#include "pcalc/parabolic.hpp"

#include <algorithm>

namespace pcalc {

static void check_weight_range(const Rat& w) {
  if (w < 0 || w >= 1) throw validation_error("weight " + to_string(w) + " outside [0,1)");
}

Rat ParaLine::weight_at(const std::string& point) const {
  auto it = weights.find(point);
  return it == weights.end() ? Rat(0) : it->second;
}

Rat ParaLine::par_deg() const {
  Rat d(degree);
  for (const auto& [p, w] : weights) d += w;
  return d;
}

bool operator==(const ParaLine& a, const ParaLine& b) {
  return a.degree == b.degree && a.curve == b.curve && a.weights == b.weights;
}

bool operator!=(const ParaLine& a, const ParaLine& b) { return !(a == b); }

ParaLine make_para_line(MarkedCurve curve, long degree, std::map<std::string, Rat> weights) {
  ParaLine l;
  l.degree = degree;
  for (auto& [p, w] : weights) {
    check_weight_range(w);
    if (!curve.has_point(p))
      throw validation_error("weight at '" + p + "', which is not a point of the curve");
    if (w != 0) l.weights.emplace(p, w);
  }
  l.curve = std::move(curve);
  return l;
}

Rat SplitParabolicBundle::par_deg() const {
  Rat d(0);
  for (const auto& l : summands) d += l.par_deg();
  return d;
}

bool operator==(const SplitParabolicBundle& a, const SplitParabolicBundle& b) {
  return a.summands == b.summands;
}

SplitParabolicBundle make_split_bundle(std::vector<ParaLine> summands) {
  if (summands.empty()) throw validation_error("split bundle needs at least one summand");
  for (std::size_t i = 1; i < summands.size(); ++i)
    if (summands[i].curve != summands[0].curve)
      throw validation_error("summands live on different curves");
  return SplitParabolicBundle{std::move(summands)};
}

std::vector<Rat> ParabolicChar::multiset_at(const std::string& point) const {
  auto it = weight_multisets.find(point);
  if (it != weight_multisets.end()) return it->second;
  return std::vector<Rat>(std::size_t(rank), Rat(0));
}

Rat ParabolicChar::par_deg() const {
  Rat d(degree);
  for (const auto& [p, ws] : weight_multisets)
    for (const auto& w : ws) d += w;
  return d;
}

Rat ParabolicChar::slope() const { return par_deg() / rank; }

bool operator==(const ParabolicChar& a, const ParabolicChar& b) {
  return a.rank == b.rank && a.degree == b.degree && a.curve == b.curve &&
         a.weight_multisets == b.weight_multisets;
}

bool operator!=(const ParabolicChar& a, const ParabolicChar& b) { return !(a == b); }

ParabolicChar make_char(MarkedCurve curve, long rank, long degree,
                        std::map<std::string, std::vector<Rat>> weight_multisets) {
  if (rank < 1) throw validation_error("rank must be >= 1");
  ParabolicChar c;
  c.rank = rank;
  c.degree = degree;
  for (auto& [p, ws] : weight_multisets) {
    if (!curve.has_point(p))
      throw validation_error("weights at '" + p + "', which is not a point of the curve");
    if (long(ws.size()) != rank)
      throw validation_error("multiset at '" + p + "' must have exactly rank entries");
    for (const auto& w : ws) check_weight_range(w);
    std::sort(ws.begin(), ws.end());
    bool all_zero = std::all_of(ws.begin(), ws.end(), [](const Rat& w) { return w == 0; });
    if (!all_zero) c.weight_multisets.emplace(p, std::move(ws));
  }
  c.curve = std::move(curve);
  return c;
}

ParabolicChar char_of(const SplitParabolicBundle& e) {
  std::map<std::string, std::vector<Rat>> multisets;
  for (const auto& l : e.summands)
    for (const auto& [p, w] : l.weights) multisets.try_emplace(p);
  for (auto& [p, ws] : multisets)
    for (const auto& l : e.summands) ws.push_back(l.weight_at(p));
  long degree = 0;
  for (const auto& l : e.summands) degree += l.degree;
  return make_char(e.curve(), e.rank(), degree, std::move(multisets));
}

long Flag::rank() const {
  long r = 0;
  for (const auto& s : steps) r += s.multiplicity;
  return r;
}

std::vector<Rat> Flag::position_weights() const {
  std::vector<Rat> out;
  out.reserve(std::size_t(rank()));
  for (const auto& s : steps)
    for (long k = 0; k < s.multiplicity; ++k) out.push_back(s.weight);
  return out;
}

Flag make_flag(std::vector<FlagStep> steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    check_weight_range(steps[i].weight);
    if (steps[i].multiplicity < 1) throw validation_error("flag step with multiplicity < 1");
    if (i > 0 && !(steps[i - 1].weight < steps[i].weight))
      throw validation_error("flag weights must strictly increase");
  }
  if (steps.empty()) throw validation_error("empty flag");
  return Flag{std::move(steps)};
}

Flag flag_from_multiset(const std::vector<Rat>& weights) {
  if (weights.empty()) throw validation_error("empty weight multiset");
  std::vector<Rat> ws = weights;
  std::sort(ws.begin(), ws.end());
  std::vector<FlagStep> steps;
  for (const auto& w : ws) {
    check_weight_range(w);
    if (!steps.empty() && steps.back().weight == w)
      ++steps.back().multiplicity;
    else
      steps.push_back({w, 1});
  }
  return Flag{std::move(steps)};
}

Flag flag_at(const ParabolicChar& c, const std::string& point) {
  if (!c.curve.has_point(point))
    throw precondition_error("flag_at: '" + point + "' is not a point of the curve");
  return flag_from_multiset(c.multiset_at(point));
}

ParaLine dual_line(const ParaLine& l) {
  ParaLine d;
  d.curve = l.curve;
  d.degree = -l.degree - long(l.weights.size());
  for (const auto& [p, w] : l.weights) d.weights.emplace(p, 1 - w);
  return d;
}

ParaLine tensor_lines(const ParaLine& a, const ParaLine& b) {
  if (a.curve != b.curve) throw precondition_error("tensor of lines on different curves");
  ParaLine t;
  t.curve = a.curve;
  t.degree = a.degree + b.degree;
  std::map<std::string, Rat> sums = a.weights;
  for (const auto& [p, w] : b.weights) sums[p] += w;
  for (auto& [p, w] : sums) {
    long carry = floor_rat(w);
    t.degree += carry;
    Rat rem = w - carry;
    if (rem != 0) t.weights.emplace(p, std::move(rem));
  }
  return t;
}

ParabolicChar end_p_char(const SplitParabolicBundle& e) {
  std::vector<ParaLine> terms;
  terms.reserve(std::size_t(e.rank()) * e.rank());
  for (const auto& a : e.summands)
    for (const auto& b : e.summands) terms.push_back(tensor_lines(a, dual_line(b)));
  return char_of(make_split_bundle(std::move(terms)));
}

std::vector<SplitParabolicBundle> sub_sums(const SplitParabolicBundle& e) {
  std::vector<SplitParabolicBundle> out;
  unsigned long n = static_cast<unsigned long>(e.rank());
  if (n >= 20) throw precondition_error("sub-sum enumeration capped at rank 19");
  for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
    std::vector<ParaLine> part;
    for (unsigned long i = 0; i < n; ++i)
      if (mask & (1ul << i)) part.push_back(e.summands[i]);
    out.push_back(make_split_bundle(std::move(part)));
  }
  return out;
}

bool is_semistable_split(const SplitParabolicBundle& e) {
  Rat mu = char_of(e).slope();
  for (const auto& sub : sub_sums(e))
    if (char_of(sub).slope() > mu) return false;
  return true;
}

bool is_polystable_split(const SplitParabolicBundle& e) {
  Rat mu = char_of(e).slope();
  for (const auto& l : e.summands)
    if (l.par_deg() != mu) return false;
  return true;
}

}  // namespace pcalc
