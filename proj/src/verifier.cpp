#include "pcalc/verifier.hpp"

#include <algorithm>
#include <set>

#include "pcalc/functors.hpp"
#include "pcalc/naht.hpp"

namespace pcalc {

Rng::Rng(std::uint64_t seed) : state(seed) {}

std::uint64_t Rng::next() {
  // splitmix64; platform-independent by construction.
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

long Rng::range(long lo, long hi) {
  if (lo > hi) throw internal_error("empty range");
  std::uint64_t span = std::uint64_t(hi - lo) + 1;
  return lo + long(next() % span);
}

bool Rng::chance(long num, long den) { return range(1, den) <= num; }

Rat Rng::weight(long max_den) {
  long den = range(1, max_den);
  long num = range(0, den - 1);
  return rat(num, den);
}

Rat Rng::nonzero_weight(long max_den) {
  long den = range(2, std::max(max_den, 2l));
  long num = range(1, den - 1);
  return rat(num, den);
}

GaussRat Rng::small_scalar() {
  Rat re = rat(range(-4, 4), range(1, 4));
  Rat im = chance(1, 2) ? rat(range(-4, 4), range(1, 4)) : Rat(0);
  return {re, im};
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t remix(std::uint64_t x) {
  Rng r(x);
  return r.next();
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t prop, long trial) {
  return remix(seed ^ remix(prop ^ remix(std::uint64_t(trial) + 0x517cc1b727220a95ull)));
}

std::string rats_text(const std::vector<Rat>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + "]";
}

std::string spectrum_text(const std::vector<SpectralPoint>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ", ";
    s += "(" + to_string(pts[i].jump) + "; " + to_string(pts[i].eigenvalue) + ")x" +
         std::to_string(pts[i].multiplicity);
  }
  return s + "}";
}

Counterexample make_ce(const Scenario& s, std::string command, std::string detail) {
  return {scenario_to_text(s), std::move(command), std::move(detail)};
}

}  // namespace

namespace gen {

MarkedCurve random_curve(Rng& rng, const std::string& prefix) {
  long genus = rng.range(0, 2);
  long k = rng.range(1, 3);
  std::vector<std::string> pts;
  for (long i = 1; i <= k; ++i) pts.push_back(prefix + std::to_string(i));
  return make_curve(genus, std::move(pts));
}

CoveringMap random_covering_over(Rng& rng, const VerifierConfig& cfg, const MarkedCurve& target) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    long n = rng.range(1, cfg.max_multiplicity);
    std::vector<std::vector<long>> parts;
    long ram = 0;
    for (std::size_t zi = 0; zi < target.points.size(); ++zi) {
      std::vector<long> ps;
      long left = n;
      while (left > 0) {
        long m = rng.range(1, left);
        ps.push_back(m);
        left -= m;
      }
      for (long m : ps) ram += m - 1;
      parts.push_back(std::move(ps));
    }
    long g2 = n * (2 * target.genus - 2) + ram + 2;
    if (g2 < 0 || g2 % 2 != 0) continue;
    CoveringMap f;
    f.target = target;
    f.degree = n;
    f.source.genus = g2 / 2;
    for (std::size_t zi = 0; zi < target.points.size(); ++zi) {
      const std::string& z = target.points[zi];
      for (std::size_t j = 0; j < parts[zi].size(); ++j) {
        std::string y = z + "_" + std::to_string(j + 1);
        f.source.points.push_back(y);
        f.point_map[y] = {z, parts[zi][j]};
      }
    }
    require_valid(f);
    return f;
  }
  throw internal_error("covering generator exhausted its attempts");
}

CoveringMap random_covering(Rng& rng, const VerifierConfig& cfg) {
  MarkedCurve target = random_curve(rng, "t");
  return random_covering_over(rng, cfg, target);
}

CoveringMap random_constant_mult_covering(Rng& rng, const VerifierConfig& cfg, bool cyclic_type) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    MarkedCurve target = random_curve(rng, "t");
    long n = rng.range(1, cfg.max_multiplicity);
    std::vector<long> divs;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0 && (!cyclic_type || d == 1 || d == n)) divs.push_back(d);
    std::vector<long> mult_of(target.points.size());
    long ram = 0;
    for (std::size_t zi = 0; zi < target.points.size(); ++zi) {
      long m = divs[std::size_t(rng.range(0, long(divs.size()) - 1))];
      mult_of[zi] = m;
      ram += n - n / m;
    }
    long g2 = n * (2 * target.genus - 2) + ram + 2;
    if (g2 < 0 || g2 % 2 != 0) continue;
    CoveringMap f;
    f.target = target;
    f.degree = n;
    f.source.genus = g2 / 2;
    for (std::size_t zi = 0; zi < target.points.size(); ++zi) {
      const std::string& z = target.points[zi];
      long m = mult_of[zi];
      for (long j = 0; j < n / m; ++j) {
        std::string y = z + "_" + std::to_string(j + 1);
        f.source.points.push_back(y);
        f.point_map[y] = {z, m};
      }
    }
    require_valid(f);
    return f;
  }
  throw internal_error("covering generator exhausted its attempts");
}

SplitParabolicBundle random_split_bundle(Rng& rng, const VerifierConfig& cfg,
                                         const MarkedCurve& curve) {
  long r = rng.range(1, cfg.max_rank);
  auto random_line = [&]() {
    std::map<std::string, Rat> w;
    for (const auto& p : curve.points)
      if (rng.chance(1, 2)) w[p] = rng.nonzero_weight(cfg.max_weight_denominator);
    return make_para_line(curve, rng.range(-cfg.max_degree, cfg.max_degree), std::move(w));
  };
  long mode = rng.range(0, 2);
  std::vector<ParaLine> lines;
  if (mode == 0) {
    for (long i = 0; i < r; ++i) lines.push_back(random_line());
  } else {
    ParaLine base = random_line();
    for (long i = 0; i < r; ++i) lines.push_back(base);
    if (mode == 2 && r > 1) lines[std::size_t(rng.range(0, r - 1))] = random_line();
  }
  return make_split_bundle(std::move(lines));
}

ParabolicChar random_char(Rng& rng, const VerifierConfig& cfg, const MarkedCurve& curve) {
  long r = rng.range(1, cfg.max_rank);
  long degree = rng.range(-cfg.max_degree, cfg.max_degree);
  std::map<std::string, std::vector<Rat>> multisets;
  for (const auto& p : curve.points) {
    if (!rng.chance(1, 2)) continue;
    std::vector<Rat> ws;
    for (long i = 0; i < r; ++i) ws.push_back(rng.weight(cfg.max_weight_denominator));
    multisets[p] = std::move(ws);
  }
  return make_char(curve, r, degree, std::move(multisets));
}

Flag random_flag(Rng& rng, const VerifierConfig& cfg, long max_rank) {
  long r = rng.range(1, max_rank);
  long s = rng.range(1, std::min(r, 3l));
  std::set<Rat> weights;
  int guard = 0;
  while (long(weights.size()) < s) {
    weights.insert(rng.weight(cfg.max_weight_denominator));
    if (++guard > 500) throw internal_error("flag weight sampling stalled");
  }
  std::vector<FlagStep> steps;
  long used = 0;
  long i = 0;
  for (const Rat& w : weights) {
    long remaining_steps = s - i - 1;
    long take = (i == s - 1) ? (r - used) : rng.range(1, r - used - remaining_steps);
    steps.push_back({w, take});
    used += take;
    ++i;
  }
  return make_flag(std::move(steps));
}

Matrix random_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.small_scalar();
  return m;
}

Matrix random_parabolic(Rng& rng, const Flag& flag) {
  std::vector<Rat> w = flag.position_weights();
  int r = int(w.size());
  Matrix m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (w[i] < w[j]) continue;
      if (rng.chance(1, 2)) m.at(i, j) = rng.small_scalar();
    }
  return m;
}

Matrix random_strongly_parabolic(Rng& rng, const Flag& flag) {
  std::vector<Rat> w = flag.position_weights();
  int r = int(w.size());
  Matrix m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (!(w[i] > w[j])) continue;
      if (rng.chance(1, 2)) m.at(i, j) = rng.small_scalar();
    }
  return m;
}

Matrix random_residual(Rng& rng, const Flag& flag) {
  std::vector<Rat> w = flag.position_weights();
  int r = int(w.size());
  Matrix m(r, r);
  for (int i = 0; i < r; ++i) m.at(i, i) = GaussRat(w[std::size_t(i)]);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (!(w[i] > w[j])) continue;
      if (rng.chance(1, 2)) m.at(i, j) = rng.small_scalar();
    }
  return m;
}

LocalSpectralField random_field(Rng& rng, const VerifierConfig& cfg) {
  FieldKind kind = rng.chance(1, 2) ? FieldKind::higgs : FieldKind::connection;
  Flag flag = random_flag(rng, cfg, 3);
  long m = rng.range(1, 4);
  int r = int(flag.rank());
  std::vector<Matrix> coeffs;
  switch (rng.range(0, 3)) {
    case 0: coeffs.push_back(random_matrix(rng, r, r)); break;
    case 1: coeffs.push_back(random_parabolic(rng, flag)); break;
    case 2: coeffs.push_back(random_strongly_parabolic(rng, flag)); break;
    default: coeffs.push_back(random_residual(rng, flag)); break;
  }
  for (long k = 1; k < m; ++k) coeffs.push_back(random_matrix(rng, r, r));
  return make_spectral_field(kind, m, std::move(coeffs), std::move(flag));
}

std::vector<SpectralPoint> random_spectrum(Rng& rng, const VerifierConfig& cfg, FieldKind kind) {
  long k = rng.range(1, 3);
  std::vector<SpectralPoint> out;
  for (long i = 0; i < k; ++i) {
    SpectralPoint p;
    p.kind = kind;
    p.jump = rng.weight(cfg.max_weight_denominator);
    if (kind == FieldKind::higgs && rng.chance(1, 4))
      p.eigenvalue = GaussRat();  // nilpotent locus
    else if (kind == FieldKind::connection && rng.chance(1, 4))
      p.eigenvalue = GaussRat(p.jump);  // residual locus
    else
      p.eigenvalue = rng.small_scalar();
    p.multiplicity = rng.range(1, 2);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace gen

namespace {

using MaybeCe = std::optional<Counterexample>;

Scenario covering_scenario(const CoveringMap& f, const std::string& fname) {
  Scenario s;
  s.curves["upstairs"] = f.source;
  if (f.target != f.source) s.curves["downstairs"] = f.target;
  s.coverings[fname] = f;
  return s;
}

MaybeCe prop_pullback_pardeg(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap f = gen::random_covering(rng, cfg);
  SplitParabolicBundle e = gen::random_split_bundle(rng, cfg, f.target);
  SplitParabolicBundle pb = pullback_split(f, e);
  Rat lhs = pb.par_deg();
  Rat rhs = Rat(f.degree) * e.par_deg();
  if (lhs == rhs) return std::nullopt;
  Scenario s = covering_scenario(f, "f");
  s.split_bundles["E"] = e;
  return make_ce(s, "pullback --map f --name E",
                 "par-degree of the pullback is " + to_string(lhs) + ", expected degree * " +
                     to_string(e.par_deg()) + " = " + to_string(rhs));
}

MaybeCe prop_pullback_char_consistency(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap f = gen::random_covering(rng, cfg);
  SplitParabolicBundle e = gen::random_split_bundle(rng, cfg, f.target);
  ParabolicChar via_split = char_of(pullback_split(f, e));
  ParabolicChar via_char = pullback_char(f, char_of(e));
  if (via_split == via_char) return std::nullopt;
  Scenario s = covering_scenario(f, "f");
  s.split_bundles["E"] = e;
  return make_ce(s, "pullback --map f --name E",
                 "summand-wise pullback and multiset pullback disagree");
}

MaybeCe prop_direct_image_degree(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap phi = gen::random_covering(rng, cfg);
  ParabolicChar c = gen::random_char(rng, cfg, phi.source);
  DirectImageResult di = direct_image_char(phi, c);
  auto fail = [&](const std::string& detail) {
    Scenario s = covering_scenario(phi, "phi");
    s.chars["c"] = c;
    return make_ce(s, "pushforward --map phi --name c", detail);
  };
  if (di.char_data.rank != phi.degree * c.rank)
    return fail("rank of the direct image is " + std::to_string(di.char_data.rank) +
                ", expected " + std::to_string(phi.degree * c.rank));
  if (di.char_data.par_deg() != c.par_deg())
    return fail("par-degree " + to_string(di.char_data.par_deg()) + " is not preserved (was " +
                to_string(c.par_deg()) + ")");
  long grr = c.degree + c.rank * (1 - phi.source.genus) -
             c.rank * phi.degree * (1 - phi.target.genus);
  if (di.char_data.degree != grr)
    return fail("underlying degree " + std::to_string(di.char_data.degree) +
                " differs from the Euler-characteristic count " + std::to_string(grr));
  for (const auto& [z, contribs] : di.breakdown) {
    std::vector<Rat> merged;
    for (const auto& fc : contribs) {
      if (long(fc.produced_weights.size()) != fc.multiplicity * c.rank)
        return fail("breakdown at '" + z + "' has the wrong number of produced weights");
      merged.insert(merged.end(), fc.produced_weights.begin(), fc.produced_weights.end());
    }
    std::sort(merged.begin(), merged.end());
    if (merged != di.char_data.multiset_at(z))
      return fail("breakdown at '" + z + "' does not merge into the stored multiset");
  }
  return std::nullopt;
}

MaybeCe prop_pullback_functorial(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap f = gen::random_covering(rng, cfg);
  CoveringMap psi = gen::random_covering_over(rng, cfg, f.source);
  CoveringMap comp = compose(psi, f);
  ParabolicChar c = gen::random_char(rng, cfg, f.target);
  ParabolicChar once = pullback_char(comp, c);
  ParabolicChar twice = pullback_char(psi, pullback_char(f, c));
  if (once == twice) return std::nullopt;
  Scenario s;
  s.curves["bottom"] = f.target;
  s.curves["middle"] = f.source;
  s.curves["top"] = psi.source;
  s.coverings["f"] = f;
  s.coverings["psi"] = psi;
  s.chars["c"] = c;
  return make_ce(s, "compose --name psi --map f",
                 "pullback along the composite disagrees with the two-step pullback");
}

MaybeCe prop_direct_image_functorial(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap outer = gen::random_covering(rng, cfg);
  CoveringMap inner = gen::random_covering_over(rng, cfg, outer.source);
  CoveringMap comp = compose(inner, outer);
  ParabolicChar c = gen::random_char(rng, cfg, inner.source);
  ParabolicChar once = direct_image_char(comp, c).char_data;
  ParabolicChar twice = direct_image_char(outer, direct_image_char(inner, c).char_data).char_data;
  if (once == twice) return std::nullopt;
  Scenario s;
  s.curves["bottom"] = outer.target;
  s.curves["middle"] = outer.source;
  s.curves["top"] = inner.source;
  s.coverings["inner"] = inner;
  s.coverings["outer"] = outer;
  s.chars["c"] = c;
  return make_ce(s, "compose --name inner --map outer",
                 "direct image along the composite disagrees with the two-step direct image");
}

MaybeCe check_fiber_constant_round_trip(Rng& rng, const VerifierConfig& cfg, bool cyclic) {
  CoveringMap phi = gen::random_constant_mult_covering(rng, cfg, cyclic);
  ParabolicChar c = gen::random_char(rng, cfg, phi.source);
  ParabolicChar res = galois_pullback_of_direct_image(phi, c);
  auto fail = [&](const std::string& detail) {
    Scenario s = covering_scenario(phi, "phi");
    s.chars["c"] = c;
    return make_ce(s, "pushforward --map phi --name c", detail);
  };
  long n = phi.degree;
  if (res.rank != n * c.rank)
    return fail("round trip rank " + std::to_string(res.rank) + ", expected " +
                std::to_string(n * c.rank));
  if (res.par_deg() != Rat(n) * c.par_deg())
    return fail("round trip par-degree " + to_string(res.par_deg()) + ", expected " +
                to_string(Rat(n) * c.par_deg()));
  for (const auto& [x, fib] : phi.point_map) {
    long m = fib.multiplicity;
    std::vector<Rat> expected;
    for (const auto& [x2, fib2] : phi.point_map) {
      if (fib2.target != fib.target) continue;
      std::vector<Rat> ws = c.multiset_at(x2);
      for (long copy = 0; copy < m; ++copy)
        expected.insert(expected.end(), ws.begin(), ws.end());
    }
    std::sort(expected.begin(), expected.end());
    std::vector<Rat> got = res.multiset_at(x);
    if (got != expected)
      return fail("round trip weights at '" + x + "' are " + rats_text(got) + ", expected " +
                  rats_text(expected));
  }
  return std::nullopt;
}

MaybeCe prop_fiber_constant_round_trip(Rng& rng, const VerifierConfig& cfg) {
  return check_fiber_constant_round_trip(rng, cfg, false);
}

MaybeCe prop_cyclic_round_trip(Rng& rng, const VerifierConfig& cfg) {
  return check_fiber_constant_round_trip(rng, cfg, true);
}

MaybeCe prop_semistability(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap f = gen::random_covering(rng, cfg);
  SplitParabolicBundle e = gen::random_split_bundle(rng, cfg, f.target);
  bool by_subsums = is_semistable_split(e);
  bool slopes_equal = true;
  Rat first = e.summands.front().par_deg();
  for (const auto& l : e.summands)
    if (l.par_deg() != first) slopes_equal = false;
  auto fail = [&](const std::string& detail) {
    Scenario s = covering_scenario(f, "f");
    s.split_bundles["E"] = e;
    return make_ce(s, "stability --name E", detail);
  };
  if (by_subsums != slopes_equal)
    return fail("sub-sum slope test says " + std::string(by_subsums ? "semistable" : "unstable") +
                " but summand slopes are " + (slopes_equal ? "all equal" : "not all equal"));
  if (is_polystable_split(e) != slopes_equal)
    return fail("polystability disagrees with the equal-slope test");
  bool upstairs = is_semistable_split(pullback_split(f, e));
  if (upstairs != by_subsums)
    return fail(std::string("pullback is ") + (upstairs ? "semistable" : "unstable") +
                " but the bundle itself is " + (by_subsums ? "semistable" : "unstable"));
  return std::nullopt;
}

Scenario spectrum_scenario(const std::vector<SpectralPoint>& pts, const std::string& name) {
  Scenario s;
  s.spectra[name] = pts;
  return s;
}

MaybeCe prop_table_round_trip(Rng& rng, const VerifierConfig& cfg) {
  std::vector<SpectralPoint> hs = gen::random_spectrum(rng, cfg, FieldKind::higgs);
  for (const auto& p : hs) {
    SpectralPoint q = higgs_to_conn(p);
    SpectralPoint back = conn_to_higgs(q);
    if (!(back == p))
      return make_ce(spectrum_scenario({p}, "S"), "naht --name S",
                     "round trip through the correspondence moved (" + to_string(p.jump) + "; " +
                         to_string(p.eigenvalue) + ")");
    bool nilpotent = p.eigenvalue.is_zero();
    bool residual = q.eigenvalue == GaussRat(q.jump);
    if (nilpotent != residual)
      return make_ce(spectrum_scenario({p}, "S"), "naht --name S",
                     "nilpotent locus did not map onto the residual locus");
  }
  std::vector<SpectralPoint> cs = gen::random_spectrum(rng, cfg, FieldKind::connection);
  for (const auto& q : cs) {
    SpectralPoint p = conn_to_higgs(q);
    SpectralPoint back = higgs_to_conn(p);
    if (!(back == q))
      return make_ce(spectrum_scenario({q}, "S"), "naht --name S",
                     "round trip through the correspondence moved (" + to_string(q.jump) + "; " +
                         to_string(q.eigenvalue) + ")");
    if ((q.eigenvalue == GaussRat(q.jump)) != p.eigenvalue.is_zero())
      return make_ce(spectrum_scenario({q}, "S"), "naht --name S",
                     "residual locus did not map onto the nilpotent locus");
  }
  return std::nullopt;
}

std::vector<SpectralPoint> map_h2c(const std::vector<SpectralPoint>& pts) {
  std::vector<SpectralPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(higgs_to_conn(p));
  return normalize_spectrum(std::move(out));
}

MaybeCe prop_table_pullback_square(Rng& rng, const VerifierConfig& cfg) {
  std::vector<SpectralPoint> pts = gen::random_spectrum(rng, cfg, FieldKind::higgs);
  for (long m = 1; m <= 7; ++m) {
    std::vector<SpectralPoint> via_conn =
        pullback_spectrum(FieldKind::connection, m, map_h2c(pts));
    std::vector<SpectralPoint> via_higgs = map_h2c(pullback_spectrum(FieldKind::higgs, m, pts));
    if (!same_spectrum(via_conn, via_higgs))
      return make_ce(spectrum_scenario(pts, "S"),
                     "pullback --name S --mult " + std::to_string(m),
                     "correspondence then pullback gives " + spectrum_text(via_conn) +
                         " but pullback then correspondence gives " + spectrum_text(via_higgs));
  }
  return std::nullopt;
}

MaybeCe prop_table_direct_image_square(Rng& rng, const VerifierConfig& cfg) {
  long fiber_points = rng.range(1, 3);
  std::vector<FiberPointSpectrum> higgs_fiber;
  std::vector<FiberPointSpectrum> conn_fiber;
  for (long i = 0; i < fiber_points; ++i) {
    FiberPointSpectrum fp;
    fp.multiplicity = rng.range(1, 4);
    fp.points = gen::random_spectrum(rng, cfg, FieldKind::higgs);
    conn_fiber.push_back({fp.multiplicity, map_h2c(fp.points)});
    higgs_fiber.push_back(std::move(fp));
  }
  std::vector<SpectralPoint> via_conn =
      direct_image_spectrum(FieldKind::connection, conn_fiber);
  std::vector<SpectralPoint> via_higgs =
      map_h2c(direct_image_spectrum(FieldKind::higgs, higgs_fiber));
  if (same_spectrum(via_conn, via_higgs)) return std::nullopt;
  Scenario s;
  for (std::size_t i = 0; i < higgs_fiber.size(); ++i)
    s.spectra["S" + std::to_string(i + 1)] = higgs_fiber[i].points;
  return make_ce(s, "pushforward --name S1 --mult " + std::to_string(higgs_fiber[0].multiplicity),
                 "correspondence then direct image gives " + spectrum_text(via_conn) +
                     " but direct image then correspondence gives " + spectrum_text(via_higgs));
}

Scenario field_scenario(const LocalSpectralField& f, const std::string& name) {
  Scenario s;
  s.fields[name] = f;
  return s;
}

MaybeCe prop_residue_transport(Rng& rng, const VerifierConfig& cfg) {
  Flag flag = gen::random_flag(rng, cfg, 4);
  long m = rng.range(1, 7);
  int r = int(flag.rank());

  Matrix sp = gen::random_strongly_parabolic(rng, flag);
  TransportedResidue th = pullback_residue(FieldKind::higgs, m, sp, flag);
  auto fail_h = [&](const std::string& detail) {
    LocalSpectralField f = make_spectral_field(FieldKind::higgs, 1, {sp}, flag);
    return make_ce(field_scenario(f, "F"),
                   "pullback --name F --mult " + std::to_string(m), detail);
  };
  if (!check_strongly_parabolic(th.matrix, th.flag))
    return fail_h("transported Higgs residue is not strongly parabolic for the new flag");
  if (power_traces(th.matrix, r) != power_traces(sp * GaussRat(Rat(m)), r))
    return fail_h("floor masking changed the trace data of the transported residue");

  Matrix res = gen::random_residual(rng, flag);
  TransportedResidue tc = pullback_residue(FieldKind::connection, m, res, flag);
  auto fail_c = [&](const Matrix& in, const std::string& detail) {
    LocalSpectralField f = make_spectral_field(FieldKind::connection, 1, {in}, flag);
    return make_ce(field_scenario(f, "F"),
                   "pullback --name F --mult " + std::to_string(m), detail);
  };
  if (!check_residual(tc.matrix, tc.flag))
    return fail_c(res, "transported connection residue left the residual locus");

  Matrix par = gen::random_parabolic(rng, flag);
  TransportedResidue tp = pullback_residue(FieldKind::connection, m, par, flag);
  if (!check_parabolic(tp.matrix, tp.flag))
    return fail_c(par, "transported connection residue is not parabolic for the new flag");
  return std::nullopt;
}

MaybeCe prop_direct_image_residue(Rng& rng, const VerifierConfig& cfg) {
  LocalSpectralField f = gen::random_field(rng, cfg);
  DirectImageResidue di = direct_image_residue(f);
  long m = f.order;
  long r = f.rank();
  auto fail = [&](const std::string& detail) {
    return make_ce(field_scenario(f, "F"), "pushforward --name F", detail);
  };

  std::vector<Rat> expected_w;
  for (long k = 0; k < m; ++k)
    for (const Rat& a : f.flag.position_weights()) expected_w.push_back((k + a) / m);
  std::sort(expected_w.begin(), expected_w.end());
  if (expected_w != di.flag.position_weights())
    return fail("direct image flag weights are not (k + a)/m");

  GaussRat inv_m = GaussRat(Rat(1)) / GaussRat(Rat(m));
  Poly big = char_poly(di.matrix);
  Poly expected;
  if (f.kind == FieldKind::higgs) {
    expected = poly_pow(char_poly(f.residue() * inv_m), m);
  } else {
    expected = {GaussRat(1)};
    for (long k = 0; k < m; ++k) {
      Matrix b = f.residue();
      for (int i = 0; i < int(r); ++i) b.at(i, i) += GaussRat(Rat(k));
      expected = poly_mul(expected, char_poly(b * inv_m));
    }
  }
  if (!poly_eq(big, expected))
    return fail("characteristic polynomial does not factor through the residue blocks");

  Matrix sorted = di.matrix_weight_sorted();
  if (check_parabolic(f.residue(), f.flag) && !check_parabolic(sorted, di.flag))
    return fail("parabolic residue produced a non-parabolic direct image");
  // The k/m diagonal shift of a connection lands on equal-weight positions,
  // so only the higgs side keeps strong parabolicity.
  if (f.kind == FieldKind::higgs && check_strongly_parabolic(f.residue(), f.flag) &&
      !check_strongly_parabolic(sorted, di.flag))
    return fail("strongly parabolic residue produced a non-strongly-parabolic direct image");
  if (f.kind == FieldKind::connection && check_residual(f.residue(), f.flag) &&
      !check_residual(sorted, di.flag))
    return fail("residual connection residue left the residual locus under direct image");
  if (m == 1 && di.matrix != f.residue())
    return fail("direct image along multiplicity 1 changed the residue");
  return std::nullopt;
}

MaybeCe prop_rank_one_conn_spectra(Rng& rng, const VerifierConfig& cfg) {
  Rat alpha = rng.weight(cfg.max_weight_denominator);
  GaussRat e = rng.small_scalar();
  long m = rng.range(2, 5);
  std::vector<Matrix> coeffs;
  Matrix a(1, 1);
  a.at(0, 0) = e;
  coeffs.push_back(a);
  for (long k = 1; k < m; ++k) coeffs.push_back(gen::random_matrix(rng, 1, 1));
  LocalSpectralField f = make_spectral_field(FieldKind::connection, m, std::move(coeffs),
                                             make_flag({{alpha, 1}}));
  DirectImageResidue di = direct_image_residue(f);
  std::vector<GaussRat> diag = triangular_eigenvalues(di.matrix);
  std::vector<Rat> w = di.flag.position_weights();
  std::vector<SpectralPoint> from_matrix;
  for (long k = 0; k < m; ++k) {
    SpectralPoint p;
    p.kind = FieldKind::connection;
    p.jump = w[std::size_t(k)];
    p.eigenvalue = diag[std::size_t(k)];
    from_matrix.push_back(p);
  }
  SpectralPoint src;
  src.kind = FieldKind::connection;
  src.jump = alpha;
  src.eigenvalue = e;
  std::vector<SpectralPoint> from_table =
      direct_image_spectrum(FieldKind::connection, {{m, {src}}});
  if (same_spectrum(from_matrix, from_table)) return std::nullopt;
  return make_ce(field_scenario(f, "F"), "pushforward --name F",
                 "matrix spectrum " + spectrum_text(normalize_spectrum(from_matrix)) +
                     " disagrees with table spectrum " + spectrum_text(from_table));
}

MaybeCe prop_trace_scaling(Rng& rng, const VerifierConfig& /*cfg*/) {
  int r = int(rng.range(1, 6));
  Matrix a = gen::random_matrix(rng, r, r);
  long m = rng.range(1, 7);
  std::vector<GaussRat> scaled = power_traces(pullback_residue_higgs(m, a), r);
  std::vector<GaussRat> base = power_traces(a, r);
  Rat factor(1);
  for (int i = 0; i < r; ++i) {
    factor *= m;
    if (scaled[std::size_t(i)] != base[std::size_t(i)] * GaussRat(factor)) {
      Scenario s;
      s.fields["F"] = make_spectral_field(
          FieldKind::higgs, 1, {a},
          flag_from_multiset(std::vector<Rat>(std::size_t(r), Rat(0))));
      return make_ce(s, "pullback --name F --mult " + std::to_string(m),
                     "trace of power " + std::to_string(i + 1) +
                         " did not scale by multiplicity^power");
    }
  }
  return std::nullopt;
}

MaybeCe prop_validator_clause(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap f = gen::random_covering(rng, cfg);
  if (!validate_covering(f).ok)
    return make_ce(covering_scenario(f, "f"), "validate",
                   "generator produced an invalid covering");
  if (rng.chance(1, 2))
    f.source.genus += 1;
  else
    f.target.genus += 1;
  ValidationReport rep = validate_covering(f);
  if (rep.ok)
    return make_ce(covering_scenario(f, "f"), "validate",
                   "count-violating profile was accepted");
  if (rep.clause != "Riemann-Hurwitz")
    return make_ce(covering_scenario(f, "f"), "validate",
                   "count violation was reported under clause '" + rep.clause + "'");
  return std::nullopt;
}

MaybeCe prop_scenario_round_trip(Rng& rng, const VerifierConfig& cfg) {
  Scenario s;
  CoveringMap f = gen::random_covering(rng, cfg);
  s.curves["upstairs"] = f.source;
  s.curves["downstairs"] = f.target;
  s.coverings["f"] = f;
  s.split_bundles["E"] = gen::random_split_bundle(rng, cfg, f.target);
  s.chars["c"] = gen::random_char(rng, cfg, f.source);
  s.fields["F"] = gen::random_field(rng, cfg);
  s.spectra["S"] = gen::random_spectrum(
      rng, cfg, rng.chance(1, 2) ? FieldKind::higgs : FieldKind::connection);
  std::string text1 = scenario_to_text(s);
  Scenario parsed = scenario_from_json(nlohmann::json::parse(text1));
  std::string text2 = scenario_to_text(parsed);
  auto fail = [&](const std::string& detail) { return make_ce(s, "validate", detail); };
  if (text1 != text2) return fail("serialization is not stable under a parse/serialize cycle");
  if (!(parsed.coverings.at("f") == f)) return fail("covering changed across the round trip");
  if (!(parsed.split_bundles.at("E") == s.split_bundles.at("E")))
    return fail("split bundle changed across the round trip");
  if (parsed.chars.at("c") != s.chars.at("c")) return fail("datum changed across the round trip");
  if (!(parsed.fields.at("F") == s.fields.at("F")))
    return fail("spectral field changed across the round trip");
  if (!same_spectrum(parsed.spectra.at("S"), s.spectra.at("S")))
    return fail("spectrum changed across the round trip");
  return std::nullopt;
}

MaybeCe prop_composition_algebra(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap f1 = gen::random_covering(rng, cfg);
  CoveringMap f2 = gen::random_covering_over(rng, cfg, f1.source);
  CoveringMap f3 = gen::random_covering_over(rng, cfg, f2.source);
  CoveringMap c21 = compose(f2, f1);
  auto fail = [&](const std::string& detail) {
    Scenario s;
    s.curves["bottom"] = f1.target;
    s.curves["middle"] = f1.source;
    s.curves["top"] = f2.source;
    s.coverings["f"] = f1;
    s.coverings["g"] = f2;
    return make_ce(s, "compose --name g --map f", detail);
  };
  ValidationReport rep = validate_covering(c21);
  if (!rep.ok) return fail("composite failed validation under clause '" + rep.clause + "'");
  if (c21.degree != f1.degree * f2.degree) return fail("composite degree is not the product");
  CoveringMap assoc_a = compose(f3, c21);
  CoveringMap assoc_b = compose(compose(f3, f2), f1);
  if (assoc_a != assoc_b) return fail("composition is not associative");
  if (compose(identity_covering(f1.source), f1) != f1)
    return fail("pre-composition with the identity moved the covering");
  if (compose(f1, identity_covering(f1.target)) != f1)
    return fail("post-composition with the identity moved the covering");
  std::vector<std::string> d;
  for (const auto& z : f1.target.points)
    if (rng.chance(1, 2)) d.push_back(z);
  std::vector<std::string> once = reduced_preimage(c21, d);
  std::vector<std::string> twice = reduced_preimage(f2, reduced_preimage(f1, d));
  if (once != twice) return fail("reduced preimage is not functorial");
  long ram = ramification_divisor(f1).total_degree();
  long expect = (2 * f1.source.genus - 2) - f1.degree * (2 * f1.target.genus - 2);
  if (ram != expect) return fail("ramification divisor degree disagrees with the genus count");
  return std::nullopt;
}

MaybeCe prop_line_algebra(Rng& rng, const VerifierConfig& cfg) {
  MarkedCurve curve = gen::random_curve(rng, "p");
  SplitParabolicBundle e = gen::random_split_bundle(rng, cfg, curve);
  const ParaLine& l1 = e.summands.front();
  ParaLine l2 = gen::random_split_bundle(rng, cfg, curve).summands.front();
  ParaLine l3 = gen::random_split_bundle(rng, cfg, curve).summands.front();
  auto fail = [&](const std::string& detail) {
    Scenario s;
    s.curves["C"] = curve;
    s.split_bundles["E"] = e;
    return make_ce(s, "degree --name E", detail);
  };
  if (dual_line(dual_line(l1)) != l1) return fail("parabolic dual is not an involution");
  if (dual_line(l1).par_deg() != -l1.par_deg()) return fail("dual did not negate the par-degree");
  if (tensor_lines(l1, l2) != tensor_lines(l2, l1)) return fail("tensor is not commutative");
  if (tensor_lines(tensor_lines(l1, l2), l3) != tensor_lines(l1, tensor_lines(l2, l3)))
    return fail("tensor is not associative");
  ParaLine unit = make_para_line(curve, 0, {});
  if (tensor_lines(l1, unit) != l1) return fail("trivial line is not a tensor unit");
  if (tensor_lines(l1, l2).par_deg() != l1.par_deg() + l2.par_deg())
    return fail("par-degree is not additive under tensor");
  ParabolicChar end = end_p_char(e);
  if (end.rank != e.rank() * e.rank()) return fail("endomorphism datum has the wrong rank");
  if (end.par_deg() != 0) return fail("endomorphism par-degree is nonzero");
  ParabolicChar c = char_of(e);
  for (const auto& p : curve.points) {
    Flag fl = flag_at(c, p);
    if (fl.position_weights() != c.multiset_at(p))
      return fail("flag at '" + p + "' does not match the sorted weight multiset");
  }
  return std::nullopt;
}

MaybeCe prop_saturation(Rng& rng, const VerifierConfig& cfg) {
  CoveringMap f = gen::random_covering(rng, cfg);
  // Unlist whole unramified fibers; the map stays valid but incomplete there.
  std::vector<std::string> removed;
  for (const auto& z : f.target.points) {
    bool unramified = true;
    for (const auto& [y, fib] : f.point_map)
      if (fib.target == z && fib.multiplicity > 1) unramified = false;
    if (unramified && rng.chance(1, 2)) removed.push_back(z);
  }
  CoveringMap pruned = f;
  for (const auto& z : removed) {
    for (auto it = pruned.point_map.begin(); it != pruned.point_map.end();)
      it = (it->second.target == z) ? pruned.point_map.erase(it) : ++it;
  }
  auto fail = [&](const std::string& detail) {
    return make_ce(covering_scenario(pruned, "f"), "validate", detail);
  };
  if (!validate_covering(pruned).ok) return fail("unlisting whole fibers broke validity");
  CoveringMap sat = saturate(pruned, removed);
  if (!validate_covering(sat).ok) return fail("saturation produced an invalid covering");
  for (const auto& z : removed) {
    long sum = 0;
    for (const auto& [y, fib] : sat.point_map)
      if (fib.target == z) {
        sum += fib.multiplicity;
        if (fib.multiplicity != 1) return fail("saturation invented a ramified point");
      }
    if (sum != sat.degree) return fail("saturated fiber over '" + z + "' is incomplete");
  }
  for (const auto& [y, fib] : pruned.point_map) {
    auto it = sat.point_map.find(y);
    if (it == sat.point_map.end() || !(it->second == fib))
      return fail("saturation disturbed an existing fiber entry");
  }
  return std::nullopt;
}

}  // namespace

const std::vector<PropertySpec>& property_suite() {
  static const std::vector<PropertySpec> suite = {
      {"pullback par-degree multiplicativity", prop_pullback_pardeg},
      {"pullback matches summand-wise pullback", prop_pullback_char_consistency},
      {"direct image degree bookkeeping", prop_direct_image_degree},
      {"pullback functoriality", prop_pullback_functorial},
      {"direct image functoriality", prop_direct_image_functorial},
      {"fiber-constant round trip", prop_fiber_constant_round_trip},
      {"cyclic profile round trip", prop_cyclic_round_trip},
      {"split semistability equivalences", prop_semistability},
      {"spectral correspondence round trip", prop_table_round_trip},
      {"spectral correspondence commutes with pullback", prop_table_pullback_square},
      {"spectral correspondence commutes with direct image", prop_table_direct_image_square},
      {"residue transport preserves shape", prop_residue_transport},
      {"direct image residue factorization", prop_direct_image_residue},
      {"rank-one connection residue spectra", prop_rank_one_conn_spectra},
      {"trace scaling under pullback", prop_trace_scaling},
      {"validator names the broken count", prop_validator_clause},
      {"scenario serialization round trip", prop_scenario_round_trip},
      {"composition algebra", prop_composition_algebra},
      {"line and flag algebra", prop_line_algebra},
      {"saturation completes fibers", prop_saturation},
  };
  return suite;
}

const PropertySpec& find_property(const std::string& name) {
  for (const auto& p : property_suite())
    if (p.name == name) return p;
  throw error("unknown property '" + name + "'");
}

PropertyResult run_property(const PropertySpec& p, const VerifierConfig& cfg, long trials) {
  std::uint64_t prop_hash = fnv1a(p.name);
  std::vector<std::optional<Counterexample>> slots(static_cast<std::size_t>(trials));
  auto run_one = [&](long t) -> std::optional<Counterexample> {
    Rng rng(trial_seed(cfg.seed, prop_hash, t));
    try {
      return p.run_trial(rng, cfg);
    } catch (const std::exception& e) {
      return Counterexample{"", "", std::string("unexpected exception: ") + e.what()};
    }
  };
#ifdef _OPENMP
  if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long t = 0; t < trials; ++t) slots[std::size_t(t)] = run_one(t);
  } else {
    for (long t = 0; t < trials; ++t) slots[std::size_t(t)] = run_one(t);
  }
#else
  for (long t = 0; t < trials; ++t) slots[std::size_t(t)] = run_one(t);
#endif
  PropertyResult res;
  res.name = p.name;
  res.trials = trials;
  for (long t = 0; t < trials; ++t) {
    if (slots[std::size_t(t)]) {
      res.passed = false;
      res.failed_trial = t;
      res.counterexample = *slots[std::size_t(t)];
      break;
    }
  }
  return res;
}

VerifyReport run_verifier(const VerifierConfig& cfg) {
  VerifyReport rep;
  rep.seed = cfg.seed;
  for (const auto& p : property_suite()) rep.properties.push_back(run_property(p, cfg, cfg.trials));
  return rep;
}

bool VerifyReport::all_passed() const {
  for (const auto& p : properties)
    if (!p.passed) return false;
  return true;
}

std::string VerifyReport::to_text() const {
  std::string out = "seed " + std::to_string(seed) + "\n";
  for (const auto& p : properties) {
    if (p.passed) {
      out += "ok       " + p.name + " (" + std::to_string(p.trials) + " trials)\n";
    } else {
      out += "FAILED   " + p.name + " (trial " + std::to_string(p.failed_trial) + " of " +
             std::to_string(p.trials) + ")\n";
      out += "  detail: " + p.counterexample.detail + "\n";
      if (!p.counterexample.command.empty())
        out += "  replay: pcalc " + p.counterexample.command + " --scenario <file below>\n";
      if (!p.counterexample.scenario_json.empty()) {
        out += "  scenario:\n";
        out += p.counterexample.scenario_json;
        out += "\n";
      }
    }
  }
  out += all_passed() ? "result: all properties passed\n" : "result: FAILED\n";
  return out;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : properties) {
    nlohmann::json jp = {{"name", p.name}, {"trials", p.trials}, {"passed", p.passed}};
    if (!p.passed) {
      jp["failed_trial"] = p.failed_trial;
      jp["detail"] = p.counterexample.detail;
      jp["replay_command"] = p.counterexample.command;
      if (!p.counterexample.scenario_json.empty())
        jp["scenario"] = nlohmann::json::parse(p.counterexample.scenario_json);
    }
    props.push_back(jp);
  }
  return {{"seed", seed}, {"all_passed", all_passed()}, {"properties", props}};
}

}  // namespace pcalc
