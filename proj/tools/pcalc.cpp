// Command-line front end: loads a scenario file, runs one operation on named
// objects, prints the result as a table or as replayable JSON.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pcalc/functors.hpp"
#include "pcalc/naht.hpp"
#include "pcalc/scenario.hpp"
#include "pcalc/verifier.hpp"

namespace {

using namespace pcalc;
using nlohmann::json;

// 0 ok, 1 failed verification, 2 usage/parse, 3 validation; the named-object
// errors get their own codes so scripts can tell them apart.
enum ExitCode {
  exit_ok = 0,
  exit_property_failure = 1,
  exit_usage = 2,
  exit_validation = 3,
  exit_unknown_name = 4,
  exit_kind_mismatch = 5,
  exit_precondition = 6,
  exit_internal = 70,
};

struct unknown_name_error : error {
  using error::error;
};
struct kind_mismatch_error : error {
  using error::error;
};

bool exists_anywhere(const Scenario& s, const std::string& n) {
  return s.curves.count(n) || s.coverings.count(n) || s.split_bundles.count(n) ||
         s.chars.count(n) || s.fields.count(n) || s.spectra.count(n);
}

[[noreturn]] void wrong_or_missing(const Scenario& s, const std::string& n, const char* wanted) {
  if (exists_anywhere(s, n))
    throw kind_mismatch_error("'" + n + "' is not " + wanted);
  throw unknown_name_error("no object named '" + n + "' in the scenario");
}

const CoveringMap& get_covering(const Scenario& s, const std::string& n) {
  auto it = s.coverings.find(n);
  if (it != s.coverings.end()) return it->second;
  wrong_or_missing(s, n, "a covering");
}

const LocalSpectralField* find_field(const Scenario& s, const std::string& n) {
  auto it = s.fields.find(n);
  return it == s.fields.end() ? nullptr : &it->second;
}

const std::vector<SpectralPoint>* find_spectrum(const Scenario& s, const std::string& n) {
  auto it = s.spectra.find(n);
  return it == s.spectra.end() ? nullptr : &it->second;
}

struct BundleRef {
  const SplitParabolicBundle* split = nullptr;
  const ParabolicChar* chr = nullptr;
};

BundleRef get_bundle(const Scenario& s, const std::string& n) {
  BundleRef r;
  if (auto it = s.split_bundles.find(n); it != s.split_bundles.end()) {
    r.split = &it->second;
    return r;
  }
  if (auto it = s.chars.find(n); it != s.chars.end()) {
    r.chr = &it->second;
    return r;
  }
  wrong_or_missing(s, n, "bundle data");
}

void emit(const json& j, const std::string& table, const std::string& fmt) {
  if (fmt == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << table;
}

std::string char_table(const ParabolicChar& c) {
  std::string out = "rank " + std::to_string(c.rank) + "  degree " + std::to_string(c.degree) +
                    "  par-degree " + to_string(c.par_deg()) + "  slope " + to_string(c.slope()) +
                    "\n";
  for (const auto& [p, ws] : c.weight_multisets) {
    out += "  at " + p + ":";
    for (const auto& w : ws) out += " " + to_string(w);
    out += "\n";
  }
  return out;
}

std::string split_table(const SplitParabolicBundle& e) {
  std::string out = "split bundle, rank " + std::to_string(e.rank()) + ", par-degree " +
                    to_string(e.par_deg()) + "\n";
  for (std::size_t i = 0; i < e.summands.size(); ++i) {
    const ParaLine& l = e.summands[i];
    out += "  summand " + std::to_string(i + 1) + ": degree " + std::to_string(l.degree);
    for (const auto& [p, w] : l.weights) out += ", " + p + " -> " + to_string(w);
    out += "\n";
  }
  return out;
}

std::string covering_table(const CoveringMap& f) {
  std::string out = "degree " + std::to_string(f.degree) + " covering, genus " +
                    std::to_string(f.source.genus) + " -> " + std::to_string(f.target.genus) +
                    "\n";
  for (const auto& [y, fib] : f.point_map)
    out += "  " + y + " -> " + fib.target + "  (mult " + std::to_string(fib.multiplicity) + ")\n";
  return out;
}

std::string matrix_table(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    out += "  [";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += "  ";
      out += to_string(m.at(i, j));
    }
    out += "]\n";
  }
  return out;
}

std::string flag_table(const Flag& f) {
  std::string out;
  for (const auto& s : f.steps)
    out += " (" + to_string(s.weight) + " x" + std::to_string(s.multiplicity) + ")";
  return out;
}

std::string spectrum_table(const std::vector<SpectralPoint>& pts) {
  std::string out;
  for (const auto& p : pts)
    out += "  jump " + to_string(p.jump) + "  eigenvalue " + to_string(p.eigenvalue) + "  x" +
           std::to_string(p.multiplicity) + "\n";
  return out;
}

json char_fragment(const ParabolicChar& c, const std::string& name) {
  Scenario rs;
  rs.curves["curve"] = c.curve;
  rs.chars[name] = c;
  return scenario_to_json(rs);
}

json split_fragment(const SplitParabolicBundle& e, const std::string& name) {
  Scenario rs;
  rs.curves["curve"] = e.curve();
  rs.split_bundles[name] = e;
  return scenario_to_json(rs);
}

json covering_fragment(const CoveringMap& f, const std::string& name) {
  Scenario rs;
  rs.curves["upstairs"] = f.source;
  if (f.target != f.source) rs.curves["downstairs"] = f.target;
  rs.coverings[name] = f;
  return scenario_to_json(rs);
}

json perm_json(const std::vector<int>& perm) {
  json out = json::array();
  for (int p : perm) out.push_back(p);
  return out;
}

int cmd_pullback(const Scenario& s, const std::string& name, const std::string& map_name,
                 long mult, const std::string& fmt) {
  if (const auto* pts = find_spectrum(s, name)) {
    if (mult < 1) throw parse_error("pullback of a spectrum needs --mult");
    auto out = pullback_spectrum(pts->front().kind, mult, *pts);
    emit({{"kind", to_string(pts->front().kind)}, {"points", spectral_points_to_json(out)}},
         "pullback along multiplicity " + std::to_string(mult) + ":\n" + spectrum_table(out),
         fmt);
    return exit_ok;
  }
  if (const auto* f = find_field(s, name)) {
    if (mult < 1) throw parse_error("pullback of a local field needs --mult");
    TransportedResidue t = pullback_residue(f->kind, mult, f->residue(), f->flag);
    emit({{"kind", to_string(f->kind)},
          {"matrix", matrix_to_json(t.matrix)},
          {"flag", flag_to_json(t.flag)},
          {"permutation", perm_json(t.perm)}},
         "transported residue (weight-sorted frame):\n" + matrix_table(t.matrix) + "flag:" +
             flag_table(t.flag) + "\n",
         fmt);
    return exit_ok;
  }
  if (map_name.empty()) throw parse_error("pullback of bundle data needs --map");
  const CoveringMap& f = get_covering(s, map_name);
  BundleRef b = get_bundle(s, name);
  if (b.split) {
    SplitParabolicBundle out = pullback_split(f, *b.split);
    emit(split_fragment(out, "result"), split_table(out), fmt);
  } else {
    ParabolicChar out = pullback_char(f, *b.chr);
    emit(char_fragment(out, "result"), char_table(out), fmt);
  }
  return exit_ok;
}

int cmd_pushforward(const Scenario& s, const std::string& name, const std::string& map_name,
                    long mult, const std::string& fmt) {
  if (const auto* pts = find_spectrum(s, name)) {
    if (mult < 1) throw parse_error("direct image of a spectrum needs --mult");
    auto out = direct_image_spectrum(pts->front().kind, {{mult, *pts}});
    emit({{"kind", to_string(pts->front().kind)}, {"points", spectral_points_to_json(out)}},
         "direct image along multiplicity " + std::to_string(mult) + ":\n" + spectrum_table(out),
         fmt);
    return exit_ok;
  }
  if (const auto* f = find_field(s, name)) {
    DirectImageResidue di = direct_image_residue(*f);
    emit({{"kind", to_string(f->kind)},
          {"matrix_fiber_order", matrix_to_json(di.matrix)},
          {"matrix_weight_sorted", matrix_to_json(di.matrix_weight_sorted())},
          {"flag", flag_to_json(di.flag)},
          {"permutation", perm_json(di.perm)}},
         "direct image residue (fiber-order frame):\n" + matrix_table(di.matrix) + "flag:" +
             flag_table(di.flag) + "\n",
         fmt);
    return exit_ok;
  }
  if (map_name.empty()) throw parse_error("direct image of bundle data needs --map");
  const CoveringMap& phi = get_covering(s, map_name);
  BundleRef b = get_bundle(s, name);
  ParabolicChar c = b.split ? char_of(*b.split) : *b.chr;
  DirectImageResult di = direct_image_char(phi, c);
  std::string table = char_table(di.char_data);
  for (const auto& [z, contribs] : di.breakdown) {
    table += "  over " + z + ":\n";
    for (const auto& fc : contribs) {
      table += "    from " + fc.source_point + " (mult " + std::to_string(fc.multiplicity) + "):";
      for (const auto& w : fc.produced_weights) table += " " + to_string(w);
      table += "\n";
    }
  }
  emit(char_fragment(di.char_data, "result"), table, fmt);
  return exit_ok;
}

int cmd_degree(const Scenario& s, const std::string& name, const std::string& fmt) {
  BundleRef b = get_bundle(s, name);
  ParabolicChar c = b.split ? char_of(*b.split) : *b.chr;
  emit({{"rank", c.rank},
        {"degree", c.degree},
        {"par_degree", to_string(c.par_deg())}},
       "par-degree " + to_string(c.par_deg()) + " (rank " + std::to_string(c.rank) +
           ", degree " + std::to_string(c.degree) + ")\n",
       fmt);
  return exit_ok;
}

int cmd_slope(const Scenario& s, const std::string& name, const std::string& fmt) {
  BundleRef b = get_bundle(s, name);
  ParabolicChar c = b.split ? char_of(*b.split) : *b.chr;
  emit({{"slope", to_string(c.slope())}}, "slope " + to_string(c.slope()) + "\n", fmt);
  return exit_ok;
}

int cmd_stability(const Scenario& s, const std::string& name, const std::string& fmt) {
  auto it = s.split_bundles.find(name);
  if (it == s.split_bundles.end()) wrong_or_missing(s, name, "a split bundle");
  const SplitParabolicBundle& e = it->second;
  bool ss = is_semistable_split(e);
  bool ps = is_polystable_split(e);
  emit({{"semistable", ss}, {"polystable", ps}, {"slope", to_string(char_of(e).slope())}},
       std::string(ss ? "semistable" : "unstable") + (ps ? ", polystable" : "") + " (slope " +
           to_string(char_of(e).slope()) + ")\n",
       fmt);
  return exit_ok;
}

int cmd_residue(const Scenario& s, const std::string& name, const std::string& fmt) {
  const auto* f = find_field(s, name);
  if (!f) wrong_or_missing(s, name, "a local field");
  const Matrix& res = f->residue();
  emit({{"kind", to_string(f->kind)},
        {"matrix", matrix_to_json(res)},
        {"flag", flag_to_json(f->flag)},
        {"parabolic", check_parabolic(res, f->flag)},
        {"strongly_parabolic", check_strongly_parabolic(res, f->flag)},
        {"residual", check_residual(res, f->flag)}},
       "residue:\n" + matrix_table(res) + "flag:" + flag_table(f->flag) + "\nparabolic " +
           (check_parabolic(res, f->flag) ? "yes" : "no") + ", strongly parabolic " +
           (check_strongly_parabolic(res, f->flag) ? "yes" : "no") + ", residual " +
           (check_residual(res, f->flag) ? "yes" : "no") + "\n",
       fmt);
  return exit_ok;
}

int cmd_naht(const Scenario& s, const std::string& name, const std::string& fmt) {
  const auto* pts = find_spectrum(s, name);
  if (!pts) wrong_or_missing(s, name, "a spectrum");
  std::vector<SpectralPoint> out;
  std::string table;
  for (const auto& p : *pts) {
    SpectralPoint q = (p.kind == FieldKind::higgs) ? higgs_to_conn(p) : conn_to_higgs(p);
    table += "  (" + to_string(p.jump) + "; " + to_string(p.eigenvalue) + ") -> (" +
             to_string(q.jump) + "; " + to_string(q.eigenvalue) + ")\n";
    out.push_back(q);
  }
  FieldKind out_kind = out.empty() ? FieldKind::connection : out.front().kind;
  emit({{"kind", to_string(out_kind)}, {"points", spectral_points_to_json(out)}}, table, fmt);
  return exit_ok;
}

int cmd_compose(const Scenario& s, const std::string& name, const std::string& map_name,
                const std::string& fmt) {
  const CoveringMap& g = get_covering(s, name);
  const CoveringMap& f = get_covering(s, map_name);
  CoveringMap out = compose(g, f);
  emit(covering_fragment(out, "composite"), covering_table(out), fmt);
  return exit_ok;
}

int cmd_validate(const Scenario& s, const std::string& name, const std::string& fmt) {
  json out = json::object();
  std::string table;
  // An invalid covering cannot be loaded at all, so everything that reaches
  // this point reports ok; the command exists to make that check explicit.
  if (!name.empty()) {
    get_covering(s, name);
    out[name] = "ok";
    table += "ok " + name + "\n";
  } else {
    for (const auto& [n, f] : s.coverings) {
      out[n] = "ok";
      table += "ok " + n + "\n";
    }
  }
  emit(out, table.empty() ? "no coverings in the scenario\n" : table, fmt);
  return exit_ok;
}

int cmd_verify(const VerifierConfig& cfg, const std::string& fmt) {
  VerifyReport rep = run_verifier(cfg);
  emit(rep.to_json(), rep.to_text(), fmt);
  return rep.all_passed() ? exit_ok : exit_property_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus for parabolic bundles on ramified coverings of marked curves"};
  app.require_subcommand(1);

  std::string scenario_path, name, map_name, fmt = "table";
  long mult = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario = true) {
    if (needs_scenario)
      cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", fmt, "output format: json|table")
        ->check(CLI::IsMember({"json", "table"}));
  };

  CLI::App* pullback = app.add_subcommand("pullback", "pull data back along a covering");
  add_common(pullback);
  pullback->add_option("--name", name, "object to pull back")->required();
  pullback->add_option("--map", map_name, "covering to pull back along");
  pullback->add_option("--mult", mult, "local multiplicity (spectra and local fields)");

  CLI::App* pushforward = app.add_subcommand("pushforward", "direct image along a covering");
  add_common(pushforward);
  pushforward->add_option("--name", name, "object to push forward")->required();
  pushforward->add_option("--map", map_name, "covering to push forward along");
  pushforward->add_option("--mult", mult, "local multiplicity (spectra)");

  CLI::App* degree = app.add_subcommand("degree", "par-degree of bundle data");
  add_common(degree);
  degree->add_option("--name", name, "bundle to inspect")->required();

  CLI::App* slope = app.add_subcommand("slope", "slope of bundle data");
  add_common(slope);
  slope->add_option("--name", name, "bundle to inspect")->required();

  CLI::App* stability = app.add_subcommand("stability", "semistability of a split bundle");
  add_common(stability);
  stability->add_option("--name", name, "split bundle to test")->required();

  CLI::App* residue = app.add_subcommand("residue", "residue matrix of a local field");
  add_common(residue);
  residue->add_option("--name", name, "local field to inspect")->required();

  CLI::App* naht = app.add_subcommand("naht", "jump/eigenvalue correspondence");
  add_common(naht);
  naht->add_option("--name", name, "spectrum to map")->required();
  std::string table_id = "table1";
  naht->add_option("table", table_id, "correspondence table (only 'table1' exists)")
      ->check(CLI::IsMember({"table1"}));

  CLI::App* compose_cmd = app.add_subcommand("compose", "compose two coverings");
  add_common(compose_cmd);
  compose_cmd->add_option("--name", name, "inner covering (applied first)")->required();
  compose_cmd->add_option("--map", map_name, "outer covering (applied second)")->required();

  CLI::App* validate = app.add_subcommand("validate", "validate the coverings in a scenario");
  add_common(validate);
  validate->add_option("--name", name, "covering to check (default: all)");

  VerifierConfig cfg;
  bool serial = false;
  CLI::App* verify = app.add_subcommand("verify", "run the randomized property suite");
  verify->add_option("--seed", cfg.seed, "RNG seed");
  verify->add_option("--trials", cfg.trials, "trials per property");
  verify->add_option("--max-rank", cfg.max_rank, "largest generated rank");
  verify->add_option("--max-degree", cfg.max_degree, "largest |degree| generated");
  verify->add_option("--max-mult", cfg.max_multiplicity, "largest covering degree/multiplicity");
  verify->add_option("--weight-denom", cfg.max_weight_denominator,
                     "largest weight denominator generated");
  verify->add_flag("--serial", serial, "disable the parallel trial driver");
  verify->add_option("--out", fmt, "output format: json|table")
      ->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (verify->parsed()) {
      cfg.parallel = !serial;
      return cmd_verify(cfg, fmt);
    }
    Scenario s = load_scenario(scenario_path);
    if (pullback->parsed()) return cmd_pullback(s, name, map_name, mult, fmt);
    if (pushforward->parsed()) return cmd_pushforward(s, name, map_name, mult, fmt);
    if (degree->parsed()) return cmd_degree(s, name, fmt);
    if (slope->parsed()) return cmd_slope(s, name, fmt);
    if (stability->parsed()) return cmd_stability(s, name, fmt);
    if (residue->parsed()) return cmd_residue(s, name, fmt);
    if (naht->parsed()) return cmd_naht(s, name, fmt);
    if (compose_cmd->parsed()) return cmd_compose(s, name, map_name, fmt);
    if (validate->parsed()) return cmd_validate(s, name, fmt);
    std::cerr << "no command selected\n";
    return exit_usage;
  } catch (const unknown_name_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_unknown_name;
  } catch (const kind_mismatch_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_kind_mismatch;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_precondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}
