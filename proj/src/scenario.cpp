#include "pcalc/scenario.hpp"

#include <fstream>

namespace pcalc {

using nlohmann::json;

namespace {

[[noreturn]] void bad_shape(const std::string& where, const std::string& what) {
  throw parse_error(where + ": " + what);
}

const json& field(const json& j, const std::string& where, const char* key) {
  if (!j.is_object()) bad_shape(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad_shape(where, std::string("missing key '") + key + "'");
  return *it;
}

long as_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad_shape(where, "expected an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) bad_shape(where, "expected a string");
  return j.get<std::string>();
}

Rat as_rat(const json& j, const std::string& where) {
  try {
    return parse_rat(as_string(j, where));
  } catch (const parse_error& e) {
    bad_shape(where, e.what());
  }
}

GaussRat as_gauss(const json& j, const std::string& where) {
  try {
    return parse_gauss(as_string(j, where));
  } catch (const parse_error& e) {
    bad_shape(where, e.what());
  }
}

MarkedCurve curve_from_json(const json& j, const std::string& where) {
  long genus = as_long(field(j, where, "genus"), where + ".genus");
  const json& pts = field(j, where, "points");
  if (!pts.is_array()) bad_shape(where + ".points", "expected an array");
  std::vector<std::string> points;
  for (const auto& p : pts) points.push_back(as_string(p, where + ".points[]"));
  return make_curve(genus, std::move(points));
}

const MarkedCurve& resolve_curve(const Scenario& s, const std::string& name,
                                 const std::string& where) {
  auto it = s.curves.find(name);
  if (it == s.curves.end()) bad_shape(where, "unknown curve '" + name + "'");
  return it->second;
}

CoveringMap covering_from_json(const Scenario& s, const json& j, const std::string& where) {
  CoveringMap f;
  f.source = resolve_curve(s, as_string(field(j, where, "source"), where + ".source"), where);
  f.target = resolve_curve(s, as_string(field(j, where, "target"), where + ".target"), where);
  f.degree = as_long(field(j, where, "degree"), where + ".degree");
  const json& pm = field(j, where, "point_map");
  if (!pm.is_object()) bad_shape(where + ".point_map", "expected an object");
  for (auto it = pm.begin(); it != pm.end(); ++it) {
    const std::string w = where + ".point_map." + it.key();
    FiberEntry fe;
    fe.target = as_string(field(*it, w, "target"), w + ".target");
    fe.multiplicity = as_long(field(*it, w, "multiplicity"), w + ".multiplicity");
    f.point_map[it.key()] = std::move(fe);
  }
  ValidationReport r = validate_covering(f);
  if (!r.ok) throw validation_error(where + ": invalid covering (" + r.clause + "): " + r.detail);
  return f;
}

ParaLine line_from_json(const MarkedCurve& curve, const json& j, const std::string& where) {
  long degree = as_long(field(j, where, "degree"), where + ".degree");
  std::map<std::string, Rat> weights;
  if (j.contains("weights")) {
    const json& ws = j.at("weights");
    if (!ws.is_object()) bad_shape(where + ".weights", "expected an object");
    for (auto it = ws.begin(); it != ws.end(); ++it)
      weights[it.key()] = as_rat(*it, where + ".weights." + it.key());
  }
  return make_para_line(curve, degree, std::move(weights));
}

Flag flag_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad_shape(where, "expected an array of flag steps");
  std::vector<FlagStep> steps;
  for (const auto& s : j) {
    const std::string w = where + "[]";
    FlagStep st;
    st.weight = as_rat(field(s, w, "weight"), w + ".weight");
    st.multiplicity = as_long(field(s, w, "multiplicity"), w + ".multiplicity");
    steps.push_back(std::move(st));
  }
  return make_flag(std::move(steps));
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad_shape(where, "expected a nonempty array of rows");
  int rows = int(j.size());
  int cols = int(j.at(0).size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j.at(std::size_t(i));
    if (!row.is_array() || int(row.size()) != cols)
      bad_shape(where, "ragged matrix rows");
    for (int c = 0; c < cols; ++c)
      m.at(i, c) = as_gauss(row.at(std::size_t(c)), where + " entry");
  }
  return m;
}

std::vector<SpectralPoint> spectrum_from_json(const json& j, const std::string& where) {
  FieldKind kind = parse_field_kind(as_string(field(j, where, "kind"), where + ".kind"));
  const json& pts = field(j, where, "points");
  if (!pts.is_array()) bad_shape(where + ".points", "expected an array");
  std::vector<SpectralPoint> out;
  for (const auto& p : pts) {
    const std::string w = where + ".points[]";
    SpectralPoint sp;
    sp.kind = kind;
    sp.jump = as_rat(field(p, w, "jump"), w + ".jump");
    if (sp.jump < 0 || sp.jump >= 1)
      throw validation_error(w + ": jump " + to_string(sp.jump) + " outside [0,1)");
    sp.eigenvalue = as_gauss(field(p, w, "eigenvalue"), w + ".eigenvalue");
    sp.multiplicity = p.contains("multiplicity")
                          ? as_long(p.at("multiplicity"), w + ".multiplicity")
                          : 1;
    if (sp.multiplicity < 1) throw validation_error(w + ": multiplicity must be >= 1");
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("scenario: expected a JSON object");
  Scenario s;
  if (j.contains("curves")) {
    const json& cs = j.at("curves");
    if (!cs.is_object()) bad_shape("curves", "expected an object");
    for (auto it = cs.begin(); it != cs.end(); ++it)
      s.curves.emplace(it.key(), curve_from_json(*it, "curves." + it.key()));
  }
  if (j.contains("coverings")) {
    const json& cs = j.at("coverings");
    if (!cs.is_object()) bad_shape("coverings", "expected an object");
    for (auto it = cs.begin(); it != cs.end(); ++it)
      s.coverings.emplace(it.key(), covering_from_json(s, *it, "coverings." + it.key()));
  }
  if (j.contains("bundles")) {
    const json& bs = j.at("bundles");
    if (!bs.is_object()) bad_shape("bundles", "expected an object");
    for (auto it = bs.begin(); it != bs.end(); ++it) {
      const std::string where = "bundles." + it.key();
      const MarkedCurve& curve =
          resolve_curve(s, as_string(field(*it, where, "curve"), where + ".curve"), where);
      if (it->contains("summands")) {
        const json& sums = it->at("summands");
        if (!sums.is_array() || sums.empty())
          bad_shape(where + ".summands", "expected a nonempty array");
        std::vector<ParaLine> lines;
        for (const auto& l : sums) lines.push_back(line_from_json(curve, l, where + ".summands[]"));
        s.split_bundles.emplace(it.key(), make_split_bundle(std::move(lines)));
      } else {
        long rank = as_long(field(*it, where, "rank"), where + ".rank");
        long degree = as_long(field(*it, where, "degree"), where + ".degree");
        std::map<std::string, std::vector<Rat>> multisets;
        if (it->contains("weights")) {
          const json& ws = it->at("weights");
          if (!ws.is_object()) bad_shape(where + ".weights", "expected an object");
          for (auto w = ws.begin(); w != ws.end(); ++w) {
            if (!w->is_array()) bad_shape(where + ".weights." + w.key(), "expected an array");
            std::vector<Rat> vals;
            for (const auto& v : *w) vals.push_back(as_rat(v, where + ".weights." + w.key()));
            multisets[w.key()] = std::move(vals);
          }
        }
        s.chars.emplace(it.key(), make_char(curve, rank, degree, std::move(multisets)));
      }
    }
  }
  if (j.contains("fields")) {
    const json& fs = j.at("fields");
    if (!fs.is_object()) bad_shape("fields", "expected an object");
    for (auto it = fs.begin(); it != fs.end(); ++it) {
      const std::string where = "fields." + it.key();
      FieldKind kind = parse_field_kind(as_string(field(*it, where, "kind"), where + ".kind"));
      Flag flag = flag_from_json(field(*it, where, "flag"), where + ".flag");
      const json& cs = field(*it, where, "coeffs");
      if (!cs.is_array() || cs.empty()) bad_shape(where + ".coeffs", "expected a nonempty array");
      std::vector<Matrix> coeffs;
      for (const auto& c : cs) coeffs.push_back(matrix_from_json(c, where + ".coeffs[]"));
      long order = long(coeffs.size());
      s.fields.emplace(it.key(), make_spectral_field(kind, order, std::move(coeffs), flag));
    }
  }
  if (j.contains("spectra")) {
    const json& sp = j.at("spectra");
    if (!sp.is_object()) bad_shape("spectra", "expected an object");
    for (auto it = sp.begin(); it != sp.end(); ++it)
      s.spectra.emplace(it.key(), spectrum_from_json(*it, "spectra." + it.key()));
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("scenario '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

namespace {

// Curves are stored by name and referenced by name; objects built in memory
// carry curve copies, so serialization has to recover (or mint) names.
std::string curve_name(json& curves_json, std::map<std::string, MarkedCurve>& named,
                       const MarkedCurve& c) {
  for (const auto& [name, known] : named)
    if (known == c) return name;
  std::string name = "curve" + std::to_string(named.size() + 1);
  while (named.count(name)) name += "_";
  named.emplace(name, c);
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back(p);
  curves_json[name] = {{"genus", c.genus}, {"points", pts}};
  return name;
}

json line_to_json(const ParaLine& l) {
  json w = json::object();
  for (const auto& [p, a] : l.weights) w[p] = to_string(a);
  json out = {{"degree", l.degree}};
  if (!w.empty()) out["weights"] = w;
  return out;
}

}  // namespace

json flag_to_json(const Flag& f) {
  json out = json::array();
  for (const auto& s : f.steps)
    out.push_back({{"weight", to_string(s.weight)}, {"multiplicity", s.multiplicity}});
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
    out.push_back(row);
  }
  return out;
}

json spectral_points_to_json(const std::vector<SpectralPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts)
    arr.push_back({{"jump", to_string(p.jump)},
                   {"eigenvalue", to_string(p.eigenvalue)},
                   {"multiplicity", p.multiplicity}});
  return arr;
}

json scenario_to_json(const Scenario& s) {
  json out = json::object();
  json curves = json::object();
  std::map<std::string, MarkedCurve> named;
  for (const auto& [name, c] : s.curves) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(p);
    curves[name] = {{"genus", c.genus}, {"points", pts}};
    named.emplace(name, c);
  }
  if (!s.coverings.empty()) {
    json cs = json::object();
    for (const auto& [name, f] : s.coverings) {
      json pm = json::object();
      for (const auto& [src, fe] : f.point_map)
        pm[src] = {{"target", fe.target}, {"multiplicity", fe.multiplicity}};
      cs[name] = {{"source", curve_name(curves, named, f.source)},
                  {"target", curve_name(curves, named, f.target)},
                  {"degree", f.degree},
                  {"point_map", pm}};
    }
    out["coverings"] = cs;
  }
  if (!s.split_bundles.empty() || !s.chars.empty()) {
    json bs = json::object();
    for (const auto& [name, e] : s.split_bundles) {
      json sums = json::array();
      for (const auto& l : e.summands) sums.push_back(line_to_json(l));
      bs[name] = {{"curve", curve_name(curves, named, e.curve())}, {"summands", sums}};
    }
    for (const auto& [name, c] : s.chars) {
      json ws = json::object();
      for (const auto& [p, vals] : c.weight_multisets) {
        json arr = json::array();
        for (const auto& v : vals) arr.push_back(to_string(v));
        ws[p] = arr;
      }
      json b = {{"curve", curve_name(curves, named, c.curve)},
                {"rank", c.rank},
                {"degree", c.degree}};
      if (!ws.empty()) b["weights"] = ws;
      bs[name] = b;
    }
    out["bundles"] = bs;
  }
  if (!s.fields.empty()) {
    json fs = json::object();
    for (const auto& [name, f] : s.fields) {
      json cs = json::array();
      for (const auto& m : f.coeffs) cs.push_back(matrix_to_json(m));
      fs[name] = {{"kind", to_string(f.kind)}, {"flag", flag_to_json(f.flag)}, {"coeffs", cs}};
    }
    out["fields"] = fs;
  }
  if (!s.spectra.empty()) {
    json sp = json::object();
    for (const auto& [name, pts] : s.spectra) {
      FieldKind kind = pts.empty() ? FieldKind::higgs : pts.front().kind;
      sp[name] = {{"kind", to_string(kind)}, {"points", spectral_points_to_json(pts)}};
    }
    out["spectra"] = sp;
  }
  if (!curves.empty()) out["curves"] = curves;
  return out;
}

std::string scenario_to_text(const Scenario& s) { return scenario_to_json(s).dump(2); }

}  // namespace pcalc
