#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "pcalc/curve.hpp"
#include "pcalc/naht.hpp"
#include "pcalc/parabolic.hpp"
#include "pcalc/spectral.hpp"

namespace pcalc {

// Named inputs for one computation: curves, coverings between them, bundle
// data, and local spectral data. This is the on-disk interchange format; the
// verifier also emits counterexamples in exactly this shape so they can be
// replayed.
struct Scenario {
  std::map<std::string, MarkedCurve> curves;
  std::map<std::string, CoveringMap> coverings;
  std::map<std::string, SplitParabolicBundle> split_bundles;
  std::map<std::string, ParabolicChar> chars;
  std::map<std::string, LocalSpectralField> fields;
  std::map<std::string, std::vector<SpectralPoint>> spectra;
};

// Structural problems (wrong JSON shape, bad literals) raise parse_error;
// semantic problems (invalid covering, weight out of range, rank mismatch)
// raise validation_error. Coverings are validated clause by clause and the
// failing clause is part of the message.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);
std::string scenario_to_text(const Scenario& s);

nlohmann::json flag_to_json(const Flag& f);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json spectral_points_to_json(const std::vector<SpectralPoint>& pts);

}  // namespace pcalc
