#include <string>

#include "doctest.h"
#include "pcalc/scenario.hpp"

using namespace pcalc;
using nlohmann::json;

namespace {

const char* kSampleText = R"({
  "curves": {
    "C": {"genus": 0, "points": ["z1", "z2"]},
    "B": {"genus": 0, "points": ["p1", "p2"]}
  },
  "coverings": {
    "f": {
      "source": "B", "target": "C", "degree": 2,
      "point_map": {
        "p1": {"target": "z1", "multiplicity": 2},
        "p2": {"target": "z2", "multiplicity": 2}
      }
    }
  },
  "bundles": {
    "E": {
      "curve": "C",
      "summands": [
        {"degree": 0, "weights": {"z1": "1/2"}},
        {"degree": 1}
      ]
    },
    "c": {"curve": "B", "rank": 2, "degree": -1, "weights": {"p1": ["0", "1/2"]}}
  },
  "fields": {
    "F": {
      "kind": "connection",
      "flag": [{"weight": "1/4", "multiplicity": 1}],
      "coeffs": [[["1/2"]], [["-3+1 i"]]]
    }
  },
  "spectra": {
    "S": {"kind": "higgs", "points": [{"jump": "1/2", "eigenvalue": "1/4+1 i"}]}
  }
})";

}  // namespace

TEST_CASE("scenario files load into typed objects") {
  Scenario s = scenario_from_json(json::parse(kSampleText));
  CHECK(s.curves.at("C").genus == 0);
  CHECK(s.coverings.at("f").degree == 2);
  CHECK(s.coverings.at("f").multiplicity_at("p1") == 2);
  CHECK(s.split_bundles.at("E").rank() == 2);
  CHECK(s.split_bundles.at("E").summands[0].weight_at("z1") == rat(1, 2));
  CHECK(s.chars.at("c").rank == 2);
  std::vector<Rat> ms = {rat(0), rat(1, 2)};
  CHECK(s.chars.at("c").multiset_at("p1") == ms);
  CHECK(s.fields.at("F").kind == FieldKind::connection);
  CHECK(s.fields.at("F").order == 2);
  CHECK(s.fields.at("F").coeffs[1].at(0, 0) == GaussRat(rat(-3), rat(1)));
  REQUIRE(s.spectra.at("S").size() == 1);
  CHECK(s.spectra.at("S")[0].jump == rat(1, 2));
  CHECK(s.spectra.at("S")[0].multiplicity == 1);
}

TEST_CASE("serialization is stable under a parse cycle") {
  Scenario s = scenario_from_json(json::parse(kSampleText));
  std::string text1 = scenario_to_text(s);
  Scenario back = scenario_from_json(json::parse(text1));
  CHECK(scenario_to_text(back) == text1);
  CHECK(back.coverings.at("f") == s.coverings.at("f"));
  CHECK(back.split_bundles.at("E") == s.split_bundles.at("E"));
  CHECK(back.chars.at("c") == s.chars.at("c"));
  CHECK(back.fields.at("F") == s.fields.at("F"));
  CHECK(same_spectrum(back.spectra.at("S"), s.spectra.at("S")));
}

TEST_CASE("serialization mints names for unregistered curves") {
  Scenario s;
  CoveringMap f;
  f.target = make_curve(1, {"z"});
  f.source = make_curve(1, {"y1", "y2"});
  f.degree = 2;
  f.point_map["y1"] = {"z", 1};
  f.point_map["y2"] = {"z", 1};
  s.coverings["f"] = f;  // no entries in s.curves on purpose
  json j = scenario_to_json(s);
  REQUIRE(j.contains("curves"));
  CHECK(j.at("curves").size() == 2);
  Scenario back = scenario_from_json(j);
  CHECK(back.coverings.at("f") == f);
}

TEST_CASE("structural and semantic errors are told apart") {
  json j = json::parse(kSampleText);

  SUBCASE("missing keys name their location") {
    j["curves"]["C"].erase("genus");
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("curves.C"), parse_error);
  }
  SUBCASE("bad rational literals are parse errors") {
    j["bundles"]["E"]["summands"][0]["weights"]["z1"] = "1.5";
    CHECK_THROWS_AS(scenario_from_json(j), parse_error);
  }
  SUBCASE("invalid coverings carry the failing clause") {
    j["coverings"]["f"]["degree"] = 3;
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("fiber sum"),
                         validation_error);
  }
  SUBCASE("weight range problems are validation errors") {
    j["bundles"]["c"]["weights"]["p1"][1] = "3/2";
    CHECK_THROWS_AS(scenario_from_json(j), validation_error);
  }
  SUBCASE("unknown curve references") {
    j["bundles"]["E"]["curve"] = "X";
    CHECK_THROWS_AS(scenario_from_json(j), parse_error);
  }
  SUBCASE("jump range is enforced") {
    j["spectra"]["S"]["points"][0]["jump"] = "5/4";
    CHECK_THROWS_AS(scenario_from_json(j), validation_error);
  }
}

TEST_CASE("scenario files on disk") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), parse_error);
}
