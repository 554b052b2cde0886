#include "doctest.h"
#include "pcalc/curve.hpp"

using namespace pcalc;

namespace {

// Degree 2 cover of the line, totally ramified over z1 and z2, split over z3.
CoveringMap split_double_cover() {
  CoveringMap f;
  f.target = make_curve(0, {"z1", "z2", "z3"});
  f.source = make_curve(0, {"p1", "p2", "r1", "r2"});
  f.degree = 2;
  f.point_map["p1"] = {"z1", 2};
  f.point_map["p2"] = {"z2", 2};
  f.point_map["r1"] = {"z3", 1};
  f.point_map["r2"] = {"z3", 1};
  return f;
}

// Unramified double cover of a torus; the fiber over z2 is left unlisted.
CoveringMap torus_cover_partial() {
  CoveringMap f;
  f.target = make_curve(1, {"z1", "z2"});
  f.source = make_curve(1, {"a1", "a2"});
  f.degree = 2;
  f.point_map["a1"] = {"z1", 1};
  f.point_map["a2"] = {"z1", 1};
  return f;
}

}  // namespace

TEST_CASE("curve construction and equality") {
  MarkedCurve c = make_curve(1, {"p", "q"});
  CHECK(c.has_point("p"));
  CHECK(!c.has_point("x"));
  CHECK(c == make_curve(1, {"q", "p"}));
  CHECK(c != make_curve(2, {"p", "q"}));
  CHECK(c != make_curve(1, {"p"}));
  CHECK_THROWS_AS(make_curve(-1, {}), validation_error);
  CHECK_THROWS_AS(make_curve(0, {"p", "p"}), validation_error);
  CHECK_THROWS_AS(make_curve(0, {""}), validation_error);
}

TEST_CASE("validation reports the first broken clause") {
  CoveringMap f = split_double_cover();
  CHECK(validate_covering(f).ok);

  SUBCASE("degree") {
    f.degree = 0;
    CHECK(validate_covering(f).clause == "degree");
  }
  SUBCASE("curve points") {
    f.source.points.push_back("p1");  // duplicate label, bypassing make_curve
    CHECK(validate_covering(f).clause == "curve points");
  }
  SUBCASE("point membership, source side") {
    f.point_map["ghost"] = {"z1", 1};
    CHECK(validate_covering(f).clause == "point membership");
  }
  SUBCASE("point membership, target side") {
    f.point_map["r1"] = {"nowhere", 1};
    CHECK(validate_covering(f).clause == "point membership");
  }
  SUBCASE("multiplicity") {
    f.point_map["r1"].multiplicity = 0;
    CHECK(validate_covering(f).clause == "multiplicity");
  }
  SUBCASE("fiber sum") {
    f.point_map.erase("r2");
    CHECK(validate_covering(f).clause == "fiber sum");
  }
  SUBCASE("count mismatch") {
    f.source.genus = 1;
    CHECK(validate_covering(f).clause == "Riemann-Hurwitz");
  }
  SUBCASE("throwing wrapper") {
    f.degree = -1;
    CHECK_THROWS_AS(require_valid(f), validation_error);
  }
}

TEST_CASE("identity covering lists every point and is a two-sided unit") {
  CoveringMap f = split_double_cover();
  CHECK(validate_covering(identity_covering(f.source)).ok);
  CHECK(compose(identity_covering(f.source), f) == f);
  CHECK(compose(f, identity_covering(f.target)) == f);
}

TEST_CASE("saturation completes fibers with fresh unramified points") {
  CoveringMap f = torus_cover_partial();
  CHECK(validate_covering(f).ok);
  CoveringMap sat = saturate(f, {"z2"});
  CHECK(validate_covering(sat).ok);
  CHECK(sat.point_map.at("z2#1") == FiberEntry{"z2", 1});
  CHECK(sat.point_map.at("z2#2") == FiberEntry{"z2", 1});
  CHECK(sat.point_map.at("a1") == FiberEntry{"z1", 1});
  std::vector<std::string> pre = reduced_preimage(sat, {"z2"});
  std::vector<std::string> expect = {"z2#1", "z2#2"};
  CHECK(pre == expect);

  SUBCASE("existing labels are skipped") {
    f.source.points.push_back("z2#1");
    CoveringMap sat2 = saturate(f, {"z2"});
    CHECK(sat2.point_map.count("z2#1") == 0);
    CHECK(sat2.point_map.at("z2#2") == FiberEntry{"z2", 1});
    CHECK(sat2.point_map.at("z2#3") == FiberEntry{"z2", 1});
  }
  SUBCASE("overfull fibers are rejected") {
    f.point_map["a3"] = {"z1", 1};
    f.source.points.push_back("a3");
    CHECK_THROWS_AS(saturate(f, {"z1"}), validation_error);
  }
  SUBCASE("unknown target point") {
    CHECK_THROWS_AS(saturate(f, {"zz"}), precondition_error);
  }
}

TEST_CASE("composition multiplies degrees and multiplicities") {
  // Tower of double covers of tori, unramified, all fibers listed.
  MarkedCurve c = make_curve(1, {"z"});
  MarkedCurve b = make_curve(1, {"y1", "y2"});
  MarkedCurve a = make_curve(1, {"x1", "x2", "x3", "x4"});
  CoveringMap f;  // b -> c
  f.source = b;
  f.target = c;
  f.degree = 2;
  f.point_map["y1"] = {"z", 1};
  f.point_map["y2"] = {"z", 1};
  CoveringMap g;  // a -> b
  g.source = a;
  g.target = b;
  g.degree = 2;
  g.point_map["x1"] = {"y1", 1};
  g.point_map["x2"] = {"y1", 1};
  g.point_map["x3"] = {"y2", 1};
  g.point_map["x4"] = {"y2", 1};
  require_valid(f);
  require_valid(g);

  CoveringMap gf = compose(g, f);
  CHECK(validate_covering(gf).ok);
  CHECK(gf.degree == 4);
  CHECK(gf.source == a);
  CHECK(gf.target == c);
  for (const char* x : {"x1", "x2", "x3", "x4"}) CHECK(gf.point_map.at(x) == FiberEntry{"z", 1});

  SUBCASE("multiplicities multiply along the tower") {
    CoveringMap g2;  // genus 2 double cover of b, ramified over y1 and y2
    g2.source = make_curve(2, {"w1", "w2"});
    g2.target = b;
    g2.degree = 2;
    g2.point_map["w1"] = {"y1", 2};
    g2.point_map["w2"] = {"y2", 2};
    require_valid(g2);
    CoveringMap comp = compose(g2, f);
    CHECK(comp.point_map.at("w1") == FiberEntry{"z", 2});
    CHECK(validate_covering(comp).ok);
  }
  SUBCASE("middle curves must match") {
    CHECK_THROWS_AS(compose(f, f), precondition_error);
  }
}

TEST_CASE("composition refuses ramification over unlisted points") {
  // f lists only the fiber over z; the target point y3 of g stays unlisted.
  MarkedCurve c = make_curve(1, {"z"});
  MarkedCurve b = make_curve(1, {"y1", "y2", "y3"});
  CoveringMap f;
  f.source = b;
  f.target = c;
  f.degree = 2;
  f.point_map["y1"] = {"z", 1};
  f.point_map["y2"] = {"z", 1};
  require_valid(f);

  CoveringMap g;
  g.source = make_curve(2, {"x3", "x5"});
  g.target = b;
  g.degree = 2;
  g.point_map["x3"] = {"y2", 2};
  g.point_map["x5"] = {"y3", 2};
  require_valid(g);

  CHECK_THROWS_AS(compose(g, f), precondition_error);
}

TEST_CASE("preimages, branch data and fiber profiles") {
  CoveringMap f = split_double_cover();

  std::vector<std::string> pre = reduced_preimage(f, {"z3", "z1"});
  std::vector<std::string> expect = {"p1", "r1", "r2"};
  CHECK(pre == expect);

  std::vector<std::string> branch = delta_locus(f, {});
  std::vector<std::string> expect_branch = {"z1", "z2"};
  CHECK(branch == expect_branch);
  std::vector<std::string> with_r1 = delta_locus(f, {"r1"});
  std::vector<std::string> expect_all = {"z1", "z2", "z3"};
  CHECK(with_r1 == expect_all);
  f.source.points.push_back("r3");
  CHECK_THROWS_AS(delta_locus(f, {"r3"}), precondition_error);

  Divisor ram = ramification_divisor(f);
  CHECK(ram.coeffs.at("p1") == 1);
  CHECK(ram.coeffs.at("p2") == 1);
  CHECK(ram.total_degree() == 2);

  CHECK(f.multiplicity_at("p1") == 2);
  CHECK(f.multiplicity_at("r3") == 1);  // unlisted points are unramified

  CHECK(is_galois_profile(f));  // each fiber has constant multiplicity
  CoveringMap mixed;
  mixed.target = make_curve(1, {"z1", "z2"});
  mixed.source = make_curve(2, {"a", "b", "c", "d"});
  mixed.degree = 3;
  mixed.point_map["a"] = {"z1", 2};
  mixed.point_map["b"] = {"z1", 1};
  mixed.point_map["c"] = {"z2", 2};
  mixed.point_map["d"] = {"z2", 1};
  require_valid(mixed);
  CHECK(!is_galois_profile(mixed));

  CoveringMap partial = torus_cover_partial();
  CHECK_THROWS_AS(reduced_preimage(partial, {"z2"}), precondition_error);
}
