#include "doctest.h"
#include "pcalc/functors.hpp"

using namespace pcalc;

namespace {

// Degree 3 cover of the line, totally ramified over both marked points.
CoveringMap triple_cover() {
  CoveringMap f;
  f.target = make_curve(0, {"z", "w"});
  f.source = make_curve(0, {"y1", "u1"});
  f.degree = 3;
  f.point_map["y1"] = {"z", 3};
  f.point_map["u1"] = {"w", 3};
  require_valid(f);
  return f;
}

// Degree 2 cover of the line, totally ramified over z1 and z2.
CoveringMap double_cover() {
  CoveringMap f;
  f.target = make_curve(0, {"z1", "z2"});
  f.source = make_curve(0, {"p1", "p2"});
  f.degree = 2;
  f.point_map["p1"] = {"z1", 2};
  f.point_map["p2"] = {"z2", 2};
  require_valid(f);
  return f;
}

}  // namespace

TEST_CASE("pullback of a line twists by the weight floors") {
  CoveringMap f = triple_cover();
  ParaLine l = make_para_line(f.target, 1, {{"z", rat(2, 3)}, {"w", rat(1, 2)}});
  ParaLine pb = pullback_line(f, l);
  // deg = 3*1 + floor(3*2/3) + floor(3*1/2) = 3 + 2 + 1.
  CHECK(pb.degree == 6);
  CHECK(pb.weight_at("y1") == 0);
  CHECK(pb.weight_at("u1") == rat(1, 2));
  CHECK(pb.par_deg() == Rat(3) * l.par_deg());
  CHECK(pb.curve == f.source);
}

TEST_CASE("pullback routes agree and check their inputs") {
  CoveringMap f = triple_cover();
  SplitParabolicBundle e = make_split_bundle({
      make_para_line(f.target, 1, {{"z", rat(2, 3)}, {"w", rat(1, 2)}}),
      make_para_line(f.target, 0, {{"w", rat(1, 4)}}),
  });
  CHECK(char_of(pullback_split(f, e)) == pullback_char(f, char_of(e)));

  SUBCASE("data must live on the target curve") {
    ParabolicChar foreign = make_char(f.source, 1, 0, {});
    CHECK_THROWS_AS(pullback_char(f, foreign), precondition_error);
  }
  SUBCASE("weighted points need complete fibers") {
    CoveringMap partial;
    partial.target = make_curve(1, {"z1", "z2"});
    partial.source = make_curve(1, {"a1", "a2"});
    partial.degree = 2;
    partial.point_map["a1"] = {"z1", 1};
    partial.point_map["a2"] = {"z1", 1};
    require_valid(partial);
    ParaLine weighted = make_para_line(partial.target, 0, {{"z2", rat(1, 2)}});
    CHECK_THROWS_AS(pullback_line(partial, weighted), precondition_error);
    // With no weight over the unlisted fiber the pullback goes through.
    ParaLine ok = make_para_line(partial.target, 2, {{"z1", rat(1, 3)}});
    CHECK(pullback_line(partial, ok).degree == 4);
  }
  SUBCASE("invalid coverings are rejected up front") {
    CoveringMap broken = f;
    broken.source.genus = 5;
    ParabolicChar c = char_of(e);
    CHECK_THROWS_AS(pullback_char(broken, c), validation_error);
  }
}

TEST_CASE("direct image of the trivial line along a double cover") {
  CoveringMap phi = double_cover();
  ParabolicChar triv = make_char(phi.source, 1, 0, {});
  DirectImageResult di = direct_image_char(phi, triv);

  CHECK(di.char_data.rank == 2);
  CHECK(di.char_data.degree == -1);
  std::vector<Rat> half = {rat(0), rat(1, 2)};
  CHECK(di.char_data.multiset_at("z1") == half);
  CHECK(di.char_data.multiset_at("z2") == half);
  CHECK(di.char_data.par_deg() == triv.par_deg());
  CHECK(di.char_data.curve == phi.target);

  REQUIRE(di.breakdown.count("z1") == 1);
  REQUIRE(di.breakdown.at("z1").size() == 1);
  const FiberContribution& fc = di.breakdown.at("z1").front();
  CHECK(fc.source_point == "p1");
  CHECK(fc.multiplicity == 2);
  CHECK(fc.produced_weights == half);
}

TEST_CASE("direct image preserves the par-degree with weights in play") {
  CoveringMap phi = double_cover();
  ParabolicChar c = make_char(phi.source, 1, 1, {{"p1", {rat(1, 3)}}});
  DirectImageResult di = direct_image_char(phi, c);
  CHECK(di.char_data.rank == 2);
  CHECK(di.char_data.par_deg() == c.par_deg());
  // (k + 1/3)/2 for k = 0, 1.
  std::vector<Rat> expect = {rat(1, 6), rat(2, 3)};
  CHECK(di.char_data.multiset_at("z1") == expect);

  SUBCASE("weighted points must have a listed image") {
    CoveringMap wide = phi;
    wide.source.points.push_back("stray");
    ParabolicChar bad = make_char(wide.source, 1, 0, {{"stray", {rat(1, 2)}}});
    CHECK_THROWS_AS(direct_image_char(wide, bad), precondition_error);
  }
}

TEST_CASE("direct image then pullback on a fiber-constant profile") {
  CoveringMap phi = double_cover();
  ParabolicChar triv = make_char(phi.source, 1, 0, {});
  ParabolicChar round = galois_pullback_of_direct_image(phi, triv);
  // Comes back as the trivial rank 2 datum: the half weights upstairs turn
  // into integer twists that cancel the degree drop.
  CHECK(round.rank == 2);
  CHECK(round.degree == 0);
  CHECK(round.weight_multisets.empty());
  CHECK(round.par_deg() == Rat(2) * triv.par_deg());

  SUBCASE("mixed fibers are refused") {
    CoveringMap mixed;
    mixed.target = make_curve(1, {"z1", "z2"});
    mixed.source = make_curve(2, {"a", "b", "c", "d"});
    mixed.degree = 3;
    mixed.point_map["a"] = {"z1", 2};
    mixed.point_map["b"] = {"z1", 1};
    mixed.point_map["c"] = {"z2", 2};
    mixed.point_map["d"] = {"z2", 1};
    require_valid(mixed);
    ParabolicChar c = make_char(mixed.source, 1, 0, {});
    CHECK_THROWS_AS(galois_pullback_of_direct_image(mixed, c), precondition_error);
  }
}

TEST_CASE("direct image composes along towers") {
  // Double cover of a double cover, all branch data over the line.
  CoveringMap outer = double_cover();
  CoveringMap inner;
  inner.target = outer.source;
  inner.source = make_curve(0, {"q1", "q2"});
  inner.degree = 2;
  inner.point_map["q1"] = {"p1", 2};
  inner.point_map["q2"] = {"p2", 2};
  require_valid(inner);

  ParabolicChar c = make_char(inner.source, 1, 0, {{"q1", {rat(1, 4)}}});
  ParabolicChar once = direct_image_char(compose(inner, outer), c).char_data;
  ParabolicChar twice = direct_image_char(outer, direct_image_char(inner, c).char_data).char_data;
  CHECK(once == twice);
  CHECK(once.rank == 4);
  CHECK(once.par_deg() == c.par_deg());
}
