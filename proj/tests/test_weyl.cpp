#include <catch2/catch_amalgamated.hpp>

#include "rootcone/weyl.hpp"

using namespace rootcone;

namespace {

RootSystem sector2() {
  RootSystem rs;
  rs.rank = 2;
  rs.roots = {{make_vec({1, 0}), make_covec({-2, 1}), "a1"},
              {make_vec({0, 1}), make_covec({1, -2}), "a2"}};
  return rs;
}

RootSystem orthogonal2() {
  RootSystem rs;
  rs.rank = 2;
  rs.roots = {{make_vec({1, 0}), make_covec({-2, 0}), "a1"},
              {make_vec({0, 1}), make_covec({0, -2}), "a2"}};
  return rs;
}

/// Valid system whose closed chamber is only the origin: the three mirror
/// functionals sum to zero.
RootSystem pinched() {
  RootSystem rs;
  rs.rank = 2;
  rs.roots = {{make_vec({-2, -1}), make_covec({1, 0}), "a1"},
              {make_vec({1, -1}), make_covec({-1, 1}), "a2"},
              {make_vec({1, 2}), make_covec({0, -1}), "a3"}};
  return rs;
}

}  // namespace

TEST_CASE("reflection matrices") {
  RootSystem co = builtin_system("co2222");
  IntMat s1 = reflection(co, 0);
  CHECK(s1 == make_mat({{-1, 0, 0, 0}, {2, 1, 0, 0}, {2, 0, 1, 0}, {2, 0, 0, 1}}));
  CHECK(s1.apply(make_vec({1, 1, 1, 1})) == make_vec({-1, 3, 3, 3}));
  CHECK(s1.det() == -1);

  RootSystem a2 = sector2();
  CHECK(reflection(a2, 0) == make_mat({{-1, 1}, {0, 1}}));
  CHECK(reflection(a2, 1) == make_mat({{1, 0}, {1, -1}}));
  CHECK_THROWS_AS(reflection(a2, 2), StructuralError);

  for (const char* name : {"co2222", "dynkin:G2", "affine:A1", "folded:D4:tri"}) {
    RootSystem rs = builtin_system(name);
    for (int i = 0; i < rs.size(); ++i) {
      IntMat s = reflection(rs, i);
      CHECK(s * s == IntMat::identity(rs.rank));
      CHECK(s.det() == -1);
    }
  }
}

TEST_CASE("words compose in application order") {
  RootSystem a2 = sector2();
  CHECK(word_to_element(a2, {}).mat == IntMat::identity(2));
  CHECK(word_to_element(a2, {0, 0}).mat == IntMat::identity(2));
  GroupElement rot = word_to_element(a2, {0, 1});
  // sigma_1 acts first: matrix is M2 * M1.
  CHECK(rot.mat == make_mat({{-1, 1}, {-1, 0}}));
  CHECK(word_to_element(a2, {0, 1, 0, 1, 0, 1}).mat == IntMat::identity(2));
  CHECK(rot.mat * rot.inv == IntMat::identity(2));
  CHECK_THROWS_AS(word_to_element(a2, {5}), StructuralError);
}

TEST_CASE("relation orders match the Coxeter matrix") {
  RelationReport r = verify_relations(sector2());
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].expected == 3);
  CHECK(r.pairs[0].observed == 3);
  CHECK(r.all_ok);

  r = verify_relations(orthogonal2());
  CHECK(r.pairs[0].expected == 2);
  CHECK(r.pairs[0].observed == 2);
  CHECK(r.all_ok);

  CHECK(verify_relations(builtin_system("dynkin:B2")).pairs[0].observed == 4);
  CHECK(verify_relations(builtin_system("dynkin:G2")).pairs[0].observed == 6);

  r = verify_relations(builtin_system("affine:A1"));
  CHECK(r.pairs[0].expected == CoxeterMatrix::infinite);
  CHECK(r.pairs[0].observed == 0);
  CHECK(r.all_ok);

  r = verify_relations(builtin_system("co2222"));
  CHECK(r.pairs.size() == 6);
  CHECK(r.all_ok);
  for (const auto& p : r.pairs) CHECK(p.expected == CoxeterMatrix::infinite);
}

TEST_CASE("fundamental chamber and witness") {
  RootSystem co = builtin_system("co2222");
  Cone ch = fundamental_chamber(co);
  CHECK(ch.dimension() == 4);
  CHECK(ch.rays().size() == 4);
  CHECK(ch.facets().size() == 4);
  ChamberStatus st = chamber_nonempty(co);
  REQUIRE(st.nonempty);
  CHECK(*st.witness == make_vec({1, 1, 1, 1}));
  // Roots sit behind their own mirror, outside the closed chamber.
  for (const Root& r : co.roots) CHECK(ch.contains(r.E) == Containment::Outside);

  ChamberStatus st2 = chamber_nonempty(sector2());
  REQUIRE(st2.nonempty);
  CHECK(*st2.witness == make_vec({-1, -1}));

  RootSystem pin = pinched();
  CHECK(validate(pin).valid);
  Cone pc = fundamental_chamber(pin);
  CHECK(pc.dimension() == 0);
  ChamberStatus st3 = chamber_nonempty(pin);
  CHECK_FALSE(st3.nonempty);
  CHECK_FALSE(st3.witness.has_value());
}

TEST_CASE("stratum indices") {
  RootSystem co = builtin_system("co2222");
  CHECK(stratum(co, make_vec({1, 1, 1, 1})).empty());
  CHECK(stratum(co, make_vec({0, 1, 1, 0})) == std::vector<int>{0, 3});
  CHECK(stratum(co, make_vec({0, 0, 0, 0})) == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(stratum(co, make_vec({-1, 1, 1, 1})), DomainError);
}

TEST_CASE("dominance descent on the orthant system") {
  RootSystem co = builtin_system("co2222");
  DominanceResult d = make_dominant(co, make_vec({-1, 3, 3, 3}));
  REQUIRE(d.decided);
  CHECK(d.representative == make_vec({1, 1, 1, 1}));
  CHECK(d.word == std::vector<int>{0});
  CHECK(d.steps == 1);
  // Replaying the word on the input reproduces the representative.
  CHECK(word_to_element(co, d.word).mat.apply(make_vec({-1, 3, 3, 3})) ==
        d.representative);

  // Already dominant: zero steps.
  d = make_dominant(co, make_vec({2, 0, 1, 7}));
  CHECK(d.decided);
  CHECK(d.steps == 0);
  CHECK(d.word.empty());

  // A longer descent, certified by a positive functional.
  Vec far = word_to_element(co, {0, 1, 2, 3, 0, 1}).mat.apply(make_vec({1, 2, 3, 4}));
  d = make_dominant(co, far, make_covec({1, 1, 1, 1}));
  REQUIRE(d.decided);
  CHECK(d.representative == make_vec({1, 2, 3, 4}));
  CHECK(d.steps == 6);

  // Pivot order does not change the representative.
  DominanceResult dr = make_dominant(co, far, std::nullopt, 10000,
                                     PivotRule::Randomized, 99);
  REQUIRE(dr.decided);
  CHECK(dr.representative == d.representative);

  CHECK_THROWS_AS(make_dominant(co, far, make_covec({1, 1, 1, -1})), DomainError);
}

TEST_CASE("dominance is undecided outside the tits cone") {
  RootSystem co = builtin_system("co2222");
  DominanceResult d = make_dominant(co, make_vec({-1, -1, -1, -1}), std::nullopt, 500);
  CHECK_FALSE(d.decided);
  CHECK(d.steps == 500);
  CHECK(d.word.size() == 500);
}

TEST_CASE("orbits with scaling dedup") {
  RootSystem a2 = sector2();
  OrbitResult o = orbit(a2, make_vec({-1, -1}), 6);
  CHECK(o.points.size() == 6);
  CHECK(o.closed);
  CHECK(o.new_per_level == std::vector<std::size_t>{2, 2, 1, 0, 0, 0});

  CHECK(orbit(a2, make_vec({-1, -1}), 0).points.size() == 1);

  RootSystem co = builtin_system("co2222");
  OrbitResult oc = orbit(co, make_vec({1, 1, 1, 1}), 2);
  CHECK(oc.points.size() == 17);
  CHECK(oc.new_per_level == std::vector<std::size_t>{4, 12});
  CHECK_FALSE(oc.closed);
  // Scaled input gives the identical canonical orbit.
  OrbitResult oc2 = orbit(co, make_vec({3, 3, 3, 3}), 2);
  CHECK(oc2.points == oc.points);

  OrbitResult oz = orbit(co, Vec::zero(4), 3);
  CHECK(oz.points.size() == 1);
  CHECK(oz.closed);
}

TEST_CASE("growth series") {
  CHECK(growth_series(builtin_system("co2222"), 5) ==
        std::vector<std::size_t>{4, 12, 36, 108, 324});
  CHECK(growth_series(sector2(), 5) == std::vector<std::size_t>{2, 2, 1, 0, 0});
  CHECK(growth_series(builtin_system("dynkin:A2"), 5) ==
        std::vector<std::size_t>{2, 2, 1, 0, 0});
  CHECK(growth_series(builtin_system("affine:A1"), 5) ==
        std::vector<std::size_t>{2, 2, 2, 2, 2});

  BallResult ball = group_ball(builtin_system("co2222"), 3);
  CHECK(ball.elements.size() == 53);
  CHECK(ball.elements[0].word.empty());
  CHECK(ball.elements[1].word == std::vector<int>{0});
  CHECK_FALSE(ball.closed);
  for (const WordElement& w : ball.elements)
    CHECK(w.mat * w.inv == IntMat::identity(4));

  BallResult small = group_ball(sector2(), 10);
  CHECK(small.elements.size() == 6);
  CHECK(small.closed);
}

TEST_CASE("ball respects the element budget") {
  CHECK_THROWS_AS(group_ball(builtin_system("co2222"), 4, 100), LimitError);
  CHECK_THROWS_AS(orbit(builtin_system("co2222"), make_vec({1, 1, 1, 1}), 4, 10),
                  LimitError);
}

TEST_CASE("strong fixing on chamber strata") {
  RootSystem a2 = sector2();
  Vec wall = make_vec({-2, -1});  // on the second mirror
  REQUIRE(stratum(a2, wall) == std::vector<int>{1});
  Cone ch = fundamental_chamber(a2);
  for (const WordElement& w : group_ball(a2, 4).elements) {
    Vec img = w.mat.apply(wall);
    if (ch.contains(img) != Containment::Outside) CHECK(img == wall);
  }

  RootSystem co = builtin_system("co2222");
  Vec edge = make_vec({0, 1, 1, 0});
  Cone orthant = fundamental_chamber(co);
  for (const WordElement& w : group_ball(co, 3).elements) {
    Vec img = w.mat.apply(edge);
    if (orthant.contains(img) != Containment::Outside) CHECK(img == edge);
  }
}

TEST_CASE("tiling audit") {
  RootSystem a2 = sector2();
  TilingReport rep = tile_check(a2, fundamental_chamber(a2), 4, 30, 1);
  CHECK(rep.translate_count == 6);
  CHECK(rep.overlaps.empty());
  CHECK(rep.base_in_chamber);
  REQUIRE(rep.coverage.size() == 30);
  for (const auto& c : rep.coverage) CHECK(c.covered);

  RootSystem co = builtin_system("co2222");
  TilingReport rc = tile_check(co, fundamental_chamber(co), 2, 20, 7);
  CHECK(rc.translate_count == 17);
  CHECK(rc.overlaps.empty());
  for (const auto& c : rc.coverage) CHECK(c.covered);

  // A base that is not inside the chamber gets flagged and overlaps freely.
  Cone quadrant = Cone::from_facets(2, {make_covec({1, 0}), make_covec({0, 1})});
  TilingReport rq = tile_check(a2, quadrant, 2, 0, 0);
  CHECK_FALSE(rq.base_in_chamber);
  CHECK_FALSE(rq.overlaps.empty());

  Cone thin = Cone::from_rays(2, {make_vec({-1, -1})});
  CHECK_THROWS_AS(tile_check(a2, thin, 2, 0, 0), DomainError);
}

TEST_CASE("parallel overlap scan matches serial") {
  RootSystem co = builtin_system("co2222");
  TilingReport serial = tile_check(co, fundamental_chamber(co), 3, 5, 3, 10000, 1);
  TilingReport par = tile_check(co, fundamental_chamber(co), 3, 5, 3, 10000, 4);
  CHECK(serial.translate_count == par.translate_count);
  CHECK(serial.overlaps.size() == par.overlaps.size());
  REQUIRE(serial.coverage.size() == par.coverage.size());
  for (std::size_t i = 0; i < serial.coverage.size(); ++i) {
    CHECK(serial.coverage[i].sample == par.coverage[i].sample);
    CHECK(serial.coverage[i].word == par.coverage[i].word);
  }
}

TEST_CASE("chamber intersection") {
  RootSystem co = builtin_system("co2222");
  Cone whole = Cone::full_space(4);
  CHECK(intersect_with_chamber(co, whole) == fundamental_chamber(co));

  Cone half = Cone::from_facets(4, {make_covec({-1, 0, 0, 0})});
  Cone slice = intersect_with_chamber(co, half);
  CHECK(slice.dimension() == 3);
}
