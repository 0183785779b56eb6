#include <doctest.h>

#include <set>

#include "tutte/constellation.hpp"
#include "tutte/subconstellation.hpp"

using namespace tutte;

namespace {

Mask m(std::initializer_list<int> elems) { return mask_of(std::vector<int>(elems)); }

std::shared_ptr<const FlatLattice> lat_of(const char* name) {
  return std::make_shared<FlatLattice>(catalog_matroid(name));
}

}  // namespace

TEST_CASE("modular cut validation") {
  auto lat = lat_of("U2,4");
  CHECK_NOTHROW(validate_modular_cut(*lat, {lat->matroid().ground()}));
  CHECK_NOTHROW(validate_modular_cut(*lat, {m({2}), lat->matroid().ground()}));  // principal
  CHECK_THROWS_WITH_AS(validate_modular_cut(*lat, {m({2})}), doctest::Contains("upward"),
                       TutteError);
  CHECK_THROWS_WITH_AS(validate_modular_cut(*lat, {m({0, 1})}), doctest::Contains("not a flat"),
                       TutteError);
  // Two hyperplanes of U2,4 form a modular pair, so their meet is forced.
  CHECK_THROWS_WITH_AS(
      validate_modular_cut(*lat, {m({2}), m({3}), lat->matroid().ground()}),
      doctest::Contains("modular pair"), TutteError);
  // Principal cuts always validate.
  for (const char* name : {"C5", "MK4", "F7"}) {
    auto l = lat_of(name);
    for (int id = 0; id < l->size(); ++id) {
      std::vector<Mask> flats;
      for (int g = 0; g < l->size(); ++g)
        if (l->leq(id, g)) flats.push_back(l->flat_mask(g));
      CHECK_NOTHROW(validate_modular_cut(*l, flats));
    }
  }
}

TEST_CASE("complete_linear_subclass") {
  auto u23 = lat_of("U2,3");
  ModularCut c = complete_linear_subclass(*u23, {});
  CHECK(c.flat_ids == std::vector<int>{u23->top()});

  ModularCut c2 = complete_linear_subclass(*u23, {m({2})});
  std::set<Mask> got;
  for (int id : c2.flat_ids) got.insert(u23->flat_mask(id));
  CHECK(got == std::set<Mask>{m({2}), m({0, 1, 2})});

  // In U3,4: {23, 14} (1-based) = {{1,2},{0,3}} completes to itself plus E.
  auto u34 = lat_of("U3,4");
  ModularCut c3 = complete_linear_subclass(*u34, {m({1, 2}), m({0, 3})});
  std::set<Mask> got3;
  for (int id : c3.flat_ids) got3.insert(u34->flat_mask(id));
  CHECK(got3 == std::set<Mask>{m({1, 2}), m({0, 3}), m({0, 1, 2, 3})});

  // Not a linear subclass: two lines of F7 through a common point force the
  // third.
  auto f7 = lat_of("F7");
  CHECK_THROWS_WITH_AS(complete_linear_subclass(*f7, {m({0, 1, 6}), m({0, 2, 4})}),
                       doctest::Contains("force"), TutteError);
}

TEST_CASE("linear subclass bijection on all modular cuts") {
  // complete_linear_subclass(cut intersect hyperplanes) reproduces the cut.
  for (const char* name : {"U2,3", "U2,4", "U3,4", "C5", "MK4-"}) {
    auto lat = lat_of(name);
    for (const ModularCut& cut : all_modular_cuts(*lat)) {
      if ((int)cut.flat_ids.size() == lat->size()) continue;  // whole-lattice cut
      std::vector<Mask> hyps;
      for (int id : cut.flat_ids)
        if (lat->corank_of(id) == 1) hyps.push_back(lat->flat_mask(id));
      ModularCut back = complete_linear_subclass(*lat, hyps);
      CHECK(back.flat_ids == cut.flat_ids);
    }
  }
}

TEST_CASE("extend_by_cut matches the catalog extensions") {
  auto u23 = lat_of("U2,3");
  Matroid u24 = extend_by_cut(*u23, trivial_cut(*u23));
  CHECK(matroid_isomorphism(u24, catalog_matroid("U2,4")).has_value());

  Matroid par = extend_by_cut(*u23, principal_cut(*u23, m({2})));
  CHECK(matroid_isomorphism(par, catalog_matroid("U~2,3")).has_value());

  auto u34 = lat_of("U3,4");
  ModularCut k4cut = validate_modular_cut(*u34, {m({1, 2}), m({0, 3}), m({0, 1, 2, 3})});
  Matroid k4m = extend_by_cut(*u34, k4cut);
  CHECK(matroid_isomorphism(k4m, catalog_matroid("MK4-")).has_value());

  CHECK_THROWS_AS(extend_by_cut(*u23, ModularCut{{}, std::vector<char>(u23->size(), 0)}),
                  TutteError);
}

TEST_CASE("cut_of_extension inverts extend_by_cut") {
  ExtensionCut ec = cut_of_extension(catalog_matroid("U2,4"), 3);
  CHECK(ec.cut.flat_ids == std::vector<int>{ec.lattice->top()});

  auto u23 = lat_of("U2,3");
  ModularCut pc = principal_cut(*u23, m({2}));
  Matroid ext = extend_by_cut(*u23, pc);
  ExtensionCut back = cut_of_extension(ext, 3);
  std::set<Mask> got, want;
  for (int id : back.cut.flat_ids) got.insert(back.lattice->flat_mask(id));
  for (int id : pc.flat_ids) want.insert(u23->flat_mask(id));
  CHECK(got == want);

  // cut_of_extension(F7, 6): the cut on F7\6 consists of {0,1},{2,3},{4,5},E,
  // and F7\6 is MK4 with those flats as its three matchings.
  ExtensionCut fano = cut_of_extension(catalog_matroid("F7"), 6);
  std::set<Mask> cutf;
  for (int id : fano.cut.flat_ids) cutf.insert(fano.lattice->flat_mask(id));
  CHECK(cutf == std::set<Mask>{m({0, 1}), m({2, 3}), m({4, 5}), m({0, 1, 2, 3, 4, 5})});
  CHECK(lattice_key(fano.lattice->matroid()) == lattice_key(catalog_matroid("MK4")));

  CHECK_THROWS_WITH_AS(cut_of_extension(catalog_matroid("U3,3"), 0), doctest::Contains("coloop"),
                       TutteError);
}

TEST_CASE("tutte graphs") {
  Constellation u24(lat_of("U2,4"), trivial_cut(*lat_of("U2,4")));
  TutteGraph g = tutte_graph(u24);
  CHECK(g.vertices.size() == 4);
  CHECK(g.edges.size() == 6);  // complete graph on 4 vertices
  CHECK(g.connected);

  Constellation f7(lat_of("F7"), trivial_cut(*lat_of("F7")));
  TutteGraph gf = tutte_graph(f7);
  CHECK(gf.vertices.size() == 7);
  CHECK(gf.edges.size() == 21);
  CHECK(gf.connected);

  // (U3,4, trivial): octahedron. Disjoint pairs meet in the decomposable
  // bottom, adjacent pairs share an atom.
  Constellation u34(lat_of("U3,4"), trivial_cut(*lat_of("U3,4")));
  TutteGraph go = tutte_graph(u34);
  CHECK(go.vertices.size() == 6);
  CHECK(go.edges.size() == 12);
  CHECK(go.connected);
  for (auto& e : go.edges)
    CHECK(popcount(u34.lattice().flat_mask(e[0]) & u34.lattice().flat_mask(e[1])) == 1);
}

TEST_CASE("find_tutte_path") {
  auto lat = lat_of("U2,4");
  Constellation tau(lat, trivial_cut(*lat));
  auto path = find_tutte_path(tau, 0, m({0}), m({1}));
  CHECK(path.size() == 2);

  auto lat34 = lat_of("U3,4");
  Constellation tau34(lat34, trivial_cut(*lat34));
  auto p2 = find_tutte_path(tau34, 0, m({0, 1}), m({2, 3}));
  CHECK(p2.size() == 3);  // opposite octahedron vertices
  validate_tutte_path(tau34, p2, false, true, lat34->bottom());

  Constellation cut34(lat34, principal_cut(*lat34, m({0, 1})));
  CHECK_THROWS_WITH_AS(find_tutte_path(cut34, 0, m({0, 1}), m({2, 3})),
                       doctest::Contains("endpoint in cut"), TutteError);
}

TEST_CASE("classify_elementary") {
  auto u23 = lat_of("U2,3");
  Constellation t23(u23, trivial_cut(*u23));
  std::vector<int> p3{u23->id_of(m({0})), u23->id_of(m({1})), u23->id_of(m({2})),
                      u23->id_of(m({0}))};
  auto c3 = classify_elementary(t23, p3);
  REQUIRE(c3.has_value());
  CHECK(c3->kind == 2);
  CHECK(c3->type == 3);
  CHECK(c3->extended_type == "U2,4");

  // Type 2: (1,2,1) in (U2,3, {3, E}).
  Constellation t2(u23, principal_cut(*u23, m({2})));
  std::vector<int> p2{u23->id_of(m({0})), u23->id_of(m({1})), u23->id_of(m({0}))};
  auto c2 = classify_elementary(t2, p2);
  REQUIRE(c2.has_value());
  CHECK(c2->kind == 1);
  CHECK(c2->type == 2);
  CHECK(c2->extended_type == "U~2,3");

  // Type 1: same path with the trivial cut.
  auto c1 = classify_elementary(t23, p2);
  REQUIRE(c1.has_value());
  CHECK(c1->type == 1);
  CHECK(c1->extended_type == "U2,4");

  // Kind 3 / type 7: (12,13,34,24,12) in (U3,4, {23,14,E}).
  auto u34 = lat_of("U3,4");
  Constellation t7(u34, validate_modular_cut(*u34, {m({1, 2}), m({0, 3}), m({0, 1, 2, 3})}));
  std::vector<int> p7{u34->id_of(m({0, 1})), u34->id_of(m({0, 2})), u34->id_of(m({2, 3})),
                      u34->id_of(m({1, 3})), u34->id_of(m({0, 1}))};
  auto c7 = classify_elementary(t7, p7);
  REQUIRE(c7.has_value());
  CHECK(c7->kind == 3);
  CHECK(c7->type == 7);
  CHECK(c7->extended_type == "MK4-");

  // Types 4 and 5 on (U3,4, {E}) and (U3,4, {14,E}).
  Constellation t4(u34, trivial_cut(*u34));
  std::vector<int> p4{u34->id_of(m({0, 1})), u34->id_of(m({0, 2})), u34->id_of(m({1, 2})),
                      u34->id_of(m({0, 1}))};
  auto c4 = classify_elementary(t4, p4);
  REQUIRE(c4.has_value());
  CHECK(c4->type == 4);
  CHECK(c4->extended_type == "U3,5");
  Constellation t5(u34, principal_cut(*u34, m({0, 3})));
  auto c5r = classify_elementary(t5, p4);
  REQUIRE(c5r.has_value());
  CHECK(c5r->type == 5);
  CHECK(c5r->extended_type == "C5");

  // Type 6 on (U3,4, principal at atom 4).
  Constellation t6(u34, principal_cut(*u34, m({3})));
  auto c6 = classify_elementary(t6, p4);
  REQUIRE(c6.has_value());
  CHECK(c6->type == 6);
  CHECK(c6->extended_type == "U~3,4");

  // Type 8: (126,135,234,126) in (MK4, {14,25,36,E}).
  auto k4 = lat_of("MK4");
  Constellation t8(k4, validate_modular_cut(
                           *k4, {m({0, 3}), m({1, 4}), m({2, 5}), m({0, 1, 2, 3, 4, 5})}));
  std::vector<int> p8{k4->id_of(m({0, 1, 5})), k4->id_of(m({0, 2, 4})), k4->id_of(m({1, 2, 3})),
                      k4->id_of(m({0, 1, 5}))};
  auto c8 = classify_elementary(t8, p8);
  REQUIRE(c8.has_value());
  CHECK(c8->kind == 2);
  CHECK(c8->type == 8);
  CHECK(c8->extended_type == "F7");

  // Type 9 / kind 4: (1245,126,1346,456,1245) in (MK23, 4 triangles + E).
  auto k23 = lat_of("MK23");
  Constellation t9(k23,
                   validate_modular_cut(*k23, {m({0, 1, 2}), m({0, 4, 5}), m({1, 3, 5}),
                                               m({2, 3, 4}), m({0, 1, 2, 3, 4, 5})}));
  std::vector<int> p9{k23->id_of(m({0, 1, 3, 4})), k23->id_of(m({0, 1, 5})),
                      k23->id_of(m({0, 2, 3, 5})), k23->id_of(m({3, 4, 5})),
                      k23->id_of(m({0, 1, 3, 4}))};
  auto c9 = classify_elementary(t9, p9);
  REQUIRE(c9.has_value());
  CHECK(c9->kind == 4);
  CHECK(c9->type == 9);
  CHECK(c9->extended_type == "F7*");

  // Errors: not closed / in cut.
  CHECK_THROWS_WITH_AS(classify_elementary(t23, {u23->id_of(m({0})), u23->id_of(m({1}))}),
                       doctest::Contains("not closed"), TutteError);
  std::vector<int> incut{u23->id_of(m({2})), u23->id_of(m({0})), u23->id_of(m({2}))};
  CHECK_THROWS_WITH_AS(classify_elementary(t2, incut), doctest::Contains("cut"), TutteError);

  // A classified path is in particular a closed Tutte path off the cut.
  CHECK_NOTHROW(validate_tutte_path(t8, p8, true, true));
}

TEST_CASE("subconstellation classes are identified by canonical keys") {
  std::set<std::string> keys;
  for (SubClass c : {SubClass::C0, SubClass::C1, SubClass::C2a, SubClass::C2b, SubClass::C2c,
                     SubClass::C2d, SubClass::C3a, SubClass::C3b, SubClass::C3c, SubClass::C3d})
    keys.insert(subclass_template(c).key);
  CHECK(keys.size() == 10);

  // In (U2,3, {E}): three class-0 and three class-1 subconstellations and the
  // full class-2a one.
  auto u23 = lat_of("U2,3");
  Constellation tau(u23, trivial_cut(*u23));
  int c0 = 0, c1 = 0, c2a = 0;
  for (const Subconstellation& s : subconstellations(tau)) {
    auto it = subclass_by_key().find(s.key);
    if (it == subclass_by_key().end()) continue;
    if (it->second == SubClass::C0) ++c0;
    if (it->second == SubClass::C1) ++c1;
    if (it->second == SubClass::C2a) ++c2a;
  }
  CHECK(c0 == 3);
  CHECK(c1 == 3);
  CHECK(c2a == 1);
}

TEST_CASE("marks must be decomposable corank-2 flats off the cut") {
  CHECK_NOTHROW(Constellation::make(catalog_matroid("U3,3"), {m({0, 1, 2})}, {m({0})}));
  CHECK_THROWS_AS(Constellation::make(catalog_matroid("U3,3"), {m({0, 1, 2})}, {m({0, 1})}),
                  TutteError);  // corank 1, not 2
  CHECK_THROWS_AS(Constellation::make(catalog_matroid("U2,4"), {m({0, 1, 2, 3})}, {Mask{0}}),
                  TutteError);  // bottom of U2,4 is indecomposable
}

TEST_CASE("classification inside a larger ambient constellation") {
  // A triangle of lines through a Fano point is a type-3 path: the witness
  // subconstellation is the contraction at the point.
  auto f7 = lat_of("F7");
  Constellation tau(f7, trivial_cut(*f7));
  std::vector<int> lines;
  for (int h : f7->hyperplanes_above(f7->id_of(m({0})))) lines.push_back(h);
  REQUIRE(lines.size() == 3);
  std::vector<int> path{lines[0], lines[1], lines[2], lines[0]};
  auto cls = classify_elementary(tau, path);
  REQUIRE(cls.has_value());
  CHECK(cls->kind == 2);
  CHECK(cls->type == 3);

  // A 3-cycle of octahedron vertices around an atom of U3,4 with the
  // type-8-shaped cut of MK4 taken from the Fano extension.
  ExtensionCut ec = cut_of_extension(catalog_matroid("F7"), 6);
  Constellation mk4(ec.lattice, ec.cut);
  const FlatLattice& lat = *ec.lattice;
  // Path over the three triangle hyperplanes of MK4 (all off the cut).
  std::vector<int> tri;
  for (int h : lat.hyperplanes())
    if (!mk4.in_cut(h) && popcount(lat.flat_mask(h)) == 3) tri.push_back(h);
  REQUIRE(tri.size() == 4);
  // Pick three triangles pairwise meeting in corank-2 flats.
  std::vector<int> p8{tri[0], tri[1], tri[2], tri[0]};
  auto c8 = classify_elementary(mk4, p8);
  REQUIRE(c8.has_value());
  CHECK(c8->type == 8);
  CHECK(c8->extended_type == "F7");
}
