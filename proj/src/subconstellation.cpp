#include "tutte/subconstellation.hpp"

#include <algorithm>

namespace tutte {

std::string subconstellation_key(const FlatLattice& lat, const std::vector<int>& flat_ids,
                                 const std::vector<int>& cut_ids, const std::vector<int>& mark_ids) {
  std::vector<int> sub_atoms;
  std::vector<Mask> enc = sublattice_atom_encoding(lat, flat_ids, &sub_atoms);
  std::vector<int> ids = flat_ids;
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return lat.rank_of(a) != lat.rank_of(b) ? lat.rank_of(a) < lat.rank_of(b)
                                            : lat.flat_mask(a) < lat.flat_mask(b);
  });
  auto encode_subset = [&](const std::vector<int>& subset) {
    std::vector<Mask> out;
    for (int id : subset) {
      auto it = std::find(ids.begin(), ids.end(), id);
      out.push_back(enc[it - ids.begin()]);
    }
    return out;
  };
  return lattice_canonical_key(enc, encode_subset(cut_ids), encode_subset(mark_ids));
}

Subconstellation induce(const Constellation& tau, const UpperSublattice& sub) {
  const FlatLattice& lat = tau.lattice();
  Subconstellation s;
  s.flat_ids = sub.flat_ids;
  s.witness = sub.witness;
  // Bottom = unique minimal flat (ids are sorted consistently with rank).
  s.bottom = *std::min_element(s.flat_ids.begin(), s.flat_ids.end(), [&](int a, int b) {
    return lat.rank_of(a) < lat.rank_of(b);
  });
  int sub_rank = lat.rank_of(lat.top()) - lat.rank_of(s.bottom);
  for (int id : s.flat_ids)
    if (tau.in_cut(id)) s.cut_ids.push_back(id);
  // Coatom counts inside the sublattice, for the corank-2 decomposability
  // criterion (a corank-2 flat is indecomposable iff it lies in >= 3
  // hyperplanes).
  for (int id : s.flat_ids) {
    int corank_in_sub = sub_rank - (lat.rank_of(id) - lat.rank_of(s.bottom));
    if (corank_in_sub != 2) continue;
    int coatoms_above = 0;
    for (int other : s.flat_ids)
      if (sub_rank - (lat.rank_of(other) - lat.rank_of(s.bottom)) == 1 && lat.leq(id, other))
        ++coatoms_above;
    bool dec_in_sub = coatoms_above < 3;
    bool off_cut = !tau.in_cut(id);
    if (dec_in_sub && off_cut && (tau.marked(id) || lat.indecomposable(id)))
      s.mark_ids.push_back(id);
  }
  s.key = subconstellation_key(lat, s.flat_ids, s.cut_ids, s.mark_ids);
  return s;
}

std::vector<Subconstellation> subconstellations(const Constellation& tau) {
  std::vector<Subconstellation> out;
  for (const UpperSublattice& sub : all_upper_sublattices(tau.lattice()))
    out.push_back(induce(tau, sub));
  return out;
}

Constellation MarkedConstellation::to_constellation() const {
  return Constellation::make(m, cut_flats, mark_flats);
}

MarkedConstellation make_marked(Matroid m, std::vector<Mask> cut_flats,
                                std::vector<Mask> mark_flats) {
  std::sort(cut_flats.begin(), cut_flats.end());
  std::sort(mark_flats.begin(), mark_flats.end());
  MarkedConstellation mc{std::move(m), std::move(cut_flats), std::move(mark_flats), "", ""};
  Constellation tau = mc.to_constellation();  // validates cut and marks
  const FlatLattice& lat = tau.lattice();
  std::vector<int> all(lat.size());
  for (int i = 0; i < lat.size(); ++i) all[i] = i;
  std::vector<int> cut_ids, mark_ids;
  for (Mask f : mc.cut_flats) cut_ids.push_back(lat.id_of(f));
  for (Mask f : mc.mark_flats) mark_ids.push_back(lat.id_of(f));
  mc.key = subconstellation_key(lat, all, cut_ids, mark_ids);
  std::string nm = mc.m.name().empty() ? "?" : mc.m.name();
  nm += " | cut {";
  for (std::size_t i = 0; i < mc.cut_flats.size(); ++i)
    nm += (i ? "; " : "") + mask_to_string(mc.cut_flats[i]);
  nm += "}";
  if (!mc.mark_flats.empty()) {
    nm += " | marks {";
    for (std::size_t i = 0; i < mc.mark_flats.size(); ++i)
      nm += (i ? "; " : "") + mask_to_string(mc.mark_flats[i]);
    nm += "}";
  }
  mc.name = nm;
  return mc;
}

const char* subclass_name(SubClass c) {
  switch (c) {
    case SubClass::C0: return "0";
    case SubClass::C1: return "1";
    case SubClass::C2a: return "2a";
    case SubClass::C2b: return "2b";
    case SubClass::C2c: return "2c";
    case SubClass::C2d: return "2d";
    case SubClass::C3a: return "3a";
    case SubClass::C3b: return "3b";
    case SubClass::C3c: return "3c";
    case SubClass::C3d: return "3d";
  }
  return "?";
}

namespace {

MarkedConstellation build_template(SubClass c) {
  auto ground = [](int n) { return (Mask{1} << n) - 1; };
  switch (c) {
    case SubClass::C0:
      return make_marked(catalog_matroid("U1,1"), {ground(1)}, {});
    case SubClass::C1:
      return make_marked(catalog_matroid("U2,2"), {ground(2)}, {0});
    case SubClass::C2a:
      return make_marked(catalog_matroid("U2,3"), {ground(3)}, {});
    case SubClass::C2b:
      return make_marked(catalog_matroid("U3,3"), {ground(3)},
                         {mask_of({0}), mask_of({1}), mask_of({2})});
    case SubClass::C2c:
      return make_marked(catalog_matroid("U3,4"), {mask_of({0, 1}), mask_of({2, 3}), ground(4)}, {});
    case SubClass::C2d:
      return make_marked(catalog_matroid("MK23"),
                         {mask_of({0, 1, 2}), mask_of({0, 4, 5}), mask_of({1, 3, 5}),
                          mask_of({2, 3, 4}), ground(6)},
                         {mask_of({0, 3}), mask_of({1, 4}), mask_of({2, 5})});
    case SubClass::C3a:
      return make_marked(catalog_matroid("U2,4"), {ground(4)}, {});
    case SubClass::C3b:
      return make_marked(catalog_matroid("U2,3+U1,1"), {ground(4)},
                         {mask_of({0}), mask_of({1}), mask_of({2})});
    case SubClass::C3c:
      return make_marked(catalog_matroid("U3,4"), {ground(4)}, {});
    case SubClass::C3d: {
      std::vector<Mask> marks;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) marks.push_back(mask_of({i, j}));
      return make_marked(catalog_matroid("U4,4"), {ground(4)}, marks);
    }
  }
  throw TutteError("unknown subclass");
}

}  // namespace

const MarkedConstellation& subclass_template(SubClass c) {
  static const std::map<SubClass, MarkedConstellation> table = [] {
    std::map<SubClass, MarkedConstellation> t;
    for (SubClass c : {SubClass::C0, SubClass::C1, SubClass::C2a, SubClass::C2b, SubClass::C2c,
                       SubClass::C2d, SubClass::C3a, SubClass::C3b, SubClass::C3c, SubClass::C3d})
      t.emplace(c, build_template(c));
    return t;
  }();
  return table.at(c);
}

const std::map<std::string, SubClass>& subclass_by_key() {
  static const std::map<std::string, SubClass> table = [] {
    std::map<std::string, SubClass> t;
    for (SubClass c : {SubClass::C0, SubClass::C1, SubClass::C2a, SubClass::C2b, SubClass::C2c,
                       SubClass::C2d, SubClass::C3a, SubClass::C3b, SubClass::C3c, SubClass::C3d})
      t.emplace(subclass_template(c).key, c);
    return t;
  }();
  return table;
}

}  // namespace tutte
