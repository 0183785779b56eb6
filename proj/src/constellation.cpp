#include "tutte/constellation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "tutte/subconstellation.hpp"

namespace tutte {

ModularCut cut_from_ids(const FlatLattice& lat, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  ModularCut cut;
  cut.flat_ids = std::move(ids);
  cut.member.assign(lat.size(), 0);
  for (int id : cut.flat_ids) cut.member[id] = 1;
  return cut;
}

ModularCut validate_modular_cut(const FlatLattice& lat, const std::vector<Mask>& flats) {
  std::vector<int> ids;
  for (Mask f : flats) {
    int id = lat.id_of(f);
    if (id < 0) throw TutteError("modular cut: " + mask_to_string(f) + " is not a flat");
    ids.push_back(id);
  }
  ModularCut cut = cut_from_ids(lat, std::move(ids));
  for (int id : cut.flat_ids)
    for (int other = 0; other < lat.size(); ++other)
      if (lat.leq(id, other) && !cut.member[other])
        throw TutteError("modular cut: not upward closed, " + mask_to_string(lat.flat_mask(id)) +
                         " is in the cut but " + mask_to_string(lat.flat_mask(other)) + " is not");
  for (int a : cut.flat_ids)
    for (int b : cut.flat_ids)
      if (a < b && lat.modular_pair(a, b) && !cut.member[lat.meet(a, b)])
        throw TutteError("modular cut: meet of modular pair " + mask_to_string(lat.flat_mask(a)) +
                         ", " + mask_to_string(lat.flat_mask(b)) + " is missing");
  return cut;
}

ModularCut trivial_cut(const FlatLattice& lat) { return cut_from_ids(lat, {lat.top()}); }

ModularCut principal_cut(const FlatLattice& lat, Mask f0) {
  int base = lat.id_of(lat.matroid().closure_mask(f0));
  std::vector<int> ids;
  for (int id = 0; id < lat.size(); ++id)
    if (lat.leq(base, id)) ids.push_back(id);
  return cut_from_ids(lat, std::move(ids));
}

ModularCut complete_linear_subclass(const FlatLattice& lat, const std::vector<Mask>& hyperplanes) {
  std::vector<char> in(lat.size(), 0);
  for (Mask h : hyperplanes) {
    int id = lat.id_of(h);
    if (id < 0 || lat.corank_of(id) != 1)
      throw TutteError("linear subclass: " + mask_to_string(h) + " is not a hyperplane");
    in[id] = 1;
  }
  // Linear subclass: two members through a common corank-2 flat drag in
  // every hyperplane through that flat.
  for (int h1 : lat.hyperplanes())
    for (int h2 : lat.hyperplanes()) {
      if (h1 >= h2 || !in[h1] || !in[h2]) continue;
      int l = lat.meet(h1, h2);
      if (lat.corank_of(l) != 2) continue;
      for (int h3 : lat.hyperplanes_above(l))
        if (!in[h3])
          throw TutteError("not a linear subclass: " + mask_to_string(lat.flat_mask(h1)) + " and " +
                           mask_to_string(lat.flat_mask(h2)) + " force " +
                           mask_to_string(lat.flat_mask(h3)));
    }
  // The corresponding cut consists of the flats all of whose hyperplanes lie
  // in the subclass.
  std::vector<int> ids;
  for (int id = 0; id < lat.size(); ++id) {
    bool all = true;
    for (int h : lat.hyperplanes_above(id))
      if (!in[h]) { all = false; break; }
    if (all) ids.push_back(id);
  }
  ModularCut cut = cut_from_ids(lat, std::move(ids));
  std::vector<Mask> back;
  for (int id : cut.flat_ids) back.push_back(lat.flat_mask(id));
  validate_modular_cut(lat, back);
  return cut;
}

std::vector<ModularCut> all_modular_cuts(const FlatLattice& lat) {
  // Flats in rank-descending order; a flat is forced into the cut when it is
  // the meet of a modular pair already chosen.
  std::vector<int> order(lat.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lat.rank_of(a) > lat.rank_of(b); });
  std::vector<ModularCut> out;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == order.size()) {
      if (!chosen.empty()) out.push_back(cut_from_ids(lat, chosen));
      return;
    }
    int f = order[idx];
    bool forced = false;
    for (std::size_t i = 0; i < chosen.size() && !forced; ++i)
      for (std::size_t j = i + 1; j < chosen.size() && !forced; ++j)
        if (lat.meet(chosen[i], chosen[j]) == f && lat.modular_pair(chosen[i], chosen[j]))
          forced = true;
    if (!forced) self(self, idx + 1);  // leave f out
    bool upward_ok = true;
    for (int g = 0; g < lat.size() && upward_ok; ++g)
      if (g != f && lat.leq(f, g)) {
        bool in = std::find(chosen.begin(), chosen.end(), g) != chosen.end();
        if (!in) upward_ok = false;
      }
    if (upward_ok) {
      chosen.push_back(f);
      self(self, idx + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Constellation::Constellation(std::shared_ptr<const FlatLattice> lat, ModularCut cut,
                             std::vector<int> marks)
    : lat_(std::move(lat)), cut_(std::move(cut)), marks_(std::move(marks)) {
  if (cut_.flat_ids.empty() || !cut_.member[lat_->top()])
    throw TutteError("constellation: cut must contain the ground set");
  std::sort(marks_.begin(), marks_.end());
  marked_.assign(lat_->size(), 0);
  for (int id : marks_) {
    if (lat_->corank_of(id) != 2)
      throw TutteError("mark " + mask_to_string(lat_->flat_mask(id)) + " is not a corank-2 flat");
    if (lat_->indecomposable(id))
      throw TutteError("mark " + mask_to_string(lat_->flat_mask(id)) + " is not decomposable");
    if (cut_.member[id])
      throw TutteError("mark " + mask_to_string(lat_->flat_mask(id)) + " lies in the cut");
    marked_[id] = 1;
  }
}

Constellation Constellation::make(Matroid m, std::vector<Mask> cut_flats,
                                  std::vector<Mask> mark_flats) {
  auto lat = std::make_shared<FlatLattice>(std::move(m));
  ModularCut cut = validate_modular_cut(*lat, cut_flats);
  std::vector<int> marks;
  for (Mask f : mark_flats) {
    int id = lat->id_of(f);
    if (id < 0) throw TutteError("mark " + mask_to_string(f) + " is not a flat");
    marks.push_back(id);
  }
  return Constellation(lat, std::move(cut), std::move(marks));
}

TutteGraph tutte_graph(const Constellation& tau) {
  const FlatLattice& lat = tau.lattice();
  TutteGraph g;
  for (int h : lat.hyperplanes())
    if (!tau.in_cut(h)) g.vertices.push_back(h);
  std::vector<int> pos(lat.size(), -1);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) pos[g.vertices[i]] = (int)i;
  g.adjacency.assign(g.vertices.size(), {});
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      int l = lat.meet(g.vertices[i], g.vertices[j]);
      if (lat.corank_of(l) == 2 && tau.edge_flat_ok(l)) {
        g.edges.push_back({g.vertices[i], g.vertices[j], l});
        g.adjacency[i].push_back((int)j);
        g.adjacency[j].push_back((int)i);
      }
    }
  // BFS connectivity over the vertex set.
  if (g.vertices.empty()) {
    g.connected = true;
  } else {
    std::vector<char> seen(g.vertices.size(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : g.adjacency[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          queue.push_back(w);
        }
    }
    g.connected = count == g.vertices.size();
  }
  return g;
}

void validate_tutte_path(const Constellation& tau, const std::vector<int>& path, bool closed,
                         bool off_cut, int on_flat) {
  const FlatLattice& lat = tau.lattice();
  if (path.empty()) throw TutteError("tutte path: empty");
  for (int h : path) {
    if (h < 0 || h >= lat.size() || lat.corank_of(h) != 1)
      throw TutteError("tutte path: term is not a hyperplane");
    if (off_cut && tau.in_cut(h))
      throw TutteError("tutte path: term " + mask_to_string(lat.flat_mask(h)) + " lies in the cut");
    if (on_flat >= 0 && !lat.leq(on_flat, h))
      throw TutteError("tutte path: term " + mask_to_string(lat.flat_mask(h)) +
                       " does not contain the required flat");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == path[i + 1]) throw TutteError("tutte path: consecutive terms equal");
    int l = lat.meet(path[i], path[i + 1]);
    if (lat.corank_of(l) != 2)
      throw TutteError("tutte path: consecutive intersection " + mask_to_string(lat.flat_mask(l)) +
                       " has corank " + std::to_string(lat.corank_of(l)));
    if (!tau.edge_flat_ok(l))
      throw TutteError("tutte path: consecutive intersection " + mask_to_string(lat.flat_mask(l)) +
                       " is decomposable and unmarked");
  }
  if (closed && path.front() != path.back()) throw TutteError("tutte path: not closed");
}

std::vector<int> find_tutte_path(const Constellation& tau, Mask f, Mask x, Mask y) {
  const FlatLattice& lat = tau.lattice();
  int fid = lat.id_of(f);
  if (fid < 0) throw TutteError("find path: " + mask_to_string(f) + " is not a flat");
  if (fid == lat.top()) throw TutteError("find path: flat equals the ground set");
  if (!lat.indecomposable(fid)) throw TutteError("find path: flat is decomposable");
  int xid = lat.id_of(x), yid = lat.id_of(y);
  if (xid < 0 || lat.corank_of(xid) != 1 || yid < 0 || lat.corank_of(yid) != 1)
    throw TutteError("find path: endpoints must be hyperplanes");
  if (!lat.leq(fid, xid) || !lat.leq(fid, yid))
    throw TutteError("find path: endpoint does not contain the flat");
  if (tau.in_cut(xid) || tau.in_cut(yid)) throw TutteError("find path: endpoint in cut");
  // BFS restricted to hyperplanes on f and off the cut.
  std::vector<int> verts;
  for (int h : lat.hyperplanes_above(fid))
    if (!tau.in_cut(h)) verts.push_back(h);
  std::vector<int> prev(lat.size(), -2);
  std::deque<int> queue{xid};
  prev[xid] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == yid) break;
    for (int w : verts) {
      if (prev[w] != -2 || w == v) continue;
      int l = lat.meet(v, w);
      if (lat.corank_of(l) == 2 && tau.edge_flat_ok(l)) {
        prev[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (prev[yid] == -2)
    throw TutteError("find path: no Tutte path found (path theorem violated?)");
  std::vector<int> path;
  for (int v = yid; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

// Template keys for the elementary-path subconstellations, marks included.
struct PathTemplate {
  int kind;
  int type;
  const char* extended;
  std::string key;
};

std::string marked_key(const std::string& catalog, std::vector<Mask> cut,
                       std::vector<Mask> marks) {
  MarkedConstellation mc = make_marked(catalog_matroid(catalog), std::move(cut), std::move(marks));
  return mc.key;
}

const std::vector<PathTemplate>& path_templates_len3() {
  // Paths (A, B, A).
  static const std::vector<PathTemplate> t = [] {
    std::vector<PathTemplate> v;
    Mask e3 = mask_of({0, 1, 2});
    v.push_back({1, 1, "U2,4", marked_key("U2,3", {e3}, {})});
    v.push_back({1, 2, "U~2,3", marked_key("U2,3", {mask_of({2}), e3}, {})});
    return v;
  }();
  return t;
}

const std::vector<PathTemplate>& path_templates_len4_corank2() {
  static const std::vector<PathTemplate> t = [] {
    std::vector<PathTemplate> v;
    v.push_back({2, 3, "U2,4", marked_key("U2,3", {mask_of({0, 1, 2})}, {})});
    return v;
  }();
  return t;
}

const std::vector<PathTemplate>& path_templates_len4_corank3() {
  static const std::vector<PathTemplate> t = [] {
    std::vector<PathTemplate> v;
    Mask e4 = mask_of({0, 1, 2, 3});
    v.push_back({2, 4, "U3,5", marked_key("U3,4", {e4}, {})});
    v.push_back({2, 5, "C5", marked_key("U3,4", {mask_of({0, 3}), e4}, {})});
    v.push_back({2, 6, "U~3,4",
                 marked_key("U3,4", {mask_of({3}), mask_of({0, 3}), mask_of({1, 3}),
                                     mask_of({2, 3}), e4}, {})});
    v.push_back({2, 8, "F7",
                 marked_key("MK4", {mask_of({0, 3}), mask_of({1, 4}), mask_of({2, 5}),
                                    mask_of({0, 1, 2, 3, 4, 5})}, {})});
    return v;
  }();
  return t;
}

const std::vector<PathTemplate>& path_templates_len5() {
  static const std::vector<PathTemplate> t = [] {
    std::vector<PathTemplate> v;
    v.push_back({3, 7, "MK4-",
                 marked_key("U3,4", {mask_of({1, 2}), mask_of({0, 3}), mask_of({0, 1, 2, 3})}, {})});
    // Type 9 / kind 4 share the lattice-and-cut pattern; the marks channel is
    // ignored so both marked and unmarked series flats match.
    v.push_back({4, 9, "F7*",
                 marked_key("MK23", {mask_of({0, 1, 2}), mask_of({0, 4, 5}), mask_of({1, 3, 5}),
                                     mask_of({2, 3, 4}), mask_of({0, 1, 2, 3, 4, 5})}, {})});
    return v;
  }();
  return t;
}

}  // namespace

std::optional<PathClass> classify_elementary(const Constellation& tau, const std::vector<int>& path) {
  validate_tutte_path(tau, path, /*closed=*/true, /*off_cut=*/true);
  const FlatLattice& lat = tau.lattice();
  std::set<int> hyps(path.begin(), path.end());
  int f = *hyps.begin();
  for (int h : hyps) f = lat.meet(f, h);
  int cork = lat.corank_of(f);

  const std::vector<PathTemplate>* templates = nullptr;
  std::size_t len = path.size();
  std::size_t distinct = hyps.size();
  if (len == 3 && distinct == 2 && cork == 2) templates = &path_templates_len3();
  else if (len == 4 && distinct == 3 && cork == 2) templates = &path_templates_len4_corank2();
  else if (len == 4 && distinct == 3 && cork == 3) templates = &path_templates_len4_corank3();
  else if (len == 5 && distinct == 4 && (cork == 3 || cork == 4)) templates = &path_templates_len5();
  if (!templates) return std::nullopt;

  // Candidate subconstellations: upper sublattices with bottom f containing
  // all path hyperplanes, matched by (lattice, cut) key with marks ignored.
  std::vector<const UpperSublattice*> candidates;
  auto subs = all_upper_sublattices(lat);
  for (auto& sub : subs) {
    if (sub.flat_ids.front() != f) continue;
    bool all = true;
    for (int h : hyps)
      if (!std::binary_search(sub.flat_ids.begin(), sub.flat_ids.end(), h)) { all = false; break; }
    if (all) candidates.push_back(&sub);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const UpperSublattice* a, const UpperSublattice* b) {
              return a->flat_ids.size() != b->flat_ids.size()
                         ? a->flat_ids.size() < b->flat_ids.size()
                         : a->flat_ids < b->flat_ids;
            });
  for (const PathTemplate& t : *templates) {
    for (const UpperSublattice* sub : candidates) {
      std::vector<int> cut_ids;
      for (int id : sub->flat_ids)
        if (tau.in_cut(id)) cut_ids.push_back(id);
      std::string key = subconstellation_key(lat, sub->flat_ids, cut_ids, {});
      if (key == t.key) return PathClass{t.kind, t.type, t.extended};
    }
  }
  return std::nullopt;
}

Matroid extend_by_cut(const FlatLattice& lat, const ModularCut& cut) {
  if (cut.flat_ids.empty())
    throw TutteError("extend: empty cut corresponds to a coloop extension, not supported");
  const Matroid& m = lat.matroid();
  int n = m.n(), r = m.rank();
  int a = n;
  // rank(X + a) = rank(X) + 1 unless the closure of X lies in the cut.
  auto rank_ext = [&](Mask s) -> int {
    Mask x = s & ~bit(a);
    if (!contains(s, a)) return m.rank_of(x);
    int id = lat.id_of(m.closure_mask(x));
    return m.rank_of(x) + (cut.member[id] ? 0 : 1);
  };
  std::vector<Mask> bases;
  const Mask full = (Mask{1} << (n + 1)) - 1;
  for (Mask s = 0; s <= full; ++s)
    if (popcount(s) == r && rank_ext(s) == r) bases.push_back(s);
  Matroid ext = Matroid::from_bases(n + 1, std::move(bases));
  // Deleting a must give back m.
  std::vector<Mask> del;
  for (Mask b : ext.bases())
    if (!contains(b, a)) del.push_back(b);
  if (del != m.bases()) throw TutteError("extend: internal consistency check failed");
  return ext;
}

ExtensionCut cut_of_extension(const Matroid& mhat, int a) {
  if (a < 0 || a >= mhat.n()) throw TutteError("cut of extension: element out of range");
  if (mhat.is_coloop(a)) throw TutteError("cut of extension: element is a coloop");
  std::vector<int> labels;
  Matroid m = mhat.minor(MinorSpec{0, bit(a)}, &labels);
  auto lat = std::make_shared<FlatLattice>(std::move(m));
  std::vector<int> ids;
  for (int id = 0; id < lat->size(); ++id) {
    Mask f = lat->flat_mask(id);
    Mask orig = 0;
    for (int e : elements_of(f)) orig |= bit(labels[e]);
    if (contains(mhat.closure_mask(orig), a)) ids.push_back(id);
  }
  ExtensionCut out{lat, cut_from_ids(*lat, std::move(ids)), labels};
  std::vector<Mask> flats;
  for (int id : out.cut.flat_ids) flats.push_back(lat->flat_mask(id));
  validate_modular_cut(*lat, flats);
  return out;
}

std::vector<Mask> parse_flat_lines(const std::string& text, int n) {
  std::vector<Mask> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    std::vector<int> elems;
    bool ground = false, any = false;
    while (ls >> tok) {
      any = true;
      if (tok == "E") { ground = true; continue; }
      int e = std::stoi(tok);
      if (e < 0 || e >= n) throw TutteError("flat file: element out of range: " + tok);
      elems.push_back(e);
    }
    if (!any) continue;
    out.push_back(ground ? (Mask{1} << n) - 1 : mask_of(elems));
  }
  return out;
}

ModularCut parse_cut_spec(const FlatLattice& lat, const std::string& spec) {
  if (spec == "trivial") return trivial_cut(lat);
  if (spec.rfind("principal:", 0) == 0) {
    std::string rest = spec.substr(10);
    for (char& c : rest)
      if (c == ',') c = ' ';
    std::istringstream in(rest);
    std::vector<int> elems;
    int e;
    while (in >> e) elems.push_back(e);
    return principal_cut(lat, mask_of(elems));
  }
  throw TutteError("unknown cut spec: " + spec);
}

}  // namespace tutte
