#include "tutte/matroid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tutte {

std::vector<int> elements_of(Mask s) {
  std::vector<int> out;
  for (int e = 0; s >> e; ++e)
    if ((s >> e) & 1u) out.push_back(e);
  return out;
}

Mask mask_of(const std::vector<int>& elems) {
  Mask m = 0;
  for (int e : elems) m |= bit(e);
  return m;
}

std::string mask_to_string(Mask s) {
  if (s == 0) return "{}";
  std::string out;
  for (int e : elements_of(s)) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e);
  }
  return out;
}

Matroid Matroid::from_bases(int n, std::vector<Mask> bases, std::string name) {
  if (n < 1 || n > 12) throw TutteError("ground set size must be between 1 and 12");
  if (bases.empty()) throw TutteError("basis list is empty");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  Mask ground = (n == 32) ? ~Mask{0} : (Mask{1} << n) - 1;
  int r = popcount(bases[0]);
  for (Mask b : bases) {
    if (b & ~ground) throw TutteError("basis " + mask_to_string(b) + " contains an out-of-range element");
    if (popcount(b) != r)
      throw TutteError("unequal basis sizes: " + mask_to_string(bases[0]) + " and " + mask_to_string(b));
  }
  // Exchange axiom, exhaustively, with a witness pair on failure.
  std::set<Mask> basis_set(bases.begin(), bases.end());
  for (Mask b1 : bases)
    for (Mask b2 : bases) {
      if (b1 == b2) continue;
      for (int e : elements_of(b1 & ~b2)) {
        bool ok = false;
        for (int f : elements_of(b2 & ~b1))
          if (basis_set.count((b1 & ~bit(e)) | bit(f))) { ok = true; break; }
        if (!ok)
          throw TutteError("exchange axiom fails for bases " + mask_to_string(b1) + " and " +
                           mask_to_string(b2) + " at element " + std::to_string(e));
      }
    }
  Matroid m;
  m.n_ = n;
  m.r_ = r;
  m.ground_ = ground;
  m.bases_ = std::move(bases);
  m.name_ = std::move(name);
  m.build_tables();
  return m;
}

void Matroid::build_tables() {
  const std::size_t sz = std::size_t{1} << n_;
  rank_tab_.assign(sz, 0);
  for (std::size_t s = 0; s < sz; ++s) {
    int best = 0;
    for (Mask b : bases_) best = std::max(best, popcount((Mask)s & b));
    rank_tab_[s] = (std::int8_t)best;
  }
  closure_tab_.assign(sz, 0);
  for (std::size_t s = 0; s < sz; ++s) {
    Mask cl = (Mask)s;
    int rk = rank_tab_[s];
    for (int e = 0; e < n_; ++e)
      if (!contains((Mask)s, e) && rank_tab_[s | bit(e)] == rk) cl |= bit(e);
    closure_tab_[s] = cl;
  }
}

int Matroid::rank_of_greedy(Mask s) const {
  // Grow an independent subset; X is independent iff it lies in some basis.
  Mask indep = 0;
  for (int e : elements_of(s)) {
    Mask cand = indep | bit(e);
    for (Mask b : bases_)
      if ((cand & ~b) == 0) { indep = cand; break; }
  }
  return popcount(indep);
}

Flat Matroid::closure(Mask s) const {
  if (s & ~ground_) throw TutteError("subset contains an out-of-range element");
  Mask cl = closure_mask(s);
  return Flat{cl, rank_of(cl), r_ - rank_of(cl)};
}

Flat Matroid::flat(Mask s) const {
  if (!is_flat(s)) throw TutteError(mask_to_string(s) + " is not a flat");
  return Flat{s, rank_of(s), r_ - rank_of(s)};
}

bool Matroid::is_simple() const {
  for (int e = 0; e < n_; ++e)
    if (is_loop(e)) return false;
  for (int e = 0; e < n_; ++e)
    for (int f = e + 1; f < n_; ++f)
      if (rank_of(bit(e) | bit(f)) < 2) return false;
  return true;
}

const std::vector<Mask>& Matroid::circuits() const {
  if (!circuits_done_) {
    std::vector<Mask> out;
    const std::size_t sz = std::size_t{1} << n_;
    for (std::size_t s = 1; s < sz; ++s) {
      if (rank_tab_[s] >= popcount((Mask)s)) continue;  // independent
      bool minimal = true;
      for (int e : elements_of((Mask)s)) {
        Mask t = (Mask)s & ~bit(e);
        if (rank_tab_[t] < popcount(t)) { minimal = false; break; }
      }
      if (minimal) out.push_back((Mask)s);
    }
    circuits_ = std::move(out);
    circuits_done_ = true;
  }
  return circuits_;
}

const std::vector<Mask>& Matroid::components() const {
  if (!components_done_) {
    // Union-find over circuit co-membership; untouched elements are their
    // own components (loops and coloops).
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (Mask c : circuits()) {
      auto elems = elements_of(c);
      for (std::size_t i = 1; i < elems.size(); ++i) {
        int a = find(elems[0]), b = find(elems[i]);
        if (a != b) parent[b] = a;
      }
    }
    std::map<int, Mask> comp;
    for (int e = 0; e < n_; ++e) comp[find(e)] |= bit(e);
    components_.clear();
    for (auto& [root, m] : comp) components_.push_back(m);
    std::sort(components_.begin(), components_.end());
    components_done_ = true;
  }
  return components_;
}

Matroid Matroid::dual() const {
  std::vector<Mask> cobases;
  cobases.reserve(bases_.size());
  for (Mask b : bases_) cobases.push_back(ground_ & ~b);
  std::string nm = name_.empty() ? "" : (name_.back() == '*' ? name_.substr(0, name_.size() - 1) : name_ + "*");
  return from_bases(n_, std::move(cobases), nm);
}

Matroid Matroid::minor(const MinorSpec& spec, std::vector<int>* label_map) const {
  if (spec.contract & spec.remove) throw TutteError("contract and delete sets overlap");
  if (!independent(spec.contract))
    throw TutteError("contract set " + mask_to_string(spec.contract) + " is dependent");
  if (!coindependent(spec.remove))
    throw TutteError("delete set " + mask_to_string(spec.remove) + " is not coindependent");
  Mask keep = ground_ & ~(spec.contract | spec.remove);
  std::vector<int> labels = elements_of(keep);
  if (label_map) *label_map = labels;
  std::vector<int> newidx(n_, -1);
  for (std::size_t i = 0; i < labels.size(); ++i) newidx[labels[i]] = (int)i;
  std::vector<Mask> mb;
  for (Mask b : bases_) {
    if ((b & spec.remove) || (spec.contract & ~b)) continue;
    Mask nb = 0;
    for (int e : elements_of(b & keep)) nb |= bit(newidx[e]);
    mb.push_back(nb);
  }
  if (mb.empty()) throw TutteError("minor has no bases");
  return from_bases((int)labels.size(), std::move(mb));
}

Matroid Matroid::contract(Mask s, std::vector<int>* label_map) const {
  // Contract an independent transversal of s, then delete the leftovers of s
  // (they became loops).
  Mask indep = 0;
  for (int e : elements_of(s))
    if (rank_of(indep | bit(e)) > rank_of(indep)) indep |= bit(e);
  std::vector<int> lm1;
  Matroid c = minor(MinorSpec{indep, 0}, &lm1);
  Mask leftovers = 0;
  for (int i = 0; i < c.n(); ++i)
    if (contains(s, lm1[i])) leftovers |= bit(i);
  std::vector<int> lm2;
  Matroid out = c.minor(MinorSpec{0, leftovers}, &lm2);
  if (label_map) {
    label_map->clear();
    for (int i = 0; i < out.n(); ++i) label_map->push_back(lm1[lm2[i]]);
  }
  return out;
}

Matroid direct_sum(const Matroid& a, const Matroid& b) {
  std::vector<Mask> bases;
  for (Mask x : a.bases())
    for (Mask y : b.bases()) bases.push_back(x | (y << a.n()));
  std::string nm;
  if (!a.name().empty() && !b.name().empty()) nm = a.name() + "+" + b.name();
  return Matroid::from_bases(a.n() + b.n(), std::move(bases), nm);
}

Matroid simplification(const Matroid& m) {
  Mask remove = 0;
  for (int e = 0; e < m.n(); ++e) {
    if (m.is_loop(e)) { remove |= bit(e); continue; }
    for (int f = 0; f < e; ++f)
      if (!m.is_loop(f) && m.rank_of(bit(e) | bit(f)) < 2) { remove |= bit(e); break; }
  }
  if (remove == 0) return m;
  return m.minor(MinorSpec{0, remove});
}

namespace {

// Element fingerprint used to prune the isomorphism backtracker: number of
// bases through the element, plus the sorted co-occurrence profile.
std::vector<long> element_profile(const Matroid& m, int e) {
  long deg = 0;
  std::vector<long> co(m.n(), 0);
  for (Mask b : m.bases())
    if (contains(b, e)) {
      ++deg;
      for (int f : elements_of(b & ~bit(e))) ++co[f];
    }
  std::sort(co.begin(), co.end());
  co.push_back(deg);
  return co;
}

bool iso_extend(const Matroid& a, const Matroid& b, std::vector<int>& map, std::vector<bool>& used,
                int next, const std::vector<std::vector<long>>& pa,
                const std::vector<std::vector<long>>& pb, const std::set<Mask>& bbases) {
  if (next == a.n()) {
    for (Mask bas : a.bases()) {
      Mask img = 0;
      for (int e : elements_of(bas)) img |= bit(map[e]);
      if (!bbases.count(img)) return false;
    }
    return true;
  }
  for (int cand = 0; cand < b.n(); ++cand) {
    if (used[cand] || pa[next] != pb[cand]) continue;
    // Partial pruning: ranks of mapped prefixes must agree.
    map[next] = cand;
    used[cand] = true;
    Mask sa = 0, sb = 0;
    bool ok = true;
    for (int e = 0; e <= next && ok; ++e) {
      sa |= bit(e);
      sb |= bit(map[e]);
      if (a.rank_of(sa) != b.rank_of(sb)) ok = false;
    }
    if (ok && iso_extend(a, b, map, used, next + 1, pa, pb, bbases)) return true;
    used[cand] = false;
  }
  map[next] = -1;
  return false;
}

}  // namespace

std::optional<std::vector<int>> matroid_isomorphism(const Matroid& a, const Matroid& b) {
  if (a.n() != b.n() || a.rank() != b.rank() || a.bases().size() != b.bases().size())
    return std::nullopt;
  std::vector<std::vector<long>> pa(a.n()), pb(b.n());
  for (int e = 0; e < a.n(); ++e) pa[e] = element_profile(a, e);
  for (int e = 0; e < b.n(); ++e) pb[e] = element_profile(b, e);
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> map(a.n(), -1);
  std::vector<bool> used(b.n(), false);
  std::set<Mask> bbases(b.bases().begin(), b.bases().end());
  if (iso_extend(a, b, map, used, 0, pa, pb, bbases)) return map;
  return std::nullopt;
}

FlatLattice::FlatLattice(Matroid m) : m_(std::move(m)) {
  // Bottom-up closure sweep: close each (flat | single element).
  std::vector<std::vector<Mask>> by_rank(m_.rank() + 1);
  Mask bottomf = m_.closure_mask(0);
  by_rank[m_.rank_of(bottomf)].push_back(bottomf);
  std::set<Mask> seen{bottomf};
  for (int k = 0; k < m_.rank(); ++k) {
    std::set<Mask> next;
    for (Mask f : by_rank[k]) {
      for (int e = 0; e < m_.n(); ++e) {
        if (contains(f, e)) continue;
        Mask g = m_.closure_mask(f | bit(e));
        if (!seen.count(g)) next.insert(g);
      }
    }
    for (Mask g : next) {
      seen.insert(g);
      by_rank[m_.rank_of(g)].push_back(g);
    }
  }
  level_begin_.assign(m_.rank() + 2, 0);
  for (int k = 0; k <= m_.rank(); ++k) {
    std::sort(by_rank[k].begin(), by_rank[k].end());
    level_begin_[k] = (int)flats_.size();
    for (Mask f : by_rank[k]) {
      flats_.push_back(f);
      flat_rank_.push_back(k);
    }
  }
  level_begin_[m_.rank() + 1] = (int)flats_.size();
  bottom_ = 0;
  top_ = (int)flats_.size() - 1;
  if (m_.rank() >= 1) {
    atoms_ = of_rank(1);
    hyperplanes_ = of_rank(m_.rank() - 1);
  }
  hyps_above_.assign(flats_.size(), {});
  for (int id = 0; id < (int)flats_.size(); ++id)
    for (int h : hyperplanes_)
      if (leq(id, h)) hyps_above_[id].push_back(h);
  indecomposable_.assign(flats_.size(), 0);
  for (int id = 0; id < (int)flats_.size(); ++id) {
    if (id == top_) { indecomposable_[id] = 1; continue; }
    indecomposable_[id] = m_.contract(flats_[id]).connected() ? 1 : 0;
  }
}

int FlatLattice::id_of(Mask f) const {
  auto it = std::lower_bound(flats_.begin(), flats_.end(), f, [&](Mask a, Mask b) {
    int ra = m_.rank_of(a), rb = m_.rank_of(b);
    return ra != rb ? ra < rb : a < b;
  });
  if (it != flats_.end() && *it == f) return (int)(it - flats_.begin());
  return -1;
}

std::vector<int> FlatLattice::of_rank(int k) const {
  if (k < 0 || k > m_.rank()) throw TutteError("rank out of range");
  std::vector<int> out;
  for (int i = level_begin_[k]; i < level_begin_[k + 1]; ++i) out.push_back(i);
  return out;
}

std::vector<int> FlatLattice::of_corank(int d) const {
  if (d < 0 || d > m_.rank()) throw TutteError("corank out of range");
  return of_rank(m_.rank() - d);
}

bool FlatLattice::modular_pair(int a, int b) const {
  return rank_of(a) + rank_of(b) == rank_of(meet(a, b)) + rank_of(join(a, b));
}

bool FlatLattice::is_geometric() const {
  // Atomistic: every flat is the join of the atoms below it.
  for (int id = 0; id < size(); ++id) {
    Mask acc = flats_[bottom_];
    for (int a : atoms_)
      if (leq(a, id)) acc |= flats_[a];
    if (m_.closure_mask(acc) != flats_[id]) return false;
  }
  // Semimodular: rk(x) + rk(y) >= rk(x /\ y) + rk(x \/ y).
  for (int x = 0; x < size(); ++x)
    for (int y = 0; y < size(); ++y)
      if (rank_of(x) + rank_of(y) < rank_of(meet(x, y)) + rank_of(join(x, y))) return false;
  return true;
}

namespace {

std::string encode_config(const std::vector<Mask>& flats, const std::vector<Mask>& cut,
                          const std::vector<Mask>& marks, const std::vector<int>& perm) {
  auto apply = [&](Mask s) {
    Mask out = 0;
    for (int a = 0; (s >> a) != 0; ++a)
      if ((s >> a) & 1u) out |= bit(perm[a]);
    return out;
  };
  auto enc = [&](const std::vector<Mask>& v) {
    std::vector<Mask> w;
    w.reserve(v.size());
    for (Mask s : v) w.push_back(apply(s));
    std::sort(w.begin(), w.end());
    std::string s;
    for (Mask m : w) { s += std::to_string(m); s += ','; }
    return s;
  };
  return enc(flats) + "|" + enc(cut) + "|" + enc(marks);
}

}  // namespace

std::string lattice_canonical_key(const std::vector<Mask>& flats_as_atom_sets,
                                  const std::vector<Mask>& cut_as_atom_sets,
                                  const std::vector<Mask>& marks_as_atom_sets) {
  int num_atoms = 0;
  for (Mask f : flats_as_atom_sets) num_atoms = std::max(num_atoms, 32 - (int)std::countl_zero(f | 1u));
  std::vector<int> perm(num_atoms);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string k = encode_config(flats_as_atom_sets, cut_as_atom_sets, marks_as_atom_sets, perm);
    if (best.empty() || k < best) best = k;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Mask> sublattice_atom_encoding(const FlatLattice& lat, const std::vector<int>& flat_ids,
                                           std::vector<int>* sub_atoms_out) {
  // Atoms of the sub-poset = minimal nonbottom elements.
  std::vector<int> ids = flat_ids;
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return lat.rank_of(a) != lat.rank_of(b) ? lat.rank_of(a) < lat.rank_of(b)
                                            : lat.flat_mask(a) < lat.flat_mask(b);
  });
  int bottom = ids[0];
  std::vector<int> sub_atoms;
  for (int id : ids) {
    if (id == bottom) continue;
    bool minimal = true;
    for (int other : ids)
      if (other != bottom && other != id && lat.leq(other, id)) { minimal = false; break; }
    if (minimal) sub_atoms.push_back(id);
  }
  std::vector<Mask> enc;
  enc.reserve(ids.size());
  for (int id : ids) {
    Mask s = 0;
    for (std::size_t a = 0; a < sub_atoms.size(); ++a)
      if (lat.leq(sub_atoms[a], id)) s |= bit((int)a);
    enc.push_back(s);
  }
  if (sub_atoms_out) *sub_atoms_out = std::move(sub_atoms);
  return enc;
}

std::string lattice_key(const Matroid& m) {
  FlatLattice lat(m);
  std::vector<int> all(lat.size());
  std::iota(all.begin(), all.end(), 0);
  return lattice_canonical_key(sublattice_atom_encoding(lat, all, nullptr), {}, {});
}

bool has_minor(const Matroid& m, const Matroid& n, MinorSpec* witness) {
  bool simple = n.is_simple();
  std::string target_key = simple ? lattice_key(n) : "";
  int ci = m.rank() - n.rank();
  if (ci < 0) return false;
  const std::size_t sz = std::size_t{1} << m.n();
  for (Mask i = 0; i < (Mask)sz; ++i) {
    if (popcount(i) != ci || !m.independent(i)) continue;
    Mask rest = m.ground() & ~i;
    int dj = (m.n() - ci) - n.n();
    if (dj < 0) continue;
    for (Mask j = rest;; j = (j - 1) & rest) {
      if (popcount(j) == dj && m.coindependent(j)) {
        MinorSpec spec{i, j};
        Matroid minor = m.minor(spec);
        bool match = simple ? (lattice_key(minor) == target_key)
                            : matroid_isomorphism(minor, n).has_value();
        if (match) {
          if (witness) *witness = spec;
          return true;
        }
      }
      if (j == 0) break;
    }
  }
  return false;
}

std::vector<UpperSublattice> all_upper_sublattices(const FlatLattice& lat) {
  const Matroid& m = lat.matroid();
  std::map<std::vector<int>, MinorSpec> found;
  const std::size_t sz = std::size_t{1} << m.n();
  for (Mask i = 0; i < (Mask)sz; ++i) {
    if (!m.independent(i)) continue;
    Mask rest = m.ground() & ~i;
    for (Mask j = rest;; j = (j - 1) & rest) {
      if (m.coindependent(j)) {
        // Flats <S> with I <= S <= E - J, i.e. F >= I with <(F & ~J) | I> = F.
        std::vector<int> ids;
        for (int id = 0; id < lat.size(); ++id) {
          Mask f = lat.flat_mask(id);
          if ((i & ~f) == 0 && m.closure_mask((f & ~j) | i) == f) ids.push_back(id);
        }
        found.emplace(std::move(ids), MinorSpec{i, j});
      }
      if (j == 0) break;
    }
  }
  std::vector<UpperSublattice> out;
  out.reserve(found.size());
  for (auto& [ids, spec] : found) out.push_back(UpperSublattice{ids, spec});
  return out;
}

std::vector<UpperSublattice> upper_sublattices_of_type(const FlatLattice& lat, const Matroid& n) {
  if (!n.is_simple()) throw TutteError("upper sublattice type must be a simple matroid");
  std::string key = lattice_key(n);
  const int want_size = FlatLattice(n).size();
  std::vector<UpperSublattice> out;
  for (auto& sub : all_upper_sublattices(lat)) {
    if ((int)sub.flat_ids.size() != want_size) continue;
    if (lattice_canonical_key(sublattice_atom_encoding(lat, sub.flat_ids, nullptr), {}, {}) == key)
      out.push_back(sub);
  }
  return out;
}

namespace {

Matroid uniform(int r, int n) {
  std::vector<Mask> bases;
  const Mask full = (Mask{1} << n) - 1;
  for (Mask s = 0; s <= full; ++s)
    if (popcount(s) == r) bases.push_back(s);
  return Matroid::from_bases(n, std::move(bases), "U" + std::to_string(r) + "," + std::to_string(n));
}

Matroid bases_except(int n, int r, const std::vector<std::vector<int>>& excluded,
                     const std::string& name) {
  std::set<Mask> excl;
  for (auto& v : excluded) excl.insert(mask_of(v));
  std::vector<Mask> bases;
  const Mask full = (Mask{1} << n) - 1;
  for (Mask s = 0; s <= full; ++s) {
    if (popcount(s) != r) continue;
    bool bad = false;
    for (Mask x : excl)
      if ((x & ~s) == 0 && popcount(x) == r) bad = true;
    if (!bad) bases.push_back(s);
  }
  for (auto& v : excluded)
    if ((int)v.size() < r) {
      // Excluded dependent set smaller than the rank: drop every superset.
      Mask x = mask_of(v);
      std::erase_if(bases, [&](Mask b) { return (x & ~b) == 0; });
    }
  return Matroid::from_bases(n, std::move(bases), name);
}

Matroid fano() {
  // Lines (0-based): 016 024 035 125 134 236 456, i.e. the classic labeling
  // with hyperplanes {127,135,146,236,245,347,567} in 1-based form.
  return bases_except(7, 3, {{0, 1, 6}, {0, 2, 4}, {0, 3, 5}, {1, 2, 5}, {1, 3, 4}, {2, 3, 6}, {4, 5, 6}},
                      "F7");
}

Matroid mk4() {
  // Graphic matroid of K4; triangles 125,024,123,345 and matchings 03,14,25
  // in 0-based labels (126,135,234,456 / 14,25,36 in 1-based form).
  return bases_except(6, 3, {{0, 1, 5}, {0, 2, 4}, {1, 2, 3}, {3, 4, 5}}, "MK4");
}

Matroid mk4_minus() {
  // K4 minus an edge: triangles 034 and 124 in 0-based labels (145, 235).
  return bases_except(5, 3, {{0, 3, 4}, {1, 2, 4}}, "MK4-");
}

Matroid mk23() {
  // Graphic matroid of K_{2,3}: circuits 0134, 0235, 1245 in 0-based labels.
  return bases_except(6, 4, {{0, 1, 3, 4}, {0, 2, 3, 5}, {1, 2, 4, 5}}, "MK23");
}

Matroid c5() {
  return bases_except(5, 3, {{0, 1, 2}}, "C5");
}

Matroid u23_parallel() {
  // Parallel extension of U2,3 with elements 2 and 3 parallel.
  return bases_except(4, 2, {{2, 3}}, "U~2,3");
}

Matroid u34_parallel() {
  // Parallel extension of U3,4 with elements 3 and 4 parallel.
  return bases_except(5, 3, {{3, 4}}, "U~3,4");
}

Matroid catalog_single(const std::string& name) {
  bool dual = !name.empty() && name.back() == '*';
  std::string base = dual ? name.substr(0, name.size() - 1) : name;
  Matroid m = [&]() -> Matroid {
    if (base == "F7") return fano();
    if (base == "C5") return c5();
    if (base == "MK4") return mk4();
    if (base == "MK4-") return mk4_minus();
    if (base == "MK23") return mk23();
    if (base == "U~2,3") return u23_parallel();
    if (base == "U~3,4") return u34_parallel();
    if (base.size() >= 4 && base[0] == 'U') {
      auto comma = base.find(',');
      if (comma != std::string::npos) {
        int r = std::stoi(base.substr(1, comma - 1));
        int n = std::stoi(base.substr(comma + 1));
        if (r >= 0 && r <= 4 && n >= 1 && n <= 8 && r <= n) return uniform(r, n);
      }
    }
    throw TutteError("unknown catalog matroid: " + name);
  }();
  return dual ? m.dual() : m;
}

}  // namespace

Matroid catalog_matroid(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : name) {
    if (c == '+') { parts.push_back(cur); cur.clear(); }
    else cur += c;
  }
  parts.push_back(cur);
  Matroid m = catalog_single(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) m = direct_sum(m, catalog_single(parts[i]));
  return m;
}

bool is_catalog_name(const std::string& name) {
  try {
    catalog_matroid(name);
    return true;
  } catch (const TutteError&) {
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

Matroid parse_matroid_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  int n, r;
  if (!(in >> n >> r)) throw TutteError("matroid file: expected header line 'n r'");
  std::string line;
  std::getline(in, line);
  std::vector<Mask> bases;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> elems;
    int e;
    while (ls >> e) {
      if (e < 0 || e >= n) throw TutteError("matroid file: element out of range: " + std::to_string(e));
      elems.push_back(e);
    }
    if (elems.empty()) continue;
    if ((int)elems.size() != r) throw TutteError("matroid file: basis of wrong size: " + line);
    bases.push_back(mask_of(elems));
  }
  Matroid m = Matroid::from_bases(n, std::move(bases), name);
  if (m.rank() != r) throw TutteError("matroid file: declared rank does not match bases");
  return m;
}

std::string matroid_to_text(const Matroid& m) {
  std::string out = std::to_string(m.n()) + " " + std::to_string(m.rank()) + "\n";
  for (Mask b : m.bases()) out += mask_to_string(b) + "\n";
  return out;
}

}  // namespace tutte
