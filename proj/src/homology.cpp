#include "tutte/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tutte {

namespace {

struct Int64Overflow {};

inline long long chk_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow{};
  return r;
}
inline long long chk_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow{};
  return r;
}

template <typename T>
T abs_of(const T& x) {
  return x < 0 ? T(-x) : x;
}

// Diagonalization by row/column elimination with minimal-absolute-value
// pivoting; returns the diagonal (unsorted, before the divisibility fix).
template <typename T>
std::vector<T> diagonalize(std::vector<std::vector<T>>& a) {
  const int rows = (int)a.size();
  const int cols = rows ? (int)a[0].size() : 0;
  std::vector<T> diag;
  int t = 0;
  while (t < rows && t < cols) {
    // Minimal nonzero entry of the trailing submatrix as pivot.
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || abs_of(a[i][j]) < abs_of(a[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    if (pj != t)
      for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      T q = a[i][t] / a[t][t];
      if (q != 0) {
        for (int j = t; j < cols; ++j) {
          if constexpr (std::is_same_v<T, long long>)
            a[i][j] = chk_sub(a[i][j], chk_mul(q, a[t][j]));
          else
            a[i][j] -= q * a[t][j];
        }
      }
      if (a[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      T q = a[t][j] / a[t][t];
      if (q != 0) {
        for (int i = t; i < rows; ++i) {
          if constexpr (std::is_same_v<T, long long>)
            a[i][j] = chk_sub(a[i][j], chk_mul(q, a[i][t]));
          else
            a[i][j] -= q * a[i][t];
        }
      }
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; repick the pivot
    diag.push_back(abs_of(a[t][t]));
    ++t;
  }
  return diag;
}

template <typename T>
std::vector<Int> snf_from(std::vector<std::vector<T>> a) {
  std::vector<T> d = diagonalize(a);
  std::vector<Int> out;
  out.reserve(d.size());
  for (const T& x : d) out.push_back(Int(x));
  // Enforce the divisor chain pairwise.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (out[j] % out[i] != 0) {
          Int g = boost::multiprecision::gcd(out[i], out[j]);
          Int l = out[i] / g * out[j];
          out[i] = g;
          out[j] = l;
          changed = true;
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Int> smith_normal_form(const IntegerMatrix& m) {
  // int64 fast path with overflow fallback to arbitrary precision.
  bool fits = true;
  for (const Int& x : m.a)
    if (x > std::numeric_limits<long long>::max() / 4 ||
        x < std::numeric_limits<long long>::min() / 4) {
      fits = false;
      break;
    }
  if (fits) {
    std::vector<std::vector<long long>> a(m.rows, std::vector<long long>(m.cols));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) a[i][j] = (long long)m.at(i, j);
    try {
      return snf_from(std::move(a));
    } catch (const Int64Overflow&) {
    }
  }
  std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) a[i][j] = m.at(i, j);
  return snf_from(std::move(a));
}

int matrix_rank(const IntegerMatrix& m) { return (int)smith_normal_form(m).size(); }

std::string HomologyGroup::to_string() const {
  if (trivial()) return "0";
  std::string s;
  if (free_rank == 1) s = "Z";
  else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (const Int& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  return s;
}

SimplicialComplex SimplicialComplex::from_faces(std::vector<std::string> labels,
                                                const std::vector<std::vector<int>>& faces) {
  SimplicialComplex k;
  k.labels_ = std::move(labels);
  std::set<std::vector<int>> all;
  for (auto f : faces) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    for (int v : f)
      if (v < 0 || v >= (int)k.labels_.size()) throw TutteError("complex: vertex out of range");
    // Downward closure by subset enumeration.
    const int s = (int)f.size();
    for (int sub = 1; sub < (1 << s); ++sub) {
      std::vector<int> g;
      for (int i = 0; i < s; ++i)
        if ((sub >> i) & 1) g.push_back(f[i]);
      all.insert(g);
    }
  }
  for (const auto& f : all) {
    int d = (int)f.size() - 1;
    if ((int)k.faces_.size() <= d) k.faces_.resize(d + 1);
    k.faces_[d].push_back(f);
  }
  for (auto& level : k.faces_) std::sort(level.begin(), level.end());
  return k;
}

const std::vector<std::vector<int>>& SimplicialComplex::faces(int dim) const {
  static const std::vector<std::vector<int>> empty;
  if (dim < 0 || dim >= (int)faces_.size()) return empty;
  return faces_[dim];
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 ? -1 : 1) * (long)faces(d).size();
  return chi;
}

std::string SimplicialComplex::dump() const {
  std::string out;
  for (int d = 0; d <= dimension(); ++d)
    for (const auto& f : faces(d)) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ' ';
        out += labels_[f[i]];
      }
      out += '\n';
    }
  return out;
}

IntegerMatrix SimplicialComplex::boundary_matrix(int k) const {
  const auto& lower = faces(k - 1);
  const auto& upper = faces(k);
  IntegerMatrix m((int)lower.size(), (int)upper.size());
  if (k <= 0) return m;  // boundary of vertices is zero (empty row space)
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < lower.size(); ++i) index[lower[i]] = (int)i;
  for (std::size_t j = 0; j < upper.size(); ++j) {
    const auto& f = upper[j];
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      std::vector<int> g;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (i != drop) g.push_back(f[i]);
      m.at(index.at(g), (int)j) = (drop % 2 ? -1 : 1);
    }
  }
  return m;
}

HomologyGroup homology_of_complex(const SimplicialComplex& k, int degree) {
  if (degree < 0 || degree > std::max(0, k.dimension()))
    throw TutteError("homology degree out of range");
  HomologyGroup h;
  h.degree = degree;
  long nk = (long)k.faces(degree).size();
  long rank_down = (long)matrix_rank(k.boundary_matrix(degree));
  std::vector<Int> up = smith_normal_form(k.boundary_matrix(degree + 1));
  h.free_rank = nk - rank_down - (long)up.size();
  for (const Int& d : up)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

std::vector<HomologyGroup> all_homology(const SimplicialComplex& k) {
  std::vector<HomologyGroup> out;
  for (int d = 0; d <= std::max(0, k.dimension()); ++d) out.push_back(homology_of_complex(k, d));
  return out;
}

namespace {

// Label an upper sublattice in the \j.../i... minor style: smallest J first,
// with I a lexicographically minimal basis of the bottom flat.
std::string sublattice_label(const FlatLattice& lat, const std::vector<int>& flat_ids) {
  const Matroid& m = lat.matroid();
  int bottom = *std::min_element(flat_ids.begin(), flat_ids.end(), [&](int a, int b) {
    return lat.rank_of(a) < lat.rank_of(b);
  });
  Mask bmask = lat.flat_mask(bottom);
  Mask i_label = 0;
  for (int e : elements_of(bmask))
    if (m.rank_of(i_label | bit(e)) > m.rank_of(i_label)) i_label |= bit(e);
  auto realizes = [&](Mask j) {
    std::vector<int> ids;
    for (int id = 0; id < lat.size(); ++id) {
      Mask f = lat.flat_mask(id);
      if ((i_label & ~f) == 0 && m.closure_mask((f & ~j) | i_label) == f) ids.push_back(id);
    }
    return ids == flat_ids;
  };
  Mask rest = m.ground() & ~i_label;
  Mask best = 0;
  bool found = false;
  // Subsets of `rest` ordered by size then mask value.
  std::vector<Mask> subsets;
  for (Mask j = rest;; j = (j - 1) & rest) {
    subsets.push_back(j);
    if (j == 0) break;
  }
  std::sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  for (Mask j : subsets)
    if (m.coindependent(j) && realizes(j)) { best = j; found = true; break; }
  std::string s = "\xce\x9b";  // Lambda
  if (found && best) {
    s += "\\";
    bool first = true;
    for (int e : elements_of(best)) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
  }
  if (i_label) {
    s += "/";
    bool first = true;
    for (int e : elements_of(i_label)) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
  }
  return s;
}

}  // namespace

SimplicialComplex subconstellation_complex(const Constellation& tau,
                                           const std::vector<std::string>& allowed_keys) {
  std::set<std::string> allowed(allowed_keys.begin(), allowed_keys.end());
  std::vector<Subconstellation> verts;
  for (Subconstellation& s : subconstellations(tau))
    if (allowed.count(s.key)) verts.push_back(std::move(s));
  std::sort(verts.begin(), verts.end(), [](const Subconstellation& a, const Subconstellation& b) {
    return a.flat_ids.size() != b.flat_ids.size() ? a.flat_ids.size() < b.flat_ids.size()
                                                  : a.flat_ids < b.flat_ids;
  });
  const int nv = (int)verts.size();
  std::vector<std::string> labels;
  labels.reserve(nv);
  for (const auto& v : verts) labels.push_back(sublattice_label(tau.lattice(), v.flat_ids));
  // u < v in the poset iff the flat sets are strictly nested.
  auto below = [&](int u, int v) {
    const auto& a = verts[u].flat_ids;
    const auto& b = verts[v].flat_ids;
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  std::vector<std::vector<int>> chains;
  std::vector<int> chain;
  // All chains; vertex order is a linear extension, so extending by a
  // superset of the last element keeps the chain property.
  auto dfs = [&](auto&& self, int last) -> void {
    chains.push_back(chain);
    for (int w = last + 1; w < nv; ++w)
      if (below(last, w)) {
        chain.push_back(w);
        self(self, w);
        chain.pop_back();
      }
  };
  for (int v = 0; v < nv; ++v) {
    chain = {v};
    dfs(dfs, v);
  }
  return SimplicialComplex::from_faces(std::move(labels), chains);
}

SimplicialComplex sigma_complex_with_classes(const Constellation& tau,
                                             const std::vector<SubClass>& classes) {
  std::vector<std::string> keys;
  for (SubClass c : classes) keys.push_back(subclass_template(c).key);
  return subconstellation_complex(tau, keys);
}

SimplicialComplex sigma_complex(const Constellation& tau, int level) {
  switch (level) {
    case 0: return sigma_complex_with_classes(tau, {SubClass::C0});
    case 1: return sigma_complex_with_classes(tau, {SubClass::C0, SubClass::C1});
    case 2:
      return sigma_complex_with_classes(tau, {SubClass::C0, SubClass::C1, SubClass::C2a,
                                              SubClass::C2b, SubClass::C2c, SubClass::C2d});
    default: throw TutteError("sigma level must be 0, 1 or 2");
  }
}

namespace {

HomologyGroup safe_homology(const SimplicialComplex& k, int degree) {
  if (k.dimension() < degree) return HomologyGroup{degree, 0, {}};
  return homology_of_complex(k, degree);
}

std::vector<Matroid> candidate_lattice_reps(int max_atoms) {
  std::vector<Matroid> reps;
  std::set<std::string> seen;
  auto add = [&](const Matroid& m) {
    Matroid s = simplification(m);
    if (s.n() > max_atoms) return false;
    std::string key = lattice_key(s);
    if (seen.count(key)) return false;
    seen.insert(key);
    reps.push_back(std::move(s));
    return true;
  };
  // Catalog seeds, closed under single-element minors and direct sums.
  for (int r = 1; r <= 4; ++r)
    for (int n = r; n <= std::min(8, max_atoms); ++n)
      add(catalog_matroid("U" + std::to_string(r) + "," + std::to_string(n)));
  for (const char* name : {"C5", "MK4-", "MK4", "MK23", "F7", "U~2,3", "U~3,4"}) {
    Matroid m = catalog_matroid(name);
    if (simplification(m).n() <= max_atoms) add(m);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Matroid> snapshot = reps;
    for (const Matroid& m : snapshot) {
      for (int e = 0; e < m.n(); ++e) {
        if (!m.is_coloop(e) && m.n() > 1) grew |= add(m.minor(MinorSpec{0, bit(e)}));
        if (!m.is_loop(e) && m.rank() > 1) grew |= add(m.minor(MinorSpec{bit(e), 0}));
      }
      for (const Matroid& other : snapshot)
        if (m.n() + other.n() <= max_atoms) grew |= add(direct_sum(m, other));
    }
  }
  std::sort(reps.begin(), reps.end(), [](const Matroid& a, const Matroid& b) {
    if (a.n() != b.n()) return a.n() < b.n();
    FlatLattice la(a), lb(b);
    if (la.size() != lb.size()) return la.size() < lb.size();
    return lattice_key(a) < lattice_key(b);
  });
  return reps;
}


}  // namespace

std::vector<L3Entry> search_l3(int max_atoms) {
  if (max_atoms < 1 || max_atoms > 5) throw TutteError("search_l3: max_atoms must be 1..5");

  // Candidate marked constellations, deduplicated by canonical key, in the
  // fixed order (atom count, lattice size, key).
  struct Candidate {
    MarkedConstellation mc;
    int atoms;
    int lattice_size;
  };
  std::vector<Candidate> candidates;
  std::set<std::string> seen;
  for (const Matroid& rep : candidate_lattice_reps(max_atoms)) {
    FlatLattice lat(rep);
    for (const ModularCut& cut : all_modular_cuts(lat)) {
      std::vector<Mask> cut_flats;
      for (int id : cut.flat_ids) cut_flats.push_back(lat.flat_mask(id));
      // Candidates carry the full marking: every decomposable corank-2 flat
      // off the cut is marked. All named classes are of this form; partially
      // marked variants never enter the list and are left out of the
      // enumeration.
      std::vector<Mask> marks;
      if (rep.rank() >= 2)
        for (int id : lat.of_corank(2))
          if (!lat.indecomposable(id) && !cut.member[id]) marks.push_back(lat.flat_mask(id));
      MarkedConstellation mc = make_marked(rep, cut_flats, marks);
      if (seen.count(mc.key)) continue;
      seen.insert(mc.key);
      candidates.push_back({std::move(mc), rep.n(), lat.size()});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.atoms != b.atoms) return a.atoms < b.atoms;
    if (a.lattice_size != b.lattice_size) return a.lattice_size < b.lattice_size;
    return a.mc.key < b.mc.key;
  });

  std::vector<L3Entry> list;
  std::vector<std::string> listed_keys;
  for (SubClass c : {SubClass::C0, SubClass::C1, SubClass::C2a, SubClass::C2b}) {
    list.push_back(L3Entry{subclass_name(c), subclass_template(c), true, {}, {}});
    listed_keys.push_back(subclass_template(c).key);
  }

  int discovered = 0;
  for (const Candidate& cand : candidates) {
    bool already = std::find(listed_keys.begin(), listed_keys.end(), cand.mc.key) != listed_keys.end();
    if (already) continue;
    Constellation tau = cand.mc.to_constellation();
    SimplicialComplex complex = subconstellation_complex(tau, listed_keys);
    HomologyGroup h1 = safe_homology(complex, 1);
    HomologyGroup h2 = safe_homology(complex, 2);
    if (h1.trivial() && h2.trivial()) continue;
    auto known = subclass_by_key().find(cand.mc.key);
    std::string id = known != subclass_by_key().end() ? subclass_name(known->second)
                                                      : "new-" + std::to_string(++discovered);
    list.push_back(L3Entry{id, cand.mc, false, h1, h2});
    listed_keys.push_back(cand.mc.key);
  }
  return list;
}

}  // namespace tutte
