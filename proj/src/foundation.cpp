#include "tutte/foundation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tutte {

namespace {

std::vector<Mask> sorted_hyperplanes(const Matroid& m) {
  FlatLattice lat{m};
  std::vector<Mask> hyps;
  for (int id : lat.hyperplanes()) hyps.push_back(lat.flat_mask(id));
  std::sort(hyps.begin(), hyps.end(),
            [](Mask a, Mask b) { return elements_of(a) < elements_of(b); });
  return hyps;
}

}  // namespace

int IncidenceGraph::forest_size() const {
  int k = 0;
  for (char f : forest) k += f;
  return k;
}

std::pair<IncidenceGraph, InitialMatrix> initial_matrix(const Matroid& m, ForestPolicy policy) {
  IncidenceGraph g;
  g.hyperplanes = sorted_hyperplanes(m);
  g.n = m.n();
  const int nh = (int)g.hyperplanes.size();
  std::vector<std::vector<int>> edge_at(nh, std::vector<int>(m.n(), -1));
  for (int h = 0; h < nh; ++h)
    for (int e = 0; e < m.n(); ++e)
      if (!contains(g.hyperplanes[h], e)) {
        edge_at[h][e] = (int)g.edges.size();
        g.edges.emplace_back(h, e);
      }
  g.forest.assign(g.edges.size(), 0);

  // Breadth-first forest over the bipartite graph, one tree per component.
  const bool reversed = policy == ForestPolicy::BfsReversed;
  std::vector<char> seen_elem(m.n(), 0), seen_hyp(nh, 0);
  std::vector<int> elem_order(m.n());
  std::iota(elem_order.begin(), elem_order.end(), 0);
  if (reversed) std::reverse(elem_order.begin(), elem_order.end());
  g.components = 0;
  for (int root : elem_order) {
    if (seen_elem[root]) continue;
    ++g.components;
    seen_elem[root] = 1;
    std::deque<std::pair<bool, int>> queue{{true, root}};  // (is_element, index)
    while (!queue.empty()) {
      auto [is_elem, v] = queue.front();
      queue.pop_front();
      if (is_elem) {
        for (int h = 0; h < nh; ++h) {
          int hh = reversed ? nh - 1 - h : h;
          if (seen_hyp[hh] || edge_at[hh][v] < 0) continue;
          seen_hyp[hh] = 1;
          g.forest[edge_at[hh][v]] = 1;
          queue.emplace_back(false, hh);
        }
      } else {
        for (int e = 0; e < m.n(); ++e) {
          int ee = reversed ? m.n() - 1 - e : e;
          if (seen_elem[ee] || edge_at[v][ee] < 0) continue;
          seen_elem[ee] = 1;
          g.forest[edge_at[v][ee]] = 1;
          queue.emplace_back(true, ee);
        }
      }
    }
  }
  if (g.forest_size() != m.n() + nh - g.components)
    throw TutteError("internal: spanning forest size mismatch");

  InitialMatrix a;
  a.hyperplanes = g.hyperplanes;
  a.n = m.n();
  a.entry.assign(nh, std::vector<int>(m.n(), InitialMatrix::kZero));
  for (int h = 0; h < nh; ++h)
    for (int e = 0; e < m.n(); ++e) {
      int idx = edge_at[h][e];
      if (idx < 0) continue;
      if (g.forest[idx]) {
        a.entry[h][e] = InitialMatrix::kOne;
      } else {
        a.entry[h][e] = a.num_vars;
        a.var_pos.emplace_back(h, e);
        ++a.num_vars;
      }
    }
  return {std::move(g), std::move(a)};
}

namespace {

// Hyperplane matrix indices grouped by the corank-2 flat they contain.
struct ModularData {
  std::vector<Mask> corank2;
  std::vector<std::vector<int>> hyps_over;  // sorted matrix indices
};

ModularData modular_data(const Matroid& m, const std::vector<Mask>& hyps) {
  FlatLattice lat{m};
  std::map<Mask, int> index;
  for (std::size_t i = 0; i < hyps.size(); ++i) index[hyps[i]] = (int)i;
  ModularData out;
  if (m.rank() < 2) return out;
  for (int id : lat.of_corank(2)) {
    out.corank2.push_back(lat.flat_mask(id));
    std::vector<int> over;
    for (int h : lat.hyperplanes_above(id)) over.push_back(index.at(lat.flat_mask(h)));
    std::sort(over.begin(), over.end());
    out.hyps_over.push_back(std::move(over));
  }
  return out;
}

void add_entry(const InitialMatrix& a, std::vector<long long>& exps, int h, int e, int exp) {
  int v = a.entry[h][e];
  if (v == InitialMatrix::kZero) throw TutteError("internal: relation touches a zero entry");
  if (v == InitialMatrix::kOne) return;
  exps[v] += exp;
}

std::vector<long long> cross_ratio_exps(const InitialMatrix& a, int h1, int h2, int e3, int e4) {
  std::vector<long long> exps(a.num_vars, 0);
  add_entry(a, exps, h1, e3, 1);
  add_entry(a, exps, h2, e4, 1);
  add_entry(a, exps, h1, e4, -1);
  add_entry(a, exps, h2, e3, -1);
  return exps;
}

}  // namespace

TRelations generate_relations(const Matroid& m, const InitialMatrix& a, bool paranoid) {
  TRelations out;
  ModularData md = modular_data(m, a.hyperplanes);
  for (std::size_t li = 0; li < md.corank2.size(); ++li) {
    Mask l = md.corank2[li];
    const std::vector<int>& over = md.hyps_over[li];
    const int k = (int)over.size();
    auto elems_off = [&](int h) { return elements_of(a.hyperplanes[h] & ~l); };
    // T1 for every triple and every choice of elements.
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int t = j + 1; t < k; ++t) {
          std::vector<std::array<int, 3>> triples{{over[i], over[j], over[t]}};
          if (paranoid) {
            std::array<int, 3> base{over[i], over[j], over[t]};
            triples.clear();
            std::sort(base.begin(), base.end());
            do triples.push_back(base);
            while (std::next_permutation(base.begin(), base.end()));
          }
          for (const auto& tri : triples)
            for (int e1 : elems_off(tri[0]))
              for (int e2 : elems_off(tri[1]))
                for (int e3 : elems_off(tri[2])) {
                  std::vector<long long> exps(a.num_vars, 0);
                  add_entry(a, exps, tri[0], e2, 1);
                  add_entry(a, exps, tri[1], e3, 1);
                  add_entry(a, exps, tri[2], e1, 1);
                  add_entry(a, exps, tri[0], e3, -1);
                  add_entry(a, exps, tri[1], e1, -1);
                  add_entry(a, exps, tri[2], e2, -1);
                  out.t1.push_back(T1Instance{{tri[0], tri[1], tri[2]},
                                              {e1, e2, e3},
                                              MultRel{std::move(exps), 1}});
                }
        }
    // T2 once per quadruple with minimal elements; all orderings and element
    // choices in paranoid mode.
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int t = j + 1; t < k; ++t)
          for (int u = t + 1; u < k; ++u) {
            std::vector<std::array<int, 4>> quads{{over[i], over[j], over[t], over[u]}};
            if (paranoid) {
              std::array<int, 4> base{over[i], over[j], over[t], over[u]};
              quads.clear();
              std::sort(base.begin(), base.end());
              do quads.push_back(base);
              while (std::next_permutation(base.begin(), base.end()));
            }
            for (const auto& q : quads) {
              std::vector<std::vector<int>> choices;
              for (int h : q) {
                auto all = elems_off(h);
                choices.push_back(paranoid ? all : std::vector<int>{all.front()});
              }
              for (int e2 : choices[1])
                for (int e3 : choices[2])
                  for (int e4 : choices[3]) {
                    RawTerm t1{false, 0, cross_ratio_exps(a, q[0], q[1], e3, e4)};
                    RawTerm t2{false, 0, cross_ratio_exps(a, q[0], q[2], e2, e4)};
                    RawTerm t3{false, 1, std::vector<long long>(a.num_vars, 0)};
                    out.t2.push_back(T2Instance{{q[0], q[1], q[2], q[3]},
                                                {choices[0][0], e2, e3, e4},
                                                {t1, t2, t3}});
                  }
            }
          }
  }
  return out;
}

int FoundationReport::hyperplane_index(Mask h) const {
  auto it = std::find(matrix.hyperplanes.begin(), matrix.hyperplanes.end(), h);
  if (it == matrix.hyperplanes.end()) throw TutteError(mask_to_string(h) + " is not a hyperplane");
  return (int)(it - matrix.hyperplanes.begin());
}

namespace {

PastureElement matrix_cross_ratio(const FoundationReport& r, int h1, int h2, int e3, int e4) {
  return r.foundation.element(0, cross_ratio_exps(r.matrix, h1, h2, e3, e4));
}

bool theta_member(const Matroid& m, const std::vector<Mask>& hyps, int h1, int h2, int h3, int h4,
                  Mask* l_out) {
  Mask m1 = hyps[h1], m2 = hyps[h2], m3 = hyps[h3], m4 = hyps[h4];
  Mask l = m1 & m2 & m3 & m4;
  if (m.rank_of(l) != m.rank() - 2 || !m.is_flat(l)) return false;
  for (Mask x : {m1 & m3, m1 & m4, m2 & m3, m2 & m4})
    if (x != l) return false;
  if (l_out) *l_out = l;
  return true;
}

ClassificationFlags compute_flags(const Matroid& m, const Pasture& f,
                                  const RecognizedStructure& rec) {
  ClassificationFlags flags;
  flags.regular = rec.recognized && rec.display == "F1pm";
  flags.binary = rec.recognized && (rec.display == "F1pm" || rec.display == "F2");
  flags.ternary = hom_count(f, Pasture::named("F3")) > 0;
  flags.orientable = hom_count(f, Pasture::named("S")) > 0;
  flags.wlum = !has_minor(m, catalog_matroid("U2,5")) && !has_minor(m, catalog_matroid("U3,5"));
  static const std::set<std::string> structure_factors{"F2", "F3", "H", "D", "U"};
  bool tensor_of_five = rec.recognized;
  for (const std::string& fac : rec.factors)
    if (!structure_factors.count(fac)) tensor_of_five = false;
  if (flags.wlum && !tensor_of_five)
    throw TutteError(
        "structure check failed: no large uniform minors but the foundation is not "
        "a tensor product of {F2,F3,H,D,U}");
  if (flags.wlum) {
    flags.dyadic_known = true;
    flags.dyadic = true;
    for (const std::string& fac : rec.factors)
      if (fac != "D" && fac != "U") flags.dyadic = false;
    flags.dressian_known = true;
    flags.dressian_m = (int)std::count(rec.factors.begin(), rec.factors.end(), "D");
    flags.dressian_p = (int)std::count(rec.factors.begin(), rec.factors.end(), "U");
  }
  return flags;
}

}  // namespace

std::string ClassificationFlags::to_string() const {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::string s;
  s += std::string("regular: ") + yn(regular) + "\n";
  s += std::string("binary: ") + yn(binary) + "\n";
  s += std::string("ternary: ") + yn(ternary) + "\n";
  s += std::string("without large uniform minors: ") + yn(wlum) + "\n";
  s += std::string("orientable: ") + yn(orientable) + "\n";
  if (dyadic_known) s += std::string("dyadic: ") + yn(dyadic) + "\n";
  if (dressian_known)
    s += "dressian shape (m, p): (" + std::to_string(dressian_m) + ", " +
         std::to_string(dressian_p) + "); lineality dimension not computed\n";
  return s;
}

FoundationReport foundation(const Matroid& m, bool paranoid, ForestPolicy policy) {
  auto [graph, matrix] = initial_matrix(m, policy);
  TRelations rels = generate_relations(m, matrix, paranoid);
  std::vector<std::string> gens;
  gens.reserve(matrix.num_vars);
  for (auto& [h, e] : matrix.var_pos)
    gens.push_back("x" + std::to_string(h) + "_" + std::to_string(e));
  std::vector<MultRel> mult;
  for (const T1Instance& t : rels.t1) mult.push_back(t.rel);
  std::vector<std::array<RawTerm, 3>> add;
  for (const T2Instance& t : rels.t2) add.push_back(t.rel);
  Pasture f = Pasture::present(std::move(gens), std::move(mult), std::move(add),
                               "F(" + (m.name().empty() ? "matroid" : m.name()) + ")");
  FoundationReport report{m,
                          std::move(graph),
                          std::move(matrix),
                          std::move(rels),
                          std::move(f),
                          RecognizedStructure{},
                          {},
                          {}};
  report.recognized = recognize(report.foundation);

  // Cross-ratio table over canonical nondegenerate tuples; the value is
  // independent of the choice of elements, which is asserted along the way.
  ModularData md = modular_data(m, report.matrix.hyperplanes);
  for (std::size_t li = 0; li < md.corank2.size(); ++li) {
    Mask l = md.corank2[li];
    const std::vector<int>& over = md.hyps_over[li];
    const int k = (int)over.size();
    if (k < 4) continue;
    for (int i1 = 0; i1 < k; ++i1)
      for (int i2 = i1 + 1; i2 < k; ++i2)
        for (int i3 = i1 + 1; i3 < k; ++i3)
          for (int i4 = i3 + 1; i4 < k; ++i4) {
            if (i3 == i2 || i4 == i2) continue;
            int h1 = over[i1], h2 = over[i2], h3 = over[i3], h4 = over[i4];
            auto e3s = elements_of(report.matrix.hyperplanes[h3] & ~l);
            auto e4s = elements_of(report.matrix.hyperplanes[h4] & ~l);
            PastureElement val = matrix_cross_ratio(report, h1, h2, e3s[0], e4s[0]);
            for (int a : e3s)
              for (int b : e4s)
                if (!(matrix_cross_ratio(report, h1, h2, a, b) == val))
                  throw TutteError("cross-ratio depends on the element choice");
            report.cross_ratios.push_back({CrossRatioIndex{h1, h2, h3, h4, true}, val});
          }
  }
  report.flags = compute_flags(m, report.foundation, report.recognized);
  return report;
}

PastureElement universal_cross_ratio(const FoundationReport& report, Mask h1, Mask h2, Mask h3,
                                     Mask h4) {
  int i1 = report.hyperplane_index(h1), i2 = report.hyperplane_index(h2);
  int i3 = report.hyperplane_index(h3), i4 = report.hyperplane_index(h4);
  Mask l = 0;
  if (!theta_member(report.m, report.matrix.hyperplanes, i1, i2, i3, i4, &l))
    throw TutteError("tuple is not a modular quadruple of hyperplanes");
  int a = elements_of(h3 & ~l)[0];
  int b = elements_of(h4 & ~l)[0];
  return matrix_cross_ratio(report, i1, i2, a, b);
}

PastureElement universal_cross_ratio_elems(const FoundationReport& report, Mask h1, Mask h2, int a,
                                           int b) {
  int i1 = report.hyperplane_index(h1), i2 = report.hyperplane_index(h2);
  const Matroid& m = report.m;
  if (contains(h1 | h2, a) || contains(h1 | h2, b))
    throw TutteError("cross-ratio elements must avoid both hyperplanes");
  if (h1 != h2 && m.rank_of(h1 & h2) != m.rank() - 2)
    throw TutteError("hyperplanes do not form a modular pair");
  return matrix_cross_ratio(report, i1, i2, a, b);
}

Pasture fundamental_presentation(const Matroid& m) {
  FlatLattice lat{m};
  std::vector<Mask> hyps = sorted_hyperplanes(m);
  std::map<Mask, int> hyp_index;
  for (std::size_t i = 0; i < hyps.size(); ++i) hyp_index[hyps[i]] = (int)i;
  ModularData md = modular_data(m, hyps);

  using Tuple = std::array<int, 4>;
  auto canon = [](Tuple t) {
    Tuple best = t;
    for (Tuple v : {Tuple{t[1], t[0], t[3], t[2]}, Tuple{t[2], t[3], t[0], t[1]},
                    Tuple{t[3], t[2], t[1], t[0]}})
      if (v < best) best = v;
    return best;
  };
  std::map<Tuple, int> gen_of;
  std::vector<Tuple> tuples;
  std::vector<char> degenerate;
  for (std::size_t li = 0; li < md.corank2.size(); ++li) {
    const std::vector<int>& over = md.hyps_over[li];
    for (int h1 : over)
      for (int h2 : over)
        for (int h3 : over)
          for (int h4 : over) {
            if (h1 == h3 || h1 == h4 || h2 == h3 || h2 == h4) continue;
            Tuple c = canon({h1, h2, h3, h4});
            if (gen_of.count(c)) continue;
            gen_of[c] = (int)tuples.size();
            tuples.push_back(c);
            degenerate.push_back(h1 == h2 || h3 == h4);
          }
  }
  const int ng = (int)tuples.size();
  auto gexp = [&](std::initializer_list<std::pair<Tuple, int>> terms) {
    std::vector<long long> e(ng, 0);
    for (auto& [t, c] : terms) e[gen_of.at(canon(t))] += c;
    return e;
  };

  std::vector<MultRel> mult;
  std::vector<std::array<RawTerm, 3>> add;
  std::set<std::vector<long long>> seen_mult;
  auto push_mult = [&](std::vector<long long> e, int sign) {
    bool all0 = std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; });
    if (all0 && sign == 0) return;
    auto key = e;
    key.push_back(sign);
    if (seen_mult.insert(key).second) mult.push_back(MultRel{std::move(e), sign});
  };

  // R-: the sign collapses in the presence of a Fano minor.
  if (has_minor(m, catalog_matroid("F7")) || has_minor(m, catalog_matroid("F7*")))
    push_mult(std::vector<long long>(ng, 0), 1);

  // R0: degenerate cross-ratios are trivial.
  for (int g = 0; g < ng; ++g)
    if (degenerate[g]) {
      std::vector<long long> e(ng, 0);
      e[g] = 1;
      push_mult(std::move(e), 0);
    }

  std::set<std::vector<std::vector<long long>>> seen_add;
  for (std::size_t li = 0; li < md.corank2.size(); ++li) {
    const std::vector<int>& over = md.hyps_over[li];
    const int k = (int)over.size();
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c)
          for (int d = 0; d < k; ++d) {
            int h1 = over[a], h2 = over[b], h3 = over[c], h4 = over[d];
            if (h1 == h2 || h3 == h4 || h1 == h3 || h1 == h4 || h2 == h3 || h2 == h4) continue;
            push_mult(gexp({{{h1, h2, h4, h3}, 1}, {{h1, h2, h3, h4}, 1}}), 0);  // R1
            push_mult(gexp({{{h1, h2, h3, h4}, 1}, {{h1, h3, h4, h2}, 1}, {{h1, h4, h2, h3}, 1}}),
                      1);  // R2
            {
              std::vector<long long> u = gexp({{{h1, h2, h3, h4}, 1}});
              std::vector<long long> v = gexp({{{h1, h3, h2, h4}, 1}});
              std::vector<std::vector<long long>> key{u, v};
              std::sort(key.begin(), key.end());
              if (seen_add.insert(key).second)
                add.push_back({RawTerm{false, 0, u}, RawTerm{false, 0, v},
                               RawTerm{false, 1, std::vector<long long>(ng, 0)}});  // R+
            }
            for (int e5 = 0; e5 < k; ++e5) {  // R3
              int h5 = over[e5];
              if (h5 == h1 || h5 == h2 || h5 == h3 || h5 == h4) continue;
              push_mult(
                  gexp({{{h1, h2, h3, h4}, 1}, {{h1, h2, h4, h5}, 1}, {{h1, h2, h5, h3}, 1}}), 0);
            }
          }
  }

  // R4: triple products over a corank-3 flat, indexed by five atoms.
  if (m.rank() >= 3) {
    for (int l3 : lat.of_corank(3)) {
      Mask lmask = lat.flat_mask(l3);
      std::vector<int> atoms;
      for (int a : lat.atoms())
        if (!lat.leq(a, l3)) atoms.push_back(a);
      const int na = (int)atoms.size();
      std::vector<int> pick;
      auto rec = [&](auto&& self) -> void {
        if (pick.size() == 5) {
          auto join_hyp = [&](int i, int j) -> int {
            Mask f = m.closure_mask(lmask | lat.flat_mask(atoms[pick[i]]) |
                                    lat.flat_mask(atoms[pick[j]]));
            if (m.rank_of(f) != m.rank() - 1) return -1;
            auto it = hyp_index.find(f);
            return it == hyp_index.end() ? -1 : it->second;
          };
          int h13 = join_hyp(0, 2), h23 = join_hyp(1, 2), h34 = join_hyp(2, 3),
              h35 = join_hyp(2, 4), h14 = join_hyp(0, 3), h24 = join_hyp(1, 3),
              h45 = join_hyp(3, 4), h15 = join_hyp(0, 4), h25 = join_hyp(1, 4);
          for (int h : {h13, h23, h34, h35, h14, h24, h45, h15, h25})
            if (h < 0) return;
          if (!theta_member(m, hyps, h13, h23, h34, h35, nullptr) ||
              !theta_member(m, hyps, h14, h24, h45, h34, nullptr) ||
              !theta_member(m, hyps, h15, h25, h35, h45, nullptr))
            return;
          push_mult(gexp({{{h13, h23, h34, h35}, 1},
                          {{h14, h24, h45, h34}, 1},
                          {{h15, h25, h35, h45}, 1}}),
                    0);
          return;
        }
        for (int i = 0; i < na; ++i) {
          if (std::find(pick.begin(), pick.end(), i) != pick.end()) continue;
          pick.push_back(i);
          self(self);
          pick.pop_back();
        }
      };
      rec(rec);
    }
  }

  std::vector<std::string> names;
  for (int g = 0; g < ng; ++g) names.push_back("q" + std::to_string(g));
  return Pasture::present(std::move(names), std::move(mult), std::move(add),
                          "Ffund(" + (m.name().empty() ? "matroid" : m.name()) + ")");
}

namespace {

struct TripleAnchors {
  int h1, h2, h3;
  int e1, e3;
};

std::vector<TripleAnchors> representation_triples(const Matroid& m,
                                                  const std::vector<Mask>& hyps) {
  ModularData md = modular_data(m, hyps);
  std::vector<TripleAnchors> out;
  for (std::size_t li = 0; li < md.corank2.size(); ++li) {
    Mask l = md.corank2[li];
    const std::vector<int>& over = md.hyps_over[li];
    for (std::size_t i = 0; i < over.size(); ++i)
      for (std::size_t j = i + 1; j < over.size(); ++j)
        for (std::size_t t = j + 1; t < over.size(); ++t) {
          int h1 = over[i], h2 = over[j], h3 = over[t];
          int e1 = elements_of(hyps[h1] & ~l)[0];
          int e3 = elements_of(hyps[h3] & ~l)[0];
          out.push_back(TripleAnchors{h1, h2, h3, e1, e3});
        }
  }
  return out;
}

bool check_representation(const Matroid& m, const Pasture& p, const RepresentationFamily& phi,
                          const std::vector<TripleAnchors>& triples) {
  for (const TripleAnchors& t : triples) {
    const auto& f1 = phi.values[t.h1];
    const auto& f2 = phi.values[t.h2];
    const auto& f3 = phi.values[t.h3];
    // a f1 + f2 + c f3 in the null set for all columns, with a and c solved
    // from the anchor elements.
    PastureElement c = p.neg(p.mul(f2[t.e1], p.inv(f3[t.e1])));
    PastureElement a = p.neg(p.mul(f2[t.e3], p.inv(f1[t.e3])));
    for (int e = 0; e < m.n(); ++e) {
      PastureElement x = f1[e].zero ? PastureElement::zero_elem() : p.mul(a, f1[e]);
      PastureElement z = f3[e].zero ? PastureElement::zero_elem() : p.mul(c, f3[e]);
      if (!p.nullset_contains(x, f2[e], z)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_representation(const Matroid& m, const Pasture& p, const RepresentationFamily& phi) {
  std::vector<Mask> hyps = sorted_hyperplanes(m);
  if (phi.hyperplanes != hyps || phi.values.size() != hyps.size())
    throw TutteError("representation family: hyperplane list mismatch");
  for (std::size_t h = 0; h < hyps.size(); ++h) {
    if ((int)phi.values[h].size() != m.n())
      throw TutteError("representation family: wrong row length");
    for (int e = 0; e < m.n(); ++e)
      if (phi.values[h][e].zero != contains(hyps[h], e))
        throw TutteError("representation family: support mismatch at hyperplane " +
                         mask_to_string(hyps[h]) + ", element " + std::to_string(e));
  }
  return check_representation(m, p, phi, representation_triples(m, hyps));
}

RepresentationFamily restrict_representation(const Matroid& m, const Pasture& p,
                                             const RepresentationFamily& phi, Mask removed) {
  (void)p;
  std::vector<int> labels;
  Matroid d = m.minor(MinorSpec{0, removed}, &labels);
  RepresentationFamily out;
  out.hyperplanes = sorted_hyperplanes(d);
  for (Mask hd : out.hyperplanes) {
    Mask horig = 0;
    for (int e : elements_of(hd)) horig |= bit(labels[e]);
    int found = -1;
    for (std::size_t h = 0; h < phi.hyperplanes.size(); ++h)
      if ((phi.hyperplanes[h] & ~removed) == horig) { found = (int)h; break; }
    if (found < 0) throw TutteError("restriction: no matching hyperplane");
    std::vector<PastureElement> row;
    for (int e = 0; e < d.n(); ++e) row.push_back(phi.values[found][labels[e]]);
    out.values.push_back(std::move(row));
  }
  return out;
}

RepresentationCount count_representations(const Matroid& m, const Pasture& p) {
  return count_representations(foundation(m), p);
}

RepresentationCount count_representations(const FoundationReport& report, const Pasture& p) {
  if (!p.finite_units()) throw TutteError("count: target pasture must have finite units");
  const Matroid& m = report.m;
  RepresentationCount out;
  out.via_hom = hom_count(report.foundation, p);

  // Independent route: depth-first search over the free entries with
  // multiplicative forcing, and the full representation predicate at every
  // complete assignment.
  const InitialMatrix& a = report.matrix;
  const std::vector<Mask>& hyps = a.hyperplanes;
  std::vector<TripleAnchors> triples = representation_triples(m, hyps);
  struct Constraint {
    std::vector<std::pair<int, int>> vars;  // (var id, exponent)
  };
  std::vector<Constraint> cons;
  std::vector<std::vector<int>> cons_of_var(a.num_vars);
  for (const T1Instance& t : report.relations.t1) {
    Constraint c;
    for (int v = 0; v < a.num_vars; ++v)
      if (t.rel.exponents[v] != 0) c.vars.emplace_back(v, (int)t.rel.exponents[v]);
    for (auto& [v, e] : c.vars) cons_of_var[v].push_back((int)cons.size());
    cons.push_back(std::move(c));
  }
  std::vector<PastureElement> units = p.all_units();
  std::vector<PastureElement> assign(a.num_vars);
  std::vector<char> is_set(a.num_vars, 0);
  PastureElement mone = p.minus_one();
  long long count = 0;

  auto eval_known = [&](const Constraint& c, int* unknown, int* unknown_exp) {
    *unknown = -1;
    *unknown_exp = 0;
    PastureElement prod = p.one();
    for (auto& [v, e] : c.vars) {
      if (is_set[v]) {
        prod = p.mul(prod, p.pow(assign[v], e));
      } else if (*unknown < 0) {
        *unknown = v;
        *unknown_exp = e;
      } else {
        *unknown = -2;
        return prod;
      }
    }
    return prod;
  };

  std::vector<int> trail;
  auto propagate = [&](int start, std::size_t trail_base) {
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int ci : cons_of_var[v]) {
        int unknown, exp;
        PastureElement prod = eval_known(cons[ci], &unknown, &exp);
        if (unknown == -2) continue;
        if (unknown == -1) {
          if (!(prod == mone)) {
            while (trail.size() > trail_base) {
              is_set[trail.back()] = 0;
              trail.pop_back();
            }
            return false;
          }
          continue;
        }
        PastureElement want = p.mul(mone, p.inv(prod));
        if (exp == -1) want = p.inv(want);
        assign[unknown] = want;
        is_set[unknown] = 1;
        trail.push_back(unknown);
        queue.push_back(unknown);
      }
    }
    return true;
  };

  RepresentationFamily family;
  family.hyperplanes = hyps;
  family.values.assign(hyps.size(), std::vector<PastureElement>((std::size_t)m.n()));
  auto rec = [&](auto&& self, int v) -> void {
    while (v < a.num_vars && is_set[v]) ++v;
    if (v == a.num_vars) {
      for (std::size_t h = 0; h < hyps.size(); ++h)
        for (int e = 0; e < m.n(); ++e) {
          int ent = a.entry[h][e];
          if (ent == InitialMatrix::kZero) family.values[h][e] = PastureElement::zero_elem();
          else if (ent == InitialMatrix::kOne) family.values[h][e] = p.one();
          else family.values[h][e] = assign[ent];
        }
      if (check_representation(m, p, family, triples)) ++count;
      return;
    }
    for (const PastureElement& u : units) {
      std::size_t base = trail.size();
      assign[v] = u;
      is_set[v] = 1;
      trail.push_back(v);
      if (propagate(v, base)) self(self, v + 1);
      while (trail.size() > base) {
        is_set[trail.back()] = 0;
        trail.pop_back();
      }
    }
  };
  rec(rec, 0);
  out.via_brute_force = count;
  return out;
}

ClassificationFlags classify(const Matroid& m) {
  FoundationReport report = foundation(m);
  ClassificationFlags flags = report.flags;
  // Cross-validation against the excluded-minor characterizations.
  bool u24 = has_minor(m, catalog_matroid("U2,4"));
  bool f7 = has_minor(m, catalog_matroid("F7"));
  bool f7d = has_minor(m, catalog_matroid("F7*"));
  bool u25 = has_minor(m, catalog_matroid("U2,5"));
  bool u35 = has_minor(m, catalog_matroid("U3,5"));
  if (flags.binary != !u24) throw TutteError("classification mismatch: binary flag vs U2,4 minor");
  if (flags.regular != (!u24 && !f7 && !f7d))
    throw TutteError("classification mismatch: regular flag vs excluded minors");
  if (flags.ternary != (!u25 && !u35 && !f7 && !f7d))
    throw TutteError("classification mismatch: ternary flag vs excluded minors");
  return flags;
}

std::vector<RelationCheck> check_R_relations(const Matroid& m) {
  FoundationReport r = foundation(m);
  const Pasture& f = r.foundation;
  ModularData md = modular_data(m, r.matrix.hyperplanes);
  FlatLattice lat{m};

  RelationCheck rsigma{"Rsigma", 0, 0}, r0{"R0", 0, 0}, r1{"R1", 0, 0}, r2{"R2", 0, 0},
      r3{"R3", 0, 0}, r4{"R4", 0, 0}, rplus{"R+", 0, 0}, rexch{"row-exchange", 0, 0};

  auto cr = [&](int h1, int h2, int h3, int h4, Mask l) {
    int a = elements_of(r.matrix.hyperplanes[h3] & ~l)[0];
    int b = elements_of(r.matrix.hyperplanes[h4] & ~l)[0];
    return matrix_cross_ratio(r, h1, h2, a, b);
  };

  for (std::size_t li = 0; li < md.corank2.size(); ++li) {
    Mask l = md.corank2[li];
    const std::vector<int>& over = md.hyps_over[li];
    const int k = (int)over.size();
    // R0: degenerate tuples are trivial, for every element choice.
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int t = 0; t < k; ++t) {
          if (i == j || t == i || t == j) continue;
          int h1 = over[i], h2 = over[j], h3 = over[t];
          auto es = elements_of(r.matrix.hyperplanes[h3] & ~l);
          for (int x : es)
            for (int y : es) {
              ++r0.instances;
              if (!(matrix_cross_ratio(r, h1, h2, x, y) == f.one())) ++r0.failures;
            }
        }
    if (k < 4) continue;
    for (int i1 = 0; i1 < k; ++i1)
      for (int i2 = 0; i2 < k; ++i2)
        for (int i3 = 0; i3 < k; ++i3)
          for (int i4 = 0; i4 < k; ++i4) {
            if (i1 == i2 || i1 == i3 || i1 == i4 || i2 == i3 || i2 == i4 || i3 == i4) continue;
            int h1 = over[i1], h2 = over[i2], h3 = over[i3], h4 = over[i4];
            PastureElement v = cr(h1, h2, h3, h4, l);
            ++rsigma.instances;
            if (!(cr(h2, h1, h4, h3, l) == v && cr(h3, h4, h1, h2, l) == v &&
                  cr(h4, h3, h2, h1, l) == v))
              ++rsigma.failures;
            ++r1.instances;
            if (!(cr(h1, h2, h4, h3, l) == f.inv(v))) ++r1.failures;
            ++r2.instances;
            PastureElement prod = f.mul(v, f.mul(cr(h1, h3, h4, h2, l), cr(h1, h4, h2, h3, l)));
            if (!(prod == f.minus_one())) ++r2.failures;
            ++rplus.instances;
            if (!f.nullset_contains(v, cr(h1, h3, h2, h4, l), f.minus_one())) ++rplus.failures;
            auto e1s = elements_of(r.matrix.hyperplanes[h1] & ~l);
            auto e2s = elements_of(r.matrix.hyperplanes[h2] & ~l);
            auto e3s = elements_of(r.matrix.hyperplanes[h3] & ~l);
            auto e4s = elements_of(r.matrix.hyperplanes[h4] & ~l);
            for (int e3 : e3s)
              for (int e4 : e4s)
                for (int e1 : e1s)
                  for (int e2 : e2s) {
                    ++rexch.instances;
                    if (!(matrix_cross_ratio(r, h1, h2, e3, e4) ==
                          matrix_cross_ratio(r, h3, h4, e1, e2)))
                      ++rexch.failures;
                  }
            for (int i5 = 0; i5 < k; ++i5) {
              if (i5 == i1 || i5 == i2 || i5 == i3 || i5 == i4) continue;
              int h5 = over[i5];
              ++r3.instances;
              PastureElement p3 = f.mul(v, f.mul(cr(h1, h2, h4, h5, l), cr(h1, h2, h5, h3, l)));
              if (!(p3 == f.one())) ++r3.failures;
            }
          }
  }

  if (m.rank() >= 3) {
    std::map<Mask, int> hyp_index;
    for (std::size_t i = 0; i < r.matrix.hyperplanes.size(); ++i)
      hyp_index[r.matrix.hyperplanes[i]] = (int)i;
    for (int l3 : lat.of_corank(3)) {
      Mask lmask = lat.flat_mask(l3);
      std::vector<int> atoms;
      for (int a : lat.atoms())
        if (!lat.leq(a, l3)) atoms.push_back(a);
      const int na = (int)atoms.size();
      std::vector<int> pick;
      auto rec2 = [&](auto&& self) -> void {
        if (pick.size() == 5) {
          auto join_hyp = [&](int i, int j) -> int {
            Mask fmask = r.m.closure_mask(lmask | lat.flat_mask(atoms[pick[i]]) |
                                          lat.flat_mask(atoms[pick[j]]));
            if (r.m.rank_of(fmask) != r.m.rank() - 1) return -1;
            auto it = hyp_index.find(fmask);
            return it == hyp_index.end() ? -1 : it->second;
          };
          int h13 = join_hyp(0, 2), h23 = join_hyp(1, 2), h34 = join_hyp(2, 3),
              h35 = join_hyp(2, 4), h14 = join_hyp(0, 3), h24 = join_hyp(1, 3),
              h45 = join_hyp(3, 4), h15 = join_hyp(0, 4), h25 = join_hyp(1, 4);
          for (int h : {h13, h23, h34, h35, h14, h24, h45, h15, h25})
            if (h < 0) return;
          Mask l1 = 0, l2 = 0, l5 = 0;
          if (!theta_member(r.m, r.matrix.hyperplanes, h13, h23, h34, h35, &l1) ||
              !theta_member(r.m, r.matrix.hyperplanes, h14, h24, h45, h34, &l2) ||
              !theta_member(r.m, r.matrix.hyperplanes, h15, h25, h35, h45, &l5))
            return;
          ++r4.instances;
          PastureElement prod = f.mul(
              cr(h13, h23, h34, h35, l1),
              f.mul(cr(h14, h24, h45, h34, l2), cr(h15, h25, h35, h45, l5)));
          if (!(prod == f.one())) ++r4.failures;
          return;
        }
        for (int i = 0; i < na; ++i) {
          if (std::find(pick.begin(), pick.end(), i) != pick.end()) continue;
          pick.push_back(i);
          self(self);
          pick.pop_back();
        }
      };
      rec2(rec2);
    }
  }

  return {rsigma, r0, r1, r2, r3, r4, rplus, rexch};
}

std::string report_to_text(const FoundationReport& r) {
  std::ostringstream out;
  out << "presentation\n";
  out << "  matroid: " << (r.m.name().empty() ? "(unnamed)" : r.m.name()) << ", n = " << r.m.n()
      << ", rank = " << r.m.rank() << "\n";
  out << "  incidence graph: " << r.graph.edges.size() << " edges, " << r.graph.forest_size()
      << " forest edges, " << r.matrix.num_vars << " free variables, " << r.graph.components
      << " component(s)\n";
  out << "  initial matrix (rows = hyperplanes, columns = elements):\n";
  for (std::size_t h = 0; h < r.matrix.hyperplanes.size(); ++h) {
    out << "    {" << mask_to_string(r.matrix.hyperplanes[h]) << "} :";
    for (int e = 0; e < r.matrix.n; ++e) {
      int ent = r.matrix.entry[h][e];
      if (ent == InitialMatrix::kZero) out << " 0";
      else if (ent == InitialMatrix::kOne) out << " 1";
      else out << " v" << ent;
    }
    out << "\n";
  }
  out << "  relations: " << r.relations.t1.size() << " multiplicative, " << r.relations.t2.size()
      << " additive\n";
  out << "  foundation: " << r.foundation.signature() << "\n";
  out << "cross-ratios\n";
  if (r.cross_ratios.empty()) out << "  (all universal cross-ratios are degenerate)\n";
  for (const auto& [idx, val] : r.cross_ratios) {
    out << "  <" << mask_to_string(r.matrix.hyperplanes[idx.h1]) << " , "
        << mask_to_string(r.matrix.hyperplanes[idx.h2]) << " | "
        << mask_to_string(r.matrix.hyperplanes[idx.h3]) << " , "
        << mask_to_string(r.matrix.hyperplanes[idx.h4]) << "> = " << r.foundation.to_string(val)
        << "\n";
  }
  out << "recognized\n  " << r.recognized.display << "\n";
  out << "flags\n";
  std::istringstream flags(r.flags.to_string());
  std::string line;
  while (std::getline(flags, line)) out << "  " << line << "\n";
  return out.str();
}

}  // namespace tutte
