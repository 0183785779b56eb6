#ifndef TUTTE_FOUNDATION_HPP
#define TUTTE_FOUNDATION_HPP

#include "tutte/matroid.hpp"
#include "tutte/pasture.hpp"

namespace tutte {

/// The bipartite hyperplane incidence graph: (H, e) is an edge iff e lies
/// outside H, with a chosen maximal spanning forest.
struct IncidenceGraph {
  std::vector<Mask> hyperplanes;  // sorted by element list
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (hyperplane index, element), row major
  std::vector<char> forest;                // parallel to edges
  int components = 0;
  int forest_size() const;
};

/// Initial matrix: rows = hyperplanes, columns = elements. Entries are Zero
/// (e in H), One (forest edge) or a free variable id.
struct InitialMatrix {
  static constexpr int kZero = -2;
  static constexpr int kOne = -1;
  std::vector<Mask> hyperplanes;
  int n = 0;
  std::vector<std::vector<int>> entry;  // entry[h][e] in {kZero, kOne, var id}
  int num_vars = 0;
  std::vector<std::pair<int, int>> var_pos;  // var id -> (h, e)
};

enum class ForestPolicy {
  BfsSorted,    // breadth-first from the least element, sorted neighbors
  BfsReversed,  // breadth-first from the greatest element, reversed neighbors
};

std::pair<IncidenceGraph, InitialMatrix> initial_matrix(
    const Matroid& m, ForestPolicy policy = ForestPolicy::BfsSorted);

/// The defining relation set T of the foundation, in the matrix variables.
struct T1Instance {
  std::array<int, 3> hyps;   // indices into InitialMatrix::hyperplanes
  std::array<int, 3> elems;  // e_i in H_i - L
  MultRel rel;               // product = -1
};
struct T2Instance {
  std::array<int, 4> hyps;
  std::array<int, 4> elems;
  std::array<RawTerm, 3> rel;  // CR + CR - 1 in the null set
};
struct TRelations {
  std::vector<T1Instance> t1;
  std::vector<T2Instance> t2;
};

/// T1 over every modular triple and every choice of elements; T2 over every
/// modular quadruple with the minimal element choice. `paranoid` adds the
/// redundant instances (all orderings, all T2 element choices); the
/// resulting foundation is unchanged.
TRelations generate_relations(const Matroid& m, const InitialMatrix& a, bool paranoid = false);

struct CrossRatioIndex {
  int h1, h2, h3, h4;  // indices into the report's hyperplane list
  bool nondegenerate = false;
};

struct ClassificationFlags {
  bool regular = false;
  bool binary = false;
  bool ternary = false;
  bool wlum = false;
  bool orientable = false;
  bool dyadic_known = false;  // meaningful only when wlum and recognized
  bool dyadic = false;
  bool dressian_known = false;
  int dressian_m = 0;  // number of D factors
  int dressian_p = 0;  // number of U factors
  std::string to_string() const;
};

struct FoundationReport {
  Matroid m;
  IncidenceGraph graph;
  InitialMatrix matrix;
  TRelations relations;
  Pasture foundation;
  RecognizedStructure recognized;
  /// Canonical nondegenerate cross-ratio tuples and their values.
  std::vector<std::pair<CrossRatioIndex, PastureElement>> cross_ratios;
  ClassificationFlags flags;

  int hyperplane_index(Mask h) const;
};

FoundationReport foundation(const Matroid& m, bool paranoid = false,
                            ForestPolicy policy = ForestPolicy::BfsSorted);

/// The universal cross-ratio of a modular quadruple of hyperplanes, read off
/// the initial matrix. Throws when the tuple is not in Theta_M.
PastureElement universal_cross_ratio(const FoundationReport& report, Mask h1, Mask h2, Mask h3,
                                     Mask h4);
/// Element form (H1, H2, a, b) over Xi_M.
PastureElement universal_cross_ratio_elems(const FoundationReport& report, Mask h1, Mask h2, int a,
                                           int b);

/// GRS-style presentation: generators are the cross-ratio tuples modulo
/// their symmetry group, relations R-, R0, R1, R2, R3, R4, R+.
Pasture fundamental_presentation(const Matroid& m);

/// A family of hyperplane functions: values[h][e], Zero exactly on H.
struct RepresentationFamily {
  std::vector<Mask> hyperplanes;
  std::vector<std::vector<PastureElement>> values;
};

/// The representation predicate: every modular triple of distinct
/// hyperplanes is linearly dependent (anchors solved per the two-element
/// rule, then all columns checked).
bool is_representation(const Matroid& m, const Pasture& p, const RepresentationFamily& phi);

/// Restriction of a representation to a deletion M \ A.
RepresentationFamily restrict_representation(const Matroid& m, const Pasture& p,
                                             const RepresentationFamily& phi, Mask removed);

struct RepresentationCount {
  long long via_hom = 0;          // |Hom(F_M, P)|
  long long via_brute_force = 0;  // matrices extending the initial matrix
};
/// Both counts; they must agree (checked by the caller/tests).
RepresentationCount count_representations(const Matroid& m, const Pasture& p);
/// Variant reusing an already computed foundation report.
RepresentationCount count_representations(const FoundationReport& report, const Pasture& p);

ClassificationFlags classify(const Matroid& m);

struct RelationCheck {
  std::string relation;  // "Rsigma", "R0", ...
  long long instances = 0;
  long long failures = 0;
};
/// Evaluates every R-relation instance and the row-exchange identity inside
/// the computed foundation.
std::vector<RelationCheck> check_R_relations(const Matroid& m);

/// Structured text report (sections: presentation, cross-ratios, recognized,
/// flags).
std::string report_to_text(const FoundationReport& report);

}  // namespace tutte

#endif  // TUTTE_FOUNDATION_HPP
