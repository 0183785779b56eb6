#ifndef TUTTE_MATROID_HPP
#define TUTTE_MATROID_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tutte {

/// Element subsets of a ground set {0..n-1}, n <= 12, as bitmasks.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int e) { return Mask{1} << e; }
inline bool contains(Mask s, int e) { return (s >> e) & 1u; }

/// Lists the elements of a mask in increasing order.
std::vector<int> elements_of(Mask s);
Mask mask_of(const std::vector<int>& elems);
/// "1 3 4" style rendering; "{}" for the empty set.
std::string mask_to_string(Mask s);

struct TutteError : std::runtime_error {
  explicit TutteError(const std::string& what) : std::runtime_error(what) {}
};

struct Flat {
  Mask elements = 0;
  int rank = 0;
  int corank = 0;
};

struct MinorSpec {
  Mask contract = 0;  // independent set I
  Mask remove = 0;    // coindependent set J, disjoint from I
};

/// A matroid given by its list of bases. Immutable after construction;
/// rank/closure tables are built eagerly so queries are plain lookups.
class Matroid {
 public:
  /// Validates basis sizes and the exchange axiom; throws TutteError with a
  /// witness on failure.
  static Matroid from_bases(int n, std::vector<Mask> bases, std::string name = "");

  int n() const { return n_; }
  int rank() const { return r_; }
  Mask ground() const { return ground_; }
  const std::vector<Mask>& bases() const { return bases_; }
  const std::string& name() const { return name_; }

  int rank_of(Mask s) const { return rank_tab_[s]; }
  /// Independent-set greedy rank; an independent second route used to
  /// cross-check rank_of.
  int rank_of_greedy(Mask s) const;
  bool independent(Mask s) const { return rank_of(s) == popcount(s); }
  bool coindependent(Mask s) const { return rank_of(ground_ & ~s) == r_; }
  bool spanning(Mask s) const { return rank_of(s) == r_; }

  Mask closure_mask(Mask s) const { return closure_tab_[s]; }
  Flat closure(Mask s) const;
  bool is_flat(Mask s) const { return closure_mask(s) == s; }
  Flat flat(Mask s) const;  // throws if s is not a flat

  bool is_loop(int e) const { return rank_of(bit(e)) == 0; }
  bool is_coloop(int e) const { return rank_of(ground_ & ~bit(e)) < r_; }
  /// A matroid is simple when it has no loops and no parallel pairs.
  bool is_simple() const;

  /// Minimal dependent sets.
  const std::vector<Mask>& circuits() const;
  /// Partition of the ground set into connected components.
  const std::vector<Mask>& components() const;
  bool connected() const { return components().size() == 1; }

  Matroid dual() const;
  /// M / contract \ remove, relabeled onto 0..n'-1. label_map[i] gives the
  /// original element behind new element i.
  Matroid minor(const MinorSpec& spec, std::vector<int>* label_map = nullptr) const;
  /// Contraction by an arbitrary subset (an independent transversal is chosen
  /// internally); used for flat indecomposability.
  Matroid contract(Mask s, std::vector<int>* label_map = nullptr) const;

  bool operator==(const Matroid& o) const { return n_ == o.n_ && bases_ == o.bases_; }

 private:
  Matroid() = default;
  void build_tables();

  int n_ = 0;
  int r_ = 0;
  Mask ground_ = 0;
  std::vector<Mask> bases_;  // sorted
  std::string name_;
  std::vector<std::int8_t> rank_tab_;
  std::vector<Mask> closure_tab_;
  mutable std::vector<Mask> circuits_;
  mutable bool circuits_done_ = false;
  mutable std::vector<Mask> components_;
  mutable bool components_done_ = false;
};

Matroid direct_sum(const Matroid& a, const Matroid& b);

/// Deletes loops and all but the least element of each parallel class.
Matroid simplification(const Matroid& m);

/// Exact element-level isomorphism (ground set bijection mapping bases onto
/// bases). Returns one witness bijection if any.
std::optional<std::vector<int>> matroid_isomorphism(const Matroid& a, const Matroid& b);

/// The lattice of flats, with joins, meets, covers and per-flat
/// indecomposability. Owns a copy of the matroid.
class FlatLattice {
 public:
  explicit FlatLattice(Matroid m);

  const Matroid& matroid() const { return m_; }
  int size() const { return (int)flats_.size(); }
  Mask flat_mask(int id) const { return flats_[id]; }
  int id_of(Mask f) const;  // -1 if not a flat
  int rank_of(int id) const { return flat_rank_[id]; }
  int corank_of(int id) const { return m_.rank() - flat_rank_[id]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  /// Flat ids of the given rank / corank, sorted by element set.
  std::vector<int> of_rank(int k) const;
  std::vector<int> of_corank(int d) const;
  const std::vector<int>& atoms() const { return atoms_; }
  const std::vector<int>& hyperplanes() const { return hyperplanes_; }

  int join(int a, int b) const { return id_of(m_.closure_mask(flats_[a] | flats_[b])); }
  int meet(int a, int b) const { return id_of(flats_[a] & flats_[b]); }
  bool leq(int a, int b) const { return (flats_[a] & ~flats_[b]) == 0; }
  bool modular_pair(int a, int b) const;

  /// Hyperplanes containing the given flat.
  const std::vector<int>& hyperplanes_above(int id) const { return hyps_above_[id]; }
  /// True when the contraction of the matroid by this flat is connected.
  bool indecomposable(int id) const { return indecomposable_[id] != 0; }

  /// Semimodularity and atomisticity, checked exhaustively (test support).
  bool is_geometric() const;

 private:
  Matroid m_;
  std::vector<Mask> flats_;      // sorted by (rank, mask)
  std::vector<int> flat_rank_;
  std::vector<int> level_begin_;  // index of first flat of each rank, size r+2
  int bottom_ = 0, top_ = 0;
  std::vector<int> atoms_;
  std::vector<int> hyperplanes_;
  std::vector<std::vector<int>> hyps_above_;
  std::vector<std::int8_t> indecomposable_;
};

/// Abstract lattice fingerprint: flats encoded as atom sets, minimized over
/// atom permutations. Two geometric lattices are isomorphic iff their keys
/// agree. `cut`/`marks` (optional flat-id subsets) participate in the key,
/// giving canonical forms of marked constellations.
std::string lattice_canonical_key(const std::vector<Mask>& flats_as_atom_sets,
                                  const std::vector<Mask>& cut_as_atom_sets,
                                  const std::vector<Mask>& marks_as_atom_sets);

/// Canonical key of the lattice of flats of a matroid (its simplification's
/// isomorphism class, by Birkhoff's theorem).
std::string lattice_key(const Matroid& m);

/// Flats of a sublattice re-encoded over the sublattice's own atoms, in the
/// order of `flat_ids` sorted by (rank, mask). `sub_atoms` receives the flat
/// ids serving as atoms.
std::vector<Mask> sublattice_atom_encoding(const FlatLattice& lat, const std::vector<int>& flat_ids,
                                           std::vector<int>* sub_atoms = nullptr);

/// Embedded-minor search. Tests lattice isomorphism when `n` is simple and
/// exact element bijection otherwise; returns a witness spec when found.
bool has_minor(const Matroid& m, const Matroid& n, MinorSpec* witness = nullptr);

struct UpperSublattice {
  std::vector<int> flat_ids;      // sorted ids into the ambient lattice
  MinorSpec witness;              // one (I, J) pair realizing it
};

/// All distinct upper sublattices of lat isomorphic (as lattices) to the
/// lattice of flats of the simple matroid `n`.
std::vector<UpperSublattice> upper_sublattices_of_type(const FlatLattice& lat, const Matroid& n);

/// All distinct upper sublattices of any type.
std::vector<UpperSublattice> all_upper_sublattices(const FlatLattice& lat);

/// Named catalog: U{r},{n} (r<=4, n<=8), F7, F7*, C5, MK4, MK4-, MK23,
/// U~2,3, U~3,4; any name may carry a trailing * for the dual, and names may
/// be joined with + for direct sums.
Matroid catalog_matroid(const std::string& name);
bool is_catalog_name(const std::string& name);

/// Text format: first line "n r", then one basis per line, 0-based indices.
Matroid parse_matroid_text(const std::string& text, const std::string& name = "");
std::string matroid_to_text(const Matroid& m);

}  // namespace tutte

#endif  // TUTTE_MATROID_HPP
