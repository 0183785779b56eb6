#ifndef TUTTE_CONSTELLATION_HPP
#define TUTTE_CONSTELLATION_HPP

#include <memory>
#include <optional>

#include "tutte/matroid.hpp"

namespace tutte {

/// A modular cut, tied to a specific lattice of flats: upward closed and
/// closed under meets of modular pairs.
struct ModularCut {
  std::vector<int> flat_ids;   // sorted ascending
  std::vector<char> member;    // indexed by flat id
  bool contains(int id) const { return member[id] != 0; }
};

/// Validates the flat set as a modular cut; throws TutteError naming the
/// violated condition and a witness.
ModularCut validate_modular_cut(const FlatLattice& lat, const std::vector<Mask>& flats);
ModularCut trivial_cut(const FlatLattice& lat);
ModularCut principal_cut(const FlatLattice& lat, Mask f0);
ModularCut cut_from_ids(const FlatLattice& lat, std::vector<int> ids);

/// The unique nonempty modular cut whose hyperplane part equals the given
/// linear subclass (throws if the input is not a linear subclass).
ModularCut complete_linear_subclass(const FlatLattice& lat, const std::vector<Mask>& hyperplanes);

/// Every nonempty modular cut of the lattice, by exhaustive search over
/// upward-closed families with forced modular meets.
std::vector<ModularCut> all_modular_cuts(const FlatLattice& lat);

/// A Tutte constellation (lattice, modular cut), optionally marked with a
/// set Theta of decomposable corank-2 flats off the cut. Immutable.
class Constellation {
 public:
  Constellation(std::shared_ptr<const FlatLattice> lat, ModularCut cut,
                std::vector<int> marks = {});
  static Constellation make(Matroid m, std::vector<Mask> cut_flats,
                            std::vector<Mask> mark_flats = {});

  const FlatLattice& lattice() const { return *lat_; }
  std::shared_ptr<const FlatLattice> lattice_ptr() const { return lat_; }
  const Matroid& matroid() const { return lat_->matroid(); }
  const ModularCut& cut() const { return cut_; }
  bool in_cut(int flat_id) const { return cut_.member[flat_id] != 0; }
  const std::vector<int>& marks() const { return marks_; }
  bool marked(int flat_id) const { return marked_[flat_id] != 0; }
  /// Indecomposable in the lattice, or marked.
  bool edge_flat_ok(int flat_id) const {
    return lat_->indecomposable(flat_id) || marked(flat_id);
  }

 private:
  std::shared_ptr<const FlatLattice> lat_;
  ModularCut cut_;
  std::vector<int> marks_;       // sorted flat ids
  std::vector<char> marked_;
};

struct TutteGraph {
  std::vector<int> vertices;                       // hyperplane flat ids, sorted
  std::vector<std::array<int, 3>> edges;           // {u, v, meet flat id}, u < v
  bool connected = false;
  std::vector<std::vector<int>> adjacency;         // indexed like `vertices`
};

TutteGraph tutte_graph(const Constellation& tau);

/// Validates that `path` (hyperplane flat ids) is a Tutte path in tau;
/// throws naming the first violated condition. `closed`/`off_cut` add the
/// corresponding requirements; `on_flat` (if >= 0) requires every term to
/// contain that flat.
void validate_tutte_path(const Constellation& tau, const std::vector<int>& path, bool closed,
                         bool off_cut, int on_flat = -1);

/// Shortest Tutte path on F from X to Y off the cut (BFS). The path theorem
/// guarantees existence for a connected matroid and indecomposable F; a
/// missing path is reported as a TutteError.
std::vector<int> find_tutte_path(const Constellation& tau, Mask f, Mask x, Mask y);

struct PathClass {
  int kind = 0;                // 1..4
  int type = 0;                // 1..9
  std::string extended_type;   // isomorphism type of the extension N-hat
};

/// Matches a closed Tutte path off the cut against the elementary-path
/// templates; nullopt when no template applies.
std::optional<PathClass> classify_elementary(const Constellation& tau, const std::vector<int>& path);

/// Single-element extension of M determined by a nonempty modular cut; the
/// new element gets index n.
Matroid extend_by_cut(const FlatLattice& lat, const ModularCut& cut);

/// Inverse: the modular cut of M-hat \ a on the lattice of the deletion.
/// Returns the deletion's lattice together with the cut; label_map maps the
/// deletion's elements back to those of M-hat.
struct ExtensionCut {
  std::shared_ptr<const FlatLattice> lattice;
  ModularCut cut;
  std::vector<int> label_map;
};
ExtensionCut cut_of_extension(const Matroid& mhat, int a);

/// Cut file format: one flat per line as space-separated element indices,
/// `E` for the ground set; `trivial` and `principal:<elements>` shortcuts.
ModularCut parse_cut_spec(const FlatLattice& lat, const std::string& spec);
std::vector<Mask> parse_flat_lines(const std::string& text, int n);

}  // namespace tutte

#endif  // TUTTE_CONSTELLATION_HPP
