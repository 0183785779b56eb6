#ifndef TUTTE_SUBCONSTELLATION_HPP
#define TUTTE_SUBCONSTELLATION_HPP

#include <map>

#include "tutte/constellation.hpp"

namespace tutte {

/// A marked subconstellation of an ambient constellation: an upper
/// sublattice with the induced cut and induced marks. Marks follow the rule
/// for nested marked constellations: a corank-2 flat of the sublattice,
/// decomposable inside it and off its cut, is marked iff it is marked in the
/// ambient constellation or indecomposable there.
struct Subconstellation {
  std::vector<int> flat_ids;   // sorted by (rank, mask); determines the sublattice
  MinorSpec witness;
  int bottom = -1;
  std::vector<int> cut_ids;    // subset of flat_ids
  std::vector<int> mark_ids;   // subset of flat_ids
  std::string key;             // canonical marked-constellation key
};

/// All marked subconstellations of tau (one per distinct upper sublattice).
std::vector<Subconstellation> subconstellations(const Constellation& tau);

/// Induce cut/marks/key on a given upper sublattice of tau.
Subconstellation induce(const Constellation& tau, const UpperSublattice& sub);

/// A standalone marked constellation, used for class templates and as the
/// unit of the higher-homotopy search. Always carried by a simple matroid.
struct MarkedConstellation {
  Matroid m;
  std::vector<Mask> cut_flats;
  std::vector<Mask> mark_flats;
  std::string key;       // canonical (lattice, cut, marks) key
  std::string name;      // catalog-style description, e.g. "U3,4 | cut {...}"

  Constellation to_constellation() const;
};

MarkedConstellation make_marked(Matroid m, std::vector<Mask> cut_flats,
                                std::vector<Mask> mark_flats);

/// Canonical key of (sublattice, cut, marks) encoded over the sublattice's
/// atoms. An empty `with_marks` channel is used when matching path templates.
std::string subconstellation_key(const FlatLattice& lat, const std::vector<int>& flat_ids,
                                 const std::vector<int>& cut_ids, const std::vector<int>& mark_ids);

/// The named subconstellation classes of the topological reformulation.
enum class SubClass { C0, C1, C2a, C2b, C2c, C2d, C3a, C3b, C3c, C3d };
const char* subclass_name(SubClass c);
const MarkedConstellation& subclass_template(SubClass c);
/// Key -> class lookup over the named templates.
const std::map<std::string, SubClass>& subclass_by_key();

}  // namespace tutte

#endif  // TUTTE_SUBCONSTELLATION_HPP
