#ifndef TUTTE_HOMOLOGY_HPP
#define TUTTE_HOMOLOGY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "tutte/subconstellation.hpp"

namespace tutte {

using Int = boost::multiprecision::cpp_int;

/// Dense matrix of exact integers, row major.
struct IntegerMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntegerMatrix() = default;
  IntegerMatrix(int r, int c) : rows(r), cols(c), a((std::size_t)r * c) {}
  Int& at(int i, int j) { return a[(std::size_t)i * cols + j]; }
  const Int& at(int i, int j) const { return a[(std::size_t)i * cols + j]; }
};

/// Nonzero diagonal of the Smith normal form, d1 | d2 | ..., all positive.
std::vector<Int> smith_normal_form(const IntegerMatrix& m);
int matrix_rank(const IntegerMatrix& m);

struct HomologyGroup {
  int degree = 0;
  long free_rank = 0;
  std::vector<Int> torsion;  // successive divisors, each > 1

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string to_string() const;  // "0", "Z", "Z^2", "Z/2", "Z + Z/2", ...
};

/// Faces stored by dimension; vertex lists sorted ascending. Downward closed.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Builds the downward closure of the given faces. Vertex count is implied
  /// by `labels` (isolated vertices allowed).
  static SimplicialComplex from_faces(std::vector<std::string> labels,
                                      const std::vector<std::vector<int>>& faces);

  int num_vertices() const { return (int)labels_.size(); }
  int dimension() const { return (int)faces_.size() - 1; }
  const std::vector<std::vector<int>>& faces(int dim) const;
  const std::vector<std::string>& labels() const { return labels_; }
  long euler_characteristic() const;
  std::string dump() const;  // one face per line, vertex labels

  IntegerMatrix boundary_matrix(int k) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::vector<int>>> faces_;  // faces_[k] sorted
};

HomologyGroup homology_of_complex(const SimplicialComplex& k, int degree);
std::vector<HomologyGroup> all_homology(const SimplicialComplex& k);

/// Order complex of the poset of subconstellations of tau whose canonical
/// keys lie in `allowed`; vertices labeled by their minor spec.
SimplicialComplex subconstellation_complex(const Constellation& tau,
                                           const std::vector<std::string>& allowed_keys);

/// The complexes Sigma^tau_0, Sigma^tau_1, Sigma^tau_2 (levels 0, 1, 2 admit
/// classes {0}, {0,1}, {0,1,2a-2d}).
SimplicialComplex sigma_complex(const Constellation& tau, int level);
/// Level-2 complex with a chosen class set, e.g. dropping 2d.
SimplicialComplex sigma_complex_with_classes(const Constellation& tau,
                                             const std::vector<SubClass>& classes);

struct L3Entry {
  std::string id;              // "0", "1", "2a", ..., or "new-<k>"
  MarkedConstellation tmpl;
  bool seeded = false;         // part of the base list
  HomologyGroup h1, h2;        // of Sigma^{<tau}_3 (meaningless when seeded)
};

/// Recursive search for subconstellation classes forced by nonvanishing
/// homology, over all marked constellations with at most max_atoms atoms
/// (max 5). A class is appended when H1 or H2 of its complex is nonzero.
std::vector<L3Entry> search_l3(int max_atoms);

}  // namespace tutte

#endif  // TUTTE_HOMOLOGY_HPP
