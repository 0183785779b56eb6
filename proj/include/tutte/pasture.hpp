#ifndef TUTTE_PASTURE_HPP
#define TUTTE_PASTURE_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tutte/matroid.hpp"  // TutteError

namespace tutte {

/// An element of a presented pasture in canonical unit-group coordinates:
/// Zero, or an integer vector with torsion entries reduced modulo their
/// moduli. The sign -1 is an ordinary group element here.
struct PastureElement {
  bool zero = true;
  std::vector<long long> coords;

  static PastureElement zero_elem() { return PastureElement{}; }
  bool operator==(const PastureElement& o) const { return zero == o.zero && coords == o.coords; }
  bool operator<(const PastureElement& o) const {
    if (zero != o.zero) return zero;  // Zero sorts first
    return coords < o.coords;
  }
};

/// A raw multiplicative relation: prod gens^exp * (-1)^sign = 1.
struct MultRel {
  std::vector<long long> exponents;
  int sign = 0;
};

/// A raw additive term: Zero or (sign, exponent vector).
struct RawTerm {
  bool zero = true;
  int sign = 0;  // 0 -> +, 1 -> -
  std::vector<long long> exponents;
};

/// A finitely presented pasture: a finitely generated unit group given by a
/// sign generator and multiplicative relations, together with a null set
/// generated by three-term relations (closed under scaling and permutation).
/// Canonical form = integer normal form of the relation matrix plus
/// normalized orbit representatives of the additive relations.
class Pasture {
 public:
  /// From a raw presentation. Two-term additive relations become
  /// multiplicative identifications b = -a; (a,0,0) with a != 0 is rejected.
  static Pasture present(std::vector<std::string> gen_names, std::vector<MultRel> mult,
                         std::vector<std::array<RawTerm, 3>> additive, std::string name = "");
  /// Named pastures: F1pm, K, S, F2, F3, F4, F5, F7, F8, F9 (GF(q), q <= 9),
  /// U, D, H, V.
  static Pasture named(const std::string& label);
  /// Text format: lines "gens: x y", "mul: x^2*y^-1 = -1", "add: x + y - 1".
  static Pasture parse(const std::string& text, const std::string& name = "");

  const std::string& name() const { return name_; }
  const std::vector<std::string>& gen_names() const { return gen_names_; }

  // Canonical unit group invariants.
  int free_rank() const { return free_rank_; }
  const std::vector<long long>& torsion() const { return torsion_; }
  bool minus_one_is_one() const { return minus_one_trivial_; }
  bool finite_units() const { return free_rank_ == 0; }
  long long unit_group_order() const;  // throws if infinite

  int num_coords() const { return (int)moduli_.size(); }
  const std::vector<long long>& moduli() const { return moduli_; }  // 0 = free

  PastureElement one() const;
  PastureElement minus_one() const;
  PastureElement generator(int raw_index) const;  // canonical coords of a raw generator
  PastureElement mul(const PastureElement& a, const PastureElement& b) const;
  PastureElement inv(const PastureElement& a) const;
  PastureElement neg(const PastureElement& a) const { return mul(a, minus_one()); }
  PastureElement pow(const PastureElement& a, long long e) const;
  /// Element from raw data (sign, exponents over the raw generators).
  PastureElement element(int sign, const std::vector<long long>& exponents) const;
  /// A raw representative (generator exponents plus sign exponent, length
  /// m + 1) of a canonical element.
  std::vector<long long> raw_coords(const PastureElement& a) const;
  /// Parse "x*y^-1", "-1", "1" over the generator names.
  PastureElement parse_element(const std::string& text) const;
  std::string to_string(const PastureElement& a) const;

  /// All unit-group elements (finite groups only).
  std::vector<PastureElement> all_units() const;

  /// Null-set membership of (a, b, c) up to permutation and scaling.
  bool nullset_contains(const PastureElement& a, const PastureElement& b,
                        const PastureElement& c) const;
  /// Canonical orbit representatives of the three-nonzero-term part of the
  /// null set, each of the form (1, u, v) with u <= v.
  const std::vector<std::array<PastureElement, 3>>& null_orbits() const { return null_orbits_; }
  /// Canonical representative of the scaling/permutation orbit of a triple
  /// of nonzero elements.
  std::array<PastureElement, 3> orbit_rep(const std::array<PastureElement, 3>& t) const;

  /// Pairs (z, t) with z + t - 1 in the null set; the first components are
  /// the fundamental elements.
  std::vector<std::pair<PastureElement, PastureElement>> fundamental_pairs() const;

  /// Raw presentation access (used by tensor and quotients).
  const std::vector<MultRel>& raw_mult() const { return mult_; }
  const std::vector<std::array<RawTerm, 3>>& raw_additive() const { return additive_; }

  /// Extra multiplicative identifications a = b (elements in canonical
  /// coordinates), yielding a quotient pasture.
  Pasture quotient_identify(const std::vector<std::pair<PastureElement, PastureElement>>& pairs,
                            const std::string& name = "") const;

  std::string signature() const;  // human-readable canonical summary

 private:
  friend Pasture tensor(const Pasture& p, const Pasture& q);
  Pasture() = default;
  void canonicalize();
  PastureElement from_raw(const std::vector<long long>& raw) const;  // raw = gens + sign coord

  std::string name_;
  std::vector<std::string> gen_names_;
  std::vector<MultRel> mult_;
  std::vector<std::array<RawTerm, 3>> additive_;  // all-nonzero triples only

  // Canonical data.
  std::vector<long long> moduli_;  // per canonical coordinate; 0 = free
  int free_rank_ = 0;
  std::vector<long long> torsion_;  // moduli > 1, ascending
  bool minus_one_trivial_ = false;
  std::vector<std::vector<long long>> raw_to_canon_;   // row per raw coord
  std::vector<std::vector<long long>> canon_to_raw_;   // row per canonical coord
  std::vector<std::array<PastureElement, 3>> null_orbits_;
};

struct PastureMorphism {
  std::vector<PastureElement> gen_images;  // per raw generator of the source
  // Action on arbitrary source elements:
  PastureElement apply(const Pasture& src, const Pasture& dst, const PastureElement& a) const;
};

/// Tensor product: presentations concatenated, signs identified.
Pasture tensor(const Pasture& p, const Pasture& q);

/// All pasture morphisms into a target with finite unit group.
std::vector<PastureMorphism> hom_enumerate(const Pasture& p, const Pasture& q);
long long hom_count(const Pasture& p, const Pasture& q);

/// Pasture isomorphisms P -> Q, found by matching null orbits; requires the
/// additive entries together with -1 to generate the source unit group
/// (throws otherwise). Complete for such presentations; with `first_only`
/// the search stops at the first isomorphism.
std::vector<PastureMorphism> pasture_isomorphisms(const Pasture& p, const Pasture& q,
                                                  bool first_only = false);
bool pasture_equivalent(const Pasture& p, const Pasture& q);

/// Structure recognition: a named pasture, a tensor multiset over
/// {F2, F3, H, D, U}, or unrecognized. Matches on unit-group invariants,
/// fundamental-element counts and the Hom fingerprint into the finite panel;
/// a mismatch on any channel yields "unrecognized".
struct RecognizedStructure {
  bool recognized = false;
  std::string display;                 // e.g. "U", "F2 (x) U", "unrecognized"
  std::vector<std::string> factors;    // tensor factors when recognized
};
RecognizedStructure recognize(const Pasture& p);

/// Hom counts into the panel {F2,F3,F4,F5,F7,F8,K,S}.
std::vector<long long> hom_fingerprint(const Pasture& p);
const std::vector<std::string>& fingerprint_panel();

}  // namespace tutte

#endif  // TUTTE_PASTURE_HPP
