#ifndef RIGIDITY_PERM_GROUP_HPP
#define RIGIDITY_PERM_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/perm.hpp"

namespace rigidity {

// Orbit data of a group acting on its own domain A = {0..degree-1}:
// p = |A|, q = number of point orbits, s = number of orbit(al)s on A x A.
struct OrbitStats {
  int p = 0;
  int q = 0;
  int s = 0;
  std::vector<std::vector<int>> point_orbits;                 // each sorted
  std::vector<std::vector<std::pair<int, int>>> pair_orbits;  // each sorted
};

// Abstract isomorphism-type label.  t counts the Z2 factors in the power
// classes; Other carries coarse invariants only.
struct GroupClass {
  enum class Tag { Trivial, Z2Power, Z3, Sym3, Z2PowerTimesZ3, Z2PowerTimesSym3, Other };
  Tag tag = Tag::Trivial;
  int t = 0;
  std::uint64_t order = 1;
  bool abelian = true;
  std::uint64_t exponent = 1;

  std::string to_string() const;
  static std::optional<GroupClass> parse(const std::string& text);

  bool operator==(const GroupClass&) const = default;
  bool operator<(const GroupClass& o) const;
};

// A finite permutation group given by its complete, lexicographically sorted
// element list, plus the generators it was built from.  Everything in scope
// is tiny (order <= a few thousand), so the dense representation is the
// convenient one.
class PermGroup {
public:
  // Empty placeholder (degree 0, no elements); assign a real group before use.
  PermGroup() = default;

  static PermGroup trivial(int degree);
  static PermGroup symmetric(int degree);
  // Closes the generators under composition.  All generators must share one
  // degree; mixed degrees are rejected.
  static PermGroup close(std::vector<Permutation> generators);
  // Accepts an element list that is already a group (validated), derives a
  // small generating set.
  static PermGroup from_elements(std::vector<Permutation> elements);
  // Same, but trusts the caller that the list is closed — skips the
  // quadratic closure check.  For internally constructed groups (stabilizer
  // scans, automorphism search) where closure holds by construction.
  static PermGroup from_elements_unchecked(std::vector<Permutation> elements);

  int degree() const { return degree_; }
  std::uint64_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  bool contains(const Permutation& g) const;
  bool is_abelian() const;
  std::uint64_t exponent() const;
  std::vector<long> element_orders() const;  // sorted ascending
  std::vector<Permutation> center() const;

  // Union of supports of the elements (sorted), i.e. every non-fixed point.
  std::vector<int> support() const;
  std::vector<int> fixed_points() const;
  bool has_fixed_point() const;

  OrbitStats orbit_stats() const;

  // Restriction to an invariant point set (must be a union of orbits),
  // re-indexed in ascending order of the given points.
  PermGroup restrict_to(const std::vector<int>& points) const;

  bool operator==(const PermGroup& o) const {
    return degree_ == o.degree_ && elements_ == o.elements_;
  }

private:
  int degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
};

// Support of an explicit element list (need not be a group).
std::vector<int> support_of(const std::vector<Permutation>& elems);

// Every subgroup of Sym(kdeg), kdeg <= 6.  Counts by degree 1..6:
// 1, 2, 6, 30, 156, 1455.
std::vector<PermGroup> subgroups_of_sym(int kdeg);

// Abstract group isomorphism (exact; fingerprints only prune the search).
bool are_isomorphic(const PermGroup& a, const PermGroup& b);

// Maps a group to its class label; depends only on the abstract
// isomorphism type.
GroupClass classify(const PermGroup& g);

}  // namespace rigidity

#endif
