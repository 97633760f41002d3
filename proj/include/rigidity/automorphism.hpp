#ifndef RIGIDITY_AUTOMORPHISM_HPP
#define RIGIDITY_AUTOMORPHISM_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "rigidity/perm_group.hpp"
#include "rigidity/structure.hpp"

namespace rigidity {

using bigint = boost::multiprecision::cpp_int;

// Everything the census and the theory checks need to know about one
// structure's symmetry.  Rigid structures have spt = spt_star = 0, an empty
// spt_star_set and a degree-0 restricted group.
struct AutProfile {
  PermGroup group;               // Aut(M) on the full universe
  int spt = 0;                   // max #points moved by a single automorphism
  int spt_star = 0;              // |spt_star_set|
  std::vector<int> spt_star_set; // union of the non-singleton orbits (= support)
  PermGroup restricted;          // Aut(M) cut down to spt_star_set, re-indexed
  OrbitStats stats;              // orbit statistics of `restricted`
  GroupClass cls;                // abstract class of Aut(M)
};

// Exact automorphism group by scanning Sym_n with a per-point incidence
// pre-filter.  Guarded to n <= 8.
PermGroup automorphism_group(const Structure& m);

AutProfile profile(const Structure& m);

// |{M in the class : g preserves M}| = 2^(number of cycles of g on the
// admissible slots).  Exact at any width.
bigint fixed_structure_count(const Permutation& g, const Vocabulary& vocab, int n);

// Number of isomorphism classes of structures over (vocab, n), as the
// average of fixed_structure_count over Sym_n.  Guarded to n <= 8.
bigint unlabelled_count(const Vocabulary& vocab, int n);

// Minimal encoding among all relabelings of m.  Two structures are
// isomorphic iff their canonical forms are equal.  Shares the n <= 8 guard;
// at full enumeration scale intended for n <= 5.
StructureEncoding canonical_form(const Structure& m);

}  // namespace rigidity

#endif
