#ifndef RIGIDITY_STRUCTURE_HPP
#define RIGIDITY_STRUCTURE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rigidity/bitvec.hpp"
#include "rigidity/perm.hpp"
#include "rigidity/vocabulary.hpp"

namespace rigidity {

// A finite relational structure on universe {0..n-1}: one bitmap per symbol
// over its full tuple space (n^arity bits, tuple index 0 = bit 0).  Mutation
// goes through set_tuple, which enforces the vocabulary's class: inadmissible
// tuples are rejected, and in the symmetric class the whole unordered orbit
// of a tuple is materialized.
class Structure {
public:
  Structure(Vocabulary vocab, int n);

  // 0-based points; one tuple list per symbol.
  static Structure from_tuples(Vocabulary vocab, int n,
                               const std::vector<std::vector<std::vector<int>>>& tuples);

  const Vocabulary& vocab() const { return vocab_; }
  int n() const { return n_; }

  bool has_tuple(int sym, const std::vector<int>& tuple) const;
  void set_tuple(int sym, const std::vector<int>& tuple, bool present = true);
  const BitVec& relation(int sym) const { return rels_[sym]; }

  bool operator==(const Structure&) const = default;

private:
  friend Structure decode_structure(const SlotLayout&, const BitVec&);
  friend Structure structure_of_free_mask(const SlotLayout&, const BitVec&);
  Vocabulary vocab_;
  int n_ = 0;
  std::vector<BitVec> rels_;
};

// The integer encoding of a structure: all relation bitmaps concatenated,
// symbol 0 least significant.  Inadmissible positions are always zero.
// Hex renders the value with the most significant nibble first, zero-padded
// to ceil(bits/4) digits.
struct StructureEncoding {
  BitVec bits;

  std::string to_hex() const;
  static StructureEncoding from_hex(const std::string& hex, std::uint64_t nbits);

  static int compare(const StructureEncoding& a, const StructureEncoding& b) {
    return BitVec::compare(a.bits, b.bits);
  }
  bool operator==(const StructureEncoding&) const = default;
};

StructureEncoding encode_structure(const SlotLayout& lay, const Structure& m);
Structure decode_structure(const SlotLayout& lay, const BitVec& enc);

// Free-mask view: one bit per admissible slot.  Enumeration and sampling
// work in this space; scatter/gather convert to full encodings.
BitVec free_mask_of(const SlotLayout& lay, const Structure& m);
Structure structure_of_free_mask(const SlotLayout& lay, const BitVec& mask);
BitVec scatter_free_mask(const SlotLayout& lay, const BitVec& mask);  // -> encoding bits

// Streams every structure over (vocab, n) in increasing encoding order;
// index i yields the structure whose free mask is the binary digits of i.
class StructureEnumerator {
public:
  StructureEnumerator(Vocabulary vocab, int n);

  std::uint64_t count() const { return std::uint64_t{1} << layout_.total_slots(); }
  Structure at(std::uint64_t index) const;
  StructureEncoding encoding_at(std::uint64_t index) const;
  const SlotLayout& layout() const { return layout_; }

private:
  SlotLayout layout_;
};

// One fair coin per admissible slot.  Consumes whole 64-bit words from the
// engine (LSB first within a word), so results are reproducible across
// platforms for a fixed seed.
BitVec draw_free_mask(const SlotLayout& lay, std::mt19937_64& rng);
Structure sample_structure(const Vocabulary& vocab, int n, std::mt19937_64& rng);

// Substructure induced on the (0-based, sorted) point set X, re-indexed
// order-preservingly to {0..|X|-1}.
Structure induced_substructure(const Structure& m, const std::vector<int>& X);

// f maps point i of A to f[i] of B.
bool is_isomorphism(const std::vector<int>& f, const Structure& A, const Structure& B);
std::vector<std::vector<int>> find_isomorphisms(const Structure& A, const Structure& B);

}  // namespace rigidity

#endif
