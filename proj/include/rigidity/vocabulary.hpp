#ifndef RIGIDITY_VOCABULARY_HPP
#define RIGIDITY_VOCABULARY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rigidity {

// Which structures over a vocabulary are admitted.
//   All                  : every relation allowed
//   Irreflexive          : no tuple with a repeated coordinate
//   IrreflexiveSymmetric : irreflexive, and each relation closed under all
//                          coordinate permutations (one choice per support set)
enum class StructureClass { All, Irreflexive, IrreflexiveSymmetric };

std::string to_string(StructureClass cls);
StructureClass structure_class_from_string(const std::string& s);

// A finite relational vocabulary: one symbol per entry of `arities`.
// r is the maximum arity, k the number of symbols of arity r, l the number of
// arity r-1.  These are derived from `arities` and kept consistent.
struct Vocabulary {
  std::vector<int> arities;
  StructureClass cls = StructureClass::All;
  int r = 0;
  int k = 0;
  int l = 0;

  static Vocabulary make(std::vector<int> arities, StructureClass cls);

  int symbol_count() const { return static_cast<int>(arities.size()); }

  bool operator==(const Vocabulary& o) const {
    return arities == o.arities && cls == o.cls;
  }

  std::string to_json_string() const;
  static Vocabulary from_json_string(const std::string& text);
};

// Index of an ordered tuple (a_1..a_m), coordinates 0-based, first coordinate
// most significant: sum a_j * n^(m-j).
std::uint64_t tuple_index(const int* tuple, int arity, int n);
void tuple_of_index(std::uint64_t idx, int n, int arity, int* out);

// Per-(vocabulary, n) layout of the free slots a structure's bitmap is built
// from. In class All every tuple is its own slot.  Irreflexive drops tuples
// with repeated coordinates.  IrreflexiveSymmetric keeps one slot per
// unordered support set and materializes every ordering of it.
//
// Slots are ordered by the largest materialized tuple index they cover, so
// enumerating free masks as increasing integers also enumerates full
// encodings in increasing order.
struct SlotLayout {
  struct Symbol {
    int arity = 0;
    std::uint64_t tuple_space = 0;          // n^arity
    bool identity = false;                  // class All: slot i == tuple i
    std::vector<std::vector<std::uint32_t>> slots;  // materialized tuples per slot
    std::vector<std::int64_t> slot_of_tuple;        // tuple -> slot, -1 if inadmissible
    std::uint64_t slot_count() const {
      return identity ? tuple_space : slots.size();
    }
  };

  Vocabulary vocab;
  int n = 0;
  std::vector<Symbol> symbols;
  std::vector<std::uint64_t> slot_offset;   // size symbols+1; global slot ranges
  std::vector<std::uint64_t> bit_offset;    // size symbols+1; encoding bit ranges

  static SlotLayout build(const Vocabulary& vocab, int n);

  std::uint64_t total_slots() const { return slot_offset.back(); }
  std::uint64_t total_bits() const { return bit_offset.back(); }
};

}  // namespace rigidity

#endif
