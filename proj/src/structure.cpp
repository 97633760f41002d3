#include "rigidity/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace rigidity {

namespace {

void check_tuple(const Vocabulary& vocab, int sym, const std::vector<int>& tuple, int n) {
  if (sym < 0 || sym >= vocab.symbol_count()) throw std::invalid_argument("symbol out of range");
  if (static_cast<int>(tuple.size()) != vocab.arities[sym])
    throw std::invalid_argument("tuple arity mismatch");
  for (int a : tuple)
    if (a < 0 || a >= n) throw std::invalid_argument("tuple coordinate out of range");
  if (vocab.cls != StructureClass::All) {
    std::vector<int> s = tuple;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("tuple with repeated coordinate is inadmissible in this class");
  }
}

}  // namespace

Structure::Structure(Vocabulary vocab, int n) : vocab_(std::move(vocab)), n_(n) {
  if (n < 1) throw std::invalid_argument("universe size must be >= 1");
  for (int a : vocab_.arities) {
    std::uint64_t space = 1;
    for (int j = 0; j < a; ++j) space *= static_cast<std::uint64_t>(n);
    rels_.emplace_back(space);
  }
}

Structure Structure::from_tuples(Vocabulary vocab, int n,
                                 const std::vector<std::vector<std::vector<int>>>& tuples) {
  Structure m(std::move(vocab), n);
  if (tuples.size() > m.rels_.size()) throw std::invalid_argument("too many tuple lists");
  for (std::size_t sym = 0; sym < tuples.size(); ++sym)
    for (const auto& t : tuples[sym]) m.set_tuple(static_cast<int>(sym), t);
  return m;
}

bool Structure::has_tuple(int sym, const std::vector<int>& tuple) const {
  if (sym < 0 || sym >= vocab_.symbol_count()) throw std::invalid_argument("symbol out of range");
  if (static_cast<int>(tuple.size()) != vocab_.arities[sym])
    throw std::invalid_argument("tuple arity mismatch");
  for (int a : tuple)
    if (a < 0 || a >= n_) throw std::invalid_argument("tuple coordinate out of range");
  return rels_[sym].test(tuple_index(tuple.data(), static_cast<int>(tuple.size()), n_));
}

void Structure::set_tuple(int sym, const std::vector<int>& tuple, bool present) {
  check_tuple(vocab_, sym, tuple, n_);
  if (vocab_.cls == StructureClass::IrreflexiveSymmetric) {
    std::vector<int> s = tuple;
    std::sort(s.begin(), s.end());
    do {
      rels_[sym].set(tuple_index(s.data(), static_cast<int>(s.size()), n_), present);
    } while (std::next_permutation(s.begin(), s.end()));
  } else {
    rels_[sym].set(tuple_index(tuple.data(), static_cast<int>(tuple.size()), n_), present);
  }
}

// ---------------------------------------------------------------------------
// Encoding

std::string StructureEncoding::to_hex() const {
  std::uint64_t digits = (bits.size() + 3) / 4;
  std::string out(digits, '0');
  static const char* kHex = "0123456789abcdef";
  for (std::uint64_t d = 0; d < digits; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      std::uint64_t pos = d * 4 + b;
      if (pos < bits.size() && bits.test(pos)) v |= 1 << b;
    }
    out[digits - 1 - d] = kHex[v];  // most significant nibble first
  }
  return out;
}

StructureEncoding StructureEncoding::from_hex(const std::string& hex, std::uint64_t nbits) {
  std::uint64_t digits = (nbits + 3) / 4;
  if (hex.size() != digits)
    throw std::invalid_argument("hex encoding has wrong length (want " + std::to_string(digits) +
                                " digits)");
  StructureEncoding enc{BitVec(nbits)};
  for (std::uint64_t d = 0; d < digits; ++d) {
    char c = hex[digits - 1 - d];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit in encoding");
    for (int b = 0; b < 4; ++b) {
      std::uint64_t pos = d * 4 + b;
      if (v & (1 << b)) {
        if (pos >= nbits) throw std::invalid_argument("hex encoding sets bits beyond width");
        enc.bits.set(pos);
      }
    }
  }
  return enc;
}

StructureEncoding encode_structure(const SlotLayout& lay, const Structure& m) {
  if (!(m.vocab() == lay.vocab) || m.n() != lay.n)
    throw std::invalid_argument("layout does not match structure");
  StructureEncoding enc{BitVec(lay.total_bits())};
  for (int sym = 0; sym < lay.vocab.symbol_count(); ++sym) {
    const BitVec& rel = m.relation(sym);
    std::uint64_t base = lay.bit_offset[sym];
    for (std::uint64_t t = 0; t < rel.size(); ++t)
      if (rel.test(t)) enc.bits.set(base + t);
  }
  return enc;
}

Structure decode_structure(const SlotLayout& lay, const BitVec& enc) {
  if (enc.size() != lay.total_bits()) throw std::invalid_argument("encoding has wrong width");
  Structure m(lay.vocab, lay.n);
  for (int sym = 0; sym < lay.vocab.symbol_count(); ++sym) {
    const SlotLayout::Symbol& sy = lay.symbols[sym];
    std::uint64_t base = lay.bit_offset[sym];
    for (std::uint64_t t = 0; t < sy.tuple_space; ++t) {
      if (!enc.test(base + t)) continue;
      if (!sy.identity && sy.slot_of_tuple[t] < 0)
        throw std::invalid_argument("encoding sets an inadmissible tuple bit");
      m.rels_[sym].set(t);
    }
    // In the symmetric class a set bit must come with its whole orbit.
    if (lay.vocab.cls == StructureClass::IrreflexiveSymmetric) {
      for (const auto& slot : sy.slots) {
        bool first = enc.test(base + slot[0]);
        for (std::uint32_t t : slot)
          if (enc.test(base + t) != first)
            throw std::invalid_argument("encoding is not closed under coordinate permutation");
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Free-mask view

BitVec free_mask_of(const SlotLayout& lay, const Structure& m) {
  if (!(m.vocab() == lay.vocab) || m.n() != lay.n)
    throw std::invalid_argument("layout does not match structure");
  BitVec mask(lay.total_slots());
  for (int sym = 0; sym < lay.vocab.symbol_count(); ++sym) {
    const SlotLayout::Symbol& sy = lay.symbols[sym];
    const BitVec& rel = m.relation(sym);
    std::uint64_t base = lay.slot_offset[sym];
    if (sy.identity) {
      for (std::uint64_t t = 0; t < sy.tuple_space; ++t)
        if (rel.test(t)) mask.set(base + t);
    } else {
      for (std::size_t s = 0; s < sy.slots.size(); ++s)
        if (rel.test(sy.slots[s][0])) mask.set(base + s);
    }
  }
  return mask;
}

Structure structure_of_free_mask(const SlotLayout& lay, const BitVec& mask) {
  if (mask.size() != lay.total_slots()) throw std::invalid_argument("free mask has wrong width");
  Structure m(lay.vocab, lay.n);
  for (int sym = 0; sym < lay.vocab.symbol_count(); ++sym) {
    const SlotLayout::Symbol& sy = lay.symbols[sym];
    std::uint64_t base = lay.slot_offset[sym];
    if (sy.identity) {
      for (std::uint64_t t = 0; t < sy.tuple_space; ++t)
        if (mask.test(base + t)) m.rels_[sym].set(t);
    } else {
      for (std::size_t s = 0; s < sy.slots.size(); ++s)
        if (mask.test(base + s))
          for (std::uint32_t t : sy.slots[s]) m.rels_[sym].set(t);
    }
  }
  return m;
}

BitVec scatter_free_mask(const SlotLayout& lay, const BitVec& mask) {
  if (mask.size() != lay.total_slots()) throw std::invalid_argument("free mask has wrong width");
  BitVec enc(lay.total_bits());
  for (int sym = 0; sym < lay.vocab.symbol_count(); ++sym) {
    const SlotLayout::Symbol& sy = lay.symbols[sym];
    std::uint64_t sbase = lay.slot_offset[sym];
    std::uint64_t bbase = lay.bit_offset[sym];
    if (sy.identity) {
      for (std::uint64_t t = 0; t < sy.tuple_space; ++t)
        if (mask.test(sbase + t)) enc.set(bbase + t);
    } else {
      for (std::size_t s = 0; s < sy.slots.size(); ++s)
        if (mask.test(sbase + s))
          for (std::uint32_t t : sy.slots[s]) enc.set(bbase + t);
    }
  }
  return enc;
}

// ---------------------------------------------------------------------------
// Enumeration and sampling

StructureEnumerator::StructureEnumerator(Vocabulary vocab, int n)
    : layout_(SlotLayout::build(vocab, n)) {
  if (layout_.total_slots() > 62)
    throw std::invalid_argument("enumeration space exceeds 2^62 structures");
}

Structure StructureEnumerator::at(std::uint64_t index) const {
  if (index >= count()) throw std::invalid_argument("enumeration index out of range");
  BitVec mask(layout_.total_slots());
  if (!mask.words().empty()) mask.words()[0] = index;
  return structure_of_free_mask(layout_, mask);
}

StructureEncoding StructureEnumerator::encoding_at(std::uint64_t index) const {
  if (index >= count()) throw std::invalid_argument("enumeration index out of range");
  BitVec mask(layout_.total_slots());
  if (!mask.words().empty()) mask.words()[0] = index;
  return StructureEncoding{scatter_free_mask(layout_, mask)};
}

BitVec draw_free_mask(const SlotLayout& lay, std::mt19937_64& rng) {
  BitVec mask(lay.total_slots());
  for (auto& w : mask.words()) w = rng();
  mask.mask_tail();
  return mask;
}

Structure sample_structure(const Vocabulary& vocab, int n, std::mt19937_64& rng) {
  SlotLayout lay = SlotLayout::build(vocab, n);
  return structure_of_free_mask(lay, draw_free_mask(lay, rng));
}

// ---------------------------------------------------------------------------
// Substructures and isomorphisms

Structure induced_substructure(const Structure& m, const std::vector<int>& X) {
  if (X.empty()) throw std::invalid_argument("induced substructure needs a nonempty point set");
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i] < 0 || X[i] >= m.n()) throw std::invalid_argument("point out of range");
    if (i > 0 && X[i] <= X[i - 1])
      throw std::invalid_argument("point set must be sorted and distinct");
  }
  Structure out(m.vocab(), static_cast<int>(X.size()));
  for (int sym = 0; sym < m.vocab().symbol_count(); ++sym) {
    int ar = m.vocab().arities[sym];
    std::vector<int> idx(ar, 0), tup(ar), sub(ar);
    while (true) {
      for (int j = 0; j < ar; ++j) {
        tup[j] = X[idx[j]];
        sub[j] = idx[j];
      }
      if (m.relation(sym).test(tuple_index(tup.data(), ar, m.n()))) out.set_tuple(sym, sub);
      int j = ar - 1;
      while (j >= 0 && idx[j] == static_cast<int>(X.size()) - 1) idx[j--] = 0;
      if (j < 0) break;
      ++idx[j];
    }
  }
  return out;
}

bool is_isomorphism(const std::vector<int>& f, const Structure& A, const Structure& B) {
  if (!(A.vocab() == B.vocab())) throw std::invalid_argument("vocabulary mismatch");
  if (A.n() != B.n() || static_cast<int>(f.size()) != A.n()) return false;
  std::vector<bool> hit(static_cast<std::size_t>(B.n()), false);
  for (int v : f) {
    if (v < 0 || v >= B.n() || hit[v]) return false;
    hit[v] = true;
  }
  for (int sym = 0; sym < A.vocab().symbol_count(); ++sym) {
    int ar = A.vocab().arities[sym];
    std::vector<int> tup(ar), img(ar);
    for (std::uint64_t t = 0; t < A.relation(sym).size(); ++t) {
      tuple_of_index(t, A.n(), ar, tup.data());
      for (int j = 0; j < ar; ++j) img[j] = f[tup[j]];
      if (A.relation(sym).test(t) != B.relation(sym).test(tuple_index(img.data(), ar, B.n())))
        return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> find_isomorphisms(const Structure& A, const Structure& B) {
  std::vector<std::vector<int>> out;
  if (A.n() != B.n()) return out;
  if (A.n() > 8) throw std::invalid_argument("isomorphism search guarded to n <= 8");
  std::vector<int> f(static_cast<std::size_t>(A.n()));
  for (int i = 0; i < A.n(); ++i) f[i] = i;
  do {
    if (is_isomorphism(f, A, B)) out.push_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return out;
}

}  // namespace rigidity
