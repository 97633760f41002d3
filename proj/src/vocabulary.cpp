#include "rigidity/vocabulary.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace rigidity {

std::string to_string(StructureClass cls) {
  switch (cls) {
    case StructureClass::All: return "all";
    case StructureClass::Irreflexive: return "irreflexive";
    case StructureClass::IrreflexiveSymmetric: return "irreflexive-symmetric";
  }
  throw std::logic_error("bad StructureClass");
}

StructureClass structure_class_from_string(const std::string& s) {
  if (s == "all") return StructureClass::All;
  if (s == "irreflexive") return StructureClass::Irreflexive;
  if (s == "irreflexive-symmetric") return StructureClass::IrreflexiveSymmetric;
  throw std::invalid_argument("unknown structure class: " + s);
}

Vocabulary Vocabulary::make(std::vector<int> arities, StructureClass cls) {
  if (arities.empty()) throw std::invalid_argument("vocabulary needs at least one symbol");
  for (int a : arities) {
    if (a < 1) throw std::invalid_argument("arities must be >= 1");
    if (a > 16) throw std::invalid_argument("arity too large");
  }
  Vocabulary v;
  v.arities = std::move(arities);
  v.cls = cls;
  v.r = *std::max_element(v.arities.begin(), v.arities.end());
  for (int a : v.arities) {
    if (a == v.r) ++v.k;
    if (a == v.r - 1) ++v.l;
  }
  return v;
}

std::string Vocabulary::to_json_string() const {
  nlohmann::ordered_json j;
  j["arities"] = arities;
  j["class"] = to_string(cls);
  return j.dump();
}

Vocabulary Vocabulary::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object() || !j.contains("arities") || !j.contains("class"))
    throw std::invalid_argument("vocabulary JSON needs \"arities\" and \"class\"");
  std::vector<int> ar = j.at("arities").get<std::vector<int>>();
  StructureClass cls = structure_class_from_string(j.at("class").get<std::string>());
  return make(std::move(ar), cls);
}

std::uint64_t tuple_index(const int* tuple, int arity, int n) {
  std::uint64_t idx = 0;
  for (int j = 0; j < arity; ++j) idx = idx * n + static_cast<std::uint64_t>(tuple[j]);
  return idx;
}

void tuple_of_index(std::uint64_t idx, int n, int arity, int* out) {
  for (int j = arity - 1; j >= 0; --j) {
    out[j] = static_cast<int>(idx % n);
    idx /= n;
  }
}

namespace {

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t p = 1;
  while (e-- > 0) p *= b;
  return p;
}

// All orderings of the (distinct) points in `set`, as tuple indices, ascending.
std::vector<std::uint32_t> orderings_of(std::vector<int> set, int n) {
  std::sort(set.begin(), set.end());
  std::vector<std::uint32_t> out;
  do {
    out.push_back(static_cast<std::uint32_t>(
        tuple_index(set.data(), static_cast<int>(set.size()), n)));
  } while (std::next_permutation(set.begin(), set.end()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SlotLayout SlotLayout::build(const Vocabulary& vocab, int n) {
  if (n < 1) throw std::invalid_argument("universe size must be >= 1");
  SlotLayout lay;
  lay.vocab = vocab;
  lay.n = n;
  lay.slot_offset.push_back(0);
  lay.bit_offset.push_back(0);

  for (int a : vocab.arities) {
    Symbol sym;
    sym.arity = a;
    sym.tuple_space = pow_u64(static_cast<std::uint64_t>(n), a);
    if (sym.tuple_space > (std::uint64_t{1} << 30))
      throw std::invalid_argument("tuple space too large (n^arity > 2^30)");
    if (vocab.cls == StructureClass::All) {
      sym.identity = true;
    } else {
      sym.slot_of_tuple.assign(sym.tuple_space, -1);
      // Walk subsets of [n] of size a; for irreflexive every ordering is its
      // own slot, for irreflexive-symmetric the whole subset is one slot.
      if (a <= n) {
        std::vector<int> comb(a);
        for (int j = 0; j < a; ++j) comb[j] = j;
        while (true) {
          auto tuples = orderings_of(comb, n);
          if (vocab.cls == StructureClass::IrreflexiveSymmetric) {
            sym.slots.push_back(tuples);
          } else {
            for (std::uint32_t t : tuples) sym.slots.push_back({t});
          }
          // next combination
          int j = a - 1;
          while (j >= 0 && comb[j] == n - a + j) --j;
          if (j < 0) break;
          ++comb[j];
          for (int m = j + 1; m < a; ++m) comb[m] = comb[m - 1] + 1;
        }
      }
      std::sort(sym.slots.begin(), sym.slots.end(),
                [](const auto& x, const auto& y) { return x.back() < y.back(); });
      for (std::size_t si = 0; si < sym.slots.size(); ++si)
        for (std::uint32_t t : sym.slots[si])
          sym.slot_of_tuple[t] = static_cast<std::int64_t>(si);
    }
    lay.slot_offset.push_back(lay.slot_offset.back() + sym.slot_count());
    lay.bit_offset.push_back(lay.bit_offset.back() + sym.tuple_space);
    lay.symbols.push_back(std::move(sym));
  }
  return lay;
}

}  // namespace rigidity
