#include "rigidity/automorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rigidity {

namespace {

constexpr int kMaxN = 8;

// Isomorphism-invariant point signature: for every symbol and coordinate
// position, how many present tuples have the point at that position.
std::vector<std::vector<int>> point_signatures(const Structure& m) {
  int n = m.n();
  int cols = 0;
  for (int a : m.vocab().arities) cols += a;
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(n), std::vector<int>(cols, 0));
  int col = 0;
  for (int sym = 0; sym < m.vocab().symbol_count(); ++sym) {
    int ar = m.vocab().arities[sym];
    std::vector<int> tup(ar);
    for (std::uint64_t t = 0; t < m.relation(sym).size(); ++t) {
      if (!m.relation(sym).test(t)) continue;
      tuple_of_index(t, n, ar, tup.data());
      for (int j = 0; j < ar; ++j) ++sig[tup[j]][col + j];
    }
    col += ar;
  }
  return sig;
}

bool preserves(const Structure& m, const std::vector<int>& g) {
  for (int sym = 0; sym < m.vocab().symbol_count(); ++sym) {
    int ar = m.vocab().arities[sym];
    const BitVec& rel = m.relation(sym);
    std::vector<int> tup(ar), img(ar);
    for (std::uint64_t t = 0; t < rel.size(); ++t) {
      tuple_of_index(t, m.n(), ar, tup.data());
      for (int j = 0; j < ar; ++j) img[j] = g[tup[j]];
      if (rel.test(t) != rel.test(tuple_index(img.data(), ar, m.n()))) return false;
    }
  }
  return true;
}

}  // namespace

PermGroup automorphism_group(const Structure& m) {
  int n = m.n();
  if (n > kMaxN) throw std::invalid_argument("automorphism search guarded to n <= 8");

  std::vector<std::vector<int>> sig = point_signatures(m);
  std::vector<int> g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), 0);

  std::vector<Permutation> elems;
  do {
    bool compatible = true;
    for (int i = 0; i < n; ++i)
      if (sig[i] != sig[g[i]]) { compatible = false; break; }
    if (!compatible || !preserves(m, g)) continue;
    std::vector<std::uint8_t> imgs(g.begin(), g.end());
    elems.push_back(Permutation::from_images(std::move(imgs)));
  } while (std::next_permutation(g.begin(), g.end()));

  // The invariant permutations form a group by construction.
  return PermGroup::from_elements_unchecked(std::move(elems));
}

AutProfile profile(const Structure& m) {
  AutProfile pr;
  pr.group = automorphism_group(m);
  for (const Permutation& g : pr.group.elements())
    pr.spt = std::max(pr.spt, static_cast<int>(g.moved_points().size()));
  pr.spt_star_set = pr.group.support();
  pr.spt_star = static_cast<int>(pr.spt_star_set.size());
  pr.restricted = pr.group.restrict_to(pr.spt_star_set);
  pr.stats = pr.restricted.orbit_stats();
  pr.cls = classify(pr.group);
  return pr;
}

bigint fixed_structure_count(const Permutation& g, const Vocabulary& vocab, int n) {
  if (g.degree() != n) throw std::invalid_argument("permutation degree must equal n");
  SlotLayout lay = SlotLayout::build(vocab, n);

  // Count cycles of the induced action of g on the slots of each symbol.
  std::uint64_t cycles = 0;
  std::vector<int> tup(static_cast<std::size_t>(vocab.r));
  for (int sym = 0; sym < vocab.symbol_count(); ++sym) {
    const SlotLayout::Symbol& sy = lay.symbols[sym];
    int ar = sy.arity;
    std::uint64_t cnt = sy.slot_count();
    std::vector<bool> seen(cnt, false);
    auto image = [&](std::uint64_t slot) -> std::uint64_t {
      std::uint64_t t = sy.identity ? slot : sy.slots[slot][0];
      tuple_of_index(t, n, ar, tup.data());
      for (int j = 0; j < ar; ++j) tup[j] = g(tup[j]);
      std::uint64_t ti = tuple_index(tup.data(), ar, n);
      return sy.identity ? ti : static_cast<std::uint64_t>(sy.slot_of_tuple[ti]);
    };
    for (std::uint64_t s = 0; s < cnt; ++s) {
      if (seen[s]) continue;
      ++cycles;
      for (std::uint64_t j = s; !seen[j]; j = image(j)) seen[j] = true;
    }
  }
  return bigint(1) << cycles;
}

bigint unlabelled_count(const Vocabulary& vocab, int n) {
  if (n > kMaxN) throw std::invalid_argument("unlabelled counting guarded to n <= 8");
  std::vector<int> g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), 0);
  bigint sum = 0;
  bigint fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  do {
    std::vector<std::uint8_t> imgs(g.begin(), g.end());
    sum += fixed_structure_count(Permutation::from_images(std::move(imgs)), vocab, n);
  } while (std::next_permutation(g.begin(), g.end()));
  if (sum % fact != 0) throw std::logic_error("orbit-count average is not an integer");
  return sum / fact;
}

StructureEncoding canonical_form(const Structure& m) {
  int n = m.n();
  if (n > kMaxN) throw std::invalid_argument("canonical form guarded to n <= 8");
  SlotLayout lay = SlotLayout::build(m.vocab(), n);
  StructureEncoding best = encode_structure(lay, m);

  std::vector<int> g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), 0);
  std::vector<int> tup;
  do {
    // Encoding of the relabeled structure g(m): tuple t present iff
    // g^{-1}(t) present in m; build it as image positions of m's bits.
    BitVec enc(lay.total_bits());
    for (int sym = 0; sym < m.vocab().symbol_count(); ++sym) {
      int ar = m.vocab().arities[sym];
      tup.resize(static_cast<std::size_t>(ar));
      const BitVec& rel = m.relation(sym);
      std::uint64_t base = lay.bit_offset[sym];
      for (std::uint64_t t = 0; t < rel.size(); ++t) {
        if (!rel.test(t)) continue;
        tuple_of_index(t, n, ar, tup.data());
        for (int j = 0; j < ar; ++j) tup[j] = g[tup[j]];
        enc.set(base + tuple_index(tup.data(), ar, n));
      }
    }
    if (BitVec::compare(enc, best.bits) < 0) best.bits = std::move(enc);
  } while (std::next_permutation(g.begin(), g.end()));
  return best;
}

}  // namespace rigidity
