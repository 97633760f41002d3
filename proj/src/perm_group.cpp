#include "rigidity/perm_group.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace rigidity {

// ---------------------------------------------------------------------------
// GroupClass

std::string GroupClass::to_string() const {
  switch (tag) {
    case Tag::Trivial: return "Trivial";
    case Tag::Z2Power: return "Z2^" + std::to_string(t);
    case Tag::Z3: return "Z3";
    case Tag::Sym3: return "Sym3";
    case Tag::Z2PowerTimesZ3: return "Z2^" + std::to_string(t) + "xZ3";
    case Tag::Z2PowerTimesSym3: return "Z2^" + std::to_string(t) + "xSym3";
    case Tag::Other:
      return "Other(o=" + std::to_string(order) + ",ab=" + (abelian ? "1" : "0") +
             ",exp=" + std::to_string(exponent) + ")";
  }
  throw std::logic_error("bad GroupClass tag");
}

std::optional<GroupClass> GroupClass::parse(const std::string& text) {
  GroupClass c;
  if (text == "Trivial") return c;
  if (text == "Z3") { c.tag = Tag::Z3; c.order = 3; c.exponent = 3; return c; }
  if (text == "Sym3") { c.tag = Tag::Sym3; c.order = 6; c.abelian = false; c.exponent = 6; return c; }
  if (text.rfind("Z2^", 0) == 0) {
    std::size_t pos = 3;
    int t = 0;
    bool any = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      t = t * 10 + (text[pos++] - '0');
      any = true;
    }
    if (!any || t < 1) return std::nullopt;
    std::string rest = text.substr(pos);
    c.t = t;
    if (rest.empty()) {
      c.tag = Tag::Z2Power;
      c.order = std::uint64_t{1} << t;
      c.exponent = 2;
      return c;
    }
    if (rest == "xZ3") {
      c.tag = Tag::Z2PowerTimesZ3;
      c.order = std::uint64_t{3} << t;
      c.exponent = 6;
      return c;
    }
    if (rest == "xSym3") {
      c.tag = Tag::Z2PowerTimesSym3;
      c.order = std::uint64_t{6} << t;
      c.abelian = false;
      c.exponent = 6;
      return c;
    }
    return std::nullopt;
  }
  if (text.rfind("Other(o=", 0) == 0 && text.back() == ')') {
    std::uint64_t o = 0, e = 0;
    int ab = -1;
    if (std::sscanf(text.c_str(), "Other(o=%lu,ab=%d,exp=%lu)", &o, &ab, &e) == 3 &&
        (ab == 0 || ab == 1)) {
      c.tag = Tag::Other;
      c.order = o;
      c.abelian = ab == 1;
      c.exponent = e;
      return c;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

bool GroupClass::operator<(const GroupClass& o) const {
  auto key = [](const GroupClass& g) {
    return std::tuple(static_cast<int>(g.tag), g.t, g.order, g.abelian, g.exponent);
  };
  return key(*this) < key(o);
}

// ---------------------------------------------------------------------------
// PermGroup

namespace {

constexpr int kMaxDegree = 64;
constexpr std::uint64_t kMaxOrder = 1u << 20;

std::vector<Permutation> closure_of(const std::vector<Permutation>& gens, int degree) {
  std::set<Permutation> seen;
  seen.insert(Permutation::identity(degree));
  std::vector<Permutation> work(seen.begin(), seen.end());
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (const Permutation& g : gens) {
      Permutation h = work[i].after(g);
      if (seen.insert(h).second) {
        work.push_back(std::move(h));
        if (work.size() > kMaxOrder) throw std::runtime_error("group closure too large");
      }
    }
  }
  return {seen.begin(), seen.end()};  // std::set iterates in sorted order
}

}  // namespace

PermGroup PermGroup::trivial(int degree) {
  if (degree < 0 || degree > kMaxDegree) throw std::invalid_argument("bad group degree");
  PermGroup g;
  g.degree_ = degree;
  g.elements_.push_back(Permutation::identity(degree));
  return g;
}

PermGroup PermGroup::symmetric(int degree) {
  if (degree < 0 || degree > kMaxDegree) throw std::invalid_argument("bad group degree");
  if (degree <= 1) return trivial(degree);
  std::vector<std::uint8_t> cyc(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) cyc[i] = static_cast<std::uint8_t>((i + 1) % degree);
  std::vector<std::uint8_t> swp(static_cast<std::size_t>(degree));
  std::iota(swp.begin(), swp.end(), std::uint8_t{0});
  std::swap(swp[0], swp[1]);
  return close({Permutation::from_images(swp), Permutation::from_images(cyc)});
}

PermGroup PermGroup::close(std::vector<Permutation> generators) {
  if (generators.empty())
    throw std::invalid_argument("close needs at least one generator (use trivial() otherwise)");
  int deg = generators[0].degree();
  if (deg > kMaxDegree) throw std::invalid_argument("bad group degree");
  for (const Permutation& g : generators)
    if (g.degree() != deg) throw std::invalid_argument("generators have mixed degrees");
  PermGroup g;
  g.degree_ = deg;
  g.elements_ = closure_of(generators, deg);
  g.generators_ = std::move(generators);
  return g;
}

PermGroup PermGroup::from_elements(std::vector<Permutation> elements) {
  PermGroup g = from_elements_unchecked(std::move(elements));
  for (const Permutation& a : g.elements_)
    for (const Permutation& b : g.elements_) {
      Permutation p = a.after(b);
      if (!std::binary_search(g.elements_.begin(), g.elements_.end(), p))
        throw std::invalid_argument("element list is not closed under composition");
    }
  return g;
}

PermGroup PermGroup::from_elements_unchecked(std::vector<Permutation> elements) {
  if (elements.empty()) throw std::invalid_argument("element list is empty");
  int deg = elements[0].degree();
  for (const Permutation& g : elements)
    if (g.degree() != deg) throw std::invalid_argument("elements have mixed degrees");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.front().is_identity())
    throw std::invalid_argument("element list lacks the identity");
  PermGroup g;
  g.degree_ = deg;
  g.elements_ = std::move(elements);
  // Greedy generating set: adjoin the first element not yet generated.
  std::set<Permutation> have;
  have.insert(Permutation::identity(deg));
  for (const Permutation& e : g.elements_) {
    if (have.count(e)) continue;
    g.generators_.push_back(e);
    auto cl = closure_of(g.generators_, deg);
    have = std::set<Permutation>(cl.begin(), cl.end());
  }
  return g;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool PermGroup::is_abelian() const {
  for (const Permutation& a : generators_)
    for (const Permutation& b : generators_)
      if (a.after(b) != b.after(a)) return false;
  return true;
}

std::uint64_t PermGroup::exponent() const {
  std::uint64_t e = 1;
  for (const Permutation& g : elements_) e = std::lcm<std::uint64_t>(e, g.order());
  return e;
}

std::vector<long> PermGroup::element_orders() const {
  std::vector<long> out;
  out.reserve(elements_.size());
  for (const Permutation& g : elements_) out.push_back(g.order());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> PermGroup::center() const {
  std::vector<Permutation> out;
  for (const Permutation& g : elements_) {
    bool central = true;
    for (const Permutation& h : generators_)
      if (g.after(h) != h.after(g)) { central = false; break; }
    if (central) out.push_back(g);
  }
  return out;
}

std::vector<int> PermGroup::support() const {
  const std::vector<Permutation>& probe = generators_.empty() ? elements_ : generators_;
  return support_of(probe);
}

std::vector<int> PermGroup::fixed_points() const {
  std::vector<int> sup = support();
  std::vector<int> out;
  std::size_t si = 0;
  for (int i = 0; i < degree_; ++i) {
    if (si < sup.size() && sup[si] == i) { ++si; continue; }
    out.push_back(i);
  }
  return out;
}

bool PermGroup::has_fixed_point() const {
  return static_cast<int>(support().size()) < degree_;
}

OrbitStats PermGroup::orbit_stats() const {
  OrbitStats st;
  st.p = degree_;
  const std::vector<Permutation>& gens = generators_.empty() ? elements_ : generators_;

  std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
  for (int i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    std::vector<int> orb{i};
    seen[i] = true;
    for (std::size_t w = 0; w < orb.size(); ++w)
      for (const Permutation& g : gens) {
        int j = g(orb[w]);
        if (!seen[j]) { seen[j] = true; orb.push_back(j); }
      }
    std::sort(orb.begin(), orb.end());
    st.point_orbits.push_back(std::move(orb));
  }
  st.q = static_cast<int>(st.point_orbits.size());

  std::vector<bool> pseen(static_cast<std::size_t>(degree_) * degree_, false);
  for (int a = 0; a < degree_; ++a)
    for (int b = 0; b < degree_; ++b) {
      if (pseen[static_cast<std::size_t>(a) * degree_ + b]) continue;
      std::vector<std::pair<int, int>> orb{{a, b}};
      pseen[static_cast<std::size_t>(a) * degree_ + b] = true;
      for (std::size_t w = 0; w < orb.size(); ++w)
        for (const Permutation& g : gens) {
          std::pair<int, int> im{g(orb[w].first), g(orb[w].second)};
          std::size_t key = static_cast<std::size_t>(im.first) * degree_ + im.second;
          if (!pseen[key]) { pseen[key] = true; orb.push_back(im); }
        }
      std::sort(orb.begin(), orb.end());
      st.pair_orbits.push_back(std::move(orb));
    }
  st.s = static_cast<int>(st.pair_orbits.size());
  return st;
}

PermGroup PermGroup::restrict_to(const std::vector<int>& points) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < 0 || points[i] >= degree_)
      throw std::invalid_argument("restriction point out of range");
    if (i > 0 && points[i] <= points[i - 1])
      throw std::invalid_argument("restriction points must be sorted and distinct");
  }
  std::vector<int> pos(static_cast<std::size_t>(degree_), -1);
  for (std::size_t i = 0; i < points.size(); ++i) pos[points[i]] = static_cast<int>(i);

  std::vector<Permutation> restricted;
  for (const Permutation& g : elements_) {
    std::vector<std::uint8_t> imgs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      int im = g(points[i]);
      if (pos[im] < 0) throw std::invalid_argument("point set is not invariant under the group");
      imgs[i] = static_cast<std::uint8_t>(pos[im]);
    }
    restricted.push_back(Permutation::from_images(std::move(imgs)));
  }
  if (points.empty()) restricted.push_back(Permutation::identity(0));
  return from_elements(std::move(restricted));
}

std::vector<int> support_of(const std::vector<Permutation>& elems) {
  std::set<int> sup;
  for (const Permutation& g : elems)
    for (int p : g.moved_points()) sup.insert(p);
  return {sup.begin(), sup.end()};
}

// ---------------------------------------------------------------------------
// Dense index tables for subgroup enumeration and isomorphism testing.

namespace {

struct GroupTable {
  int N = 0;
  std::vector<Permutation> elems;    // sorted; index 0 is the identity
  std::vector<std::uint16_t> mult;   // mult[a*N+b] = index of elems[a] o elems[b]
  std::vector<long> ord;

  std::uint16_t mul(int a, int b) const { return mult[static_cast<std::size_t>(a) * N + b]; }

  int index_of(const Permutation& p) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), p);
    return static_cast<int>(it - elems.begin());
  }

  static GroupTable build(std::vector<Permutation> sorted_elems) {
    GroupTable t;
    t.elems = std::move(sorted_elems);
    t.N = static_cast<int>(t.elems.size());
    t.mult.resize(static_cast<std::size_t>(t.N) * t.N);
    for (int a = 0; a < t.N; ++a)
      for (int b = 0; b < t.N; ++b)
        t.mult[static_cast<std::size_t>(a) * t.N + b] =
            static_cast<std::uint16_t>(t.index_of(t.elems[a].after(t.elems[b])));
    t.ord.reserve(t.N);
    for (const Permutation& p : t.elems) t.ord.push_back(p.order());
    return t;
  }
};

// Closure of an index set under the table's multiplication.  Aborts early
// (returning the full group) once more than half the elements appear, since
// no proper subgroup can be that large.
std::vector<std::uint16_t> closure_idx(const GroupTable& t, std::vector<std::uint16_t> seed) {
  std::vector<bool> present(static_cast<std::size_t>(t.N), false);
  std::vector<std::uint16_t> mem;
  present[0] = true;
  mem.push_back(0);
  for (std::uint16_t s : seed)
    if (!present[s]) { present[s] = true; mem.push_back(s); }
  std::sort(mem.begin(), mem.end());

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < mem.size(); ++a)
      for (std::size_t b = 0; b < mem.size(); ++b) {
        std::uint16_t p = t.mul(mem[a], mem[b]);
        if (!present[p]) {
          present[p] = true;
          mem.push_back(p);
          changed = true;
          if (2 * mem.size() > static_cast<std::size_t>(t.N)) {
            std::vector<std::uint16_t> full(static_cast<std::size_t>(t.N));
            std::iota(full.begin(), full.end(), std::uint16_t{0});
            return full;
          }
        }
      }
  }
  std::sort(mem.begin(), mem.end());
  return mem;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint16_t>& v) const {
    std::size_t h = 14695981039346656037ull;
    for (std::uint16_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

std::vector<PermGroup> subgroups_of_sym(int kdeg) {
  if (kdeg < 1 || kdeg > 6)
    throw std::invalid_argument("subgroup enumeration supports degrees 1..6");

  std::vector<Permutation> elems = PermGroup::symmetric(kdeg).elements();
  GroupTable table = GroupTable::build(std::move(elems));

  // Seed with the trivial group and every cyclic subgroup, then saturate by
  // joining known subgroups with cyclic ones.  Every subgroup is a join of
  // cyclic subgroups, so the fixpoint is complete.
  std::unordered_map<std::vector<std::uint16_t>, int, VecHash> seen;
  std::vector<std::vector<std::uint16_t>> found;
  auto add = [&](std::vector<std::uint16_t> h) {
    if (seen.emplace(h, static_cast<int>(found.size())).second) found.push_back(std::move(h));
  };

  add({0});
  std::vector<std::vector<std::uint16_t>> cyclics;
  {
    std::unordered_map<std::vector<std::uint16_t>, int, VecHash> cseen;
    for (int g = 1; g < table.N; ++g) {
      std::vector<std::uint16_t> cyc;
      std::uint16_t x = static_cast<std::uint16_t>(g);
      cyc.push_back(0);
      while (x != 0) {
        cyc.push_back(x);
        x = table.mul(x, g);
      }
      std::sort(cyc.begin(), cyc.end());
      if (cseen.emplace(cyc, 0).second) cyclics.push_back(cyc);
    }
    for (const auto& c : cyclics) add(c);
  }

  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& cyc : cyclics) {
      // Skip if the cyclic subgroup is already inside.
      if (std::includes(found[i].begin(), found[i].end(), cyc.begin(), cyc.end())) continue;
      std::vector<std::uint16_t> seed = found[i];
      seed.insert(seed.end(), cyc.begin(), cyc.end());
      add(closure_idx(table, std::move(seed)));
    }
  }

  std::vector<PermGroup> out;
  out.reserve(found.size());
  for (const auto& idxs : found) {
    std::vector<Permutation> members;
    members.reserve(idxs.size());
    for (std::uint16_t i : idxs) members.push_back(table.elems[i]);
    out.push_back(PermGroup::from_elements(std::move(members)));
  }
  std::sort(out.begin(), out.end(), [](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Abstract isomorphism

namespace {

// Greedy generator indices over a table (first element outside the running
// closure, repeatedly).
std::vector<std::uint16_t> table_generators(const GroupTable& t) {
  std::vector<std::uint16_t> gens;
  std::vector<std::uint16_t> have{0};
  std::vector<bool> in(static_cast<std::size_t>(t.N), false);
  in[0] = true;
  for (int e = 1; e < t.N; ++e) {
    if (in[e]) continue;
    gens.push_back(static_cast<std::uint16_t>(e));
    std::vector<std::uint16_t> seed = have;
    seed.push_back(static_cast<std::uint16_t>(e));
    have = closure_idx(t, std::move(seed));
    for (std::uint16_t x : have) in[x] = true;
  }
  return gens;
}

// Propagates the partial map from generator images; returns false on
// conflict.  map_ab holds -1 for unassigned.
bool propagate(const GroupTable& ta, const GroupTable& tb,
               const std::vector<std::uint16_t>& gens_a, std::size_t gens_used,
               const std::vector<int>& gen_imgs, std::vector<int>& map_ab) {
  std::fill(map_ab.begin(), map_ab.end(), -1);
  map_ab[0] = 0;
  std::vector<std::uint16_t> work{0};
  std::vector<bool> hit_b(static_cast<std::size_t>(tb.N), false);
  hit_b[0] = true;
  for (std::size_t w = 0; w < work.size(); ++w) {
    int x = work[w];
    for (std::size_t gi = 0; gi < gens_used; ++gi) {
      int y = ta.mul(x, gens_a[gi]);
      int img = tb.mul(map_ab[x], gen_imgs[gi]);
      if (map_ab[y] < 0) {
        if (hit_b[img]) return false;  // not injective
        map_ab[y] = img;
        hit_b[img] = true;
        work.push_back(static_cast<std::uint16_t>(y));
      } else if (map_ab[y] != img) {
        return false;
      }
    }
  }
  return true;
}

bool extend_iso(const GroupTable& ta, const GroupTable& tb,
                const std::vector<std::uint16_t>& gens_a, std::size_t depth,
                std::vector<int>& gen_imgs, std::vector<int>& map_ab) {
  if (depth == gens_a.size()) {
    if (!propagate(ta, tb, gens_a, depth, gen_imgs, map_ab)) return false;
    for (int m : map_ab)
      if (m < 0) return false;  // not surjective: gens_a generate a, so |image| == N means onto
    return true;
  }
  long want = ta.ord[gens_a[depth]];
  for (int c = 0; c < tb.N; ++c) {
    if (tb.ord[c] != want) continue;
    gen_imgs[depth] = c;
    if (!propagate(ta, tb, gens_a, depth + 1, gen_imgs, map_ab)) continue;
    if (extend_iso(ta, tb, gens_a, depth + 1, gen_imgs, map_ab)) return true;
  }
  return false;
}

}  // namespace

bool are_isomorphic(const PermGroup& a, const PermGroup& b) {
  if (a.order() != b.order()) return false;
  if (a.is_abelian() != b.is_abelian()) return false;
  if (a.element_orders() != b.element_orders()) return false;
  if (a.order() == 1) return true;

  GroupTable ta = GroupTable::build(a.elements());
  GroupTable tb = GroupTable::build(b.elements());
  std::vector<std::uint16_t> gens_a = table_generators(ta);
  std::vector<int> gen_imgs(gens_a.size(), -1);
  std::vector<int> map_ab(static_cast<std::size_t>(ta.N), -1);
  return extend_iso(ta, tb, gens_a, 0, gen_imgs, map_ab);
}

// ---------------------------------------------------------------------------
// Classification

namespace {

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

int log2_u64(std::uint64_t x) {
  int t = 0;
  while (x > 1) { x >>= 1; ++t; }
  return t;
}

PermGroup model_z2t_sym3(int t) {
  // Z2 x ... x Z2 (t copies) x Sym3 acting on 2t+3 points.
  int deg = 2 * t + 3;
  std::vector<Permutation> gens;
  for (int i = 0; i < t; ++i)
    gens.push_back(Permutation::from_cycle_string(
        "(" + std::to_string(2 * i + 1) + " " + std::to_string(2 * i + 2) + ")", deg));
  std::string a = std::to_string(2 * t + 1), b = std::to_string(2 * t + 2),
              c = std::to_string(2 * t + 3);
  gens.push_back(Permutation::from_cycle_string("(" + a + " " + b + " " + c + ")", deg));
  gens.push_back(Permutation::from_cycle_string("(" + a + " " + b + ")", deg));
  return PermGroup::close(std::move(gens));
}

}  // namespace

GroupClass classify(const PermGroup& g) {
  GroupClass c;
  std::uint64_t o = g.order();
  bool ab = g.is_abelian();
  std::uint64_t exp = g.exponent();

  if (o == 1) return c;  // Trivial
  if (o == 3) {
    c.tag = GroupClass::Tag::Z3;
    c.order = 3;
    c.exponent = 3;
    return c;
  }
  if (o == 6 && !ab) {
    c.tag = GroupClass::Tag::Sym3;
    c.order = 6;
    c.abelian = false;
    c.exponent = 6;
    return c;
  }
  if (is_power_of_two(o) && exp == 2) {
    c.tag = GroupClass::Tag::Z2Power;
    c.t = log2_u64(o);
    c.order = o;
    c.exponent = 2;
    return c;
  }
  if (ab && o % 3 == 0 && is_power_of_two(o / 3) && o / 3 >= 2 && exp == 6) {
    // Abelian of order 3*2^t with exponent 6: the 2-part is elementary abelian.
    c.tag = GroupClass::Tag::Z2PowerTimesZ3;
    c.t = log2_u64(o / 3);
    c.order = o;
    c.exponent = 6;
    return c;
  }
  if (!ab && o % 6 == 0 && is_power_of_two(o / 6) && o / 6 >= 2) {
    int t = log2_u64(o / 6);
    std::vector<Permutation> z = g.center();
    bool central_ok = z.size() == (std::uint64_t{1} << t);
    if (central_ok)
      for (const Permutation& ce : z)
        if (!ce.is_identity() && ce.order() != 2) { central_ok = false; break; }
    if (central_ok && t <= 10 && are_isomorphic(g, model_z2t_sym3(t))) {
      c.tag = GroupClass::Tag::Z2PowerTimesSym3;
      c.t = t;
      c.order = o;
      c.abelian = false;
      c.exponent = 6;
      return c;
    }
  }
  c.tag = GroupClass::Tag::Other;
  c.order = o;
  c.abelian = ab;
  c.exponent = exp;
  return c;
}

}  // namespace rigidity
