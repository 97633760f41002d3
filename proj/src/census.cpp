#include "rigidity/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <regex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "rigidity/structure.hpp"

namespace rigidity {

// ---------------------------------------------------------------------------
// Counters

void Counters::merge(const Counters& o) {
  for (const auto& [k, v] : o.labelled) labelled[k] += v;
  total += o.total;
  law_violations += o.law_violations;
  if (o.unlabelled) {
    if (!unlabelled) unlabelled.emplace();
    for (const auto& [k, v] : *o.unlabelled) (*unlabelled)[k] += v;
  }
}

std::uint64_t Counters::unlabelled_total() const {
  std::uint64_t t = 0;
  if (unlabelled)
    for (const auto& [k, v] : *unlabelled) t += v;
  return t;
}

// ---------------------------------------------------------------------------
// The scan engine

namespace {

constexpr std::uint64_t kExhaustiveChunk = std::uint64_t{1} << 20;
constexpr std::uint64_t kSampledChunk = 4096;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (chunk + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct ElementTables {
  Permutation perm;
  std::uint16_t moved_mask = 0;
  int moved_count = 0;
  long order = 1;
  std::vector<std::uint32_t> slot_image;   // permutation of global slots
  std::vector<std::uint32_t> moved_pairs;  // flat (slot, image) pairs, moved slots only
};

struct Engine {
  SlotLayout lay;
  int n = 0;
  std::uint64_t slots = 0;
  int words = 0;
  bool unlabelled = false;
  bool verify_laws = false;
  std::vector<ElementTables> elems;  // non-identity elements of Sym_n, lex order
  std::vector<int> candidates;       // prime-order elements, transpositions first

  static Engine build(const Vocabulary& vocab, int n, bool unlabelled, bool verify_laws);
};

Engine Engine::build(const Vocabulary& vocab, int n, bool unlabelled, bool verify_laws) {
  Engine eng;
  eng.lay = SlotLayout::build(vocab, n);
  eng.n = n;
  eng.slots = eng.lay.total_slots();
  eng.words = static_cast<int>((eng.slots + 63) / 64);
  if (eng.words == 0) eng.words = 1;
  eng.unlabelled = unlabelled;
  eng.verify_laws = verify_laws;

  std::vector<int> g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), 0);
  std::vector<int> tup(static_cast<std::size_t>(std::max(vocab.r, 1)));
  while (std::next_permutation(g.begin(), g.end())) {
    ElementTables et;
    et.perm = Permutation::from_images(std::vector<std::uint8_t>(g.begin(), g.end()));
    for (int i = 0; i < n; ++i)
      if (g[i] != i) {
        et.moved_mask |= static_cast<std::uint16_t>(1u << i);
        ++et.moved_count;
      }
    et.order = et.perm.order();
    et.slot_image.resize(eng.slots);
    for (int sym = 0; sym < vocab.symbol_count(); ++sym) {
      const SlotLayout::Symbol& sy = eng.lay.symbols[sym];
      int ar = sy.arity;
      std::uint64_t base = eng.lay.slot_offset[sym];
      for (std::uint64_t s = 0; s < sy.slot_count(); ++s) {
        std::uint64_t t = sy.identity ? s : sy.slots[s][0];
        tuple_of_index(t, n, ar, tup.data());
        for (int j = 0; j < ar; ++j) tup[j] = g[tup[j]];
        std::uint64_t ti = tuple_index(tup.data(), ar, n);
        std::uint64_t im = sy.identity ? ti : static_cast<std::uint64_t>(sy.slot_of_tuple[ti]);
        et.slot_image[base + s] = static_cast<std::uint32_t>(base + im);
      }
    }
    for (std::uint64_t s = 0; s < eng.slots; ++s)
      if (et.slot_image[s] != s) {
        et.moved_pairs.push_back(static_cast<std::uint32_t>(s));
        et.moved_pairs.push_back(et.slot_image[s]);
      }
    eng.elems.push_back(std::move(et));
  }

  auto is_prime = [](long v) {
    if (v < 2) return false;
    for (long d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  };
  std::vector<int> transpositions, rest;
  for (std::size_t i = 0; i < eng.elems.size(); ++i) {
    if (!is_prime(eng.elems[i].order)) continue;
    if (eng.elems[i].order == 2 && eng.elems[i].moved_count == 2)
      transpositions.push_back(static_cast<int>(i));
    else
      rest.push_back(static_cast<int>(i));
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [&](int a, int b) { return eng.elems[a].order < eng.elems[b].order; });
  eng.candidates = std::move(transpositions);
  eng.candidates.insert(eng.candidates.end(), rest.begin(), rest.end());
  return eng;
}

inline bool invariant_under(const ElementTables& et, const std::uint64_t* w) {
  const std::uint32_t* p = et.moved_pairs.data();
  std::size_t len = et.moved_pairs.size();
  for (std::size_t i = 0; i < len; i += 2) {
    std::uint32_t a = p[i], b = p[i + 1];
    if (((w[a >> 6] >> (a & 63)) ^ (w[b >> 6] >> (b & 63))) & 1) return false;
  }
  return true;
}

// -1 when the relabeled mask is a smaller encoding than the original.
inline int compare_relabeled(const ElementTables& et, const std::uint64_t* w, std::uint64_t slots) {
  for (std::uint64_t j = slots; j-- > 0;) {
    std::uint32_t im = et.slot_image[j];
    int rel = static_cast<int>((w[im >> 6] >> (im & 63)) & 1);
    int orig = static_cast<int>((w[j >> 6] >> (j & 63)) & 1);
    if (rel != orig) return rel < orig ? -1 : 1;
  }
  return 0;
}

// Census profile of one stabilizer (set of invariant element indices),
// cached because distinct stabilizers are few.
struct StabProfile {
  CensusKey key;
  bool laws_ok = true;
};

struct Worker {
  const Engine& eng;
  Counters local;
  std::unordered_map<std::string, StabProfile> stab_cache;
  std::vector<int> stab;  // scratch

  explicit Worker(const Engine& e) : eng(e) {
    if (e.unlabelled) local.unlabelled.emplace();
  }

  const StabProfile& profile_of_stab() {
    // Cache key: the element indices as raw bytes.
    std::string ck(reinterpret_cast<const char*>(stab.data()), stab.size() * sizeof(int));
    auto it = stab_cache.find(ck);
    if (it != stab_cache.end()) return it->second;

    StabProfile sp;
    std::uint16_t star = 0;
    int spt = 0;
    for (int e : stab) {
      star |= eng.elems[e].moved_mask;
      spt = std::max(spt, eng.elems[e].moved_count);
    }
    std::vector<int> points;
    for (int i = 0; i < eng.n; ++i)
      if (star & (1u << i)) points.push_back(i);

    std::vector<int> pos(static_cast<std::size_t>(eng.n), -1);
    for (std::size_t i = 0; i < points.size(); ++i) pos[points[i]] = static_cast<int>(i);
    std::vector<Permutation> restricted{Permutation::identity(static_cast<int>(points.size()))};
    std::vector<Permutation> full{Permutation::identity(eng.n)};
    for (int e : stab) {
      const Permutation& g = eng.elems[e].perm;
      std::vector<std::uint8_t> imgs(points.size());
      for (std::size_t i = 0; i < points.size(); ++i)
        imgs[i] = static_cast<std::uint8_t>(pos[g(points[i])]);
      restricted.push_back(Permutation::from_images(std::move(imgs)));
      if (eng.verify_laws) full.push_back(g);
    }
    PermGroup rgroup = PermGroup::from_elements_unchecked(std::move(restricted));
    OrbitStats st = rgroup.orbit_stats();
    sp.key.spt = spt;
    sp.key.spt_star = static_cast<int>(points.size());
    sp.key.cls = classify(rgroup);
    sp.key.q = st.q;
    sp.key.s = st.s;

    if (eng.verify_laws) {
      sp.laws_ok = sp.key.spt_star != 1;
      if (sp.key.spt_star == 2)
        sp.laws_ok = sp.laws_ok && sp.key.cls.tag == GroupClass::Tag::Z2Power && sp.key.cls.t == 1;
      if (sp.key.spt_star == 3)
        sp.laws_ok = sp.laws_ok && (sp.key.cls.tag == GroupClass::Tag::Z3 ||
                                    sp.key.cls.tag == GroupClass::Tag::Sym3);
      PermGroup fgroup = PermGroup::from_elements_unchecked(std::move(full));
      sp.laws_ok = sp.laws_ok && are_isomorphic(rgroup, fgroup);
    }
    return stab_cache.emplace(std::move(ck), std::move(sp)).first->second;
  }

  void process(const std::uint64_t* w) {
    bool hit = false;
    for (int c : eng.candidates)
      if (invariant_under(eng.elems[c], w)) { hit = true; break; }

    CensusKey key;  // all-zero: rigid
    if (hit) {
      stab.clear();
      for (std::size_t e = 0; e < eng.elems.size(); ++e)
        if (invariant_under(eng.elems[e], w)) stab.push_back(static_cast<int>(e));
      const StabProfile& sp = profile_of_stab();
      key = sp.key;
      if (eng.verify_laws && !sp.laws_ok) ++local.law_violations;
    }
    ++local.labelled[key];
    ++local.total;

    if (eng.unlabelled) {
      bool canonical = true;
      for (const ElementTables& et : eng.elems)
        if (compare_relabeled(et, w, eng.slots) < 0) { canonical = false; break; }
      if (canonical) ++(*local.unlabelled)[key];
    }
  }
};

bool range_covered(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& done,
                   std::uint64_t begin, std::uint64_t end) {
  for (const auto& [a, b] : done)
    if (a <= begin && end <= b) return true;
  return false;
}

bool file_exists(const std::string& path) {
  if (path.empty()) return false;
  std::ifstream probe(path, std::ios::binary);
  return probe.good();
}

}  // namespace

// ---------------------------------------------------------------------------
// Checkpoints

void Checkpoint::add_range(std::uint64_t begin, std::uint64_t end) {
  if (begin >= end) throw std::invalid_argument("empty checkpoint range");
  auto it = std::lower_bound(done.begin(), done.end(), std::pair{begin, end});
  if (it != done.end() && it->first < end)
    throw std::runtime_error("checkpoint range overlap detected on merge");
  if (it != done.begin() && std::prev(it)->second > begin)
    throw std::runtime_error("checkpoint range overlap detected on merge");
  it = done.insert(it, {begin, end});
  // Coalesce with neighbours.
  if (it != done.begin() && std::prev(it)->second == it->first) {
    std::prev(it)->second = it->second;
    it = done.erase(it);
    it = std::prev(it);
  }
  if (std::next(it) != done.end() && it->second == std::next(it)->first) {
    it->second = std::next(it)->second;
    done.erase(std::next(it));
  }
}

namespace {

constexpr char kCheckpointMagic[4] = {'R', 'G', 'C', '1'};

void put_u8(std::ostream& o, std::uint8_t v) { o.put(static_cast<char>(v)); }
void put_u16(std::ostream& o, std::uint16_t v) {
  for (int b = 0; b < 2; ++b) put_u8(o, static_cast<std::uint8_t>((v >> (8 * b)) & 0xff));
}
void put_u32(std::ostream& o, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) put_u8(o, static_cast<std::uint8_t>((v >> (8 * b)) & 0xff));
}
void put_u64(std::ostream& o, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) put_u8(o, static_cast<std::uint8_t>((v >> (8 * b)) & 0xff));
}

std::uint8_t get_u8(std::istream& i) {
  int c = i.get();
  if (c < 0) throw std::runtime_error("checkpoint truncated");
  return static_cast<std::uint8_t>(c);
}
std::uint16_t get_u16(std::istream& i) {
  std::uint16_t v = 0;
  for (int b = 0; b < 2; ++b) v |= static_cast<std::uint16_t>(get_u8(i)) << (8 * b);
  return v;
}
std::uint32_t get_u32(std::istream& i) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(get_u8(i)) << (8 * b);
  return v;
}
std::uint64_t get_u64(std::istream& i) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(get_u8(i)) << (8 * b);
  return v;
}

void put_key_map(std::ostream& o, const std::map<CensusKey, std::uint64_t>& m) {
  put_u32(o, static_cast<std::uint32_t>(m.size()));
  for (const auto& [k, v] : m) {
    put_u8(o, static_cast<std::uint8_t>(k.spt));
    put_u8(o, static_cast<std::uint8_t>(k.spt_star));
    std::string cls = k.cls.to_string();
    put_u16(o, static_cast<std::uint16_t>(cls.size()));
    o.write(cls.data(), static_cast<std::streamsize>(cls.size()));
    put_u16(o, static_cast<std::uint16_t>(k.q));
    put_u16(o, static_cast<std::uint16_t>(k.s));
    put_u64(o, v);
  }
}

std::map<CensusKey, std::uint64_t> get_key_map(std::istream& i) {
  std::map<CensusKey, std::uint64_t> m;
  std::uint32_t cnt = get_u32(i);
  for (std::uint32_t j = 0; j < cnt; ++j) {
    CensusKey k;
    k.spt = get_u8(i);
    k.spt_star = get_u8(i);
    std::uint16_t len = get_u16(i);
    std::string cls(len, '\0');
    i.read(cls.data(), len);
    if (!i) throw std::runtime_error("checkpoint truncated");
    auto parsed = GroupClass::parse(cls);
    if (!parsed) throw std::runtime_error("checkpoint holds unknown class label " + cls);
    k.cls = *parsed;
    k.q = get_u16(i);
    k.s = get_u16(i);
    m[k] = get_u64(i);
  }
  return m;
}

}  // namespace

void checkpoint_save(const std::string& path, const Checkpoint& cp) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out.write(kCheckpointMagic, 4);
    put_u8(out, 1);  // version
    std::string vj = cp.vocab.to_json_string();
    put_u32(out, static_cast<std::uint32_t>(vj.size()));
    out.write(vj.data(), static_cast<std::streamsize>(vj.size()));
    put_u8(out, static_cast<std::uint8_t>(cp.n));
    put_u8(out, cp.mode.exhaustive ? 0 : 1);
    put_u64(out, cp.mode.samples);
    put_u64(out, cp.mode.seed);
    std::uint8_t flags = 0;
    if (cp.counters.unlabelled) flags |= 1;
    put_u8(out, flags);
    put_u32(out, static_cast<std::uint32_t>(cp.done.size()));
    for (const auto& [a, b] : cp.done) {
      put_u64(out, a);
      put_u64(out, b);
    }
    put_u64(out, cp.counters.total);
    put_u64(out, cp.counters.law_violations);
    put_key_map(out, cp.counters.labelled);
    if (cp.counters.unlabelled) put_key_map(out, *cp.counters.unlabelled);
    if (!out) throw std::runtime_error("checkpoint write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move checkpoint into place at " + path);
}

Checkpoint checkpoint_resume(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCheckpointMagic, 4) != 0)
    throw std::runtime_error("not a checkpoint file (bad magic)");
  std::uint8_t version = get_u8(in);
  if (version != 1)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  Checkpoint cp;
  std::uint32_t vlen = get_u32(in);
  if (vlen > 1 << 20) throw std::runtime_error("implausible checkpoint vocab length");
  std::string vj(vlen, '\0');
  in.read(vj.data(), vlen);
  if (!in) throw std::runtime_error("checkpoint truncated");
  cp.vocab = Vocabulary::from_json_string(vj);
  cp.n = get_u8(in);
  std::uint8_t mode = get_u8(in);
  cp.mode.exhaustive = mode == 0;
  cp.mode.samples = get_u64(in);
  cp.mode.seed = get_u64(in);
  std::uint8_t flags = get_u8(in);
  std::uint32_t nranges = get_u32(in);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  for (std::uint32_t i = 0; i < nranges; ++i) {
    std::uint64_t a = get_u64(in);
    std::uint64_t b = get_u64(in);
    ranges.emplace_back(a, b);
  }
  for (const auto& [a, b] : ranges) cp.add_range(a, b);
  cp.counters.total = get_u64(in);
  cp.counters.law_violations = get_u64(in);
  cp.counters.labelled = get_key_map(in);
  if (flags & 1) cp.counters.unlabelled = get_key_map(in);
  return cp;
}

// ---------------------------------------------------------------------------
// The census driver

CensusReport run_census(const Vocabulary& vocab, int n, CensusMode mode, int threads,
                        const std::string& checkpoint_path, bool verify_laws) {
  if (n < 1 || n > 255) throw std::invalid_argument("universe size out of range");
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
  auto t0 = std::chrono::steady_clock::now();

  SlotLayout lay = SlotLayout::build(vocab, n);
  if (mode.exhaustive && lay.total_slots() > 30)
    throw std::invalid_argument("exhaustive guard exceeded: " +
                                std::to_string(lay.total_slots()) + " slots > 30");
  if (n > 8) throw std::invalid_argument("census requires n <= 8 (exact Aut scan)");
  if (!mode.exhaustive && mode.samples == 0)
    throw std::invalid_argument("sampled census needs samples >= 1");

  bool unlabelled = mode.exhaustive && n <= 5;
  Engine eng = Engine::build(vocab, n, unlabelled, verify_laws);

  std::uint64_t units =
      mode.exhaustive ? (std::uint64_t{1} << eng.slots) : mode.samples;
  std::uint64_t chunk_size = mode.exhaustive ? kExhaustiveChunk : kSampledChunk;
  std::uint64_t nchunks = (units + chunk_size - 1) / chunk_size;

  Checkpoint cp;
  cp.vocab = vocab;
  cp.n = n;
  cp.mode = mode;
  if (file_exists(checkpoint_path)) {
    Checkpoint loaded = checkpoint_resume(checkpoint_path);
    if (!(loaded.vocab == vocab) || loaded.n != n ||
        loaded.mode.exhaustive != mode.exhaustive || loaded.mode.samples != mode.samples ||
        loaded.mode.seed != mode.seed)
      throw std::runtime_error("checkpoint does not match the requested census");
    if (loaded.counters.unlabelled.has_value() != unlabelled)
      throw std::runtime_error("checkpoint does not match the requested census");
    cp = std::move(loaded);
  }
  if (unlabelled && !cp.counters.unlabelled) cp.counters.unlabelled.emplace();

  std::atomic<std::uint64_t> next_chunk{0};
  std::mutex merge_mu;
  std::exception_ptr first_error;

  auto work = [&]() {
    Worker worker(eng);
    std::vector<std::uint64_t> w(static_cast<std::size_t>(eng.words), 0);
    for (;;) {
      std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= nchunks) break;
      std::uint64_t begin = c * chunk_size;
      std::uint64_t end = std::min(units, begin + chunk_size);
      {
        std::lock_guard<std::mutex> lock(merge_mu);
        if (range_covered(cp.done, begin, end)) continue;
      }
      worker.local = Counters{};
      if (eng.unlabelled) worker.local.unlabelled.emplace();
      try {
        if (mode.exhaustive) {
          for (std::uint64_t v = begin; v < end; ++v) {
            w[0] = v;
            worker.process(w.data());
          }
        } else {
          std::mt19937_64 rng(mix_seed(mode.seed, c));
          for (std::uint64_t s = begin; s < end; ++s) {
            for (auto& word : w) word = rng();
            if (eng.slots & 63) w.back() &= (std::uint64_t{1} << (eng.slots & 63)) - 1;
            worker.process(w.data());
          }
        }
        std::lock_guard<std::mutex> lock(merge_mu);
        cp.counters.merge(worker.local);
        cp.add_range(begin, end);
        if (!checkpoint_path.empty()) checkpoint_save(checkpoint_path, cp);
      } catch (...) {
        std::lock_guard<std::mutex> lock(merge_mu);
        if (!first_error) first_error = std::current_exception();
        break;
      }
    }
  };

  int nthreads = static_cast<int>(std::min<std::uint64_t>(
      static_cast<std::uint64_t>(threads), std::max<std::uint64_t>(nchunks, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  CensusReport rep;
  rep.vocab = vocab;
  rep.n = n;
  rep.mode = mode;
  rep.counters = std::move(cp.counters);
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rep.counters.total != units)
    throw std::logic_error("census did not cover the full range");
  return rep;
}

// ---------------------------------------------------------------------------
// Report serialization

namespace {

nlohmann::ordered_json key_map_json(const std::map<CensusKey, std::uint64_t>& m) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [k, v] : m) {
    nlohmann::ordered_json e;
    e["spt"] = k.spt;
    e["spt_star"] = k.spt_star;
    e["class"] = k.cls.to_string();
    e["q"] = k.q;
    e["s"] = k.s;
    e["count"] = v;
    arr.push_back(std::move(e));
  }
  return arr;
}

std::map<CensusKey, std::uint64_t> key_map_from_json(const nlohmann::json& arr) {
  std::map<CensusKey, std::uint64_t> m;
  for (const auto& e : arr) {
    CensusKey k;
    k.spt = e.at("spt").get<int>();
    k.spt_star = e.at("spt_star").get<int>();
    auto cls = GroupClass::parse(e.at("class").get<std::string>());
    if (!cls) throw std::invalid_argument("report holds unknown class label");
    k.cls = *cls;
    k.q = e.at("q").get<int>();
    k.s = e.at("s").get<int>();
    m[k] = e.at("count").get<std::uint64_t>();
  }
  return m;
}

}  // namespace

std::string CensusReport::to_json_string() const {
  nlohmann::ordered_json j;
  j["vocab"] = nlohmann::ordered_json::parse(vocab.to_json_string());
  j["n"] = n;
  if (mode.exhaustive) {
    j["mode"] = "exhaustive";
  } else {
    j["mode"] = "sampled";
    j["samples"] = mode.samples;
    j["seed"] = mode.seed;
  }
  j["total"] = counters.total;
  j["keys"] = key_map_json(counters.labelled);
  if (counters.unlabelled) {
    nlohmann::ordered_json u;
    u["total"] = counters.unlabelled_total();
    u["keys"] = key_map_json(*counters.unlabelled);
    j["unlabelled"] = std::move(u);
  }
  return j.dump(2) + "\n";
}

CensusReport CensusReport::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CensusReport rep;
  rep.vocab = Vocabulary::from_json_string(j.at("vocab").dump());
  rep.n = j.at("n").get<int>();
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "exhaustive") {
    rep.mode = CensusMode::exhaustive_mode();
  } else if (mode == "sampled") {
    rep.mode = CensusMode::sampled(j.at("samples").get<std::uint64_t>(),
                                   j.at("seed").get<std::uint64_t>());
  } else {
    throw std::invalid_argument("unknown census mode " + mode);
  }
  rep.counters.total = j.at("total").get<std::uint64_t>();
  rep.counters.labelled = key_map_from_json(j.at("keys"));
  if (j.contains("unlabelled"))
    rep.counters.unlabelled = key_map_from_json(j.at("unlabelled").at("keys"));
  return rep;
}

std::string CensusReport::to_csv() const {
  std::string out = "spt,spt_star,class,q,s,count\n";
  for (const auto& [k, v] : counters.labelled) {
    out += std::to_string(k.spt) + "," + std::to_string(k.spt_star) + ",\"" +
           k.cls.to_string() + "\"," + std::to_string(k.q) + "," + std::to_string(k.s) + "," +
           std::to_string(v) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ratio predicates

KeyPredicate KeyPredicate::parse(const std::string& text) {
  // Strip spaces; predicates are short.
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw std::invalid_argument("empty predicate");

  std::vector<std::function<bool(const CensusKey&)>> atoms;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t amp = t.find('&', pos);
    std::string atom = t.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos);
    static const std::regex star_eq(R"(^spt\*=(\d+)$)");
    static const std::regex star_ge(R"(^spt\*>=(\d+)$)");
    static const std::regex spt_ge(R"(^spt>=(\d+)$)");
    static const std::regex star_window(R"(^(\d+)<=spt\*<=(\d+)$)");
    static const std::regex class_eq(R"(^class=(.+)$)");
    std::smatch m;
    if (std::regex_match(atom, m, star_eq)) {
      int v = std::stoi(m[1]);
      atoms.push_back([v](const CensusKey& k) { return k.spt_star == v; });
    } else if (std::regex_match(atom, m, star_ge)) {
      int v = std::stoi(m[1]);
      atoms.push_back([v](const CensusKey& k) { return k.spt_star >= v; });
    } else if (std::regex_match(atom, m, spt_ge)) {
      int v = std::stoi(m[1]);
      atoms.push_back([v](const CensusKey& k) { return k.spt >= v; });
    } else if (std::regex_match(atom, m, star_window)) {
      int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
      atoms.push_back([lo, hi](const CensusKey& k) {
        return k.spt_star >= lo && k.spt_star <= hi;
      });
    } else if (std::regex_match(atom, m, class_eq)) {
      auto cls = GroupClass::parse(m[1]);
      if (!cls) throw std::invalid_argument("unknown class in predicate: " + atom);
      GroupClass want = *cls;
      atoms.push_back([want](const CensusKey& k) { return k.cls == want; });
    } else {
      throw std::invalid_argument("unparsable predicate atom: " + atom);
    }
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }

  KeyPredicate p;
  p.text = text;
  p.fn = [atoms](const CensusKey& k) {
    for (const auto& a : atoms)
      if (!a(k)) return false;
    return true;
  };
  return p;
}

std::vector<RatioRow> ratio_table(const std::vector<CensusReport>& reports,
                                  const KeyPredicate& num, const KeyPredicate& den) {
  if (reports.empty()) return {};
  for (const CensusReport& r : reports) {
    if (!(r.vocab == reports[0].vocab))
      throw std::invalid_argument("ratio table needs reports over one vocabulary");
    if (r.mode.exhaustive != reports[0].mode.exhaustive)
      throw std::invalid_argument("ratio table needs reports of one mode kind");
  }
  std::vector<const CensusReport*> sorted;
  for (const CensusReport& r : reports) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CensusReport* a, const CensusReport* b) { return a->n < b->n; });

  std::vector<RatioRow> rows;
  for (const CensusReport* r : sorted) {
    RatioRow row;
    row.n = r->n;
    for (const auto& [k, v] : r->counters.labelled) {
      if (num.fn(k)) row.num += v;
      if (den.fn(k)) row.den += v;
    }
    if (row.den > 0) {
      double p = static_cast<double>(row.num) / static_cast<double>(row.den);
      row.fraction = p;
      if (!r->mode.exhaustive)
        row.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(row.den));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rigidity
