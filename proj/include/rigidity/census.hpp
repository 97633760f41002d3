#ifndef RIGIDITY_CENSUS_HPP
#define RIGIDITY_CENSUS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/perm_group.hpp"
#include "rigidity/vocabulary.hpp"

namespace rigidity {

// One cell of the census: the support statistics, abstract class, and the
// orbit counts q, s of the restricted group.  Rigid structures land in the
// all-zero key with class Trivial.
struct CensusKey {
  int spt = 0;
  int spt_star = 0;
  GroupClass cls;
  int q = 0;
  int s = 0;

  bool operator==(const CensusKey&) const = default;
  bool operator<(const CensusKey& o) const {
    if (spt != o.spt) return spt < o.spt;
    if (spt_star != o.spt_star) return spt_star < o.spt_star;
    if (!(cls == o.cls)) return cls < o.cls;
    if (q != o.q) return q < o.q;
    return s < o.s;
  }
};

// Additive counters; merging is the monoid sum, so results are independent
// of how the structure space was partitioned.
struct Counters {
  std::map<CensusKey, std::uint64_t> labelled;
  std::optional<std::map<CensusKey, std::uint64_t>> unlabelled;
  std::uint64_t total = 0;
  std::uint64_t law_violations = 0;

  void merge(const Counters& o);
  std::uint64_t unlabelled_total() const;
};

struct CensusMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;  // sampled mode only
  std::uint64_t seed = 0;     // sampled mode only

  static CensusMode exhaustive_mode() { return {}; }
  static CensusMode sampled(std::uint64_t samples, std::uint64_t seed) {
    return {false, samples, seed};
  }
};

struct CensusReport {
  Vocabulary vocab;
  int n = 0;
  CensusMode mode;
  Counters counters;
  double elapsed_seconds = 0;  // informational; never serialized

  std::string to_json_string() const;
  static CensusReport from_json_string(const std::string& text);
  std::string to_csv() const;
};

// Exhaustive (slot count <= 30) or sampled (n <= 8) sweep over the structure
// space.  The report is a deterministic function of (vocab, n, mode) — and
// the seed in sampled mode — regardless of thread count.  Unlabelled counts
// are populated only for exhaustive runs with n <= 5.  When verify_laws is
// set, each non-rigid structure additionally has its restricted group
// checked for isomorphism with the full automorphism group and against the
// exact support laws; violations are counted (always 0 unless there is a
// bug).
CensusReport run_census(const Vocabulary& vocab, int n, CensusMode mode, int threads = 1,
                        const std::string& checkpoint_path = "", bool verify_laws = false);

// Checkpoints: partial counters plus the set of completed chunk ranges.
struct Checkpoint {
  Vocabulary vocab;
  int n = 0;
  CensusMode mode;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> done;  // sorted, disjoint, half-open
  Counters counters;

  // Adds a completed range, coalescing neighbours; overlap is an error.
  void add_range(std::uint64_t begin, std::uint64_t end);
};

void checkpoint_save(const std::string& path, const Checkpoint& cp);
Checkpoint checkpoint_resume(const std::string& path);

// Predicates over census keys for ratio tables: spt*=m, spt*>=m, spt>=m,
// m<=spt*<=T, class=C, and '&'-conjunctions of those.
struct KeyPredicate {
  std::string text;
  std::function<bool(const CensusKey&)> fn;

  static KeyPredicate parse(const std::string& text);
};

struct RatioRow {
  int n = 0;
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  std::optional<double> fraction;        // empty when den == 0
  std::optional<double> standard_error;  // sampled mode only
};

std::vector<RatioRow> ratio_table(const std::vector<CensusReport>& reports,
                                  const KeyPredicate& num, const KeyPredicate& den);

}  // namespace rigidity

#endif
