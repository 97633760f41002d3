#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "oracles.hpp"
#include "rigidity/automorphism.hpp"
#include "rigidity/census.hpp"

using namespace rigidity;

namespace {

// Profile computed straight from the brute-force automorphism list, with the
// restriction to the support re-indexed by hand.
CensusKey naive_key(const Structure& m) {
  auto elems = oracles::naive_aut(m);
  CensusKey key;
  std::set<int> supp;
  for (const auto& g : elems) {
    int moved = 0;
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
      if (g[i] != i) {
        ++moved;
        supp.insert(i);
      }
    key.spt = std::max(key.spt, moved);
  }
  key.spt_star = static_cast<int>(supp.size());
  if (supp.empty()) return key;  // rigid: all-zero key, Trivial class

  std::vector<int> pts(supp.begin(), supp.end());
  std::vector<int> idx(static_cast<std::size_t>(m.n()), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) idx[static_cast<std::size_t>(pts[i])] = static_cast<int>(i);
  std::vector<Permutation> relems;
  for (const auto& g : elems) {
    std::vector<std::uint8_t> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      img[i] = static_cast<std::uint8_t>(idx[static_cast<std::size_t>(g[static_cast<std::size_t>(pts[i])])]);
    relems.push_back(Permutation::from_images(std::move(img)));
  }
  PermGroup rg = PermGroup::from_elements(std::move(relems));
  OrbitStats st = rg.orbit_stats();
  key.cls = classify(rg);
  key.q = st.q;
  key.s = st.s;
  return key;
}

std::string temp_path(const char* stem) {
  return std::string("census_test_") + stem + ".bin";
}

}  // namespace

TEST_CASE("exhaustive census matches a structure-by-structure recount") {
  for (StructureClass cls :
       {StructureClass::All, StructureClass::Irreflexive, StructureClass::IrreflexiveSymmetric}) {
    Vocabulary v = Vocabulary::make({2}, cls);
    for (int n = 1; n <= 3; ++n) {
      CensusReport rep = run_census(v, n, CensusMode::exhaustive_mode());

      StructureEnumerator en(v, n);
      std::map<CensusKey, std::uint64_t> labelled;
      std::map<CensusKey, std::uint64_t> unlabelled;
      std::vector<Structure> reps;
      for (std::uint64_t i = 0; i < en.count(); ++i) {
        Structure m = en.at(i);
        CensusKey key = naive_key(m);
        ++labelled[key];
        bool fresh = true;
        for (const Structure& r : reps)
          if (oracles::naive_isomorphic(r, m)) {
            fresh = false;
            break;
          }
        if (fresh) {
          reps.push_back(m);
          ++unlabelled[key];
        }
      }

      CHECK(rep.counters.total == en.count());
      CHECK(rep.counters.labelled == labelled);
      REQUIRE(rep.counters.unlabelled.has_value());
      CHECK(*rep.counters.unlabelled == unlabelled);
      CHECK(rep.counters.unlabelled_total() == reps.size());
    }
  }
}

TEST_CASE("frozen totals at n=3") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  CensusReport rep = run_census(v, 3, CensusMode::exhaustive_mode());
  CHECK(rep.counters.total == 512);
  CHECK(rep.counters.labelled.at(CensusKey{0, 0, GroupClass{}, 0, 0}) == 420);
  GroupClass z2{GroupClass::Tag::Z2Power, 1, 2, true, 2};
  CHECK(rep.counters.labelled.at(CensusKey{2, 2, z2, 1, 2}) == 84);
  GroupClass z3{GroupClass::Tag::Z3, 0, 3, true, 3};
  CHECK(rep.counters.labelled.at(CensusKey{3, 3, z3, 1, 3}) == 4);
  GroupClass s3{GroupClass::Tag::Sym3, 0, 6, false, 6};
  CHECK(rep.counters.labelled.at(CensusKey{3, 3, s3, 1, 2}) == 4);
  CHECK(rep.counters.labelled.size() == 4);
  CHECK(rep.counters.unlabelled_total() == 104);
  CHECK(rep.counters.unlabelled->at(CensusKey{0, 0, GroupClass{}, 0, 0}) == 70);
  CHECK(rep.counters.unlabelled->at(CensusKey{2, 2, z2, 1, 2}) == 28);
  CHECK(rep.counters.unlabelled->at(CensusKey{3, 3, z3, 1, 3}) == 2);
  CHECK(rep.counters.unlabelled->at(CensusKey{3, 3, s3, 1, 2}) == 4);
}

TEST_CASE("census report is identical across thread counts") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  CensusReport one = run_census(v, 4, CensusMode::exhaustive_mode(), 1);
  CensusReport four = run_census(v, 4, CensusMode::exhaustive_mode(), 4);
  CHECK(one.to_json_string() == four.to_json_string());
  CHECK(one.counters.total == 65536);

  CensusReport s1 = run_census(v, 4, CensusMode::sampled(30000, 42), 1);
  CensusReport s3 = run_census(v, 4, CensusMode::sampled(30000, 42), 3);
  CHECK(s1.to_json_string() == s3.to_json_string());
  CHECK(s1.counters.total == 30000);
  CHECK_FALSE(s1.counters.unlabelled.has_value());
}

TEST_CASE("sampled census is seed-deterministic and statistically sane") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  CensusReport a = run_census(v, 3, CensusMode::sampled(100000, 7));
  CensusReport b = run_census(v, 3, CensusMode::sampled(100000, 7));
  CHECK(a.to_json_string() == b.to_json_string());
  CensusReport c = run_census(v, 3, CensusMode::sampled(100000, 8));
  CHECK(a.to_json_string() != c.to_json_string());

  // rigid fraction: true value 420/512; 100000 draws, 4 sigma tolerance
  double p = 420.0 / 512.0;
  double got =
      static_cast<double>(a.counters.labelled.at(CensusKey{0, 0, GroupClass{}, 0, 0})) / 100000.0;
  CHECK(std::abs(got - p) < 4 * std::sqrt(p * (1 - p) / 100000.0));
}

TEST_CASE("support laws hold across small censuses") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  for (int n = 1; n <= 4; ++n) {
    CensusReport rep = run_census(v, n, CensusMode::exhaustive_mode(), 1, "", true);
    CHECK(rep.counters.law_violations == 0);
  }
}

TEST_CASE("unlabelled counts only in exhaustive runs up to n=5") {
  Vocabulary u = Vocabulary::make({1}, StructureClass::All);
  CensusReport r6 = run_census(u, 6, CensusMode::exhaustive_mode());
  CHECK_FALSE(r6.counters.unlabelled.has_value());
  CensusReport r5 = run_census(u, 5, CensusMode::exhaustive_mode());
  CHECK(r5.counters.unlabelled.has_value());
  CHECK(r5.counters.unlabelled_total() == 6);  // subsets of a 5-set up to relabeling
}

TEST_CASE("census guards") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  CHECK_THROWS_WITH_AS(run_census(v, 6, CensusMode::exhaustive_mode()),
                       "exhaustive guard exceeded: 36 slots > 30", std::invalid_argument);
  CHECK_THROWS_AS(run_census(v, 9, CensusMode::sampled(10, 0)), std::invalid_argument);
  CHECK_THROWS_AS(run_census(v, 0, CensusMode::exhaustive_mode()), std::invalid_argument);
  CHECK_THROWS_AS(run_census(v, 3, CensusMode::sampled(0, 0)), std::invalid_argument);
}

TEST_CASE("checkpoint range algebra") {
  Checkpoint cp;
  cp.add_range(0, 5);
  cp.add_range(5, 9);
  CHECK(cp.done == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 9}});
  cp.add_range(20, 30);
  cp.add_range(12, 20);
  CHECK(cp.done ==
        std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 9}, {12, 30}});
  cp.add_range(9, 12);
  CHECK(cp.done == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 30}});
  CHECK_THROWS_AS(cp.add_range(29, 31), std::runtime_error);
  CHECK_THROWS_AS(cp.add_range(0, 1), std::runtime_error);
}

TEST_CASE("checkpoint files round trip") {
  Checkpoint cp;
  cp.vocab = Vocabulary::make({2, 1}, StructureClass::Irreflexive);
  cp.n = 4;
  cp.mode = CensusMode::sampled(5000, 99);
  cp.add_range(0, 4096);
  cp.add_range(8192, 12288);
  cp.counters.total = 8192;
  cp.counters.law_violations = 0;
  cp.counters.labelled[CensusKey{0, 0, GroupClass{}, 0, 0}] = 8000;
  GroupClass other{GroupClass::Tag::Other, 0, 4, true, 4};
  cp.counters.labelled[CensusKey{4, 4, other, 1, 4}] = 192;

  std::string path = temp_path("roundtrip");
  checkpoint_save(path, cp);
  Checkpoint back = checkpoint_resume(path);
  CHECK(back.vocab == cp.vocab);
  CHECK(back.n == cp.n);
  CHECK(back.mode.exhaustive == cp.mode.exhaustive);
  CHECK(back.mode.samples == cp.mode.samples);
  CHECK(back.mode.seed == cp.mode.seed);
  CHECK(back.done == cp.done);
  CHECK(back.counters.labelled == cp.counters.labelled);
  CHECK(back.counters.total == cp.counters.total);
  CHECK_FALSE(back.counters.unlabelled.has_value());

  // with an unlabelled section
  cp.counters.unlabelled.emplace();
  (*cp.counters.unlabelled)[CensusKey{4, 4, other, 1, 4}] = 3;
  checkpoint_save(path, cp);
  back = checkpoint_resume(path);
  REQUIRE(back.counters.unlabelled.has_value());
  CHECK(*back.counters.unlabelled == *cp.counters.unlabelled);
  std::remove(path.c_str());
}

TEST_CASE("checkpoint corruption is detected") {
  Checkpoint cp;
  cp.vocab = Vocabulary::make({2}, StructureClass::All);
  cp.n = 3;
  cp.add_range(0, 512);
  cp.counters.total = 512;
  std::string path = temp_path("corrupt");
  checkpoint_save(path, cp);

  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();

  auto write_bytes = [&](const std::string& b) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(b.data(), static_cast<std::streamsize>(b.size()));
  };

  std::string bad = bytes;
  bad[0] = 'X';
  write_bytes(bad);
  CHECK_THROWS_AS(checkpoint_resume(path), std::runtime_error);

  bad = bytes;
  bad[4] = 9;  // unknown version
  write_bytes(bad);
  CHECK_THROWS_AS(checkpoint_resume(path), std::runtime_error);

  write_bytes(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(checkpoint_resume(path), std::runtime_error);

  CHECK_THROWS_AS(checkpoint_resume(temp_path("nonexistent")), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("census resumes from its own checkpoint byte-identically") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  std::string path = temp_path("resume");
  std::remove(path.c_str());

  CensusReport plain = run_census(v, 3, CensusMode::exhaustive_mode());
  CensusReport fresh = run_census(v, 3, CensusMode::exhaustive_mode(), 1, path);
  CHECK(fresh.to_json_string() == plain.to_json_string());
  // file now holds the complete run; resuming recomputes nothing and agrees
  CensusReport again = run_census(v, 3, CensusMode::exhaustive_mode(), 2, path);
  CHECK(again.to_json_string() == plain.to_json_string());

  // a checkpoint for different census parameters is rejected
  CHECK_THROWS_AS(run_census(v, 2, CensusMode::exhaustive_mode(), 1, path), std::runtime_error);
  CHECK_THROWS_AS(
      run_census(Vocabulary::make({2}, StructureClass::Irreflexive), 3,
                 CensusMode::exhaustive_mode(), 1, path),
      std::runtime_error);
  CHECK_THROWS_AS(run_census(v, 3, CensusMode::sampled(512, 0), 1, path), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("counter merge is the componentwise sum") {
  GroupClass z2{GroupClass::Tag::Z2Power, 1, 2, true, 2};
  CensusKey ka{0, 0, GroupClass{}, 0, 0};
  CensusKey kb{2, 2, z2, 1, 2};
  Counters a;
  a.labelled[ka] = 2;
  a.total = 2;
  Counters b;
  b.labelled[ka] = 3;
  b.labelled[kb] = 1;
  b.total = 4;
  b.law_violations = 1;
  a.merge(b);
  CHECK(a.labelled.at(ka) == 5);
  CHECK(a.labelled.at(kb) == 1);
  CHECK(a.total == 6);
  CHECK(a.law_violations == 1);
  CHECK_FALSE(a.unlabelled.has_value());

  Counters c;
  c.unlabelled.emplace();
  (*c.unlabelled)[kb] = 7;
  a.merge(c);
  REQUIRE(a.unlabelled.has_value());
  CHECK(a.unlabelled->at(kb) == 7);
  CHECK(a.unlabelled_total() == 7);
}

TEST_CASE("key predicates") {
  GroupClass z2{GroupClass::Tag::Z2Power, 1, 2, true, 2};
  GroupClass z3{GroupClass::Tag::Z3, 0, 3, true, 3};
  CensusKey rigid{0, 0, GroupClass{}, 0, 0};
  CensusKey k22{2, 2, z2, 1, 2};
  CensusKey k33{3, 3, z3, 1, 3};
  CensusKey k64{6, 4, z2, 2, 8};

  KeyPredicate eq = KeyPredicate::parse("spt*=3");
  CHECK_FALSE(eq.fn(rigid));
  CHECK_FALSE(eq.fn(k22));
  CHECK(eq.fn(k33));

  KeyPredicate ge = KeyPredicate::parse("spt*>=2");
  CHECK_FALSE(ge.fn(rigid));
  CHECK(ge.fn(k22));
  CHECK(ge.fn(k64));

  KeyPredicate spt_ge = KeyPredicate::parse("spt>=6");
  CHECK_FALSE(spt_ge.fn(k33));
  CHECK(spt_ge.fn(k64));

  KeyPredicate between = KeyPredicate::parse("2<=spt*<=3");
  CHECK(between.fn(k22));
  CHECK(between.fn(k33));
  CHECK_FALSE(between.fn(k64));
  CHECK_FALSE(between.fn(rigid));

  KeyPredicate cls = KeyPredicate::parse("class=Z2^1");
  CHECK(cls.fn(k22));
  CHECK(cls.fn(k64));
  CHECK_FALSE(cls.fn(k33));

  KeyPredicate conj = KeyPredicate::parse(" spt* >= 2 & class = Z2^1 ");
  CHECK(conj.fn(k22));
  CHECK_FALSE(conj.fn(k33));
  CHECK_FALSE(conj.fn(rigid));

  KeyPredicate other = KeyPredicate::parse("class=Other(o=4,ab=1,exp=4)");
  CHECK_FALSE(other.fn(k22));
  CHECK(other.fn(CensusKey{4, 4, GroupClass{GroupClass::Tag::Other, 0, 4, true, 4}, 1, 4}));

  CHECK(KeyPredicate::parse("spt>=0").fn(rigid));

  CHECK_THROWS_AS(KeyPredicate::parse("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(KeyPredicate::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(KeyPredicate::parse("spt*<2"), std::invalid_argument);
  CHECK_THROWS_AS(KeyPredicate::parse("class=NoSuchGroup"), std::invalid_argument);
}

TEST_CASE("ratio tables across census sizes") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  CensusReport r2 = run_census(v, 2, CensusMode::exhaustive_mode());
  CensusReport r3 = run_census(v, 3, CensusMode::exhaustive_mode());

  KeyPredicate num = KeyPredicate::parse("spt*=3");
  KeyPredicate den = KeyPredicate::parse("spt*=2");
  // deliberately passed out of order; rows come back sorted by n
  std::vector<RatioRow> rows = ratio_table({r3, r2}, num, den);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 2);
  CHECK(rows[0].num == 0);
  CHECK(rows[0].den == 4);
  CHECK(*rows[0].fraction == 0.0);
  CHECK(rows[1].n == 3);
  CHECK(rows[1].num == 8);
  CHECK(rows[1].den == 84);
  CHECK(*rows[1].fraction == doctest::Approx(8.0 / 84.0));
  CHECK_FALSE(rows[1].standard_error.has_value());

  // denominator empty -> undefined fraction
  std::vector<RatioRow> und =
      ratio_table({r2}, KeyPredicate::parse("spt*>=2"), KeyPredicate::parse("spt*>=7"));
  CHECK(und[0].den == 0);
  CHECK_FALSE(und[0].fraction.has_value());

  // sampled reports carry a standard error
  CensusReport s = run_census(v, 3, CensusMode::sampled(100000, 7));
  std::vector<RatioRow> srows =
      ratio_table({s}, KeyPredicate::parse("spt*>=2"), KeyPredicate::parse("spt>=0"));
  REQUIRE(srows.size() == 1);
  REQUIRE(srows[0].standard_error.has_value());
  double p = *srows[0].fraction;
  CHECK(*srows[0].standard_error ==
        doctest::Approx(std::sqrt(p * (1 - p) / static_cast<double>(srows[0].den))));

  // vocabulary and mode mixtures are rejected
  CensusReport ri =
      run_census(Vocabulary::make({2}, StructureClass::Irreflexive), 3, CensusMode::exhaustive_mode());
  CHECK_THROWS_AS(ratio_table({r2, ri}, num, den), std::invalid_argument);
  CHECK_THROWS_AS(ratio_table({r2, s}, num, den), std::invalid_argument);
  CHECK(ratio_table({}, num, den).empty());
}

TEST_CASE("report serialization round trips") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::IrreflexiveSymmetric);
  CensusReport rep = run_census(v, 3, CensusMode::exhaustive_mode());
  std::string text = rep.to_json_string();
  CHECK(text.back() == '\n');
  CHECK(text.find("law_violations") == std::string::npos);

  CensusReport back = CensusReport::from_json_string(text);
  CHECK(back.to_json_string() == text);
  CHECK(back.vocab == rep.vocab);
  CHECK(back.n == rep.n);
  CHECK(back.mode.exhaustive);
  CHECK(back.counters.labelled == rep.counters.labelled);
  CHECK(back.counters.unlabelled == rep.counters.unlabelled);
  CHECK(back.counters.total == rep.counters.total);

  CensusReport samp = run_census(v, 3, CensusMode::sampled(5000, 3));
  CensusReport sback = CensusReport::from_json_string(samp.to_json_string());
  CHECK(sback.mode.exhaustive == false);
  CHECK(sback.mode.samples == 5000);
  CHECK(sback.mode.seed == 3);
  CHECK(sback.to_json_string() == samp.to_json_string());

  CHECK_THROWS(CensusReport::from_json_string("{"));
  CHECK_THROWS(CensusReport::from_json_string("{}"));
}

TEST_CASE("csv rendering") {
  Vocabulary v = Vocabulary::make({2}, StructureClass::All);
  CensusReport rep = run_census(v, 2, CensusMode::exhaustive_mode());
  std::string csv = rep.to_csv();
  CHECK(csv.rfind("spt,spt_star,class,q,s,count\n", 0) == 0);
  CHECK(csv.find("0,0,\"Trivial\",0,0,12\n") != std::string::npos);
  CHECK(csv.find("2,2,\"Z2^1\",1,2,4\n") != std::string::npos);
}
