#include "rigidity/theory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rigidity/automorphism.hpp"

namespace rigidity {

BetaParams BetaParams::make(long long k, long long l, long long r) {
  if (k < 1) throw std::invalid_argument("beta needs k >= 1");
  if (l < 0) throw std::invalid_argument("beta needs l >= 0");
  if (r < 2) throw std::invalid_argument("beta needs r >= 2");
  return BetaParams{k, l, r};
}

long long beta(long long x, long long y, long long z, const BetaParams& p) {
  long long choose2 = p.r * (p.r - 1) / 2;
  return p.k * choose2 * x * x - p.k * p.r * (p.r - 1) * x * y - p.l * (p.r - 1) * x +
         p.l * (p.r - 1) * y + p.k * choose2 * z;
}

BetaGap beta_gap(long long i, const BetaParams& p) {
  if (i < 1) throw std::invalid_argument("beta_gap needs i >= 1");
  if (p.r < 3) throw std::invalid_argument("beta_gap needs r >= 3");
  BetaGap g;
  long long upper = beta(2 * i + 2, i + 1, 2 * (i + 1) * (i + 1), p);
  long long lower = beta(2 * i + 1, i, 2 * i * i - 2 * i + 3, p);
  g.gap = upper - lower;
  g.expected = 2 * p.k * (p.r * (p.r - 1) / 2) * (2 * i - 1);
  g.check = g.gap == g.expected;
  return g;
}

Prediction predict(int m, int r) {
  if (m < 2) throw std::invalid_argument("predict needs m >= 2");
  if (r < 2) throw std::invalid_argument("predict needs r >= 2");
  Prediction p;
  p.m = m;
  p.m_prime = (m % 2 == 0) ? m : m + 1;
  int imax = (r == 2) ? p.m_prime / 2 : 1;
  for (int i = 1; i <= imax; ++i) {
    GroupClass c;
    c.tag = GroupClass::Tag::Z2Power;
    c.t = i;
    c.order = std::uint64_t{1} << i;
    c.exponent = 2;
    p.classes.push_back(c);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Membership in S_n(A, H) and fullness

namespace {

struct PatternContext {
  AutProfile prof_m;
  Structure m_restricted;
  // Qualifying embeddings as maps [|A|] -> [|Spt*|] (re-indexed).
  std::vector<std::vector<int>> embeddings;
};

void check_pattern_preconditions(const Structure& A, const PermGroup& H) {
  PermGroup aut_a = automorphism_group(A);
  if (aut_a.has_fixed_point())
    throw std::invalid_argument("pattern structure must have fixed-point-free automorphisms");
  if (H.degree() != A.n()) throw std::invalid_argument("pattern group degree must match |A|");
  if (H.has_fixed_point())
    throw std::invalid_argument("pattern group must be fixed-point-free");
  for (const Permutation& h : H.elements())
    if (!aut_a.contains(h))
      throw std::invalid_argument("pattern group must be a subgroup of Aut(A)");
}

// All bijections f: [|A|] -> [k] (k = |Spt*|) that are isomorphisms A -> M|Spt*
// and conjugate H into the restricted automorphism group.
PatternContext qualifying_embeddings(const Structure& A, const PermGroup& H, const Structure& M) {
  PatternContext ctx{profile(M), Structure(A.vocab(), 1), {}};
  int ka = A.n();
  if (ctx.prof_m.spt_star != ka) return ctx;

  ctx.m_restricted = induced_substructure(M, ctx.prof_m.spt_star_set);
  std::vector<int> f(static_cast<std::size_t>(ka));
  std::iota(f.begin(), f.end(), 0);
  std::vector<std::uint8_t> conj(static_cast<std::size_t>(ka));
  do {
    if (!is_isomorphism(f, A, ctx.m_restricted)) continue;
    std::vector<int> finv(static_cast<std::size_t>(ka));
    for (int i = 0; i < ka; ++i) finv[f[i]] = i;
    bool ok = true;
    for (const Permutation& h : H.elements()) {
      for (int x = 0; x < ka; ++x) conj[x] = static_cast<std::uint8_t>(f[h(finv[x])]);
      if (!ctx.prof_m.restricted.contains(Permutation::from_images(conj))) {
        ok = false;
        break;
      }
    }
    if (ok) ctx.embeddings.push_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return ctx;
}

}  // namespace

MembershipResult membership_S(const Structure& A, const PermGroup& H, const Structure& M) {
  if (!(A.vocab() == M.vocab())) throw std::invalid_argument("pattern and structure vocabularies differ");
  check_pattern_preconditions(A, H);
  PatternContext ctx = qualifying_embeddings(A, H, M);
  MembershipResult res;
  if (ctx.embeddings.empty()) return res;
  res.member = true;
  // Report the witness in M's own point labels.
  std::vector<int> witness(ctx.embeddings[0].size());
  for (std::size_t i = 0; i < witness.size(); ++i)
    witness[i] = ctx.prof_m.spt_star_set[ctx.embeddings[0][i]];
  res.witness = std::move(witness);
  return res;
}

bool is_full(const Structure& A, const PermGroup& H, const Structure& M) {
  if (!(A.vocab() == M.vocab())) throw std::invalid_argument("pattern and structure vocabularies differ");
  check_pattern_preconditions(A, H);
  PatternContext ctx = qualifying_embeddings(A, H, M);
  if (ctx.embeddings.empty())
    throw std::invalid_argument("structure is not a member for this pattern");
  // Conjugation by a bijection is injective, so H_f = restricted group
  // exactly when the orders agree.
  return H.order() == ctx.prof_m.restricted.order();
}

// ---------------------------------------------------------------------------
// Lemma verifiers

namespace {

std::string gens_string(const PermGroup& g) {
  if (g.generators().empty()) return "trivial";
  std::string out;
  for (const Permutation& p : g.generators()) {
    if (!out.empty()) out += ", ";
    out += p.cycle_string();
  }
  return out;
}

LemmaCheck check_fpf_on_3_points() {
  LemmaCheck c{"fpf-on-3-points", "", true, ""};
  int inspected = 0;
  for (const PermGroup& h : subgroups_of_sym(3)) {
    if (h.has_fixed_point()) continue;
    ++inspected;
    GroupClass cl = classify(h);
    if (cl.tag != GroupClass::Tag::Z3 && cl.tag != GroupClass::Tag::Sym3) {
      c.pass = false;
      c.counterexample = "<" + gens_string(h) + "> classified " + cl.to_string();
      break;
    }
  }
  c.scope = "all subgroups of Sym_3 (" + std::to_string(inspected) + " fixed-point-free)";
  return c;
}

LemmaCheck check_all_orbits_size_2(int max_degree) {
  LemmaCheck c{"all-orbits-size-2", "", true, ""};
  int inspected = 0;
  std::string degrees;
  for (int d = 2; d <= max_degree; d += 2) {
    degrees += (degrees.empty() ? "" : ",") + std::to_string(d);
    for (const PermGroup& h : subgroups_of_sym(d)) {
      OrbitStats st = h.orbit_stats();
      bool all2 = true;
      for (const auto& orb : st.point_orbits)
        if (orb.size() != 2) { all2 = false; break; }
      if (all2)
        for (const auto& orb : st.pair_orbits)
          if (orb.size() != 2) { all2 = false; break; }
      if (!all2) continue;
      ++inspected;
      GroupClass cl = classify(h);
      int i = d / 2;
      if (cl.tag != GroupClass::Tag::Z2Power || cl.t != 1 || st.s != 2 * i * i) {
        c.pass = false;
        c.counterexample = "<" + gens_string(h) + "> on " + std::to_string(d) +
                           " points: class " + cl.to_string() + ", s=" + std::to_string(st.s);
        return c;
      }
    }
  }
  c.scope = "subgroups of Sym_d, d in {" + degrees + "}, all point- and pair-orbits of size 2 (" +
            std::to_string(inspected) + " groups)";
  return c;
}

LemmaCheck check_five_point_maximizer() {
  LemmaCheck c{"five-point-maximizer", "", true, ""};
  int inspected = 0;
  int max_s = -1;
  std::vector<PermGroup> groups = subgroups_of_sym(5);
  for (const PermGroup& h : groups) {
    if (h.has_fixed_point()) continue;
    OrbitStats st = h.orbit_stats();
    std::vector<std::size_t> sizes;
    for (const auto& orb : st.point_orbits) sizes.push_back(orb.size());
    std::sort(sizes.begin(), sizes.end());
    if (sizes != std::vector<std::size_t>{2, 3}) continue;
    ++inspected;
    max_s = std::max(max_s, st.s);
  }
  if (max_s != 7) {
    c.pass = false;
    c.counterexample = "max s over the family is " + std::to_string(max_s) + ", want 7";
  } else {
    for (const PermGroup& h : groups) {
      if (h.has_fixed_point()) continue;
      OrbitStats st = h.orbit_stats();
      std::vector<std::size_t> sizes;
      for (const auto& orb : st.point_orbits) sizes.push_back(orb.size());
      std::sort(sizes.begin(), sizes.end());
      if (sizes != std::vector<std::size_t>{2, 3} || st.s != max_s) continue;
      GroupClass cl = classify(h);
      if (cl.tag != GroupClass::Tag::Z2PowerTimesZ3 || cl.t != 1) {
        c.pass = false;
        c.counterexample = "maximizer <" + gens_string(h) + "> classified " + cl.to_string();
        break;
      }
    }
  }
  c.scope = "fixed-point-free subgroups of Sym_5 with orbit sizes {2,3} (" +
            std::to_string(inspected) + " groups)";
  return c;
}

LemmaCheck check_beta_gap_sweep() {
  LemmaCheck c{"beta-gap-identity", "", true, ""};
  int tuples = 0;
  for (long long i = 1; i <= 20 && c.pass; ++i)
    for (long long k = 1; k <= 4 && c.pass; ++k)
      for (long long l = 0; l <= 4 && c.pass; ++l)
        for (long long r = 3; r <= 6; ++r) {
          ++tuples;
          BetaGap g = beta_gap(i, BetaParams::make(k, l, r));
          if (!g.check) {
            c.pass = false;
            c.counterexample = "i=" + std::to_string(i) + ",k=" + std::to_string(k) +
                               ",l=" + std::to_string(l) + ",r=" + std::to_string(r) +
                               ": gap=" + std::to_string(g.gap) +
                               " expected=" + std::to_string(g.expected);
            break;
          }
        }
  c.scope = std::to_string(tuples) + " parameter tuples (i<=20, k<=4, l<=4, r<=6)";
  return c;
}

}  // namespace

std::vector<LemmaCheck> verify_lemma_suite(int max_degree) {
  if (max_degree < 3 || max_degree > 6)
    throw std::invalid_argument("lemma suite runs at degrees 3..6");
  std::vector<LemmaCheck> out;
  out.push_back(check_fpf_on_3_points());
  out.push_back(check_all_orbits_size_2(max_degree));
  if (max_degree >= 5) out.push_back(check_five_point_maximizer());
  out.push_back(check_beta_gap_sweep());
  return out;
}

}  // namespace rigidity
