#ifndef RIGIDITY_THEORY_HPP
#define RIGIDITY_THEORY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/perm_group.hpp"
#include "rigidity/structure.hpp"

namespace rigidity {

// Vocabulary shape parameters the growth polynomial depends on: k symbols of
// the maximal arity r, l symbols of arity r-1.
struct BetaParams {
  long long k = 1;
  long long l = 0;
  long long r = 2;

  static BetaParams make(long long k, long long l, long long r);
  static BetaParams of(const Vocabulary& vocab) { return make(vocab.k, vocab.l, vocab.r); }
};

// beta(x,y,z) = k*C(r,2)*x^2 - k*r*(r-1)*x*y - l*(r-1)*x + l*(r-1)*y + k*C(r,2)*z
long long beta(long long x, long long y, long long z, const BetaParams& params);

struct BetaGap {
  long long gap = 0;       // beta(2i+2, i+1, 2(i+1)^2) - beta(2i+1, i, 2i^2-2i+3)
  long long expected = 0;  // 2*k*C(r,2)*(2i-1)
  bool check = false;      // gap == expected
};

BetaGap beta_gap(long long i, const BetaParams& params);  // needs i >= 1, r >= 3

// Support statistics and automorphism classes of a typical large structure
// with spt >= m: support exactly m_prime, and group Z2^i (i <= m_prime/2)
// when r = 2, Z2 alone when r >= 3.
struct Prediction {
  int m = 0;
  int m_prime = 0;                 // m rounded up to even
  std::vector<GroupClass> classes; // sorted
};

Prediction predict(int m, int r);  // m >= 2, r >= 2

// Membership of M in the family determined by the pattern (A, H): is there
// an embedding f of A onto Spt*(M) whose conjugate H_f = {f o h o f^-1} lies
// inside Aut(M) restricted to Spt*(M)?
//
// Preconditions (violations throw, distinct from a false answer): Aut(A) is
// fixed-point-free, H is a fixed-point-free subgroup of Aut(A).
struct MembershipResult {
  bool member = false;
  std::optional<std::vector<int>> witness;  // image of A's points in M, 0-based
};

MembershipResult membership_S(const Structure& A, const PermGroup& H, const Structure& M);

// Given M in the family of (A, H): does EVERY qualifying embedding f give
// H_f = the whole restricted group?  Throws if M is not a member.
bool is_full(const Structure& A, const PermGroup& H, const Structure& M);

// Exhaustive finite verification of the group-theoretic lemmas, over the
// subgroup lattices of small symmetric groups.
struct LemmaCheck {
  std::string check;           // short name, e.g. "fpf-on-3-points"
  std::string scope;           // what was swept
  bool pass = false;
  std::string counterexample;  // empty when pass
};

std::vector<LemmaCheck> verify_lemma_suite(int max_degree = 6);  // 3 <= max_degree <= 6

}  // namespace rigidity

#endif
