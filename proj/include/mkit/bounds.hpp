#pragma once

#include <string>
#include <vector>

#include "mkit/algebra.hpp"
#include "mkit/congruence.hpp"
#include "mkit/identity.hpp"
#include "mkit/maltsev.hpp"

namespace mkit {

/// Factor count on the refined right-hand side:
/// (k^2-4k+9)/2 for odd k, (k^2-3k+4)/2 for even k. Requires k >= 3;
/// both numerators are even in their parity case.
int alternation_bound(int k);

/// 2*r^(ell-1) where k is first rounded up to even and r = k/2.
/// Requires k >= 2, ell >= 2.
long long doubling_exponent(int k, int ell);

/// s = (p-1)^2 (ell-1) + 1 and t = (p-1)^2 + 1; t(p) = s(p,2).
long long exponent_s(long long p, long long ell);
long long exponent_t(long long p);

enum class LinkLabel { AlphaBeta, AlphaGamma };

/// A verified witness path: consecutive elements related by the labeled
/// meet (alpha&beta or alpha&gamma), recomputed against the congruence
/// matrices at verification time.
struct ChainCertificate {
  std::vector<int> elements;
  std::vector<LinkLabel> links;
  std::vector<bool> verified;   // per link
  bool endpoints_ok = false;    // chain really runs from a to d
  bool all_verified = false;
  int bound = 0;                // alternation_bound(k) the length is measured against
};

/// Build the witness path for a pair (ea, ed) in alpha meet (beta o gamma o
/// beta), with eb, ec the middle witnesses. Throws if a precondition pair is
/// not related as required. A chain that fails the chain equations yields
/// failing links or endpoints in the certificate instead of an exception.
ChainCertificate build_level_chain(const FiniteAlgebra& a, const TermChain& chain,
                                   int ea, int eb, int ec, int ed,
                                   const Congruence& alpha, const Congruence& beta,
                                   const Congruence& gamma);

/// a&(b o c o b) <= (a&b) o[r] (a&c) with r = alternation_bound(k), over all
/// congruence triples. Reports HypothesisNotMet when the plain sandwich
/// containment a&(b o c o b) <= (a&b) o[k] c fails on the algebra.
Verdict check_level_identity(const FiniteAlgebra& a, int k,
                             const CheckOptions& opts = {});

/// a&(d o c o d) <= (a&d) o[k] c for every sampled representable tolerance
/// d, over all congruence pairs a,c. HypothesisNotMet as above.
Verdict check_nte(const FiniteAlgebra& a, int k, int max_pairs = 2,
                  const CheckOptions& opts = {});

/// a&(b o[2^ell-1] c) <= (a&b) o[doubling_exponent(k,ell)] c over all
/// congruence triples. ell capped at 5.
Verdict check_bip(const FiniteAlgebra& a, int k, int ell,
                  const CheckOptions& opts = {});

/// a&(b o[2^ell-1] c) <= (a&b) o[2^s+1] (a&c) with s = exponent_s(p,ell).
/// HypothesisNotMet when the sandwich containment fails at k = 2^p.
Verdict check_cor(const FiniteAlgebra& a, int p, int ell,
                  const CheckOptions& opts = {});

/// Identity texts shared by the checks and the CLI.
std::string sandwich_identity_text();        // a & (b o c o b) <= (a&b) o[k] c
std::string join_form_identity_text();       // a & (b o c o b) <= (a&b) + c
std::string shifted_identity_text();         // a & (b o c o b) <= b o[k] (a&c)

}  // namespace mkit
