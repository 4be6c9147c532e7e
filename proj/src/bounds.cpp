#include "mkit/bounds.hpp"

#include <cassert>

namespace mkit {

int alternation_bound(int k) {
  if (k < 3) throw ValidationError("alternation_bound: k must be >= 3");
  long long num = (k % 2 == 1) ? (static_cast<long long>(k) * k - 4 * k + 9)
                               : (static_cast<long long>(k) * k - 3 * k + 4);
  assert(num % 2 == 0);
  return static_cast<int>(num / 2);
}

long long doubling_exponent(int k, int ell) {
  if (k < 2 || ell < 2) throw ValidationError("doubling_exponent: need k >= 2, ell >= 2");
  long long r = (k + 1) / 2;  // round k up to even, then halve
  long long out = 2;
  for (int i = 0; i < ell - 1; ++i) out *= r;
  return out;
}

long long exponent_s(long long p, long long ell) {
  if (p < 1 || ell < 2) throw ValidationError("exponent_s: need p >= 1, ell >= 2");
  return (p - 1) * (p - 1) * (ell - 1) + 1;
}

long long exponent_t(long long p) {
  if (p < 1) throw ValidationError("exponent_t: need p >= 1");
  return (p - 1) * (p - 1) + 1;
}

namespace {

long long flat4(int n, int a, int b, int c, int d) {
  return ((static_cast<long long>(a) * n + b) * n + c) * n + d;
}

std::string sandwich_text_at(const std::string& count) {
  return "a & (b o c o b) <= (a&b) o[" + count + "] c ; forall a,b,c: congruence";
}

Verdict sandwich_holds(const FiniteAlgebra& a, int k, const CheckOptions& opts) {
  IdentityAST ast = parse_identity(sandwich_text_at("k") + " ; param k");
  return check_quantified(a, ast, {{"k", k}}, opts);
}

}  // namespace

std::string sandwich_identity_text() {
  return "a & (b o c o b) <= (a&b) o[k] c ; forall a,b,c: congruence ; param k";
}

std::string join_form_identity_text() {
  return "a & (b o c o b) <= (a&b) + c ; forall a,b,c: congruence";
}

std::string shifted_identity_text() {
  return "a & (b o c o b) <= b o[k] (a&c) ; forall a,b,c: congruence ; param k";
}

ChainCertificate build_level_chain(const FiniteAlgebra& a, const TermChain& chain,
                                   int ea, int eb, int ec, int ed,
                                   const Congruence& alpha, const Congruence& beta,
                                   const Congruence& gamma) {
  int n = a.size();
  int k = chain.k;
  if (k < 3)
    throw ValidationError("build_level_chain: chain must have k >= 3; pad shorter "
                          "chains first");
  if (!alpha.related(ea, ed))
    throw ValidationError("build_level_chain: (a,d) not alpha-related");
  if (!beta.related(ea, eb) || !gamma.related(eb, ec) || !beta.related(ec, ed))
    throw ValidationError("build_level_chain: a,b,c,d is not a beta-gamma-beta path");

  auto tb = [&](int i, int p, int q, int r, int s) {
    return static_cast<int>(chain.tables[i][flat4(n, p, q, r, s)]);
  };

  ChainCertificate cert;
  cert.bound = alternation_bound(k);
  cert.elements.push_back(ea);
  // adjacent equal labels merge (both meets are transitive); adjacent equal
  // elements collapse outright
  auto push = [&](LinkLabel label, int elem) {
    if (cert.elements.back() == elem) return;
    if (!cert.links.empty() && cert.links.back() == label &&
        cert.elements.size() >= 2) {
      cert.elements.back() = elem;
      // collapsing may in turn create an equal adjacent pair
      if (cert.elements[cert.elements.size() - 2] == elem) {
        cert.elements.pop_back();
        cert.links.pop_back();
      }
      return;
    }
    cert.links.push_back(label);
    cert.elements.push_back(elem);
  };

  int d1abcd = tb(1, ea, eb, ec, ed);
  push(LinkLabel::AlphaBeta, d1abcd);

  if (k % 2 == 1) {
    push(LinkLabel::AlphaGamma, tb(1, ea, eb, eb, ed));
    for (int i = 1; i + 2 <= k - 2; i += 2) {
      int u = cert.elements.back();               // value of d_i(a,b,b,d)
      int v = tb(i + 2, ea, eb, eb, ed);          // d_{i+2}(a,b,b,d)
      int p = tb(i + 1, ea, eb, ec, ed);
      int q = tb(i + 2, ea, eb, ec, ed);
      for (int j = 1; j <= k; ++j)
        push((j - 1) % 2 == 0 ? LinkLabel::AlphaGamma : LinkLabel::AlphaBeta,
             tb(j, u, p, q, v));
    }
    push(LinkLabel::AlphaGamma, tb(k - 1, ea, eb, ec, ed));
    push(LinkLabel::AlphaBeta, ed);
  } else {
    bool a_block = true;
    for (int i = 1; i + 2 <= k - 1; i += 2) {
      int u = cert.elements.back();               // d_1(a,b,c,d) resp. d_i(a,b,b,d)
      int v = tb(i + 2, ea, eb, eb, ed);          // d_{i+2}(a,b,b,d); ends at d
      int p = tb(i + 1, ea, eb, ec, ed);
      int q = tb(i + 2, ea, eb, ec, ed);
      if (a_block) {
        // traverse the reversed witness of the converse direction
        for (int j = k - 1; j >= 0; --j)
          push(j % 2 == 1 ? LinkLabel::AlphaBeta : LinkLabel::AlphaGamma,
               tb(j, v, q, p, u));
      } else {
        for (int j = 1; j <= k; ++j)
          push((j - 1) % 2 == 0 ? LinkLabel::AlphaGamma : LinkLabel::AlphaBeta,
               tb(j, u, p, q, v));
      }
      a_block = !a_block;
    }
  }

  cert.endpoints_ok = cert.elements.front() == ea && cert.elements.back() == ed;
  cert.all_verified = cert.endpoints_ok;
  for (size_t i = 0; i < cert.links.size(); ++i) {
    int u = cert.elements[i], v = cert.elements[i + 1];
    bool ok = alpha.related(u, v) &&
              (cert.links[i] == LinkLabel::AlphaBeta ? beta.related(u, v)
                                                     : gamma.related(u, v));
    cert.verified.push_back(ok);
    cert.all_verified = cert.all_verified && ok;
  }
  return cert;
}

Verdict check_level_identity(const FiniteAlgebra& a, int k, const CheckOptions& opts) {
  Verdict pre = sandwich_holds(a, k, opts);
  if (!pre.holds()) {
    Verdict out;
    out.status = VerdictStatus::HypothesisNotMet;
    out.note = "the sandwich containment fails at k=" + std::to_string(k);
    out.counterexample = pre.counterexample;
    return out;
  }
  int r = alternation_bound(k);
  IdentityAST ast = parse_identity(
      "a & (b o c o b) <= (a&b) o[r] (a&c) ; forall a,b,c: congruence ; param r");
  return check_quantified(a, ast, {{"r", r}}, opts);
}

Verdict check_nte(const FiniteAlgebra& a, int k, int max_pairs,
                  const CheckOptions& opts) {
  Verdict pre = sandwich_holds(a, k, opts);
  if (!pre.holds()) {
    Verdict out;
    out.status = VerdictStatus::HypothesisNotMet;
    out.note = "the sandwich containment fails at k=" + std::to_string(k);
    out.counterexample = pre.counterexample;
    return out;
  }
  IdentityAST ast = parse_identity(
      "a & (d o c o d) <= (a&d) o[k] c ; forall a,c: congruence ; param k", {"d"});
  for (const RepresentableTolerance& rt : representable_family(a, max_pairs)) {
    CheckOptions with_delta = opts;
    with_delta.fixed["d"] = rt.delta.matrix;
    Verdict v = check_quantified(a, ast, {{"k", k}}, with_delta);
    if (!v.holds()) {
      if (v.counterexample)
        v.counterexample->binding.emplace_back("d", rt.delta.matrix);
      return v;
    }
  }
  return Verdict{};
}

Verdict check_bip(const FiniteAlgebra& a, int k, int ell, const CheckOptions& opts) {
  if (ell < 2 || ell > 5)
    throw ValidationError("check_bip: ell must be between 2 and 5");
  Verdict pre = sandwich_holds(a, k, opts);
  if (!pre.holds()) {
    Verdict out;
    out.status = VerdictStatus::HypothesisNotMet;
    out.note = "the sandwich containment fails at k=" + std::to_string(k);
    out.counterexample = pre.counterexample;
    return out;
  }
  long long m = (1LL << ell) - 1;
  long long e = doubling_exponent(k, ell);
  IdentityAST ast = parse_identity(
      "a & (b o[m] c) <= (a&b) o[e] c ; forall a,b,c: congruence ; param m ; param e");
  return check_quantified(a, ast,
                          {{"m", static_cast<int>(m)}, {"e", static_cast<int>(e)}},
                          opts);
}

Verdict check_cor(const FiniteAlgebra& a, int p, int ell, const CheckOptions& opts) {
  if (p < 1 || ell < 2 || ell > 5)
    throw ValidationError("check_cor: need p >= 1 and 2 <= ell <= 5");
  long long s = exponent_s(p, ell);
  if (s > 16) throw ValidationError("check_cor: 2^s too large at s=" + std::to_string(s));
  if (p > 10) throw ValidationError("check_cor: p too large");
  Verdict pre = sandwich_holds(a, 1 << p, opts);
  if (!pre.holds()) {
    Verdict out;
    out.status = VerdictStatus::HypothesisNotMet;
    out.note = "the sandwich containment fails at every k <= 2^p for p=" +
               std::to_string(p);
    out.counterexample = pre.counterexample;
    return out;
  }
  long long m = (1LL << ell) - 1;
  long long e = (1LL << s) + 1;
  IdentityAST ast = parse_identity(
      "a & (b o[m] c) <= (a&b) o[e] (a&c) ; forall a,b,c: congruence ; param m ; "
      "param e");
  return check_quantified(a, ast,
                          {{"m", static_cast<int>(m)}, {"e", static_cast<int>(e)}},
                          opts);
}

}  // namespace mkit
