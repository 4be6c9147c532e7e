#include "mkit/maltsev.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <unordered_map>

namespace mkit {

namespace {

// labels by the restriction of each element's table to a coordinate list:
// equal restriction, equal label; labels numbered by first occurrence
std::vector<int> restriction_labels(const FreeAlgebra& f, const std::vector<int>& coords) {
  std::vector<int> labels(f.count());
  std::map<std::vector<std::uint8_t>, int> seen;
  std::vector<std::uint8_t> key(coords.size());
  for (int e = 0; e < f.count(); ++e) {
    auto tbl = f.table(e);
    for (size_t i = 0; i < coords.size(); ++i) key[i] = tbl[coords[i]];
    labels[e] = seen.try_emplace(key, static_cast<int>(seen.size())).first->second;
  }
  return labels;
}

std::vector<int> pair_labels(const std::vector<int>& u, const std::vector<int>& v) {
  std::map<std::pair<int, int>, int> seen;
  std::vector<int> out(u.size());
  for (size_t i = 0; i < u.size(); ++i)
    out[i] = seen.try_emplace({u[i], v[i]}, static_cast<int>(seen.size())).first->second;
  return out;
}

long long flat4(int n, int a, int b, int c, int d) {
  return ((static_cast<long long>(a) * n + b) * n + c) * n + d;
}

}  // namespace

std::vector<int> ConditionIISetup::labels_to_rep(const std::vector<int>& labels) {
  std::vector<int> first(labels.size(), -1);
  std::vector<int> rep(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (first[labels[i]] < 0) first[labels[i]] = static_cast<int>(i);
    rep[i] = first[labels[i]];
  }
  return rep;
}

ConditionIISetup condition_ii_setup(const FiniteAlgebra& a, long long cap) {
  ConditionIISetup s;
  s.f = free_algebra(a, cap);
  int n = a.size();

  // substitution kernels: identify w with x / y with x and w with z / z with y
  std::vector<int> co_alpha, co_beta, co_gamma;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        co_alpha.push_back(static_cast<int>(flat4(n, p, q, r, p)));
        co_gamma.push_back(static_cast<int>(flat4(n, p, q, q, r)));
      }
      co_beta.push_back(static_cast<int>(flat4(n, p, p, q, q)));
    }
  s.alpha_label = restriction_labels(s.f, co_alpha);
  s.beta_label = restriction_labels(s.f, co_beta);
  s.gamma_label = restriction_labels(s.f, co_gamma);
  s.ab_label = pair_labels(s.alpha_label, s.beta_label);
  s.x = s.f.generator_ids()[0];
  s.y = s.f.generator_ids()[1];
  s.z = s.f.generator_ids()[2];
  s.w = s.f.generator_ids()[3];

  // sanity: (x,w) sits in alpha and in beta o gamma o beta via x,y,z,w
  assert(s.alpha_label[s.x] == s.alpha_label[s.w]);
  assert(s.beta_label[s.x] == s.beta_label[s.y]);
  assert(s.gamma_label[s.y] == s.gamma_label[s.z]);
  assert(s.beta_label[s.z] == s.beta_label[s.w]);
  return s;
}

namespace {

// reachability levels of the alternating walk from x: step h relates
// elements sharing the ab-class when h is odd, the gamma-class when even
struct Walk {
  std::vector<int> level;  // first step at which an element is reached; -1 never
  int k = -1;              // first step at which w is reached; -1 if never
};

Walk alternating_walk(const ConditionIISetup& s, int step_cap) {
  int n = s.f.count();
  int ab_classes = 1 + *std::max_element(s.ab_label.begin(), s.ab_label.end());
  int g_classes = 1 + *std::max_element(s.gamma_label.begin(), s.gamma_label.end());
  std::vector<std::vector<int>> ab_members(ab_classes), g_members(g_classes);
  for (int e = 0; e < n; ++e) {
    ab_members[s.ab_label[e]].push_back(e);
    g_members[s.gamma_label[e]].push_back(e);
  }
  std::vector<bool> ab_done(ab_classes, false), g_done(g_classes, false);

  Walk walk;
  walk.level.assign(n, -1);
  walk.level[s.x] = 0;
  std::vector<int> frontier{s.x};
  for (int h = 1; h <= step_cap && !frontier.empty(); ++h) {
    bool odd = h % 2 == 1;
    std::vector<int> next;
    for (int u : frontier) {
      int cls = odd ? s.ab_label[u] : s.gamma_label[u];
      auto& done = odd ? ab_done : g_done;
      if (done[cls]) continue;
      done[cls] = true;
      for (int v : odd ? ab_members[cls] : g_members[cls])
        if (walk.level[v] < 0) {
          walk.level[v] = h;
          next.push_back(v);
        }
    }
    if (walk.level[s.w] == h) {
      walk.k = h;
      return walk;
    }
    frontier = std::move(next);
  }
  return walk;
}

}  // namespace

DecideResult decide_condition_ii_from(const ConditionIISetup& setup,
                                      std::optional<int> k_max) {
  if (setup.w == setup.x) return DecideResult{true, 1};  // degenerate universe

  // the chain limit is the join: union-find over both class partitions
  int n = setup.f.count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  };
  std::map<int, int> seen_ab, seen_g;
  for (int e = 0; e < n; ++e) {
    auto [ita, fa] = seen_ab.try_emplace(setup.ab_label[e], e);
    if (!fa) unite(ita->second, e);
    auto [itg, fg] = seen_g.try_emplace(setup.gamma_label[e], e);
    if (!fg) unite(itg->second, e);
  }
  if (find(setup.x) != find(setup.w)) return DecideResult{false, 0};

  int cap = k_max.value_or(2 * n + 2);
  Walk walk = alternating_walk(setup, cap);
  if (walk.k < 0)
    throw CapExceeded("decide_condition_ii: no witness within " +
                      std::to_string(cap) + " steps although the join contains "
                      "the pair");
  return DecideResult{true, walk.k};
}

DecideResult decide_condition_ii(const FiniteAlgebra& a, std::optional<int> k_max,
                                 long long cap) {
  return decide_condition_ii_from(condition_ii_setup(a, cap), k_max);
}

TermChain extract_terms(const ConditionIISetup& setup, int kstar) {
  Walk walk = alternating_walk(setup, kstar);
  if (setup.w != setup.x && walk.k != kstar)
    throw ValidationError("extract_terms: k does not match the decision");

  // walk back from w; at step h pick the least element reached earlier that
  // shares the step-h class
  std::vector<int> chain_ids(kstar + 1);
  chain_ids[kstar] = setup.w;
  for (int h = kstar; h >= 1; --h) {
    int cur = chain_ids[h];
    const std::vector<int>& lab = (h % 2 == 1) ? setup.ab_label : setup.gamma_label;
    int pred = -1;
    for (int u = 0; u < setup.f.count(); ++u) {
      if (walk.level[u] >= 0 && walk.level[u] <= h - 1 && lab[u] == lab[cur]) {
        pred = u;
        break;
      }
    }
    assert(pred >= 0 && "a reached element must have a predecessor");
    chain_ids[h - 1] = pred;
  }
  assert(chain_ids[0] == setup.x);

  TermChain chain;
  chain.k = kstar;
  chain.element_ids = chain_ids;
  for (int id : chain_ids) {
    auto tbl = setup.f.table(id);
    chain.tables.emplace_back(tbl.begin(), tbl.end());
  }
  return chain;
}

TermChain TermChain::padded_to(int k2) const {
  if (k2 < k) throw ValidationError("padded_to: cannot shorten a chain");
  TermChain out = *this;
  while (out.k < k2) {
    out.tables.push_back(out.tables.back());
    out.element_ids.push_back(-1);
    ++out.k;
  }
  return out;
}

namespace {

int expect_len(const FiniteAlgebra& a, const TermChain& chain) {
  int n = a.size();
  long long len = static_cast<long long>(n) * n * n * n;
  if (chain.tables.empty() || chain.k + 1 != static_cast<int>(chain.tables.size()))
    throw ValidationError("term chain: table count does not match k");
  for (const auto& t : chain.tables)
    if (static_cast<long long>(t.size()) != len)
      throw ValidationError("term chain: table length mismatch");
  return n;
}

}  // namespace

TermChainReport verify_term_chain(const FiniteAlgebra& a, const TermChain& chain) {
  int n = expect_len(a, chain);
  TermChainReport rep;
  int k = chain.k;

  for (int p = 0; p < n && rep.a.holds; ++p)
    for (int q = 0; q < n && rep.a.holds; ++q)
      for (int r = 0; r < n && rep.a.holds; ++r)
        for (int s = 0; s < n && rep.a.holds; ++s)
          if (chain.tables[0][flat4(n, p, q, r, s)] != p)
            rep.a = EquationStatus{false, 0, {p, q, r, s}};

  for (int i = 0; i + 1 <= k && rep.b.holds; i += 2)
    for (int p = 0; p < n && rep.b.holds; ++p)
      for (int q = 0; q < n && rep.b.holds; ++q) {
        long long t = flat4(n, p, p, q, q);
        if (chain.tables[i][t] != chain.tables[i + 1][t])
          rep.b = EquationStatus{false, i, {p, q}};
      }

  for (int i = 0; i + 1 <= k && rep.c.holds; i += 2)
    for (int p = 0; p < n && rep.c.holds; ++p)
      for (int q = 0; q < n && rep.c.holds; ++q)
        for (int r = 0; r < n && rep.c.holds; ++r) {
          long long t = flat4(n, p, q, r, p);
          if (chain.tables[i][t] != chain.tables[i + 1][t])
            rep.c = EquationStatus{false, i, {p, q, r}};
        }

  for (int i = 1; i + 1 <= k && rep.d.holds; i += 2)
    for (int p = 0; p < n && rep.d.holds; ++p)
      for (int q = 0; q < n && rep.d.holds; ++q)
        for (int r = 0; r < n && rep.d.holds; ++r) {
          long long t = flat4(n, p, q, q, r);
          if (chain.tables[i][t] != chain.tables[i + 1][t])
            rep.d = EquationStatus{false, i, {p, q, r}};
        }

  for (int p = 0; p < n && rep.e.holds; ++p)
    for (int q = 0; q < n && rep.e.holds; ++q)
      for (int r = 0; r < n && rep.e.holds; ++r)
        for (int s = 0; s < n && rep.e.holds; ++s)
          if (chain.tables[k][flat4(n, p, q, r, s)] != s)
            rep.e = EquationStatus{false, k, {p, q, r, s}};

  return rep;
}

EquationStatus verify_condition_f(const FiniteAlgebra& a, const TermChain& chain) {
  int n = expect_len(a, chain);
  for (int i = 0; i <= chain.k; ++i)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (chain.tables[i][flat4(n, p, q, q, p)] != p)
          return EquationStatus{false, i, {p, q}};
  return EquationStatus{};
}

DayReport verify_day_conditions(const FiniteAlgebra& a, const TermChain& chain) {
  DayReport rep;
  rep.chain = verify_term_chain(a, chain);
  rep.f = verify_condition_f(a, chain);
  rep.holds = rep.chain.a.holds && rep.chain.b.holds && rep.chain.d.holds &&
              rep.chain.e.holds && rep.f.holds;
  return rep;
}

}  // namespace mkit
