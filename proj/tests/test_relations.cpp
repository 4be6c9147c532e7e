#include <doctest.h>

#include <random>

#include "mkit/builtins.hpp"
#include "mkit/congruence.hpp"
#include "mkit/relation.hpp"
#include "support/brute.hpp"

using namespace mkit;

namespace {

BinaryRelation from_pairs(int n, const std::vector<std::pair<int, int>>& ps) {
  BinaryRelation r(n);
  for (auto [i, j] : ps) r.set(i, j);
  return r;
}

}  // namespace

TEST_CASE("compose basics") {
  auto id = BinaryRelation::identity(3);
  auto s = from_pairs(3, {{0, 1}, {1, 2}, {2, 2}});
  CHECK(compose(id, s) == s);
  CHECK(compose(s, id) == s);
  CHECK(compose(BinaryRelation(3), s) == BinaryRelation(3));

  auto r = from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}});
  auto t = from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {1, 2}});
  CHECK(compose(r, t).test(0, 2));

  CHECK_THROWS_AS(compose(BinaryRelation(2), BinaryRelation(3)), std::invalid_argument);
}

TEST_CASE("converse basics") {
  auto r = from_pairs(3, {{0, 1}});
  CHECK(converse(r) == from_pairs(3, {{1, 0}}));
  CHECK(converse(converse(r)) == r);
  auto sym = from_pairs(3, {{0, 1}, {1, 0}, {2, 2}});
  CHECK(converse(sym) == sym);
}

TEST_CASE("intersection and union") {
  auto r = from_pairs(3, {{0, 1}, {1, 2}});
  CHECK((r & BinaryRelation::full(3)) == r);
  CHECK((r & r) == r);
  auto meet = Congruence::from_partition({0, 0, 2, 2}).meet(
      Congruence::from_partition({0, 1, 2, 0}));
  CHECK(meet == Congruence::identity(4));
}

TEST_CASE("circ_h follows the factor-count convention") {
  auto b = from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}});
  auto g = from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {1, 2}});
  CHECK(circ_h(b, g, 1) == b);
  CHECK(circ_h(b, g, 2) == compose(b, g));
  CHECK(circ_h(b, g, 3) == compose(compose(b, g), b));
  CHECK_THROWS_AS(circ_h(b, g, 0), std::invalid_argument);
}

TEST_CASE("equivalence closure") {
  CHECK(BinaryRelation(3).equivalence_closure() == BinaryRelation::identity(3));
  CHECK(from_pairs(3, {{0, 1}, {1, 2}}).equivalence_closure() ==
        BinaryRelation::full(3));
  auto eq = Congruence::from_partition({0, 0, 2}).to_relation();
  CHECK(eq.equivalence_closure() == eq);
}

TEST_CASE("chain_fixpoint examples") {
  auto id = BinaryRelation::identity(4);
  auto fp = chain_fixpoint(id, id);
  CHECK(fp.limit == id);
  CHECK(fp.k_stab == 1);

  auto g = Congruence::from_partition({0, 0, 2, 3}).to_relation();
  fp = chain_fixpoint(id, g);
  CHECK(fp.limit == g);
  CHECK(fp.k_stab <= 2);

  auto b4 = Congruence::from_partition({0, 0, 2, 2}).to_relation();
  auto g4 = Congruence::from_partition({0, 1, 1, 3}).to_relation();
  CHECK(chain_fixpoint(b4, g4).limit == BinaryRelation::full(4));
}

TEST_CASE("relation algebra laws on random instances") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 6;
    auto r = brute::random_relation(rng, n, 0.3);
    auto s = brute::random_relation(rng, n, 0.3);
    auto t = brute::random_relation(rng, n, 0.3);
    CHECK(compose(compose(r, s), t) == compose(r, compose(s, t)));
    CHECK(converse(compose(r, s)) == compose(converse(s), converse(r)));

    auto rb = r.reflexive_closure();
    auto sb = s.reflexive_closure();
    int h = 1 + trial % 5;
    CHECK(circ_h(rb, sb, h).subset_of(circ_h(rb, sb, h + 1)));
  }
}

TEST_CASE("chain fixpoint of congruences is the join") {
  std::mt19937 rng(4242);
  auto set_alg = builtin_algebra("set4");
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 5;
    auto c1 = brute::random_partition(rng, n);
    auto c2 = brute::random_partition(rng, n);
    auto fp = chain_fixpoint(c1.to_relation(), c2.to_relation());
    auto joined = (c1.to_relation() | c2.to_relation()).equivalence_closure();
    CHECK(fp.limit == joined);
  }
  (void)set_alg;
}

TEST_CASE("compatible closure") {
  auto set3 = FiniteAlgebra("set3", 3, {});
  auto r = compatible_closure(set3, from_pairs(3, {{0, 1}}));
  CHECK(r.matrix == from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}}));

  auto lattice2 = builtin_algebra("lattice2");
  auto seed = from_pairs(2, {{0, 1}});
  auto once = compatible_closure(lattice2, seed);
  CHECK(once.matrix == from_pairs(2, {{0, 0}, {1, 1}, {0, 1}}));
  CHECK(compatible_closure(lattice2, once.matrix).matrix == once.matrix);
  CHECK(is_compatible(lattice2, once.matrix));
}

TEST_CASE("cg examples") {
  auto set4 = builtin_algebra("set4");
  CHECK(cg(set4, {{2, 2}}) == Congruence::identity(4));
  CHECK(cg(set4, {{0, 1}, {2, 3}}) == Congruence::from_partition({0, 0, 2, 2}));

  auto chain3 = builtin_algebra("chain3-semilattice");
  CHECK(cg(chain3, {{1, 2}}) == Congruence::from_partition({0, 1, 1}));
}

TEST_CASE("cg equals the least compatible partition containing the pairs") {
  for (const char* name : {"set2", "set3", "set4", "lattice2", "semilattice2",
                           "chain3-lattice", "chain3-semilattice", "z2",
                           "d01-majority"}) {
    auto a = builtin_algebra(name);
    if (a.size() > 4) continue;
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dist(0, a.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::pair<int, int>> pairs;
      for (int p = 0; p < 1 + trial % 2; ++p) pairs.emplace_back(dist(rng), dist(rng));
      CHECK(cg(a, pairs).rep() == brute::least_congruence(a, pairs));
    }
  }
}

TEST_CASE("join of congruences") {
  auto set4 = builtin_algebra("set4");
  auto theta = cg(set4, {{0, 1}});
  CHECK(join(set4, theta, Congruence::identity(4)) == theta);
  CHECK(join(set4, theta, theta) == theta);
  CHECK(join(set4, Congruence::from_partition({0, 0, 2, 2}),
             Congruence::from_partition({0, 1, 1, 3})) == Congruence::full(4));
}

TEST_CASE("all_congruences matches exhaustive enumeration") {
  for (const char* name : {"set2", "set3", "set4", "lattice2", "semilattice2",
                           "chain3-lattice", "chain3-semilattice", "z2",
                           "d01-majority"}) {
    auto a = builtin_algebra(name);
    if (a.size() > 4) continue;
    auto got = all_congruences(a);
    std::vector<std::vector<int>> reps;
    for (const auto& c : got) reps.push_back(c.rep());
    CHECK(reps == brute::congruences(a));
  }
}

TEST_CASE("all_congruences counts") {
  CHECK(all_congruences(builtin_algebra("set4")).size() == 15);
  CHECK(all_congruences(builtin_algebra("lattice2")).size() == 2);
  CHECK(all_congruences(builtin_algebra("set2")).size() == 2);
  auto chain3 = all_congruences(builtin_algebra("chain3-semilattice"));
  bool has_bottom_split = false;
  for (const auto& c : chain3) has_bottom_split |= c.rep() == std::vector<int>{0, 1, 1};
  CHECK(has_bottom_split);
  CHECK_THROWS_AS(all_congruences(builtin_algebra("set4"), 3), CapExceeded);
}

TEST_CASE("all_congruences is a lattice") {
  for (const char* name : {"set4", "chain3-lattice", "N5", "M3"}) {
    auto a = builtin_algebra(name);
    auto cs = all_congruences(a);
    for (const auto& c1 : cs)
      for (const auto& c2 : cs) {
        bool meet_found = false, join_found = false;
        auto m = c1.meet(c2);
        auto j = join(a, c1, c2);
        for (const auto& c : cs) {
          meet_found |= c == m;
          join_found |= c == j;
        }
        CHECK(meet_found);
        CHECK(join_found);
      }
  }
}

TEST_CASE("representable tolerance") {
  auto lattice2 = builtin_algebra("lattice2");
  auto rt = representable_tolerance(lattice2, {});
  CHECK(rt.r.matrix == BinaryRelation::identity(2));
  CHECK(rt.delta.matrix == BinaryRelation::identity(2));

  auto n5 = builtin_algebra("N5");
  auto rt2 = representable_tolerance(n5, {{1, 3}});
  CHECK(rt2.r.matrix.is_reflexive());
  CHECK(rt2.r.matrix.subset_of(rt2.delta.matrix));
  CHECK(converse(rt2.r.matrix).subset_of(rt2.delta.matrix));
  CHECK(rt2.delta.matrix.is_symmetric());
  CHECK(is_compatible(n5, rt2.delta.matrix));

  // a congruence given as pairs comes back as itself
  auto chain3 = builtin_algebra("chain3-lattice");
  auto theta = cg(chain3, {{0, 1}});
  auto rt3 = representable_tolerance(chain3, theta.to_relation().pairs());
  CHECK(rt3.delta.matrix == theta.to_relation());
}

TEST_CASE("representable family is deterministic and deduplicated") {
  auto lattice2 = builtin_algebra("lattice2");
  auto fam1 = representable_family(lattice2, 2);
  auto fam2 = representable_family(lattice2, 2);
  REQUIRE(fam1.size() == fam2.size());
  for (size_t i = 0; i < fam1.size(); ++i)
    CHECK(fam1[i].delta.matrix == fam2[i].delta.matrix);
  for (size_t i = 0; i < fam1.size(); ++i)
    for (size_t j = i + 1; j < fam1.size(); ++j)
      CHECK(!(fam1[i].delta.matrix == fam1[j].delta.matrix));
}
