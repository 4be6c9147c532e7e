#include <doctest.h>

#include <random>

#include "mkit/bounds.hpp"
#include "mkit/builtins.hpp"
#include "mkit/identity.hpp"
#include "support/brute.hpp"
#include "support/golden_identities.hpp"

using namespace mkit;

TEST_CASE("golden round trips: parse . pretty_print is the identity on ASTs") {
  const auto& golden = golden::identities();
  REQUIRE(golden.size() == 20);
  for (const auto& [input, canonical] : golden) {
    CAPTURE(input);
    IdentityAST ast = parse_identity(input);
    std::string printed = pretty_print(ast);
    CHECK(printed == canonical);
    IdentityAST reparsed = parse_identity(printed);
    CHECK(reparsed.equals(ast));
    CHECK(pretty_print(reparsed) == printed);
  }
}

TEST_CASE("parse errors carry positions") {
  auto expect_error = [](const std::string& text, int line, int col) {
    CAPTURE(text);
    try {
      parse_identity(text);
      FAIL_CHECK("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == line);
      CHECK(e.col >= col);
    }
  };
  expect_error("a <= b o", 1, 9);                      // dangling operator
  expect_error("a & <= b ; forall a,b: congruence", 1, 5);
  expect_error("(a <= b ; forall a,b: congruence", 1, 4);
  expect_error("a <= b @ c", 1, 8);                    // lexical error
  expect_error("a <= b ; forall a,b: lattice", 1, 22); // unknown sort
  expect_error("a <= b\n; forall a: congruence", 1, 6);// unbound b

  CHECK_THROWS_AS(parse_identity("a <= q ; forall a: congruence"), ParseError);
  CHECK_THROWS_AS(parse_identity("a <= a ; forall a: congruence ; forall a: congruence"),
                  ParseError);
  CHECK_THROWS_AS(parse_identity("a o[0] b <= a ; forall a,b: congruence"), ParseError);
  CHECK_THROWS_AS(parse_identity("a o[t] b <= a ; forall a,b: congruence"), ParseError);
  CHECK_THROWS_AS(parse_identity("a <= a ; forall a: congruence ; param a"), ParseError);
  // 'relation' parses as a sort but the checker rejects it
  IdentityAST ast = parse_identity("a <= a ; forall a: relation");
  CHECK_THROWS_AS(check_quantified(builtin_algebra("set2"), ast, {}), ValidationError);
}

TEST_CASE("evaluate basics") {
  BinaryRelation r = BinaryRelation::identity(3);
  r.set(0, 1);
  BinaryRelation s = BinaryRelation::identity(3);
  s.set(1, 2);

  IdentityAST ast = parse_identity("a <= a ; forall a: congruence");
  CHECK(evaluate(ast.lhs, {{"a", r}}, {}) == r);

  IdentityAST meet = parse_identity("a & b <= a ; forall a,b: congruence");
  CHECK(evaluate(meet.lhs, {{"a", r}, {"b", s}}, {}) == (r & s));

  IdentityAST compk = parse_identity("a o[3] b <= a ; forall a,b: congruence");
  CHECK(evaluate(compk.lhs, {{"a", r}, {"b", s}}, {}) == circ_h(r, s, 3));

  IdentityAST comp = parse_identity("a o b <= a ; forall a,b: congruence");
  CHECK(evaluate(comp.lhs, {{"a", r}, {"b", s}}, {}) == compose(r, s));

  IdentityAST cnv = parse_identity("conv(a) <= a ; forall a: congruence");
  CHECK(evaluate(cnv.lhs, {{"a", r}}, {}) == converse(r));

  IdentityAST join_ast = parse_identity("a + b <= a ; forall a,b: congruence");
  CHECK(evaluate(join_ast.lhs, {{"a", r}, {"b", s}}, {}) ==
        (r | s).equivalence_closure());

  CHECK_THROWS_AS(evaluate(ast.lhs, {}, {}), ValidationError);
  IdentityAST sym = parse_identity(
      "a o[k] b <= a ; forall a,b: congruence ; param k");
  CHECK_THROWS_AS(evaluate(sym.lhs, {{"a", r}, {"b", s}}, {}), ValidationError);
  CHECK_THROWS_AS(
      evaluate(meet.lhs, {{"a", r}, {"b", BinaryRelation::identity(2)}}, {}),
      ValidationError);
}

TEST_CASE("evaluate is monotone in every bound relation") {
  std::mt19937 rng(777);
  IdentityAST ast = parse_identity(
      "a & (b o c o b) + conv(a o[3] c) <= a ; forall a,b,c: congruence");
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 5;
    Binding small{{"a", brute::random_relation(rng, n, 0.25)},
                  {"b", brute::random_relation(rng, n, 0.25)},
                  {"c", brute::random_relation(rng, n, 0.25)}};
    Binding large = small;
    for (auto& [name, rel] : large) {
      auto extra = brute::random_relation(rng, n, 0.2);
      rel = rel | extra;
    }
    CHECK(evaluate(ast.lhs, small, {}).subset_of(evaluate(ast.lhs, large, {})));
  }
}

TEST_CASE("sandwich containment holds on the two-element lattice at k=3") {
  auto lattice2 = builtin_algebra("lattice2");
  IdentityAST ast = parse_identity(sandwich_identity_text());
  Verdict v = check_quantified(lattice2, ast, {{"k", 3}});
  CHECK(v.holds());
}

TEST_CASE("join form fails on the four-element set with the known counterexample") {
  auto set4 = builtin_algebra("set4");
  IdentityAST ast = parse_identity(join_form_identity_text());
  Verdict v = check_quantified(set4, ast, {});
  REQUIRE(v.status == VerdictStatus::Fails);
  REQUIRE(v.counterexample.has_value());
  const Counterexample& cex = *v.counterexample;
  REQUIRE(cex.binding.size() == 3);
  CHECK(cex.binding[0].first == "a");
  CHECK(Congruence::from_relation(cex.binding[0].second).rep() ==
        std::vector<int>{0, 0, 0, 3});
  CHECK(Congruence::from_relation(cex.binding[1].second).rep() ==
        std::vector<int>{0, 0, 2, 0});
  CHECK(Congruence::from_relation(cex.binding[2].second).rep() ==
        std::vector<int>{0, 0, 2, 2});
  CHECK(cex.pair == std::make_pair(0, 2));

  // the counterexample re-verifies from scratch
  Binding binding;
  for (const auto& [name, rel] : cex.binding) binding[name] = rel;
  CHECK(evaluate(ast.lhs, binding, {}).test(cex.pair.first, cex.pair.second));
  CHECK(!evaluate(ast.rhs, binding, {}).test(cex.pair.first, cex.pair.second));
}

TEST_CASE("shifted identity also fails on the four-element set") {
  auto set4 = builtin_algebra("set4");
  IdentityAST ast = parse_identity(shifted_identity_text());
  MinParameter mp = find_min_parameter(set4, ast);
  CHECK(!mp.found);
}

TEST_CASE("reflexive containments hold") {
  auto set4 = builtin_algebra("set4");
  IdentityAST ast = parse_identity("a o b <= a o b ; forall a,b: congruence");
  CHECK(check_quantified(set4, ast, {}).holds());
}

TEST_CASE("tolerance sorts run over the sampled representable family") {
  auto lattice2 = builtin_algebra("lattice2");
  IdentityAST ast = parse_identity(
      "a & d <= d ; forall a: congruence ; forall d: tolerance");
  CHECK(check_quantified(lattice2, ast, {}).holds());

  IdentityAST bad = parse_identity("d + d <= d ; forall d: tolerance");
  CHECK_THROWS_AS(check_quantified(lattice2, bad, {}), ValidationError);
}

TEST_CASE("workers race but the counterexample stays the deterministic one") {
  auto set4 = builtin_algebra("set4");
  IdentityAST ast = parse_identity(join_form_identity_text());
  CheckOptions opts;
  opts.jobs = 3;
  Verdict v = check_quantified(set4, ast, {}, opts);
  REQUIRE(v.status == VerdictStatus::Fails);
  CHECK(Congruence::from_relation(v.counterexample->binding[0].second).rep() ==
        std::vector<int>{0, 0, 0, 3});
  CHECK(v.counterexample->pair == std::make_pair(0, 2));
}

TEST_CASE("find_min_parameter on the corpus") {
  IdentityAST ast = parse_identity(sandwich_identity_text());

  auto lattice2 = builtin_algebra("lattice2");
  MinParameter mp = find_min_parameter(lattice2, ast);
  REQUIRE(mp.found);
  CHECK(mp.k == 2);
  // minimality: fails just below, holds at the reported value
  CHECK(!check_quantified(lattice2, ast, {{"k", mp.k - 1}}).holds());
  CHECK(check_quantified(lattice2, ast, {{"k", mp.k}}).holds());

  auto set4 = builtin_algebra("set4");
  CHECK(!find_min_parameter(set4, ast).found);

  FiniteAlgebra one("one", 1, {});
  MinParameter mp1 = find_min_parameter(one, ast);
  REQUIRE(mp1.found);
  CHECK(mp1.k == 1);
}

TEST_CASE("find_min_parameter rejects a left-hand-side parameter") {
  auto lattice2 = builtin_algebra("lattice2");
  IdentityAST ast = parse_identity(
      "a o[k] b <= a + b ; forall a,b: congruence ; param k");
  CHECK_THROWS_AS(find_min_parameter(lattice2, ast), ValidationError);
}
