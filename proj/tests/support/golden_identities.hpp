#pragma once

// Twenty identities with their fixed canonical renderings. Shared by the
// parser unit suite and the acceptance suite.

#include <string>
#include <utility>
#include <vector>

namespace golden {

inline const std::vector<std::pair<std::string, std::string>>& identities() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      // the sandwich containment
      {"a & (b o c o b) <= (a&b) o[k] c ; forall a,b,c: congruence ; param k",
       "a & (b o c o b) <= a & b o[k] c ; forall a,b,c: congruence ; param k"},
      // its join form
      {"a & (b o c o b) <= (a&b) + c ; forall a,b,c: congruence",
       "a & (b o c o b) <= a & b + c ; forall a,b,c: congruence"},
      // the shifted variant
      {"a & (b o c o b) <= b o[k] (a&c) ; forall a,b,c: congruence ; param k",
       "a & (b o c o b) <= b o[k] a & c ; forall a,b,c: congruence ; param k"},
      // the tolerance form
      {"a & (d o c o d) <= (a&d) o[k] c ; forall a,c: congruence ; forall d: "
       "representable ; param k",
       "a & (d o c o d) <= a & d o[k] c ; forall a,c: congruence ; forall d: "
       "representable ; param k"},
      // the doubled form at fixed exponents
      {"a & (b o[7] c) <= (a&b) o[8] c ; forall a,b,c: congruence",
       "a & (b o[7] c) <= a & b o[8] c ; forall a,b,c: congruence"},
      {"a <= a ; forall a: congruence", "a <= a ; forall a: congruence"},
      {"a o b <= b o a ; forall a,b: congruence",
       "a o b <= b o a ; forall a,b: congruence"},
      {"conv(a) <= a ; forall a: congruence", "conv(a) <= a ; forall a: congruence"},
      {"conv(a o b) <= conv(b) o conv(a) ; forall a,b: congruence",
       "conv(a o b) <= conv(b) o conv(a) ; forall a,b: congruence"},
      {"(a & b) & c <= a & (b & c) ; forall a,b,c: congruence",
       "a & b & c <= a & (b & c) ; forall a,b,c: congruence"},
      {"a + b + c <= (a + b) + c ; forall a,b,c: congruence",
       "a + b + c <= a + b + c ; forall a,b,c: congruence"},
      {"a o (b o c) <= a o b o c ; forall a,b,c: congruence",
       "a o (b o c) <= a o b o c ; forall a,b,c: congruence"},
      {"a & (b + c) <= a & b + c ; forall a,b,c: congruence",
       "a & (b + c) <= a & b + c ; forall a,b,c: congruence"},
      {"a o[2] b <= a o b ; forall a,b: congruence",
       "a o[2] b <= a o b ; forall a,b: congruence"},
      {"a o[5] b <= a o[6] b ; forall a,b: congruence",
       "a o[5] b <= a o[6] b ; forall a,b: congruence"},
      {"a o[m] (b & c) <= a o[m] b ; forall a,b,c: congruence ; param m=3",
       "a o[m] b & c <= a o[m] b ; forall a,b,c: congruence ; param m=3"},
      {"d & t <= t o d ; forall d,t: tolerance",
       "d & t <= t o d ; forall d,t: tolerance"},
      {"conv(conv(a)) <= a ; forall a: tolerance",
       "conv(conv(a)) <= a ; forall a: tolerance"},
      {"a & b o c <= (a & b) o c ; forall a,b,c: congruence",
       "a & b o c <= a & b o c ; forall a,b,c: congruence"},
      {"a & (b o c o b o c) <= a & b o[p] c + a ; forall a,b,c: congruence ; param p",
       "a & (b o c o b o c) <= a & b o[p] c + a ; forall a,b,c: congruence ; param p"},
  };
  return table;
}

}  // namespace golden
