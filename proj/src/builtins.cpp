#include "mkit/builtins.hpp"

#include <functional>
#include <map>

namespace mkit {

namespace {

// meet/join tables of a finite lattice described by its order matrix
std::pair<Operation, Operation> lattice_ops(const std::vector<std::vector<bool>>& le) {
  int n = static_cast<int>(le.size());
  Operation meet{"meet", 2, std::vector<int>(n * n)};
  Operation join{"join", 2, std::vector<int>(n * n)};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int m = -1, j = -1;
      for (int c = 0; c < n; ++c) {
        if (le[c][x] && le[c][y]) {
          bool greatest = true;
          for (int d = 0; d < n; ++d)
            if (le[d][x] && le[d][y] && !le[d][c]) greatest = false;
          if (greatest) m = c;
        }
        if (le[x][c] && le[y][c]) {
          bool least = true;
          for (int d = 0; d < n; ++d)
            if (le[x][d] && le[y][d] && !le[c][d]) least = false;
          if (least) j = c;
        }
      }
      meet.table[x * n + y] = m;
      join.table[x * n + y] = j;
    }
  return {meet, join};
}

std::vector<std::vector<bool>> order_from_covers(
    int n, const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : covers) le[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  return le;
}

FiniteAlgebra chain_lattice(const std::string& name, int n, bool with_join) {
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  auto [meet, join] = lattice_ops(order_from_covers(n, covers));
  std::vector<Operation> ops{meet};
  if (with_join) ops.push_back(join);
  return FiniteAlgebra(name, n, std::move(ops));
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"lattice2", "chain3-lattice",      "N5",   "M3",   "semilattice2",
          "chain3-semilattice", "set2", "set3", "set4", "z2",
          "d01-majority"};
}

FiniteAlgebra builtin_algebra(const std::string& name) {
  if (name == "lattice2") return chain_lattice(name, 2, true);
  if (name == "chain3-lattice") return chain_lattice(name, 3, true);
  if (name == "semilattice2") return chain_lattice(name, 2, false);
  if (name == "chain3-semilattice") return chain_lattice(name, 3, false);
  if (name == "N5") {
    // 0 < 1 < 2 < 4 and 0 < 3 < 4
    auto le = order_from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
    auto [meet, join] = lattice_ops(le);
    return FiniteAlgebra(name, 5, {meet, join});
  }
  if (name == "M3") {
    // three atoms 1,2,3 between bottom 0 and top 4
    auto le = order_from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
    auto [meet, join] = lattice_ops(le);
    return FiniteAlgebra(name, 5, {meet, join});
  }
  if (name == "set2") return FiniteAlgebra(name, 2, {});
  if (name == "set3") return FiniteAlgebra(name, 3, {});
  if (name == "set4") return FiniteAlgebra(name, 4, {});
  if (name == "z2") {
    return FiniteAlgebra(name, 2,
                         {Operation{"add", 2, {0, 1, 1, 0}},
                          Operation{"neg", 1, {0, 1}}, Operation{"zero", 0, {0}}});
  }
  if (name == "d01-majority") {
    Operation maj{"maj", 3, std::vector<int>(8)};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) maj.table[a * 4 + b * 2 + c] = (a + b + c >= 2) ? 1 : 0;
    return FiniteAlgebra(name, 2, {maj});
  }
  throw ValidationError("unknown builtin algebra '" + name + "'");
}

}  // namespace mkit
