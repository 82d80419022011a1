#pragma once

#include <initializer_list>
#include <vector>

#include <functional>

#include "abelsplit/endo.hpp"
#include "abelsplit/group.hpp"

namespace abelsplit::testing {

inline PGroupSpec make_spec(Int p, std::initializer_list<Block> blocks) {
  return PGroupSpec(p, std::vector<Block>(blocks));
}

// Small specs across p in {2, 3, 5} with |G| <= 4096.
inline std::vector<PGroupSpec> small_specs() {
  return {
      make_spec(2, {{1, 1}}),
      make_spec(2, {{1, 3}}),
      make_spec(2, {{2, 2}}),
      make_spec(2, {{3, 2}}),
      make_spec(2, {{1, 1}, {2, 1}}),
      make_spec(2, {{1, 2}, {2, 1}}),
      make_spec(2, {{1, 1}, {3, 1}}),
      make_spec(2, {{1, 1}, {2, 1}, {3, 1}}),
      make_spec(2, {{2, 1}, {4, 1}}),
      make_spec(2, {{1, 2}, {3, 2}}),
      make_spec(2, {{2, 3}}),
      make_spec(3, {{1, 2}}),
      make_spec(3, {{2, 1}}),
      make_spec(3, {{2, 2}}),
      make_spec(3, {{1, 1}, {2, 1}}),
      make_spec(3, {{1, 1}, {3, 1}}),
      make_spec(3, {{1, 2}, {2, 1}}),
      make_spec(3, {{2, 1}, {4, 1}}),
      make_spec(5, {{1, 1}}),
      make_spec(5, {{2, 1}}),
      make_spec(5, {{2, 2}}),
      make_spec(5, {{1, 1}, {2, 1}}),
      make_spec(5, {{1, 1}, {3, 1}}),
      make_spec(5, {{1, 2}, {2, 1}}),
  };
}

// Every element of End(G): cell (j, k) entries run over the multiples of
// p^{max(n_j - n_k, 0)} below p^{n_j}.
inline void for_each_endo(const PGroupSpec& spec, const std::function<void(const BlockEndo&)>& visit) {
  const std::size_t n = spec.total_rank();
  auto mods = spec.row_moduli();
  auto exps = spec.row_exponents();
  std::vector<Int> step(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) step[r * n + c] = ipow(spec.prime(), std::max(exps[r] - exps[c], 0));
  }
  std::vector<Int> e(n * n, 0);
  for (;;) {
    visit(BlockEndo::from_entries(spec, e));
    std::size_t i = n * n;
    while (i-- > 0) {
      e[i] += step[i];
      if (e[i] < mods[i / n]) break;
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace abelsplit::testing
