#include <random>
#include <set>

#include <gtest/gtest.h>

#include "abelsplit/error.hpp"
#include "abelsplit/group.hpp"
#include "support.hpp"

using namespace abelsplit;
using abelsplit::testing::make_spec;
using abelsplit::testing::small_specs;

namespace {

ErrorCode code_of(Int p, std::vector<Block> blocks) {
  try {
    validate_spec(p, std::move(blocks));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "spec was accepted";
  return ErrorCode::ParseError;
}

// Counts members of I by running over every entry tuple with entries below
// the target modulus and filtering by the defining conditions.
std::uint64_t count_ideal_directly(const PGroupSpec& spec) {
  const std::size_t n = spec.total_rank();
  auto mods = spec.row_moduli();
  auto exps = spec.row_exponents();
  auto blocks = spec.row_blocks();
  const Int p = spec.prime();
  std::vector<Int> e(n * n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool member = true;
    for (std::size_t r = 0; r < n && member; ++r) {
      for (std::size_t c = 0; c < n && member; ++c) {
        const Int v = e[r * n + c];
        if (blocks[r] == blocks[c]) {
          member = v % p == 0;
        } else {
          member = v % ipow(p, std::max(exps[r] - exps[c], 0)) == 0;
        }
      }
    }
    count += member ? 1 : 0;
    std::size_t i = n * n;
    while (i-- > 0) {
      if (++e[i] < mods[i / n]) break;
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return count;
}

}  // namespace

TEST(SpecValidation, AcceptsWellFormed) {
  const PGroupSpec s = validate_spec(5, {{2, 2}});
  EXPECT_EQ(s.prime(), 5);
  EXPECT_EQ(s.total_rank(), 2u);
  EXPECT_EQ(s.to_string(), "p=5 [2:2]");
}

TEST(SpecValidation, RejectsMalformed) {
  EXPECT_EQ(code_of(4, {{1, 1}}), ErrorCode::NonPrime);
  EXPECT_EQ(code_of(1, {{1, 1}}), ErrorCode::NonPrime);
  EXPECT_EQ(code_of(3, {{2, 1}, {2, 1}}), ErrorCode::NonIncreasingExponents);
  EXPECT_EQ(code_of(3, {{3, 1}, {2, 1}}), ErrorCode::NonIncreasingExponents);
  EXPECT_EQ(code_of(3, {{2, 0}}), ErrorCode::ZeroRank);
  EXPECT_EQ(code_of(3, {}), ErrorCode::EmptyBlocks);
  EXPECT_EQ(code_of(2, {{40, 1}}), ErrorCode::ModulusTooLarge);
}

TEST(Elements, AdditionExamples) {
  const PGroupSpec s = make_spec(2, {{1, 1}, {2, 1}});
  EXPECT_EQ(add_elements(s, make_element(s, {{1}, {3}}), make_element(s, {{1}, {2}})),
            make_element(s, {{0}, {1}}));
  const PGroupSpec t = make_spec(5, {{2, 2}});
  EXPECT_EQ(add_elements(t, make_element(t, {{24, 1}}), make_element(t, {{1, 24}})),
            zero_element(t));
  const GroupElement a = make_element(t, {{7, 13}});
  EXPECT_EQ(add_elements(t, a, zero_element(t)), a);
}

TEST(Elements, AdditionIsAnAbelianGroupLaw) {
  std::mt19937_64 rng(3);
  for (const PGroupSpec& s : small_specs()) {
    const auto all = enumerate_elements(s, 1 << 20);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int t = 0; t < 10000 / 24 + 1; ++t) {
      const auto& a = all[pick(rng)];
      const auto& b = all[pick(rng)];
      const auto& c = all[pick(rng)];
      EXPECT_EQ(add_elements(s, add_elements(s, a, b), c), add_elements(s, a, add_elements(s, b, c)));
      EXPECT_EQ(add_elements(s, a, b), add_elements(s, b, a));
      EXPECT_EQ(add_elements(s, a, zero_element(s)), a);
      EXPECT_EQ(add_elements(s, a, scale_element(s, a, -1)), zero_element(s));
    }
  }
}

TEST(Orders, GroupOrderExamples) {
  EXPECT_EQ(group_order(make_spec(2, {{1, 1}, {2, 1}})), 8u);
  EXPECT_EQ(group_order(make_spec(5, {{2, 2}})), 625u);
  EXPECT_EQ(group_order(make_spec(3, {{1, 3}})), 27u);
}

TEST(Orders, EnumerationMatchesGroupOrder) {
  for (const PGroupSpec& s : small_specs()) {
    std::set<std::uint64_t> seen;
    std::uint64_t count = 0;
    for_each_element(s, 1 << 20, [&](const GroupElement& g) {
      seen.insert(element_index(s, g));
      ++count;
    });
    EXPECT_EQ(count, group_order(s)) << s.to_string();
    EXPECT_EQ(seen.size(), count) << s.to_string();
  }
  EXPECT_EQ(enumerate_elements(make_spec(2, {{1, 1}}), 10).size(), 2u);
  EXPECT_THROW(enumerate_elements(make_spec(5, {{2, 2}}), 100), Error);
}

TEST(Orders, GlOrderExamples) {
  for (Int p : {2, 3, 5, 7, 11}) EXPECT_EQ(gl_order(p, 1), static_cast<std::uint64_t>(p - 1));
  EXPECT_EQ(gl_order(3, 2), 48u);
  EXPECT_EQ(gl_order(2, 3), 168u);
  EXPECT_EQ(gl_order(5, 2), 480u);
}

TEST(Orders, DeltaOrderExamples) {
  EXPECT_EQ(delta_order(make_spec(5, {{2, 2}})), 625u);
  EXPECT_EQ(delta_order(make_spec(2, {{1, 1}, {2, 1}})), 8u);
  for (Int p : {2, 3, 5}) {
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(delta_order(make_spec(p, {{1, r}})), 1u);
  }
}

TEST(Orders, DeltaOrderCountsTheIdeal) {
  for (const PGroupSpec& s : small_specs()) {
    if (group_order(s) > 729 || s.total_rank() > 3) continue;
    EXPECT_EQ(delta_order(s), count_ideal_directly(s)) << s.to_string();
  }
  EXPECT_EQ(count_ideal_directly(make_spec(5, {{2, 2}})), 625u);
}

TEST(Orders, AutOrderExamples) {
  EXPECT_EQ(aut_order(make_spec(2, {{1, 1}, {2, 1}})), 8u);
  EXPECT_EQ(aut_order(make_spec(5, {{2, 2}})), 300000u);
  EXPECT_EQ(aut_order(make_spec(3, {{1, 1}})), 2u);
}

TEST(Orders, FactorizationMultipliesBack) {
  for (const PGroupSpec& s : small_specs()) {
    std::uint64_t prod = 1;
    for (const auto& [q, e] : aut_order_factorization(s)) prod *= static_cast<std::uint64_t>(ipow(q, e));
    EXPECT_EQ(prod, aut_order(s)) << s.to_string();
  }
  EXPECT_EQ(factorize(300000), (Factorization{{2, 5}, {3, 1}, {5, 5}}));
}

TEST(DerivedSpecs, PkExamples) {
  EXPECT_EQ(derive_pk_spec(make_spec(3, {{1, 2}, {3, 1}}), 1), make_spec(3, {{2, 1}}));
  EXPECT_EQ(derive_pk_spec(make_spec(5, {{2, 2}, {5, 1}}), 3), make_spec(5, {{2, 1}}));
  EXPECT_EQ(derive_pk_spec(make_spec(2, {{2, 3}}), 1), make_spec(2, {{1, 3}}));
  try {
    derive_pk_spec(make_spec(2, {{2, 3}}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TrivialResult);
  }
}

TEST(DerivedSpecs, PkComposes) {
  const std::vector<PGroupSpec> family = {
      make_spec(2, {{1, 2}, {3, 1}, {6, 2}}), make_spec(3, {{2, 1}, {4, 1}, {5, 3}}),
      make_spec(5, {{3, 1}, {7, 1}, {9, 1}}), make_spec(7, {{1, 4}, {2, 1}})};
  for (const PGroupSpec& s : family) {
    const int top = s.blocks().back().exponent;
    for (int a = 1; a < top; ++a) {
      for (int b = 1; a + b < top; ++b) {
        EXPECT_EQ(derive_pk_spec(derive_pk_spec(s, a), b), derive_pk_spec(s, a + b))
            << s.to_string() << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(DerivedSpecs, TailExamples) {
  EXPECT_EQ(derive_tail_spec(make_spec(2, {{1, 4}, {3, 2}})), make_spec(2, {{3, 2}}));
  EXPECT_EQ(derive_tail_spec(make_spec(3, {{1, 1}, {2, 1}, {4, 1}})),
            make_spec(3, {{2, 1}, {4, 1}}));
  try {
    derive_tail_spec(make_spec(5, {{2, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingleBlock);
  }
}
