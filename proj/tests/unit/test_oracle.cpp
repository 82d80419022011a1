#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "abelsplit/dimino.hpp"
#include "abelsplit/error.hpp"
#include "abelsplit/json_io.hpp"
#include "abelsplit/oracle.hpp"
#include "abelsplit/splitting.hpp"
#include "support.hpp"

using namespace abelsplit;
using abelsplit::testing::for_each_endo;
using abelsplit::testing::make_spec;

TEST(BruteForce, BijectiveExamples) {
  const PGroupSpec s = make_spec(3, {{1, 1}, {2, 1}});
  EXPECT_TRUE(brute_force_is_bijective(BlockEndo::identity(s), 100));
  EXPECT_FALSE(brute_force_is_bijective(BlockEndo::zero(s), 100));
  EXPECT_THROW(brute_force_is_bijective(BlockEndo::identity(s), 10), Error);
}

TEST(BruteForce, FullEndomorphismSetOfZ2Z4) {
  const PGroupSpec s = make_spec(2, {{1, 1}, {2, 1}});
  std::uint64_t total = 0, bijective = 0;
  for_each_endo(s, [&](const BlockEndo& e) {
    ++total;
    const bool b = brute_force_is_bijective(e, 100);
    bijective += b ? 1 : 0;
    EXPECT_EQ(is_automorphism(e), b);
  });
  EXPECT_EQ(total, 32u);
  EXPECT_EQ(bijective, 8u);
}

TEST(BruteForce, AutCountMatchesFormula) {
  Budgets b;
  for (const PGroupSpec& s : {make_spec(2, {{1, 1}, {2, 1}}), make_spec(3, {{1, 1}}),
                              make_spec(2, {{1, 2}}), make_spec(3, {{2, 1}}),
                              make_spec(2, {{2, 2}}), make_spec(5, {{1, 1}, {2, 1}})}) {
    EXPECT_EQ(brute_force_aut_count(s, b), aut_order(s)) << s.to_string();
  }
  EXPECT_EQ(brute_force_aut_count(make_spec(2, {{1, 1}, {2, 1}}), b), 8u);
}

TEST(Delta, EnumerationExamples) {
  for (Int p : {2, 3, 5}) {
    const auto d = enumerate_delta(make_spec(p, {{1, 3}}), 10);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_TRUE(d.front().is_identity());
  }
  const auto d = enumerate_delta(make_spec(5, {{2, 2}}), 1 << 16);
  EXPECT_EQ(d.size(), 625u);
  for (const BlockEndo& e : d) EXPECT_TRUE(in_delta(e));
  const auto small = enumerate_delta(make_spec(2, {{1, 1}, {2, 1}}), 100);
  EXPECT_EQ(small.size(), 8u);
  for (const BlockEndo& e : small) EXPECT_TRUE(is_automorphism(e));
  EXPECT_THROW(enumerate_delta(make_spec(5, {{2, 2}}), 624), Error);
}

TEST(Delta, EnumerationIsDistinctAndMatchesFormula) {
  for (const PGroupSpec& s : abelsplit::testing::small_specs()) {
    std::unordered_set<BlockEndo, BlockEndoHash> seen;
    for_each_delta(s, 1 << 16, [&](const BlockEndo& e) {
      EXPECT_TRUE(in_delta(e));
      seen.insert(e);
    });
    EXPECT_EQ(seen.size(), delta_order(s)) << s.to_string();
  }
}

TEST(Dimino, Examples) {
  const PGroupSpec s = make_spec(5, {{2, 1}});
  const BlockEndo id = BlockEndo::identity(s);
  std::vector<BlockEndo> none;
  auto trivial = dimino_closure<BlockEndo, BlockEndoHash>(id, std::span<const BlockEndo>(none), 10, compose);
  EXPECT_TRUE(trivial.complete());
  EXPECT_EQ(trivial.elements.size(), 1u);

  std::vector<BlockEndo> omega{BlockEndo::from_entries(s, {7})};
  auto cyclic = dimino_closure<BlockEndo, BlockEndoHash>(id, std::span<const BlockEndo>(omega), 10, compose);
  EXPECT_EQ(cyclic.elements.size(), 4u);

  const PGroupSpec q = make_spec(3, {{1, 2}});
  const auto gens = find_generators_of_q(q, 1, 1000);
  auto capped = dimino_closure<QElement, QElementHash>(
      QElement::identity(q), std::span<const QElement>(gens), 10,
      [](const QElement& a, const QElement& b) { return a * b; });
  EXPECT_EQ(capped.status, ClosureStatus::Overflow);
}

TEST(Generators, GenerateTheQuotient) {
  const auto cyclic = find_generators_of_q(make_spec(7, {{1, 1}}), 1, 1000);
  ASSERT_EQ(cyclic.size(), 1u);
  EXPECT_EQ(q_element_order(cyclic.front()), 6u);
  EXPECT_TRUE(find_generators_of_q(make_spec(2, {{3, 1}}), 1, 1000).empty());

  const PGroupSpec a = make_spec(3, {{2, 2}});
  const auto ga = find_generators_of_q(a, 20240917, 100000);
  EXPECT_LE(ga.size(), 2u);
  EXPECT_EQ(q_subgroup_order(a, ga, 1000), std::optional<std::uint64_t>(48));
  const PGroupSpec b = make_spec(2, {{2, 3}});
  const auto gb = find_generators_of_q(b, 20240917, 100000);
  EXPECT_LE(gb.size(), 2u);
  EXPECT_EQ(q_subgroup_order(b, gb, 1000), std::optional<std::uint64_t>(168));
}

TEST(Generators, ElementaryFallbackGenerates) {
  for (auto [p, r] : {std::pair<Int, int>{2, 3}, {3, 2}, {5, 2}, {3, 3}}) {
    const auto gens = elementary_gl_generators(p, r);
    const auto c = dimino_closure<ModMatrix, ModMatrixHash>(
        ModMatrix::identity(static_cast<std::size_t>(r), p), std::span<const ModMatrix>(gens), 20000,
        [](const ModMatrix& x, const ModMatrix& y) { return x * y; });
    EXPECT_EQ(c.elements.size(), gl_order(p, r));
  }
}

TEST(ComplementSearch, FindsSectionsWhereBlocksSplit) {
  for (const PGroupSpec& s : {make_spec(3, {{2, 2}}), make_spec(2, {{2, 2}}), make_spec(2, {{2, 3}})}) {
    const SearchResult r = complement_lift_search(s, SearchOptions{});
    ASSERT_EQ(r.status, SearchStatus::Found) << s.to_string();
    ASSERT_TRUE(r.certificate.has_value());
    const VerificationReport rep = verify_section(*r.certificate, VerificationMode::FullTable);
    EXPECT_EQ(rep.pairs_checked, quotient_order(s) * quotient_order(s));
  }
}

TEST(ComplementSearch, TrivialKernel) {
  for (Int p : {2, 3, 5}) {
    const SearchResult r = complement_lift_search(make_spec(p, {{1, 2}}), SearchOptions{});
    EXPECT_EQ(r.status, SearchStatus::Found);
    EXPECT_EQ(r.proof, "trivial-kernel");
  }
}

TEST(ComplementSearch, PrepassProvesNonSplitting) {
  const SearchResult r = complement_lift_search(make_spec(5, {{2, 2}}), SearchOptions{});
  EXPECT_EQ(r.status, SearchStatus::NotFoundExhausted);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(ComplementSearch, ReportsBudget) {
  SearchOptions o;
  o.budgets.delta = 10;
  EXPECT_EQ(complement_lift_search(make_spec(3, {{2, 2}}), o).status, SearchStatus::BudgetExceeded);
}

TEST(ComplementSearch, CertificateIndependentOfWorkerCount) {
  for (const PGroupSpec& s : {make_spec(3, {{2, 2}}), make_spec(2, {{1, 1}, {2, 2}})}) {
    SearchOptions one, four;
    one.workers = 1;
    four.workers = 4;
    const SearchResult a = complement_lift_search(s, one);
    const SearchResult b = complement_lift_search(s, four);
    ASSERT_EQ(a.status, SearchStatus::Found);
    ASSERT_EQ(b.status, SearchStatus::Found);
    EXPECT_EQ(certificate_to_json(*a.certificate).dump(), certificate_to_json(*b.certificate).dump());
  }
}

// Without the pre-pass the search has to exhaust every assignment.
TEST(ComplementSearch, ExhaustsWithoutPrepass) {
  if (std::getenv("ABELSPLIT_LONG_TESTS") == nullptr) {
    GTEST_SKIP() << "set ABELSPLIT_LONG_TESTS=1 to run the exhaustive search";
  }
  SearchOptions o;
  o.obstruction_prepass = false;
  const SearchResult r = complement_lift_search(make_spec(5, {{2, 2}}), o);
  EXPECT_EQ(r.status, SearchStatus::NotFoundExhausted);
}

TEST(Obstruction, Examples) {
  const ObstructionReport none = order_p_coset_obstruction(make_spec(5, {{2, 2}}), 1 << 16);
  EXPECT_EQ(none.verdict, ObstructionVerdict::NoOrderPLift);
  EXPECT_EQ(none.coset_size, 625u);
  EXPECT_EQ(none.orders_histogram, (std::map<std::uint64_t, std::uint64_t>{{25, 625}}));

  EXPECT_EQ(order_p_coset_obstruction(make_spec(3, {{2, 2}}), 1 << 16).verdict,
            ObstructionVerdict::OrderPLiftExists);

  const PGroupSpec flat = make_spec(5, {{1, 2}});
  const ObstructionReport w = order_p_coset_obstruction(flat, 10);
  ASSERT_EQ(w.verdict, ObstructionVerdict::OrderPLiftExists);
  BlockEndo expected = BlockEndo::identity(flat);
  expected.set_entry(0, 1, 1);
  EXPECT_EQ(*w.witness, expected);

  try {
    order_p_coset_obstruction(make_spec(5, {{2, 1}}), 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankTooSmall);
  }
}

// A verified section maps the reduction of 1 + E to an order-p lift in the coset.
TEST(Obstruction, NeverContradictsAFoundSection) {
  for (const PGroupSpec& s : {make_spec(3, {{2, 2}}), make_spec(2, {{2, 2}}), make_spec(2, {{2, 3}})}) {
    const SearchResult r = complement_lift_search(s, SearchOptions{});
    ASSERT_EQ(r.status, SearchStatus::Found);
    EXPECT_EQ(order_p_coset_obstruction(s, 1 << 16).verdict, ObstructionVerdict::OrderPLiftExists);
  }
}

TEST(Binomial, CongruenceHolds) {
  for (const PGroupSpec& s : {make_spec(5, {{2, 2}}), make_spec(7, {{2, 3}}), make_spec(5, {{2, 2}, {3, 1}})}) {
    const BinomialReport r = binomial_obstruction_check(s, 1000, 77);
    EXPECT_EQ(r.trials, 1000u);
    EXPECT_EQ(r.failures, 0u) << s.to_string();
    EXPECT_EQ(r.expected, s.prime());
  }
}

TEST(Binomial, Preconditions) {
  auto code = [](const PGroupSpec& s) {
    try {
      binomial_obstruction_check(s, 1, 1);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code(make_spec(3, {{2, 2}})), ErrorCode::PreconditionViolation);
  EXPECT_EQ(code(make_spec(5, {{3, 2}})), ErrorCode::PreconditionViolation);
  EXPECT_EQ(code(make_spec(5, {{2, 1}})), ErrorCode::RankTooSmall);
}

TEST(CrossCheck, StructuredAndRandomEndomorphisms) {
  const EquivalenceReport r = bijectivity_cross_check(make_spec(3, {{1, 1}, {2, 2}}), 2000, 5, 1 << 12);
  EXPECT_EQ(r.disagreements, 0u);
  EXPECT_GT(r.automorphisms, 0u);
  EXPECT_LT(r.automorphisms, r.checked);
}
