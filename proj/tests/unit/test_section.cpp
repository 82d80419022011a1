#include <gtest/gtest.h>

#include "abelsplit/error.hpp"
#include "abelsplit/oracle.hpp"
#include "abelsplit/section.hpp"
#include "abelsplit/splitting.hpp"
#include "support.hpp"

using namespace abelsplit;
using abelsplit::testing::make_spec;

namespace {

ErrorCode failure_code(const SectionCertificate& cert, VerificationMode mode) {
  try {
    verify_section(cert, mode);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

}  // namespace

TEST(VerifySection, IdentitySectionOnElementaryAbelian) {
  for (auto [p, r] : {std::pair<Int, int>{2, 3}, {3, 2}, {5, 2}}) {
    const SectionCertificate c = block_section(p, 1, r, SearchOptions{});
    const VerificationReport rep = verify_section(c, VerificationMode::FullTable);
    EXPECT_EQ(rep.pairs_checked, gl_order(p, r) * gl_order(p, r));
    EXPECT_EQ(rep.failures, 0u);
  }
}

TEST(VerifySection, TeichmullerSection) {
  const SectionCertificate c = block_section(5, 2, 1, SearchOptions{});
  const VerificationReport rep = verify_section(c, VerificationMode::FullTable);
  EXPECT_EQ(rep.group_order, 4u);
  EXPECT_EQ(rep.pairs_checked, 16u);
}

TEST(VerifySection, AllModesAcceptAGoodSection) {
  const SectionCertificate c = block_section(3, 2, 2, SearchOptions{});
  for (VerificationMode m : {VerificationMode::FullTable, VerificationMode::GeneratorRelations,
                             VerificationMode::Sampled}) {
    EXPECT_EQ(verify_section(c, m).failures, 0u) << to_string(m);
  }
  VerifyOptions o;
  o.samples = 10000;
  EXPECT_EQ(verify_section(c, VerificationMode::Sampled, o).pairs_checked, 10000u);
}

// Adding p to an entry keeps sigma(image) = generator but breaks the
// homomorphism property.
TEST(VerifySection, CorruptedImageIsRejected) {
  SectionCertificate c = block_section(3, 2, 2, SearchOptions{});
  BlockEndo& img = c.images.front();
  img.set_entry(0, 0, img.entry(0, 0) + 3);
  EXPECT_EQ(sigma(img), c.generators.front());
  EXPECT_EQ(failure_code(c, VerificationMode::FullTable), ErrorCode::VerificationFailed);
  EXPECT_EQ(failure_code(c, VerificationMode::GeneratorRelations), ErrorCode::VerificationFailed);
  EXPECT_EQ(failure_code(c, VerificationMode::Sampled), ErrorCode::VerificationFailed);
}

TEST(VerifySection, WrongReductionIsRejected) {
  SectionCertificate c = block_section(5, 2, 1, SearchOptions{});
  c.images.front().set_entry(0, 0, 1);
  EXPECT_EQ(failure_code(c, VerificationMode::FullTable), ErrorCode::VerificationFailed);
}

TEST(VerifySection, NonGeneratingSetIsRejected) {
  SectionCertificate c = block_section(3, 2, 2, SearchOptions{});
  c.generators.pop_back();
  c.images.pop_back();
  EXPECT_EQ(failure_code(c, VerificationMode::FullTable), ErrorCode::VerificationFailed);
  EXPECT_EQ(failure_code(c, VerificationMode::GeneratorRelations), ErrorCode::VerificationFailed);
}

TEST(VerifySection, DefaultModeFollowsQuotientSize) {
  VerifyOptions o;
  EXPECT_EQ(default_verification_mode(make_spec(3, {{2, 2}}), o), VerificationMode::FullTable);
  EXPECT_EQ(default_verification_mode(make_spec(3, {{1, 3}}), o), VerificationMode::GeneratorRelations);
  EXPECT_EQ(default_verification_mode(make_spec(2, {{1, 5}}), o), VerificationMode::Sampled);
}

TEST(Tabulate, TableCoversQuotient) {
  const SectionCertificate c = block_section(2, 2, 3, SearchOptions{});
  const SectionTable t = tabulate_section(c, 1000);
  EXPECT_EQ(t.elements.size(), 168u);
  for (std::size_t i = 0; i < t.elements.size(); ++i) EXPECT_EQ(sigma(t.images[i]), t.elements[i]);
  EXPECT_THROW(tabulate_section(c, 100), Error);
}
