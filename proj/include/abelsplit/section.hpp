#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "abelsplit/endo.hpp"
#include "abelsplit/group.hpp"

namespace abelsplit {

enum class VerificationMode { FullTable, GeneratorRelations, Sampled };

std::string to_string(VerificationMode mode);
VerificationMode verification_mode_from_string(const std::string& s);

/// A homomorphic section theta: Pi(G) -> Aut(G) of sigma, recorded on a
/// generating set of Pi(G).
struct SectionCertificate {
  PGroupSpec spec;
  std::vector<QElement> generators = {};
  std::vector<BlockEndo> images = {};  // images[i] = theta(generators[i])
  VerificationMode mode = VerificationMode::Sampled;
  std::uint64_t pairs = 0;  // pairs checked by the recorded verification
  std::uint64_t seed = 0;   // seed used for the generating set
  std::string origin = {};  // "identity", "teichmuller", "search", "assembled"
};

struct VerifyOptions {
  std::uint64_t full_table_limit = 10000;  // largest |Pi| for all-pairs mode
  std::uint64_t closure_budget = 100000;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

struct VerificationReport {
  VerificationMode mode = VerificationMode::Sampled;
  std::uint64_t group_order = 0;    // |Pi(G)|
  std::uint64_t pairs_checked = 0;
  std::uint64_t failures = 0;
};

/// The full function table of theta, extended from generators along words.
struct SectionTable {
  std::vector<QElement> elements;
  std::vector<BlockEndo> images;
  std::unordered_map<QElement, std::size_t, QElementHash> index;
};

/// Extends theta along words in the generators; throws VerificationFailed if
/// two words for the same quotient element reach different automorphisms or
/// the generators do not generate Pi(G); BudgetExceeded above `cap`.
SectionTable tabulate_section(const SectionCertificate& cert, std::uint64_t cap);

/// Largest mode affordable for |Pi(G)| under the options.
VerificationMode default_verification_mode(const PGroupSpec& spec, const VerifyOptions& options);

/// Checks sigma(theta(g)) = g on generators, then by mode:
///  full-table  all pairs theta(q q') = theta(q) theta(q') plus sigma o theta = 1;
///  generator-relations  <images> has order |Pi| and meets ker(sigma) trivially;
///  sampled  random words w, w': theta(w w') has the order of its quotient image.
/// Throws VerificationFailed naming the first counterexample.
VerificationReport verify_section(const SectionCertificate& cert, VerificationMode mode,
                                  const VerifyOptions& options = {});

}  // namespace abelsplit
