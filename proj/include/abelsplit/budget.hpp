#pragma once

#include <cstdint>

namespace abelsplit {

/// Limits on every exhaustive computation. Oracles refuse work above these
/// limits with BudgetExceeded; nothing is silently sampled.
struct Budgets {
  std::uint64_t elements = 1ULL << 20;       // elements of G enumerated
  std::uint64_t delta = 1ULL << 16;          // elements of ker(sigma) enumerated
  std::uint64_t closure = 100000;            // elements of Pi(G) generated
  std::uint64_t assignments = 1ULL << 24;    // generator-lift assignments
  std::uint64_t endomorphisms = 1ULL << 20;  // maps tried by the Aut counter
};

}  // namespace abelsplit
