#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abelsplit/budget.hpp"
#include "abelsplit/endo.hpp"
#include "abelsplit/group.hpp"
#include "abelsplit/section.hpp"

namespace abelsplit {

/// Applies e to every element of G and looks for a collision.
bool brute_force_is_bijective(const BlockEndo& e, std::uint64_t budget);

/// Edge cases for bijectivity checks: identity, zero, -1, p times the identity,
/// every elementary I + step E_uv with the least admissible step, and the
/// identity with one diagonal entry replaced by p.
std::vector<BlockEndo> structured_endos(const PGroupSpec& spec);

struct EquivalenceReport {
  std::uint64_t checked = 0;
  std::uint64_t automorphisms = 0;
  std::uint64_t disagreements = 0;
};

/// is_automorphism against brute_force_is_bijective on structured_endos plus
/// `samples` random endomorphisms.
EquivalenceReport bijectivity_cross_check(const PGroupSpec& spec, std::uint64_t samples,
                                          std::uint64_t seed, std::uint64_t element_budget);

/// |Aut(G)| counted without the block-matrix model, from addition tables of G:
/// images of the standard generators are chosen one at a time, respecting
/// their orders, and kept while the partial map stays injective. Counts are
/// shared between branches with the same image subgroup. Needs |G| <= 4096;
/// budgets.endomorphisms caps the number of subgroups visited.
std::uint64_t brute_force_aut_count(const PGroupSpec& spec, const Budgets& budgets);

/// Every element of ker(sigma) = 1 + I exactly once, in odometer order over
/// the free entries (row-major, last entry fastest).
void for_each_delta(const PGroupSpec& spec, std::uint64_t budget,
                    const std::function<void(const BlockEndo&)>& visit);
std::vector<BlockEndo> enumerate_delta(const PGroupSpec& spec, std::uint64_t budget);

/// Transvections and a primitive scalar; always generate GL_r(F_p).
std::vector<ModMatrix> elementary_gl_generators(Int p, int r);

/// A generating set of GL_r(F_p) with at most two elements, found by seeded
/// random search and confirmed by closure; elementary generators otherwise.
std::vector<ModMatrix> gl_generators(Int p, int r, std::uint64_t seed, std::uint64_t budget);

/// Generators of Pi(G): each block's generators, embedded with identity in
/// the other components. Throws BudgetExceeded when some |GL_{r_i}(F_p)|
/// exceeds the budget.
std::vector<QElement> find_generators_of_q(const PGroupSpec& spec, std::uint64_t seed,
                                           std::uint64_t budget);

/// Order of the subgroup of Pi(G) generated by gens (Overflow -> nullopt).
std::optional<std::uint64_t> q_subgroup_order(const PGroupSpec& spec,
                                              const std::vector<QElement>& gens,
                                              std::uint64_t cap);

/// True iff <lifts> has exactly `order` elements and meets ker(sigma)
/// trivially; the closure stops at the first element with sigma = 1.
bool generates_complement(const std::vector<BlockEndo>& lifts, std::uint64_t order);

enum class SearchStatus { Found, NotFoundExhausted, BudgetExceeded };
std::string to_string(SearchStatus s);

struct SearchOptions {
  Budgets budgets;
  std::uint64_t seed = 20240917;
  unsigned workers = 0;  // 0 = hardware concurrency
  bool obstruction_prepass = true;
  VerifyOptions verify;
  // Called now and then with (items started, total items).
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct SearchResult {
  SearchStatus status = SearchStatus::BudgetExceeded;
  std::string proof;   // how the verdict was reached
  std::string detail;  // budget diagnostics
  std::optional<SectionCertificate> certificate;
  std::optional<VerificationReport> verification;
  std::vector<std::uint64_t> candidates;  // lifts per generator after the order filter
  std::uint64_t first_generator_classes = 0;
  std::uint64_t assignment_space = 0;
};

/// Decides whether 1 -> ker(sigma) -> Aut(G) -> Pi(G) -> 1 splits. Fixes a
/// generating set g_1..g_m of Pi(G) and tries every assignment of lifts
/// h_i in sigma^{-1}(g_i); an assignment is a section iff <h_1..h_m> has
/// exactly |Pi(G)| elements, equivalently meets ker(sigma) trivially. Any
/// complement yields such an assignment, so exhausting them proves the
/// sequence does not split. Pruning (all sound):
///   - h_i must satisfy h_i^{ord(g_i)} = 1;
///   - h_1 is taken up to conjugation by ker(sigma);
///   - every prefix <h_1..h_k> must meet ker(sigma) trivially.
/// The least successful assignment in lexicographic order is returned, so the
/// result does not depend on the worker count.
SearchResult complement_lift_search(const PGroupSpec& spec, const SearchOptions& options);

enum class ObstructionVerdict { NoOrderPLift, OrderPLiftExists };
std::string to_string(ObstructionVerdict v);

struct ObstructionReport {
  PGroupSpec spec;
  std::size_t block = 0;
  std::uint64_t coset_size = 0;
  std::map<std::uint64_t, std::uint64_t> orders_histogram;
  ObstructionVerdict verdict = ObstructionVerdict::OrderPLiftExists;
  std::optional<BlockEndo> witness;
};

/// Scans the whole coset (1 + E) ker(sigma) of the lifted transvection
/// 1 + E, E the matrix unit at (0, r-1) of block `block`. No element of order
/// p there means no section exists. An order-p element proves nothing.
ObstructionReport order_p_coset_obstruction(const PGroupSpec& spec, std::uint64_t delta_budget,
                                            std::size_t block = 0);

struct BinomialReport {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  Int expected = 0;  // residue of the corner entry mod p^2
};

/// For random C in I, checks that (1 + E + C)^p has entry (0, r_1 - 1) of the
/// first block congruent to p modulo p^2, so it is never the identity.
/// Requires p >= 5, n_1 = 2, r_1 >= 2.
BinomialReport binomial_obstruction_check(const PGroupSpec& spec, std::uint64_t trials,
                                          std::uint64_t seed);

}  // namespace abelsplit
