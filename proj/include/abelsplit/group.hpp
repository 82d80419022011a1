#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "abelsplit/modmat.hpp"

namespace abelsplit {

/// One homocyclic summand (Z/p^exponent)^rank.
struct Block {
  int exponent = 1;
  int rank = 1;
  friend bool operator==(const Block&, const Block&) = default;
};

/// G = sum_i (Z/p^{n_i})^{r_i} with n_1 < n_2 < ... . Immutable; copies share
/// the precomputed coordinate layout.
class PGroupSpec {
 public:
  /// Validates: p prime, at least one block, ranks >= 1, exponents strictly
  /// increasing, largest modulus below 2^31.
  PGroupSpec(Int p, std::vector<Block> blocks);

  Int prime() const { return layout_->p; }
  const std::vector<Block>& blocks() const { return layout_->blocks; }
  std::size_t block_count() const { return layout_->blocks.size(); }
  const Block& block(std::size_t i) const { return layout_->blocks.at(i); }

  /// Sum of the ranks: the number of cyclic coordinates.
  std::size_t total_rank() const { return layout_->row_moduli.size(); }
  std::size_t offset(std::size_t i) const { return layout_->offsets.at(i); }
  Int modulus(std::size_t i) const { return layout_->moduli.at(i); }
  Int max_modulus() const { return layout_->moduli.back(); }

  std::span<const Int> row_moduli() const { return layout_->row_moduli; }
  std::span<const int> row_exponents() const { return layout_->row_exponents; }
  std::span<const std::size_t> row_blocks() const { return layout_->row_blocks; }

  /// "p=5 [2:2,4:1]"
  std::string to_string() const;

  friend bool operator==(const PGroupSpec& a, const PGroupSpec& b) {
    return a.layout_ == b.layout_ ||
           (a.prime() == b.prime() && a.blocks() == b.blocks());
  }

 private:
  struct Layout {
    Int p = 2;
    std::vector<Block> blocks;
    std::vector<std::size_t> offsets;
    std::vector<Int> moduli;
    std::vector<Int> row_moduli;
    std::vector<int> row_exponents;
    std::vector<std::size_t> row_blocks;
  };
  std::shared_ptr<const Layout> layout_;
};

bool is_prime(Int n);

PGroupSpec validate_spec(Int p, std::vector<Block> blocks);

/// Element of G stored as one flat coordinate vector; coordinate c lives in
/// block spec.row_blocks()[c] and is canonical modulo spec.row_moduli()[c].
struct GroupElement {
  std::vector<Int> coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement zero_element(const PGroupSpec& spec);

/// Builds an element from per-block residue vectors, reducing each entry.
GroupElement make_element(const PGroupSpec& spec,
                          const std::vector<std::vector<Int>>& blocks);

GroupElement add_elements(const PGroupSpec& spec, const GroupElement& a,
                          const GroupElement& b);
GroupElement scale_element(const PGroupSpec& spec, const GroupElement& a, Int k);

/// Mixed-radix index of an element in enumeration order.
std::uint64_t element_index(const PGroupSpec& spec, const GroupElement& g);

std::uint64_t group_order(const PGroupSpec& spec);
std::uint64_t gl_order(Int p, int r);
/// |Pi(G)| = prod_i |GL_{r_i}(F_p)|.
std::uint64_t quotient_order(const PGroupSpec& spec);
std::uint64_t delta_order(const PGroupSpec& spec);
std::uint64_t aut_order(const PGroupSpec& spec);

/// Prime factorization as prime -> exponent.
using Factorization = std::map<Int, int>;
Factorization factorize(std::uint64_t n);
/// Factorization of |Aut(G)| built from its factors, never from the product,
/// so it exists even where the order itself would overflow.
Factorization aut_order_factorization(const PGroupSpec& spec);

/// Spec of p^k G: blocks with n_i > k survive with exponent n_i - k.
PGroupSpec derive_pk_spec(const PGroupSpec& spec, int k);
/// Spec of the sum of all blocks but the first.
PGroupSpec derive_tail_spec(const PGroupSpec& spec);

/// Visits every element once in odometer order (last coordinate fastest).
void for_each_element(const PGroupSpec& spec, std::uint64_t budget,
                      const std::function<void(const GroupElement&)>& visit);
std::vector<GroupElement> enumerate_elements(const PGroupSpec& spec,
                                             std::uint64_t budget);

}  // namespace abelsplit
