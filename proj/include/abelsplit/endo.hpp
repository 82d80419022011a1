#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "abelsplit/group.hpp"
#include "abelsplit/modmat.hpp"

namespace abelsplit {

/// An endomorphism of G as an R x R grid of cells. Cell (j, k) is the
/// r_j x r_k matrix of the component G_k -> G_j (row = target block, column =
/// source block, acting on column vectors), with entries canonical modulo the
/// target modulus p^{n_j}. For a genuine homomorphism every entry of cell
/// (j, k) is divisible by p^{max(n_j - n_k, 0)}; see check_hom_constraints.
///
/// Maps in the usual literature on this subject are written on the right, so
/// their matrices are the transposes of the ones stored here.
class BlockEndo {
 public:
  explicit BlockEndo(const PGroupSpec& spec);  // zero map

  static BlockEndo zero(const PGroupSpec& spec) { return BlockEndo(spec); }
  static BlockEndo identity(const PGroupSpec& spec);
  /// Row-major N x N entries, N = spec.total_rank(); reduced per row.
  static BlockEndo from_entries(const PGroupSpec& spec, std::vector<Int> entries);
  /// cells[j][k] given as rows of integers; reduced mod p^{n_j}.
  static BlockEndo from_cells(const PGroupSpec& spec,
                              const std::vector<std::vector<std::vector<std::vector<Int>>>>& cells);

  const PGroupSpec& spec() const { return spec_; }
  std::size_t dim() const { return spec_.total_rank(); }

  Int entry(std::size_t row, std::size_t col) const { return entries_[row * dim() + col]; }
  void set_entry(std::size_t row, std::size_t col, Int v) {
    entries_[row * dim() + col] = canonical(v, spec_.row_moduli()[row]);
  }
  std::span<const Int> entries() const { return entries_; }

  /// Copy of cell (j, k) as a matrix modulo p^{n_j}.
  ModMatrix cell(std::size_t j, std::size_t k) const;
  void set_cell(std::size_t j, std::size_t k, const ModMatrix& m);

  bool is_identity() const;

  friend bool operator==(const BlockEndo& a, const BlockEndo& b) {
    return a.entries_ == b.entries_ && a.spec_ == b.spec_;
  }

 private:
  PGroupSpec spec_;
  std::vector<Int> entries_;
};

struct BlockEndoHash {
  std::size_t operator()(const BlockEndo& e) const { return hash_entries(e.entries()); }
};

/// Element of the tuple-matrix monoid prod_i M_{r_i}(F_p); an element of
/// Pi(G) = prod_i GL_{r_i}(F_p) when every component is invertible.
class QElement {
 public:
  QElement() = default;
  QElement(Int p, std::vector<ModMatrix> mats);

  static QElement identity(const PGroupSpec& spec);

  Int prime() const { return p_; }
  const std::vector<ModMatrix>& mats() const { return mats_; }
  const ModMatrix& operator[](std::size_t i) const { return mats_.at(i); }

  bool is_identity() const;
  bool is_invertible() const;
  bool conforms_to(const PGroupSpec& spec) const;

  friend QElement operator*(const QElement& a, const QElement& b);
  friend bool operator==(const QElement& a, const QElement& b) = default;

 private:
  Int p_ = 2;
  std::vector<ModMatrix> mats_;
};

struct QElementHash {
  std::size_t operator()(const QElement& q) const {
    std::size_t h = 0;
    for (const auto& m : q.mats()) h = hash_entries(m.entries(), h);
    return h;
  }
};

/// Multiplicative order of an invertible QElement (naive powering).
std::uint64_t q_element_order(const QElement& q);

bool check_hom_constraints(const BlockEndo& e);

BlockEndo add_endos(const BlockEndo& a, const BlockEndo& b);
BlockEndo negate(const BlockEndo& a);

/// a o b (apply b first).
BlockEndo compose(const BlockEndo& a, const BlockEndo& b);
BlockEndo endo_pow(const BlockEndo& e, std::uint64_t exp);

GroupElement apply(const BlockEndo& e, const GroupElement& v);

/// Reduction mod p of the diagonal cells.
QElement sigma(const BlockEndo& e);

/// A unit of End(G) iff every diagonal cell is invertible mod p.
bool is_automorphism(const BlockEndo& e);

/// Exponent-weighted lift into M_N(Z/p^{n_R}): cell (j, k) is scaled by
/// p^{n_k - n_j} (or divided by p^{n_j - n_k}, exact by the Hom constraint).
/// The lift respects products only modulo the column ideal, i.e. entries of a
/// column in block k agree modulo p^{n_k}; see lift_congruent.
ModMatrix weighted_lift(const BlockEndo& e);

/// True iff a and b agree in every column of block k modulo p^{n_k}.
bool lift_congruent(const PGroupSpec& spec, const ModMatrix& a, const ModMatrix& b);

/// Inverse of weighted_lift on matrices in the image ring.
BlockEndo unscale_lift(const PGroupSpec& spec, const ModMatrix& lift);

/// Inverse automorphism, via the weighted lift and unit-pivot elimination.
BlockEndo invert(const BlockEndo& e);

/// e lies in ker(sigma) = 1 + I.
bool in_delta(const BlockEndo& e);
/// sigma(e) is the identity tuple; no Hom-constraint check.
bool reduces_to_identity(const BlockEndo& e);

/// Least m >= 1 with e^m = 1, searched over divisors of |Aut(G)|.
std::uint64_t element_order(const BlockEndo& e);
std::uint64_t element_order(const BlockEndo& e, const Factorization& exponent_bound);

/// Induced automorphism of p^k G (coordinates of derive_pk_spec(spec, k)).
BlockEndo restrict_to_pk(const BlockEndo& e, int k);
/// The map x -> p^k x from G onto p^k G, in derived coordinates.
GroupElement multiply_into_pk(const PGroupSpec& spec, const GroupElement& x, int k);

/// Extends e2 on the tail G_2 + ... + G_R by the identity on G_1. Defined for
/// any first exponent; the tail reduction it serves assumes n_1 = 1.
BlockEndo embed_tail(const PGroupSpec& full, const BlockEndo& e2);
/// Deletes block row and column 0. Not multiplicative on Aut(G) in general;
/// it is multiplicative modulo ker(sigma) of the tail.
BlockEndo truncate_tail(const BlockEndo& e);

struct CornerMap {
  ModMatrix matrix;     // cell (0, 0) modulo p^{n_1}
  bool multiplicative;  // n_1 == 2 and n_i >= 4 for all i >= 2
};

/// Corner cell (0, 0). With strict set, throws PreconditionGap unless the
/// exponent gap guarantees multiplicativity; otherwise returns the flag.
CornerMap corner_mu(const BlockEndo& e, bool strict = true);

/// Block-diagonal integer lift of a QElement (entries read as integers).
BlockEndo lift_quotient(const PGroupSpec& spec, const QElement& q);

/// Uniform element of End(G).
BlockEndo random_endo(const PGroupSpec& spec, std::mt19937_64& rng);
/// Uniform element of the ideal I (diagonal cells divisible by p).
BlockEndo random_ideal(const PGroupSpec& spec, std::mt19937_64& rng);
/// Uniform element of Aut(G) by rejection.
BlockEndo random_unit(const PGroupSpec& spec, std::mt19937_64& rng);

}  // namespace abelsplit
