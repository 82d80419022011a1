#include "abelsplit/endo.hpp"

#include <algorithm>

#include "abelsplit/error.hpp"

namespace abelsplit {
namespace {

void require_same_spec(const PGroupSpec& a, const PGroupSpec& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::SpecMismatch, a.to_string() + " vs " + b.to_string());
  }
}

// Required p-valuation of entry (row, col): max(n_target - n_source, 0).
int hom_valuation(const PGroupSpec& spec, std::size_t row, std::size_t col) {
  return std::max(spec.row_exponents()[row] - spec.row_exponents()[col], 0);
}

void require_hom(const BlockEndo& e) {
  if (!check_hom_constraints(e)) {
    throw Error(ErrorCode::ConstraintViolation,
                "endomorphism violates the Hom divisibility constraints");
  }
}

Int uniform(std::mt19937_64& rng, Int bound) {
  return std::uniform_int_distribution<Int>(0, bound - 1)(rng);
}

}  // namespace

BlockEndo::BlockEndo(const PGroupSpec& spec)
    : spec_(spec), entries_(spec.total_rank() * spec.total_rank(), 0) {}

BlockEndo BlockEndo::identity(const PGroupSpec& spec) {
  BlockEndo e(spec);
  for (std::size_t i = 0; i < e.dim(); ++i) e.set_entry(i, i, 1);
  return e;
}

BlockEndo BlockEndo::from_entries(const PGroupSpec& spec, std::vector<Int> entries) {
  BlockEndo e(spec);
  if (entries.size() != e.entries_.size()) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(e.entries_.size()) +
                                              " entries, got " + std::to_string(entries.size()));
  }
  const std::size_t n = e.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) e.set_entry(r, c, entries[r * n + c]);
  }
  return e;
}

BlockEndo BlockEndo::from_cells(
    const PGroupSpec& spec,
    const std::vector<std::vector<std::vector<std::vector<Int>>>>& cells) {
  BlockEndo e(spec);
  const std::size_t nb = spec.block_count();
  if (cells.size() != nb) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(nb) + " cell rows");
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (cells[j].size() != nb) {
      throw Error(ErrorCode::ShapeMismatch, "cell row " + std::to_string(j) + " has " +
                                                std::to_string(cells[j].size()) + " cells");
    }
    for (std::size_t k = 0; k < nb; ++k) {
      const auto& cell = cells[j][k];
      const auto rj = static_cast<std::size_t>(spec.block(j).rank);
      const auto rk = static_cast<std::size_t>(spec.block(k).rank);
      if (cell.size() != rj ||
          std::any_of(cell.begin(), cell.end(), [rk](const auto& row) { return row.size() != rk; })) {
        throw Error(ErrorCode::ShapeMismatch, "cell (" + std::to_string(j) + "," +
                                                  std::to_string(k) + ") has the wrong shape");
      }
      for (std::size_t a = 0; a < rj; ++a) {
        for (std::size_t b = 0; b < rk; ++b) {
          e.set_entry(spec.offset(j) + a, spec.offset(k) + b, cell[a][b]);
        }
      }
    }
  }
  return e;
}

ModMatrix BlockEndo::cell(std::size_t j, std::size_t k) const {
  const auto rj = static_cast<std::size_t>(spec_.block(j).rank);
  const auto rk = static_cast<std::size_t>(spec_.block(k).rank);
  ModMatrix m(rj, rk, spec_.modulus(j));
  for (std::size_t a = 0; a < rj; ++a) {
    for (std::size_t b = 0; b < rk; ++b) m.set(a, b, entry(spec_.offset(j) + a, spec_.offset(k) + b));
  }
  return m;
}

void BlockEndo::set_cell(std::size_t j, std::size_t k, const ModMatrix& m) {
  const auto rj = static_cast<std::size_t>(spec_.block(j).rank);
  const auto rk = static_cast<std::size_t>(spec_.block(k).rank);
  if (m.rows() != rj || m.cols() != rk) {
    throw Error(ErrorCode::ShapeMismatch, "cell shape mismatch");
  }
  for (std::size_t a = 0; a < rj; ++a) {
    for (std::size_t b = 0; b < rk; ++b) set_entry(spec_.offset(j) + a, spec_.offset(k) + b, m(a, b));
  }
}

bool BlockEndo::is_identity() const {
  const std::size_t n = dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (entry(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

QElement::QElement(Int p, std::vector<ModMatrix> mats) : p_(p), mats_(std::move(mats)) {
  for (auto& m : mats_) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "QElement blocks must be square");
    if (m.modulus() != p) m = m.reduced(p);
  }
}

QElement QElement::identity(const PGroupSpec& spec) {
  std::vector<ModMatrix> mats;
  for (const Block& b : spec.blocks()) {
    mats.push_back(ModMatrix::identity(static_cast<std::size_t>(b.rank), spec.prime()));
  }
  return QElement(spec.prime(), std::move(mats));
}

bool QElement::is_identity() const {
  return std::all_of(mats_.begin(), mats_.end(), [](const ModMatrix& m) { return m.is_identity(); });
}

bool QElement::is_invertible() const {
  return std::all_of(mats_.begin(), mats_.end(),
                     [this](const ModMatrix& m) { return invertible_mod_p(m, p_); });
}

bool QElement::conforms_to(const PGroupSpec& spec) const {
  if (p_ != spec.prime() || mats_.size() != spec.block_count()) return false;
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    if (mats_[i].rows() != static_cast<std::size_t>(spec.block(i).rank)) return false;
  }
  return true;
}

QElement operator*(const QElement& a, const QElement& b) {
  if (a.p_ != b.p_ || a.mats_.size() != b.mats_.size()) {
    throw Error(ErrorCode::ShapeMismatch, "QElement product shape mismatch");
  }
  std::vector<ModMatrix> mats;
  mats.reserve(a.mats_.size());
  for (std::size_t i = 0; i < a.mats_.size(); ++i) mats.push_back(a.mats_[i] * b.mats_[i]);
  QElement out;
  out.p_ = a.p_;
  out.mats_ = std::move(mats);
  return out;
}

std::uint64_t q_element_order(const QElement& q) {
  if (!q.is_invertible()) throw Error(ErrorCode::NotAUnit, "QElement is singular");
  std::uint64_t n = 1;
  QElement x = q;
  while (!x.is_identity()) {
    x = x * q;
    ++n;
  }
  return n;
}

bool check_hom_constraints(const BlockEndo& e) {
  const PGroupSpec& spec = e.spec();
  const Int p = spec.prime();
  const std::size_t n = e.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int need = hom_valuation(spec, r, c);
      if (need > 0 && p_valuation(e.entry(r, c), p, need) < need) return false;
    }
  }
  return true;
}

BlockEndo add_endos(const BlockEndo& a, const BlockEndo& b) {
  require_same_spec(a.spec(), b.spec());
  std::vector<Int> sum(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.entries()[i];
  return BlockEndo::from_entries(a.spec(), std::move(sum));
}

BlockEndo negate(const BlockEndo& a) {
  std::vector<Int> neg(a.entries().begin(), a.entries().end());
  for (Int& v : neg) v = -v;
  return BlockEndo::from_entries(a.spec(), std::move(neg));
}

BlockEndo compose(const BlockEndo& a, const BlockEndo& b) {
  require_same_spec(a.spec(), b.spec());
  const std::size_t n = a.dim();
  auto mods = a.spec().row_moduli();
  std::vector<Int> buf(n * n);
  auto ae = a.entries();
  auto be = b.entries();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += static_cast<__int128>(ae[r * n + k]) * be[k * n + c];
      buf[r * n + c] = static_cast<Int>(acc % mods[r]);
    }
  }
  return BlockEndo::from_entries(a.spec(), std::move(buf));
}

BlockEndo endo_pow(const BlockEndo& e, std::uint64_t exp) {
  BlockEndo result = BlockEndo::identity(e.spec());
  BlockEndo base = e;
  while (exp > 0) {
    if (exp & 1U) result = compose(result, base);
    exp >>= 1U;
    if (exp > 0) base = compose(base, base);
  }
  return result;
}

GroupElement apply(const BlockEndo& e, const GroupElement& v) {
  if (v.coords.size() != e.dim()) {
    throw Error(ErrorCode::SpecMismatch, "element does not belong to the endomorphism's group");
  }
  const std::size_t n = e.dim();
  auto mods = e.spec().row_moduli();
  GroupElement out{std::vector<Int>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    __int128 acc = 0;
    for (std::size_t c = 0; c < n; ++c) acc += static_cast<__int128>(e.entry(r, c)) * v.coords[c];
    out.coords[r] = static_cast<Int>(acc % mods[r]);
  }
  return out;
}

QElement sigma(const BlockEndo& e) {
  const PGroupSpec& spec = e.spec();
  std::vector<ModMatrix> mats;
  for (std::size_t i = 0; i < spec.block_count(); ++i) mats.push_back(e.cell(i, i).reduced(spec.prime()));
  return QElement(spec.prime(), std::move(mats));
}

bool is_automorphism(const BlockEndo& e) {
  require_hom(e);
  const PGroupSpec& spec = e.spec();
  for (std::size_t i = 0; i < spec.block_count(); ++i) {
    if (!invertible_mod_p(e.cell(i, i), spec.prime())) return false;
  }
  return true;
}

ModMatrix weighted_lift(const BlockEndo& e) {
  require_hom(e);
  const PGroupSpec& spec = e.spec();
  const Int p = spec.prime();
  const Int top = spec.max_modulus();
  const std::size_t n = e.dim();
  auto ex = spec.row_exponents();
  ModMatrix lift(n, n, top);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int d = ex[c] - ex[r];
      const Int v = e.entry(r, c);
      lift.set(r, c, d >= 0 ? mul_mod(v, ipow(p, d), top) : v / ipow(p, -d));
    }
  }
  return lift;
}

bool lift_congruent(const PGroupSpec& spec, const ModMatrix& a, const ModMatrix& b) {
  const std::size_t n = spec.total_rank();
  if (a.rows() != n || b.rows() != n || a.cols() != n || b.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "lift has the wrong dimension");
  }
  auto mods = spec.row_moduli();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if ((a(r, c) - b(r, c)) % mods[c] != 0) return false;
    }
  }
  return true;
}

BlockEndo unscale_lift(const PGroupSpec& spec, const ModMatrix& lift) {
  const Int p = spec.prime();
  const std::size_t n = spec.total_rank();
  auto ex = spec.row_exponents();
  BlockEndo out(spec);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int d = ex[c] - ex[r];
      const Int v = lift(r, c);
      if (d >= 0) {
        const Int scale = ipow(p, d);
        if (v % scale != 0) {
          throw Error(ErrorCode::ConstraintViolation,
                      "lift entry (" + std::to_string(r) + "," + std::to_string(c) +
                          ") is not divisible by its column weight");
        }
        out.set_entry(r, c, v / scale);
      } else {
        out.set_entry(r, c, mul_mod(v, ipow(p, -d), spec.row_moduli()[r]));
      }
    }
  }
  return out;
}

BlockEndo invert(const BlockEndo& e) {
  if (!is_automorphism(e)) throw Error(ErrorCode::NotAUnit, "endomorphism is not invertible");
  auto inv = inverse_prime_power(weighted_lift(e), e.spec().prime());
  if (!inv) throw Error(ErrorCode::NotAUnit, "weighted lift is singular");
  return unscale_lift(e.spec(), *inv);
}

bool in_delta(const BlockEndo& e) {
  return check_hom_constraints(e) && reduces_to_identity(e);
}

bool reduces_to_identity(const BlockEndo& e) {
  const PGroupSpec& spec = e.spec();
  const Int p = spec.prime();
  auto blocks = spec.row_blocks();
  const std::size_t n = e.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (blocks[r] == blocks[c] && e.entry(r, c) % p != (r == c ? 1 % p : 0)) return false;
    }
  }
  return true;
}

std::uint64_t element_order(const BlockEndo& e) {
  return element_order(e, aut_order_factorization(e.spec()));
}

std::uint64_t element_order(const BlockEndo& e, const Factorization& exponent_bound) {
  if (!is_automorphism(e)) throw Error(ErrorCode::NotAUnit, "element order of a non-unit");
  auto pow_all_except = [&](BlockEndo x, Int skip) {
    for (const auto& [q, a] : exponent_bound) {
      if (q == skip) continue;
      for (int i = 0; i < a; ++i) x = endo_pow(x, static_cast<std::uint64_t>(q));
    }
    return x;
  };
  std::uint64_t order = 1;
  for (const auto& [q, a] : exponent_bound) {
    BlockEndo y = pow_all_except(e, q);
    int k = 0;
    while (!y.is_identity()) {
      if (k == a) {
        throw Error(ErrorCode::PreconditionViolation, "exponent bound does not annihilate element");
      }
      y = endo_pow(y, static_cast<std::uint64_t>(q));
      ++k;
    }
    for (int i = 0; i < k; ++i) order *= static_cast<std::uint64_t>(q);
  }
  return order;
}

BlockEndo restrict_to_pk(const BlockEndo& e, int k) {
  if (!is_automorphism(e)) throw Error(ErrorCode::NotAUnit, "restriction of a non-unit");
  const PGroupSpec& spec = e.spec();
  const PGroupSpec derived = derive_pk_spec(spec, k);
  const std::size_t first = spec.block_count() - derived.block_count();
  BlockEndo out(derived);
  const std::size_t skip = spec.offset(first);
  const std::size_t n = derived.total_rank();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.set_entry(r, c, e.entry(skip + r, skip + c));
  }
  return out;
}

GroupElement multiply_into_pk(const PGroupSpec& spec, const GroupElement& x, int k) {
  const PGroupSpec derived = derive_pk_spec(spec, k);
  const std::size_t skip = spec.offset(spec.block_count() - derived.block_count());
  auto mods = derived.row_moduli();
  GroupElement out{std::vector<Int>(derived.total_rank())};
  for (std::size_t c = 0; c < out.coords.size(); ++c) out.coords[c] = x.coords.at(skip + c) % mods[c];
  return out;
}

BlockEndo embed_tail(const PGroupSpec& full, const BlockEndo& e2) {
  require_same_spec(derive_tail_spec(full), e2.spec());
  BlockEndo out = BlockEndo::identity(full);
  const std::size_t skip = full.offset(1);
  const std::size_t n = e2.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.set_entry(skip + r, skip + c, e2.entry(r, c));
  }
  return out;
}

BlockEndo truncate_tail(const BlockEndo& e) {
  const PGroupSpec tail = derive_tail_spec(e.spec());
  BlockEndo out(tail);
  const std::size_t skip = e.spec().offset(1);
  const std::size_t n = tail.total_rank();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.set_entry(r, c, e.entry(skip + r, skip + c));
  }
  return out;
}

CornerMap corner_mu(const BlockEndo& e, bool strict) {
  if (!is_automorphism(e)) throw Error(ErrorCode::NotAUnit, "corner map of a non-unit");
  const PGroupSpec& spec = e.spec();
  bool gap_ok = spec.block(0).exponent == 2;
  for (std::size_t i = 1; i < spec.block_count(); ++i) gap_ok = gap_ok && spec.block(i).exponent >= 4;
  if (strict && !gap_ok) {
    throw Error(ErrorCode::PreconditionGap,
                "corner map needs n_1 = 2 and n_i >= 4 for i >= 2, got " + spec.to_string());
  }
  return CornerMap{e.cell(0, 0), gap_ok};
}

BlockEndo lift_quotient(const PGroupSpec& spec, const QElement& q) {
  if (!q.conforms_to(spec)) throw Error(ErrorCode::ShapeMismatch, "QElement does not match spec");
  BlockEndo out(spec);
  for (std::size_t i = 0; i < spec.block_count(); ++i) {
    const ModMatrix& m = q[i];
    for (std::size_t a = 0; a < m.rows(); ++a) {
      for (std::size_t b = 0; b < m.cols(); ++b) out.set_entry(spec.offset(i) + a, spec.offset(i) + b, m(a, b));
    }
  }
  return out;
}

BlockEndo random_endo(const PGroupSpec& spec, std::mt19937_64& rng) {
  const std::size_t n = spec.total_rank();
  auto mods = spec.row_moduli();
  BlockEndo out(spec);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Int step = ipow(spec.prime(), hom_valuation(spec, r, c));
      out.set_entry(r, c, step * uniform(rng, mods[r] / step));
    }
  }
  return out;
}

BlockEndo random_ideal(const PGroupSpec& spec, std::mt19937_64& rng) {
  const std::size_t n = spec.total_rank();
  auto mods = spec.row_moduli();
  auto blocks = spec.row_blocks();
  BlockEndo out(spec);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int v = blocks[r] == blocks[c] ? 1 : hom_valuation(spec, r, c);
      const Int step = ipow(spec.prime(), v);
      out.set_entry(r, c, step * uniform(rng, mods[r] / step));
    }
  }
  return out;
}

BlockEndo random_unit(const PGroupSpec& spec, std::mt19937_64& rng) {
  for (;;) {
    BlockEndo e = random_endo(spec, rng);
    if (is_automorphism(e)) return e;
  }
}

}  // namespace abelsplit
