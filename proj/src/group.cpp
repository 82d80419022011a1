#include "abelsplit/group.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "abelsplit/error.hpp"

namespace abelsplit {
namespace {

constexpr Int kMaxModulus = Int{1} << 31;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw Error(ErrorCode::Overflow, "order does not fit in 64 bits");
  }
  return a * b;
}

std::uint64_t checked_pow(Int p, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = checked_mul(r, static_cast<std::uint64_t>(p));
  return r;
}

void check_same_shape(const PGroupSpec& spec, const GroupElement& g) {
  if (g.coords.size() != spec.total_rank()) {
    throw Error(ErrorCode::ShapeMismatch, "element has " + std::to_string(g.coords.size()) +
                                              " coordinates, spec has " +
                                              std::to_string(spec.total_rank()));
  }
}

// Exponent e with |Delta(G)| = p^e.
std::uint64_t delta_exponent(const PGroupSpec& spec) {
  std::uint64_t e = 0;
  const auto& bs = spec.blocks();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t k = 0; k < bs.size(); ++k) {
      const auto rr = static_cast<std::uint64_t>(bs[i].rank) * bs[k].rank;
      if (i == k) {
        e += rr * static_cast<std::uint64_t>(bs[i].exponent - 1);
      } else {
        e += rr * static_cast<std::uint64_t>(std::min(bs[i].exponent, bs[k].exponent));
      }
    }
  }
  return e;
}

}  // namespace

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PGroupSpec::PGroupSpec(Int p, std::vector<Block> blocks) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (blocks.empty()) throw Error(ErrorCode::EmptyBlocks, "a spec needs at least one block");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rank < 1) {
      throw Error(ErrorCode::ZeroRank, "block " + std::to_string(i) + " has rank " +
                                           std::to_string(blocks[i].rank));
    }
    if (blocks[i].exponent < 1 || (i > 0 && blocks[i].exponent <= blocks[i - 1].exponent)) {
      throw Error(ErrorCode::NonIncreasingExponents,
                  "block exponents must be >= 1 and strictly increasing (block " +
                      std::to_string(i) + ")");
    }
  }
  auto layout = std::make_shared<Layout>();
  layout->p = p;
  layout->blocks = std::move(blocks);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < layout->blocks.size(); ++i) {
    const Block& b = layout->blocks[i];
    Int m = 1;
    for (int k = 0; k < b.exponent; ++k) {
      m *= p;
      if (m >= kMaxModulus) {
        throw Error(ErrorCode::ModulusTooLarge,
                    "p^n must stay below 2^31 (block " + std::to_string(i) + ")");
      }
    }
    layout->offsets.push_back(offset);
    layout->moduli.push_back(m);
    for (int k = 0; k < b.rank; ++k) {
      layout->row_moduli.push_back(m);
      layout->row_exponents.push_back(b.exponent);
      layout->row_blocks.push_back(i);
    }
    offset += static_cast<std::size_t>(b.rank);
  }
  layout_ = std::move(layout);
}

std::string PGroupSpec::to_string() const {
  std::ostringstream os;
  os << "p=" << prime() << " [";
  for (std::size_t i = 0; i < block_count(); ++i) {
    if (i) os << ',';
    os << block(i).exponent << ':' << block(i).rank;
  }
  os << ']';
  return os.str();
}

PGroupSpec validate_spec(Int p, std::vector<Block> blocks) {
  return PGroupSpec(p, std::move(blocks));
}

GroupElement zero_element(const PGroupSpec& spec) {
  return GroupElement{std::vector<Int>(spec.total_rank(), 0)};
}

GroupElement make_element(const PGroupSpec& spec,
                          const std::vector<std::vector<Int>>& blocks) {
  if (blocks.size() != spec.block_count()) {
    throw Error(ErrorCode::ShapeMismatch, "wrong number of block vectors");
  }
  GroupElement g;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != static_cast<std::size_t>(spec.block(i).rank)) {
      throw Error(ErrorCode::ShapeMismatch, "block vector " + std::to_string(i) +
                                                " does not match its rank");
    }
    for (Int v : blocks[i]) g.coords.push_back(canonical(v, spec.modulus(i)));
  }
  return g;
}

GroupElement add_elements(const PGroupSpec& spec, const GroupElement& a,
                          const GroupElement& b) {
  check_same_shape(spec, a);
  check_same_shape(spec, b);
  GroupElement out{std::vector<Int>(a.coords.size())};
  auto mods = spec.row_moduli();
  for (std::size_t c = 0; c < a.coords.size(); ++c) {
    out.coords[c] = canonical(a.coords[c] + b.coords[c], mods[c]);
  }
  return out;
}

GroupElement scale_element(const PGroupSpec& spec, const GroupElement& a, Int k) {
  check_same_shape(spec, a);
  GroupElement out{std::vector<Int>(a.coords.size())};
  auto mods = spec.row_moduli();
  for (std::size_t c = 0; c < a.coords.size(); ++c) {
    out.coords[c] = mul_mod(a.coords[c], canonical(k, mods[c]), mods[c]);
  }
  return out;
}

std::uint64_t element_index(const PGroupSpec& spec, const GroupElement& g) {
  check_same_shape(spec, g);
  std::uint64_t idx = 0;
  auto mods = spec.row_moduli();
  for (std::size_t c = 0; c < g.coords.size(); ++c) {
    idx = idx * static_cast<std::uint64_t>(mods[c]) + static_cast<std::uint64_t>(g.coords[c]);
  }
  return idx;
}

std::uint64_t group_order(const PGroupSpec& spec) {
  std::uint64_t e = 0;
  for (const Block& b : spec.blocks()) e += static_cast<std::uint64_t>(b.exponent) * b.rank;
  return checked_pow(spec.prime(), e);
}

std::uint64_t gl_order(Int p, int r) {
  const std::uint64_t pr = checked_pow(p, static_cast<std::uint64_t>(r));
  std::uint64_t order = 1;
  std::uint64_t pk = 1;
  for (int k = 0; k < r; ++k) {
    order = checked_mul(order, pr - pk);
    pk *= static_cast<std::uint64_t>(p);
  }
  return order;
}

std::uint64_t quotient_order(const PGroupSpec& spec) {
  std::uint64_t order = 1;
  for (const Block& b : spec.blocks()) order = checked_mul(order, gl_order(spec.prime(), b.rank));
  return order;
}

std::uint64_t delta_order(const PGroupSpec& spec) {
  return checked_pow(spec.prime(), delta_exponent(spec));
}

std::uint64_t aut_order(const PGroupSpec& spec) {
  return checked_mul(delta_order(spec), quotient_order(spec));
}

Factorization factorize(std::uint64_t n) {
  Factorization f;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++f[static_cast<Int>(d)];
      n /= d;
    }
  }
  if (n > 1) ++f[static_cast<Int>(n)];
  return f;
}

Factorization aut_order_factorization(const PGroupSpec& spec) {
  const Int p = spec.prime();
  Factorization f;
  f[p] += static_cast<int>(delta_exponent(spec));
  for (const Block& b : spec.blocks()) {
    // |GL_r(F_p)| = p^{r(r-1)/2} prod_{k=1..r} (p^k - 1)
    f[p] += b.rank * (b.rank - 1) / 2;
    for (int k = 1; k <= b.rank; ++k) {
      for (const auto& [q, e] : factorize(checked_pow(p, static_cast<std::uint64_t>(k)) - 1)) {
        f[q] += e;
      }
    }
  }
  std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
  return f;
}

PGroupSpec derive_pk_spec(const PGroupSpec& spec, int k) {
  if (k < 1) {
    throw Error(ErrorCode::PreconditionViolation, "k must be >= 1");
  }
  std::vector<Block> blocks;
  for (const Block& b : spec.blocks()) {
    if (b.exponent > k) blocks.push_back(Block{b.exponent - k, b.rank});
  }
  if (blocks.empty()) {
    throw Error(ErrorCode::TrivialResult, "p^" + std::to_string(k) + " G is trivial for " +
                                              spec.to_string());
  }
  return PGroupSpec(spec.prime(), std::move(blocks));
}

PGroupSpec derive_tail_spec(const PGroupSpec& spec) {
  if (spec.block_count() < 2) {
    throw Error(ErrorCode::SingleBlock, "no tail for single-block spec " + spec.to_string());
  }
  return PGroupSpec(spec.prime(),
                    std::vector<Block>(spec.blocks().begin() + 1, spec.blocks().end()));
}

void for_each_element(const PGroupSpec& spec, std::uint64_t budget,
                      const std::function<void(const GroupElement&)>& visit) {
  const std::uint64_t order = group_order(spec);
  if (order > budget) {
    throw Error(ErrorCode::BudgetExceeded, "|G| = " + std::to_string(order) +
                                               " exceeds element budget " +
                                               std::to_string(budget));
  }
  auto mods = spec.row_moduli();
  GroupElement g = zero_element(spec);
  for (std::uint64_t n = 0; n < order; ++n) {
    visit(g);
    for (std::size_t c = g.coords.size(); c-- > 0;) {
      if (++g.coords[c] < mods[c]) break;
      g.coords[c] = 0;
    }
  }
}

std::vector<GroupElement> enumerate_elements(const PGroupSpec& spec, std::uint64_t budget) {
  std::vector<GroupElement> out;
  for_each_element(spec, budget, [&](const GroupElement& g) { out.push_back(g); });
  return out;
}

}  // namespace abelsplit
