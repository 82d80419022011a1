#include "abelsplit/splitting.hpp"

#include <functional>
#include <unordered_set>

#include "abelsplit/cache.hpp"
#include "abelsplit/error.hpp"

namespace abelsplit {
namespace {

std::string block_rule(Int p) {
  if (p == 2) return "block-criterion:p=2";
  if (p == 3) return "block-criterion:p=3";
  return "block-criterion:p>=5";
}

PGroupSpec single_block(Int p, int n, int r) { return PGroupSpec(p, {Block{n, r}}); }

SectionCertificate finish(SectionCertificate cert, const VerifyOptions& verify) {
  const VerificationReport rep =
      verify_section(cert, default_verification_mode(cert.spec, verify), verify);
  cert.mode = rep.mode;
  cert.pairs = rep.pairs_checked;
  return cert;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Splits: return "Splits";
    case Outcome::DoesNotSplit: return "DoesNotSplit";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "Splits") return Outcome::Splits;
  if (s == "DoesNotSplit") return Outcome::DoesNotSplit;
  if (s == "Unknown") return Outcome::Unknown;
  throw Error(ErrorCode::ParseError, "unknown outcome '" + s + "'");
}

int rank_bound(Int p) {
  if (p == 2) return 3;
  if (p == 3) return 2;
  return 1;
}

Outcome classify_block(Int p, int n, int r) {
  return n == 1 || r <= rank_bound(p) ? Outcome::Splits : Outcome::DoesNotSplit;
}

BlockVerdict classify_block_verdict(Int p, int n, int r) {
  BlockVerdict v{Block{n, r}, classify_block(p, n, r), block_rule(p)};
  if (n == 1) v.rule = "elementary-abelian";
  return v;
}

SplitVerdict classify(const PGroupSpec& spec) {
  SplitVerdict v;
  const Int p = spec.prime();
  bool all_split = true;
  for (std::size_t i = 0; i < spec.block_count(); ++i) {
    const Block b = spec.block(i);
    v.per_block.push_back(classify_block_verdict(p, b.exponent, b.rank));
    all_split = all_split && v.per_block.back().outcome == Outcome::Splits;
    if (i > 0 && b.exponent - spec.block(i - 1).exponent <= 1) v.gaps_ok = false;
  }
  const bool single = spec.block_count() == 1;
  if (all_split) {
    v.outcome = Outcome::Splits;
    v.rule = single ? v.per_block.front().rule : "blockwise-assembly";
  } else if (p >= 5 || v.gaps_ok) {
    v.outcome = Outcome::DoesNotSplit;
    if (single) {
      v.rule = v.per_block.front().rule;
    } else {
      v.rule = p >= 5 ? "blockwise-necessity:p>=5" : "gap-condition";
    }
  } else {
    v.outcome = Outcome::Unknown;
    v.rule = "outside-gap-hypothesis";
  }
  return v;
}

Int teichmuller(Int p, int n, Int a) {
  const Int mod = ipow(p, n);
  return pow_mod(canonical(a, mod), static_cast<std::uint64_t>(ipow(p, n - 1)), mod);
}

std::optional<SectionCertificate> lift_block_section(const SectionCertificate& lower,
                                                     const SearchOptions& options) {
  const PGroupSpec& lo = lower.spec;
  if (lo.block_count() != 1) {
    throw Error(ErrorCode::PreconditionViolation, "lift_block_section needs a single block");
  }
  const Int p = lo.prime();
  const int k = lo.block(0).exponent;
  const int r = lo.block(0).rank;
  const PGroupSpec hi = single_block(p, k + 1, r);
  const Int step = ipow(p, k);
  const std::size_t cells = static_cast<std::size_t>(r) * static_cast<std::size_t>(r);
  const std::uint64_t kernel_size = static_cast<std::uint64_t>(ipow(p, static_cast<int>(cells)));
  if (kernel_size > options.budgets.delta) {
    throw Error(ErrorCode::BudgetExceeded, "p^(r^2) lifts per generator exceed the delta budget");
  }

  // Elements 1 + p^k X of GL_r(Z/p^{k+1}), X over M_r(F_p) in odometer order.
  std::vector<BlockEndo> kernel;
  {
    std::vector<Int> digit(cells, 0);
    for (std::uint64_t t = 0; t < kernel_size; ++t) {
      BlockEndo e = BlockEndo::identity(hi);
      for (std::size_t c = 0; c < cells; ++c) {
        e.set_entry(c / r, c % r, e.entry(c / r, c % r) + step * digit[c]);
      }
      kernel.push_back(std::move(e));
      for (std::size_t c = cells; c-- > 0;) {
        if (++digit[c] < p) break;
        digit[c] = 0;
      }
    }
  }

  const std::size_t m = lower.generators.size();
  std::vector<std::uint64_t> prefix_order(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<QElement> prefix(lower.generators.begin(),
                                 lower.generators.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    prefix_order[i] = *q_subgroup_order(hi, prefix, quotient_order(hi));
  }

  std::vector<std::vector<BlockEndo>> cands(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto src = lower.images[i].entries();
    const BlockEndo base = BlockEndo::from_entries(hi, std::vector<Int>(src.begin(), src.end()));
    const std::uint64_t ord = q_element_order(lower.generators[i]);
    for (const BlockEndo& u : kernel) {
      BlockEndo h = compose(base, u);
      if (endo_pow(h, ord).is_identity()) cands[i].push_back(std::move(h));
    }
    if (cands[i].empty()) return std::nullopt;
  }

  // The first image only matters up to conjugation by 1 + p^k X.
  std::vector<BlockEndo> reps;
  {
    std::unordered_set<BlockEndo, BlockEndoHash> covered;
    for (const BlockEndo& c : cands[0]) {
      if (covered.contains(c)) continue;
      reps.push_back(c);
      for (const BlockEndo& u : kernel) covered.insert(compose(compose(u, c), invert(u)));
    }
  }
  cands[0] = std::move(reps);

  std::vector<BlockEndo> lifts;
  std::uint64_t tried = 0;
  std::function<bool()> extend = [&] {
    const std::size_t level = lifts.size();
    if (level == m) return true;
    for (const BlockEndo& h : cands[level]) {
      if (++tried > options.budgets.assignments) {
        throw Error(ErrorCode::BudgetExceeded, "lift search exceeded the assignment budget");
      }
      lifts.push_back(h);
      if (generates_complement(lifts, prefix_order[level]) && extend()) return true;
      lifts.pop_back();
    }
    return false;
  };
  if (!extend()) return std::nullopt;

  SectionCertificate cert{hi, lower.generators, lifts, VerificationMode::Sampled, 0, lower.seed,
                          "search"};
  return finish(std::move(cert), options.verify);
}

SectionCertificate block_section(Int p, int n, int r, const SearchOptions& options,
                                 CertificateCache* cache) {
  if (classify_block(p, n, r) != Outcome::Splits) {
    throw Error(ErrorCode::NotSplitBlock, "block (Z/" + std::to_string(p) + "^" +
                                              std::to_string(n) + ")^" + std::to_string(r) +
                                              " does not split");
  }
  const PGroupSpec spec = single_block(p, n, r);
  if (n == 1) {
    // Aut(G) = GL_r(F_p) itself; elementary generators need no closure check.
    std::vector<QElement> gens;
    std::vector<BlockEndo> images;
    for (const ModMatrix& m : elementary_gl_generators(p, r)) {
      gens.emplace_back(p, std::vector<ModMatrix>{m});
      images.push_back(lift_quotient(spec, gens.back()));
    }
    return finish({spec, gens, images, VerificationMode::Sampled, 0, options.seed, "identity"},
                  options.verify);
  }
  const std::vector<QElement> gens = find_generators_of_q(spec, options.seed, options.budgets.closure);
  if (r == 1) {
    std::vector<BlockEndo> images;
    for (const QElement& g : gens) {
      BlockEndo e(spec);
      e.set_entry(0, 0, teichmuller(p, n, g[0](0, 0)));
      images.push_back(std::move(e));
    }
    return finish({spec, gens, images, VerificationMode::Sampled, 0, options.seed, "teichmuller"},
                  options.verify);
  }

  if (cache != nullptr) {
    if (auto hit = cache->load_block(p, n, r)) return *hit;
  }
  SectionCertificate cert(spec);
  if (n == 2) {
    SearchResult res = complement_lift_search(spec, options);
    if (res.status != SearchStatus::Found) {
      throw Error(ErrorCode::BudgetExceeded, "section search for " + spec.to_string() +
                                                 " ended with " + to_string(res.status) + " " +
                                                 res.detail);
    }
    cert = *res.certificate;
  } else {
    const SectionCertificate lower = block_section(p, n - 1, r, options, cache);
    auto lifted = lift_block_section(lower, options);
    if (!lifted) {
      throw Error(ErrorCode::BudgetExceeded,
                  "the section for " + lower.spec.to_string() + " does not lift one exponent up");
    }
    cert = std::move(*lifted);
  }
  if (cache != nullptr) cache->store(cert);
  return cert;
}

SectionCertificate assemble_section(const PGroupSpec& spec,
                                    const std::vector<std::optional<SectionCertificate>>& blocks,
                                    const VerifyOptions& verify) {
  if (blocks.size() != spec.block_count()) {
    throw Error(ErrorCode::MissingBlockSection, "expected " + std::to_string(spec.block_count()) +
                                                    " block sections, got " +
                                                    std::to_string(blocks.size()));
  }
  SectionCertificate out(spec);
  out.origin = "assembled";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block b = spec.block(i);
    if (!blocks[i]) {
      throw Error(ErrorCode::MissingBlockSection, "no section for block " + std::to_string(i));
    }
    const SectionCertificate& c = *blocks[i];
    if (!(c.spec == single_block(spec.prime(), b.exponent, b.rank))) {
      throw Error(ErrorCode::SpecMismatch, "section for block " + std::to_string(i) + " is for " +
                                               c.spec.to_string());
    }
    out.seed = c.seed;
    for (std::size_t g = 0; g < c.generators.size(); ++g) {
      std::vector<ModMatrix> mats = QElement::identity(spec).mats();
      mats[i] = c.generators[g][0];
      out.generators.emplace_back(spec.prime(), std::move(mats));
      BlockEndo img = BlockEndo::identity(spec);
      img.set_cell(i, i, c.images[g].cell(0, 0));
      out.images.push_back(std::move(img));
    }
  }
  return finish(std::move(out), verify);
}

SectionCertificate build_section(const PGroupSpec& spec, const SearchOptions& options,
                                 CertificateCache* cache) {
  const SplitVerdict v = classify(spec);
  if (v.outcome != Outcome::Splits) {
    throw Error(ErrorCode::NotSplitBlock,
                spec.to_string() + " is classified " + to_string(v.outcome) + " (" + v.rule + ")");
  }
  if (cache != nullptr) {
    if (auto hit = cache->load_spec(spec)) return *hit;
  }
  std::vector<std::optional<SectionCertificate>> blocks;
  for (const Block& b : spec.blocks()) {
    blocks.emplace_back(block_section(spec.prime(), b.exponent, b.rank, options, cache));
  }
  SectionCertificate cert = spec.block_count() == 1 ? *blocks.front()
                                                    : assemble_section(spec, blocks, options.verify);
  if (cache != nullptr && spec.block_count() > 1) cache->store(cert);
  return cert;
}

}  // namespace abelsplit
