#include "abelsplit/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "abelsplit/dimino.hpp"
#include "abelsplit/error.hpp"

namespace abelsplit {
namespace {

Int primitive_root(Int p) {
  if (p == 2) return 1;
  const Factorization f = factorize(static_cast<std::uint64_t>(p - 1));
  for (Int g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : f) ok = ok && pow_mod(g, static_cast<std::uint64_t>((p - 1) / q), p) != 1;
    if (ok) return g;
  }
  return 1;
}

ModMatrix random_invertible(Int p, int r, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> entry(0, p - 1);
  const auto n = static_cast<std::size_t>(r);
  for (;;) {
    ModMatrix m(n, n, p);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) m.set(a, b, entry(rng));
    }
    if (invertible_mod_p(m, p)) return m;
  }
}

QElement embed_block(const PGroupSpec& spec, std::size_t block, const ModMatrix& m) {
  std::vector<ModMatrix> mats = QElement::identity(spec).mats();
  mats.at(block) = m;
  return QElement(spec.prime(), std::move(mats));
}

// Order of x when sigma(x) has p-power order: repeated p-th powers.
std::uint64_t p_power_order(BlockEndo x, Int p, int max_steps) {
  std::uint64_t order = 1;
  for (int k = 0; k <= max_steps; ++k) {
    if (x.is_identity()) return order;
    x = endo_pow(x, static_cast<std::uint64_t>(p));
    order *= static_cast<std::uint64_t>(p);
  }
  throw Error(ErrorCode::PreconditionViolation, "element order is not a power of p");
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace

bool generates_complement(const std::vector<BlockEndo>& lifts, std::uint64_t order) {
  if (lifts.empty()) return order == 1;
  auto c = dimino_closure<BlockEndo, BlockEndoHash>(
      BlockEndo::identity(lifts.front().spec()), std::span<const BlockEndo>(lifts), order, compose,
      [](const BlockEndo& x) { return reduces_to_identity(x); });
  return c.complete() && c.elements.size() == order;
}

bool brute_force_is_bijective(const BlockEndo& e, std::uint64_t budget) {
  const PGroupSpec& spec = e.spec();
  std::vector<bool> hit(group_order(spec) <= budget ? group_order(spec) : 0);
  bool injective = true;
  for_each_element(spec, budget, [&](const GroupElement& g) {
    if (!injective) return;
    const std::uint64_t idx = element_index(spec, apply(e, g));
    if (hit[idx]) injective = false;
    hit[idx] = true;
  });
  return injective;
}

std::vector<BlockEndo> structured_endos(const PGroupSpec& spec) {
  const std::size_t n = spec.total_rank();
  const Int p = spec.prime();
  auto exps = spec.row_exponents();
  std::vector<BlockEndo> out{BlockEndo::identity(spec), BlockEndo::zero(spec),
                             negate(BlockEndo::identity(spec))};
  BlockEndo scaled(spec);
  for (std::size_t i = 0; i < n; ++i) scaled.set_entry(i, i, p);
  out.push_back(scaled);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      BlockEndo e = BlockEndo::identity(spec);
      if (r == c) {
        e.set_entry(r, r, p);
      } else {
        e.set_entry(r, c, ipow(p, std::max(exps[r] - exps[c], 0)));
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

EquivalenceReport bijectivity_cross_check(const PGroupSpec& spec, std::uint64_t samples,
                                          std::uint64_t seed, std::uint64_t element_budget) {
  EquivalenceReport rep;
  auto check = [&](const BlockEndo& e) {
    const bool fast = is_automorphism(e);
    const bool slow = brute_force_is_bijective(e, element_budget);
    ++rep.checked;
    if (slow) ++rep.automorphisms;
    if (fast != slow) ++rep.disagreements;
  };
  for (const BlockEndo& e : structured_endos(spec)) check(e);
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) check(random_endo(spec, rng));
  return rep;
}

std::uint64_t brute_force_aut_count(const PGroupSpec& spec, const Budgets& budgets) {
  const std::vector<GroupElement> all = enumerate_elements(spec, std::min<std::uint64_t>(budgets.elements, 4096));
  const std::size_t g = all.size();
  const std::size_t n = spec.total_rank();
  auto exps = spec.row_exponents();
  const Int p = spec.prime();

  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < g; ++i) index.emplace(element_index(spec, all[i]), i);
  auto idx = [&](const GroupElement& x) { return index.at(element_index(spec, x)); };
  std::vector<std::uint32_t> sum(g * g);
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) sum[a * g + b] = static_cast<std::uint32_t>(idx(add_elements(spec, all[a], all[b])));
  }
  const std::size_t zero = idx(zero_element(spec));

  // Images for basis vector c are the elements killed by p^{n_c}; the partial
  // map on <e_0..e_c> is injective iff p^{n_c - 1} x avoids the image so far.
  std::vector<std::vector<std::size_t>> images(n);
  std::vector<std::vector<std::size_t>> socle(n);
  for (std::size_t c = 0; c < n; ++c) {
    const Int top = ipow(p, exps[c] - 1);
    for (std::size_t i = 0; i < g; ++i) {
      if (idx(scale_element(spec, all[i], top * p)) == zero) {
        images[c].push_back(i);
        socle[c].push_back(idx(scale_element(spec, all[i], top)));
      }
    }
  }

  // Number of injective extensions depends only on the image subgroup, so
  // count per (depth, subgroup) once.
  using Key = std::vector<std::uint64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 0;
      for (std::uint64_t w : k) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
      return h;
    }
  };
  std::vector<std::unordered_map<Key, std::uint64_t, KeyHash>> memo(n);
  std::uint64_t states = 0;
  const std::size_t words = (g + 63) / 64;

  std::function<std::uint64_t(std::size_t, const Key&)> count = [&](std::size_t c, const Key& sub) -> std::uint64_t {
    if (c == n) return 1;
    if (auto it = memo[c].find(sub); it != memo[c].end()) return it->second;
    if (++states > budgets.endomorphisms) {
      throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budgets.endomorphisms) +
                                                 " image subgroups visited");
    }
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < g; ++i) {
      if (sub[i / 64] >> (i % 64) & 1) members.push_back(i);
    }
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < images[c].size(); ++k) {
      const std::size_t s = socle[c][k];
      if (s == zero || (sub[s / 64] >> (s % 64) & 1)) continue;
      Key next(words, 0);
      const std::size_t x = images[c][k];
      std::size_t mult = zero;
      do {
        for (std::size_t m : members) {
          const std::size_t e = sum[m * g + mult];
          next[e / 64] |= std::uint64_t{1} << (e % 64);
        }
        mult = sum[mult * g + x];
      } while (mult != zero);
      total += count(c + 1, next);
    }
    memo[c].emplace(sub, total);
    return total;
  };
  Key trivial(words, 0);
  trivial[zero / 64] |= std::uint64_t{1} << (zero % 64);
  return count(0, trivial);
}

void for_each_delta(const PGroupSpec& spec, std::uint64_t budget,
                    const std::function<void(const BlockEndo&)>& visit) {
  const std::uint64_t total = delta_order(spec);
  if (total > budget) {
    throw Error(ErrorCode::BudgetExceeded, "|ker sigma| = " + std::to_string(total) +
                                               " exceeds the delta budget " + std::to_string(budget));
  }
  const std::size_t n = spec.total_rank();
  const Int p = spec.prime();
  auto mods = spec.row_moduli();
  auto exps = spec.row_exponents();
  auto blocks = spec.row_blocks();
  std::vector<Int> step(n * n), count(n * n), digit(n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int v = blocks[r] == blocks[c] ? 1 : std::max(exps[r] - exps[c], 0);
      step[r * n + c] = ipow(p, v);
      count[r * n + c] = mods[r] / step[r * n + c];
    }
  }
  BlockEndo e = BlockEndo::identity(spec);
  for (std::uint64_t t = 0; t < total; ++t) {
    visit(e);
    for (std::size_t i = n * n; i-- > 0;) {
      const std::size_t r = i / n, c = i % n;
      const bool done = ++digit[i] < count[i];
      if (!done) digit[i] = 0;
      e.set_entry(r, c, (r == c ? 1 : 0) + digit[i] * step[i]);
      if (done) break;
    }
  }
}

std::vector<BlockEndo> enumerate_delta(const PGroupSpec& spec, std::uint64_t budget) {
  std::vector<BlockEndo> out;
  for_each_delta(spec, budget, [&](const BlockEndo& e) { out.push_back(e); });
  return out;
}

std::vector<ModMatrix> elementary_gl_generators(Int p, int r) {
  const auto n = static_cast<std::size_t>(r);
  std::vector<ModMatrix> gens;
  if (p > 2) {
    ModMatrix d = ModMatrix::identity(n, p);
    d.set(0, 0, primitive_root(p));
    gens.push_back(d);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) gens.push_back(ModMatrix::identity(n, p) + ModMatrix::elementary(n, i, j, p));
    }
  }
  return gens;
}

std::vector<ModMatrix> gl_generators(Int p, int r, std::uint64_t seed, std::uint64_t budget) {
  if (r == 1 || gl_order(p, r) > budget) return elementary_gl_generators(p, r);
  const std::uint64_t order = gl_order(p, r);
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(p) << 32U) ^ static_cast<std::uint64_t>(r));
  const auto n = static_cast<std::size_t>(r);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<ModMatrix> pair{random_invertible(p, r, rng), random_invertible(p, r, rng)};
    auto c = dimino_closure<ModMatrix, ModMatrixHash>(
        ModMatrix::identity(n, p), std::span<const ModMatrix>(pair), order,
        [](const ModMatrix& a, const ModMatrix& b) { return a * b; });
    if (c.complete() && c.elements.size() == order) return pair;
  }
  return elementary_gl_generators(p, r);
}

std::vector<QElement> find_generators_of_q(const PGroupSpec& spec, std::uint64_t seed,
                                           std::uint64_t budget) {
  std::vector<QElement> gens;
  for (std::size_t i = 0; i < spec.block_count(); ++i) {
    const int r = spec.block(i).rank;
    if (gl_order(spec.prime(), r) > budget) {
      throw Error(ErrorCode::BudgetExceeded, "|GL_" + std::to_string(r) + "(F_" +
                                                 std::to_string(spec.prime()) +
                                                 ")| exceeds the closure budget");
    }
    for (const ModMatrix& m : gl_generators(spec.prime(), r, seed + i, budget)) {
      if (!m.is_identity()) gens.push_back(embed_block(spec, i, m));
    }
  }
  return gens;
}

std::optional<std::uint64_t> q_subgroup_order(const PGroupSpec& spec,
                                              const std::vector<QElement>& gens,
                                              std::uint64_t cap) {
  auto c = dimino_closure<QElement, QElementHash>(
      QElement::identity(spec), std::span<const QElement>(gens), cap,
      [](const QElement& a, const QElement& b) { return a * b; });
  if (!c.complete()) return std::nullopt;
  return c.elements.size();
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NotFoundExhausted: return "NotFound-Exhausted";
    case SearchStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "BudgetExceeded";
}

std::string to_string(ObstructionVerdict v) {
  return v == ObstructionVerdict::NoOrderPLift ? "NoOrderPLift" : "OrderPLiftExists";
}

SearchResult complement_lift_search(const PGroupSpec& spec, const SearchOptions& options) {
  SearchResult res;
  const Budgets& budgets = options.budgets;
  auto exceeded = [&](std::string detail) {
    res.status = SearchStatus::BudgetExceeded;
    res.detail = std::move(detail);
    return res;
  };

  std::uint64_t qord = 0;
  std::uint64_t dord = 0;
  try {
    qord = quotient_order(spec);
    dord = delta_order(spec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
    return exceeded("group orders overflow 64 bits");
  }
  if (dord == 1) {
    // Only a single elementary abelian block has trivial kernel; sigma is
    // then an isomorphism and needs no search or closure.
    const Block b = spec.block(0);
    std::vector<QElement> gens;
    std::vector<BlockEndo> images;
    for (const ModMatrix& m : elementary_gl_generators(spec.prime(), b.rank)) {
      gens.emplace_back(spec.prime(), std::vector<ModMatrix>{m});
      images.push_back(lift_quotient(spec, gens.back()));
    }
    SectionCertificate cert{spec, gens, std::move(images), VerificationMode::Sampled, 0,
                            options.seed, "search"};
    const VerificationReport report =
        verify_section(cert, default_verification_mode(spec, options.verify), options.verify);
    cert.mode = report.mode;
    cert.pairs = report.pairs_checked;
    res.status = SearchStatus::Found;
    res.proof = "trivial-kernel";
    res.candidates.assign(gens.size(), 1);
    res.first_generator_classes = 1;
    res.assignment_space = 1;
    res.certificate = std::move(cert);
    res.verification = report;
    return res;
  }
  if (qord > budgets.closure) {
    return exceeded("|Pi(G)| = " + std::to_string(qord) + " exceeds the closure budget");
  }
  if (dord > budgets.delta) {
    return exceeded("|ker sigma| = " + std::to_string(dord) + " exceeds the delta budget");
  }

  if (options.obstruction_prepass) {
    for (std::size_t i = 0; i < spec.block_count(); ++i) {
      if (spec.block(i).rank < 2) continue;
      const ObstructionReport ob = order_p_coset_obstruction(spec, budgets.delta, i);
      if (ob.verdict == ObstructionVerdict::NoOrderPLift) {
        res.status = SearchStatus::NotFoundExhausted;
        res.proof = "order-p-coset-obstruction(block " + std::to_string(i) + ")";
        return res;
      }
    }
  }

  const std::vector<QElement> gens = find_generators_of_q(spec, options.seed, budgets.closure);
  auto finish = [&](std::vector<BlockEndo> images, std::string proof) {
    SectionCertificate cert{spec, gens, std::move(images), VerificationMode::Sampled, 0,
                            options.seed, "search"};
    const VerificationMode mode = default_verification_mode(spec, options.verify);
    VerificationReport report = verify_section(cert, mode, options.verify);
    cert.mode = report.mode;
    cert.pairs = report.pairs_checked;
    res.status = SearchStatus::Found;
    res.proof = std::move(proof);
    res.certificate = std::move(cert);
    res.verification = report;
    return res;
  };

  if (gens.empty()) return finish({}, "trivial-quotient");

  const std::vector<BlockEndo> delta = enumerate_delta(spec, budgets.delta);

  std::vector<std::uint64_t> prefix_order(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::vector<QElement> prefix(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    prefix_order[k] = *q_subgroup_order(spec, prefix, qord);
  }

  std::vector<std::vector<BlockEndo>> cands(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const BlockEndo base = lift_quotient(spec, gens[k]);
    const std::uint64_t ord = q_element_order(gens[k]);
    for (const BlockEndo& d : delta) {
      BlockEndo h = compose(base, d);
      if (endo_pow(h, ord).is_identity()) cands[k].push_back(std::move(h));
    }
    res.candidates.push_back(cands[k].size());
    if (cands[k].empty()) {
      res.status = SearchStatus::NotFoundExhausted;
      res.proof = "no lift of generator " + std::to_string(k) + " has order " + std::to_string(ord);
      return res;
    }
  }

  // Lifts of the first generator up to conjugation by ker(sigma).
  std::vector<BlockEndo> reps;
  {
    std::vector<BlockEndo> delta_inv;
    delta_inv.reserve(delta.size());
    for (const BlockEndo& d : delta) delta_inv.push_back(invert(d));
    std::unordered_set<BlockEndo, BlockEndoHash> covered;
    for (const BlockEndo& c : cands[0]) {
      if (covered.contains(c)) continue;
      reps.push_back(c);
      for (std::size_t i = 0; i < delta.size(); ++i) {
        covered.insert(compose(compose(delta[i], c), delta_inv[i]));
      }
    }
  }
  res.first_generator_classes = reps.size();

  std::uint64_t space = reps.size();
  for (std::size_t k = 1; k < cands.size(); ++k) space = saturating_mul(space, cands[k].size());
  res.assignment_space = space;
  if (space > budgets.assignments) {
    return exceeded("assignment space " + std::to_string(space) + " exceeds the assignment budget");
  }

  const std::size_t m = gens.size();
  const std::uint64_t inner = m > 1 ? cands[1].size() : 1;
  const std::uint64_t items = reps.size() * inner;

  // Short words in an earlier generator and the newest one, with their orders
  // in Pi(G). A complement is isomorphic to Pi(G), so its lifts must satisfy
  // the same orders; this rejects most assignments before any closure.
  struct Word {
    std::vector<std::pair<std::size_t, std::int64_t>> letters;
    std::uint64_t order;
  };
  std::vector<std::uint64_t> gen_order(m);
  for (std::size_t k = 0; k < m; ++k) gen_order[k] = q_element_order(gens[k]);
  auto q_letter = [&](std::size_t g, std::int64_t e) {
    const std::uint64_t o = gen_order[g];
    QElement x = QElement::identity(spec);
    const auto n = static_cast<std::uint64_t>((e % static_cast<std::int64_t>(o) + static_cast<std::int64_t>(o)) %
                                              static_cast<std::int64_t>(o));
    for (std::uint64_t i = 0; i < n; ++i) x = x * gens[g];
    return x;
  };
  std::vector<std::vector<Word>> relators(m);
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> shapes = {
          {{j, 1}, {k, 1}},          {{j, 1}, {k, 2}},          {{j, 2}, {k, 1}},
          {{j, 1}, {k, -1}},         {{j, 1}, {k, 1}, {j, -1}, {k, -1}},
          {{j, 1}, {k, 1}, {j, 1}, {k, -1}}};
      for (const auto& letters : shapes) {
        QElement w = QElement::identity(spec);
        for (const auto& [g, e] : letters) w = w * q_letter(g, e);
        relators[k].push_back(Word{letters, q_element_order(w)});
      }
    }
  }
  auto satisfies_relators = [&](const std::vector<BlockEndo>& lifts) {
    const std::size_t k = lifts.size() - 1;
    for (const Word& w : relators[k]) {
      BlockEndo x = BlockEndo::identity(spec);
      for (const auto& [g, e] : w.letters) {
        const auto o = static_cast<std::int64_t>(gen_order[g]);
        x = compose(x, endo_pow(lifts[g], static_cast<std::uint64_t>((e % o + o) % o)));
      }
      if (!endo_pow(x, w.order).is_identity()) return false;
    }
    return true;
  };
  auto admissible = [&](const std::vector<BlockEndo>& lifts, std::size_t level) {
    return satisfies_relators(lifts) && generates_complement(lifts, prefix_order[level]);
  };

  // Depth-first extension of a prefix that already passed its closure test.
  std::function<bool(std::vector<BlockEndo>&, std::vector<std::size_t>&)> extend =
      [&](std::vector<BlockEndo>& lifts, std::vector<std::size_t>& path) {
        const std::size_t level = lifts.size();
        if (level == m) return true;
        for (std::size_t i = 0; i < cands[level].size(); ++i) {
          lifts.push_back(cands[level][i]);
          path.push_back(i);
          if (admissible(lifts, level) && extend(lifts, path)) return true;
          lifts.pop_back();
          path.pop_back();
        }
        return false;
      };

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{items};
  std::mutex mu;
  std::vector<BlockEndo> winner;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      for (;;) {
        const std::uint64_t item = next.fetch_add(1);
        if (item >= best.load()) return;
        std::vector<BlockEndo> lifts{reps[item / inner]};
        std::vector<std::size_t> path{static_cast<std::size_t>(item / inner)};
        if (m > 1) {
          lifts.push_back(cands[1][item % inner]);
          path.push_back(static_cast<std::size_t>(item % inner));
          if (!admissible(lifts, 1)) continue;
        }
        if (options.progress && item % 1024 == 0) {
          std::lock_guard lock(mu);
          options.progress(item, items);
        }
        if (!extend(lifts, path)) continue;
        std::lock_guard lock(mu);
        if (item < best.load()) {
          best.store(item);
          winner = std::move(lifts);
        }
        return;
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };

  unsigned workers = options.workers ? options.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(items, 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  if (winner.empty()) {
    res.status = SearchStatus::NotFoundExhausted;
    res.proof = "exhaustive-search";
    return res;
  }
  return finish(std::move(winner), "lift-search");
}

ObstructionReport order_p_coset_obstruction(const PGroupSpec& spec, std::uint64_t delta_budget,
                                            std::size_t block) {
  if (block >= spec.block_count()) {
    throw Error(ErrorCode::PreconditionViolation, "block index out of range");
  }
  const int r = spec.block(block).rank;
  if (r < 2) {
    throw Error(ErrorCode::RankTooSmall, "block " + std::to_string(block) +
                                             " has rank 1: no transvection");
  }
  const Int p = spec.prime();
  BlockEndo a = BlockEndo::identity(spec);
  const std::size_t off = spec.offset(block);
  a.set_entry(off, off + static_cast<std::size_t>(r) - 1, 1);

  const int max_steps = aut_order_factorization(spec).at(p);
  ObstructionReport rep{spec, block, 0, {}, ObstructionVerdict::NoOrderPLift, std::nullopt};
  for_each_delta(spec, delta_budget, [&](const BlockEndo& d) {
    BlockEndo x = compose(a, d);
    const std::uint64_t order = p_power_order(x, p, max_steps);
    ++rep.orders_histogram[order];
    ++rep.coset_size;
    if (order == static_cast<std::uint64_t>(p) && !rep.witness) {
      rep.witness = std::move(x);
      rep.verdict = ObstructionVerdict::OrderPLiftExists;
    }
  });
  return rep;
}

BinomialReport binomial_obstruction_check(const PGroupSpec& spec, std::uint64_t trials,
                                          std::uint64_t seed) {
  const Int p = spec.prime();
  if (p < 5 || spec.block(0).exponent != 2) {
    throw Error(ErrorCode::PreconditionViolation,
                "binomial check needs p >= 5 and n_1 = 2, got " + spec.to_string());
  }
  const int r = spec.block(0).rank;
  if (r < 2) throw Error(ErrorCode::RankTooSmall, "first block has rank 1");

  BlockEndo a = BlockEndo::identity(spec);
  const auto corner = static_cast<std::size_t>(r) - 1;
  a.set_entry(0, corner, 1);
  std::mt19937_64 rng(seed);
  BinomialReport rep{0, 0, p};
  for (std::uint64_t t = 0; t < trials; ++t) {
    // t == 0 uses C = 0, where the power is 1 + pE exactly.
    const BlockEndo c = t == 0 ? BlockEndo::zero(spec) : random_ideal(spec, rng);
    const BlockEndo m = endo_pow(add_endos(a, c), static_cast<std::uint64_t>(p));
    ++rep.trials;
    if (m.entry(0, corner) != p) ++rep.failures;
  }
  return rep;
}

}  // namespace abelsplit
