#include "abelsplit/section.hpp"

#include <random>

#include "abelsplit/dimino.hpp"
#include "abelsplit/error.hpp"

namespace abelsplit {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::VerificationFailed, what);
}

void check_generators(const SectionCertificate& cert) {
  if (cert.generators.size() != cert.images.size()) {
    fail("certificate has " + std::to_string(cert.generators.size()) + " generators but " +
         std::to_string(cert.images.size()) + " images");
  }
  for (std::size_t i = 0; i < cert.generators.size(); ++i) {
    const QElement& g = cert.generators[i];
    const BlockEndo& h = cert.images[i];
    if (!g.conforms_to(cert.spec) || !g.is_invertible()) {
      fail("generator " + std::to_string(i) + " is not an element of Pi(G)");
    }
    if (!(h.spec() == cert.spec) || !check_hom_constraints(h)) {
      fail("image " + std::to_string(i) + " is not an endomorphism of " + cert.spec.to_string());
    }
    if (!(sigma(h) == g)) fail("sigma(image " + std::to_string(i) + ") != generator");
  }
}

}  // namespace

std::string to_string(VerificationMode mode) {
  switch (mode) {
    case VerificationMode::FullTable: return "full-table";
    case VerificationMode::GeneratorRelations: return "generator-relations";
    case VerificationMode::Sampled: return "sampled";
  }
  return "sampled";
}

VerificationMode verification_mode_from_string(const std::string& s) {
  if (s == "full-table") return VerificationMode::FullTable;
  if (s == "generator-relations") return VerificationMode::GeneratorRelations;
  if (s == "sampled") return VerificationMode::Sampled;
  throw Error(ErrorCode::ParseError, "unknown verification mode '" + s + "'");
}

SectionTable tabulate_section(const SectionCertificate& cert, std::uint64_t cap) {
  check_generators(cert);
  SectionTable t;
  t.elements.push_back(QElement::identity(cert.spec));
  t.images.push_back(BlockEndo::identity(cert.spec));
  t.index.emplace(t.elements.front(), 0);
  for (std::size_t i = 0; i < t.elements.size(); ++i) {
    for (std::size_t g = 0; g < cert.generators.size(); ++g) {
      QElement q = t.elements[i] * cert.generators[g];
      BlockEndo th = compose(t.images[i], cert.images[g]);
      auto it = t.index.find(q);
      if (it != t.index.end()) {
        if (!(t.images[it->second] == th)) {
          fail("theta is not well defined: element " + std::to_string(i) + " times generator " +
               std::to_string(g) + " disagrees with an earlier word");
        }
        continue;
      }
      if (t.elements.size() >= cap) {
        throw Error(ErrorCode::BudgetExceeded,
                    "section table exceeds " + std::to_string(cap) + " elements");
      }
      t.index.emplace(q, t.elements.size());
      t.elements.push_back(std::move(q));
      t.images.push_back(std::move(th));
    }
  }
  const std::uint64_t order = quotient_order(cert.spec);
  if (t.elements.size() != order) {
    fail("generators span " + std::to_string(t.elements.size()) + " elements, |Pi(G)| = " +
         std::to_string(order));
  }
  return t;
}

VerificationMode default_verification_mode(const PGroupSpec& spec, const VerifyOptions& options) {
  const std::uint64_t order = quotient_order(spec);
  if (order <= options.full_table_limit) return VerificationMode::FullTable;
  if (order <= options.closure_budget) return VerificationMode::GeneratorRelations;
  return VerificationMode::Sampled;
}

VerificationReport verify_section(const SectionCertificate& cert, VerificationMode mode,
                                  const VerifyOptions& options) {
  check_generators(cert);
  VerificationReport report;
  report.mode = mode;
  report.group_order = quotient_order(cert.spec);

  switch (mode) {
    case VerificationMode::FullTable: {
      if (report.group_order > options.full_table_limit) {
        throw Error(ErrorCode::BudgetExceeded, "|Pi(G)| = " + std::to_string(report.group_order) +
                                                   " is above the full-table limit");
      }
      const SectionTable t = tabulate_section(cert, options.full_table_limit);
      const std::size_t n = t.elements.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (!(sigma(t.images[i]) == t.elements[i])) {
          fail("sigma(theta(q)) != q for table element " + std::to_string(i));
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t k = t.index.at(t.elements[i] * t.elements[j]);
          if (!(compose(t.images[i], t.images[j]) == t.images[k])) {
            ++report.failures;
            fail("theta(q q') != theta(q) theta(q') for pair (" + std::to_string(i) + ", " +
                 std::to_string(j) + ")");
          }
          ++report.pairs_checked;
        }
      }
      break;
    }
    case VerificationMode::GeneratorRelations: {
      if (report.group_order > options.closure_budget) {
        throw Error(ErrorCode::BudgetExceeded, "|Pi(G)| = " + std::to_string(report.group_order) +
                                                   " is above the closure budget");
      }
      auto closure = dimino_closure<BlockEndo, BlockEndoHash>(
          BlockEndo::identity(cert.spec), std::span<const BlockEndo>(cert.images),
          report.group_order, compose,
          [](const BlockEndo& x) { return reduces_to_identity(x); });
      report.pairs_checked = closure.elements.size();
      if (closure.status == ClosureStatus::Rejected) {
        fail("images generate a subgroup meeting ker(sigma) nontrivially");
      }
      if (closure.status == ClosureStatus::Overflow ||
          closure.elements.size() != report.group_order) {
        fail("images generate a subgroup of the wrong order");
      }
      break;
    }
    case VerificationMode::Sampled: {
      if (cert.generators.empty()) break;
      std::mt19937_64 rng(options.seed);
      std::uniform_int_distribution<std::size_t> pick(0, cert.generators.size() - 1);
      std::uniform_int_distribution<int> length(1, 12);
      auto random_word = [&](QElement& q, BlockEndo& th) {
        q = QElement::identity(cert.spec);
        th = BlockEndo::identity(cert.spec);
        for (int n = length(rng); n > 0; --n) {
          const std::size_t g = pick(rng);
          q = q * cert.generators[g];
          th = compose(th, cert.images[g]);
        }
      };
      QElement q1, q2;
      BlockEndo t1(cert.spec), t2(cert.spec);
      for (std::uint64_t s = 0; s < options.samples; ++s) {
        random_word(q1, t1);
        random_word(q2, t2);
        const QElement q = q1 * q2;
        const BlockEndo t = compose(t1, t2);
        ++report.pairs_checked;
        if (!(sigma(t) == q) || !endo_pow(t, q_element_order(q)).is_identity()) {
          ++report.failures;
          fail("sampled pair " + std::to_string(s) + ": theta(w w') does not have the order of w w'");
        }
      }
      break;
    }
  }
  return report;
}

}  // namespace abelsplit
