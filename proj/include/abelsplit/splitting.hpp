#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abelsplit/group.hpp"
#include "abelsplit/oracle.hpp"
#include "abelsplit/section.hpp"

namespace abelsplit {

class CertificateCache;

enum class Outcome { Splits, DoesNotSplit, Unknown };
std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

struct BlockVerdict {
  Block block;
  Outcome outcome = Outcome::Splits;  // never Unknown
  std::string rule;
};

struct SplitVerdict {
  Outcome outcome = Outcome::Unknown;
  std::string rule;
  std::vector<BlockVerdict> per_block;
  bool gaps_ok = true;  // every n_{i+1} - n_i > 1
};

/// Largest rank of a splitting homocyclic block of exponent > 1.
int rank_bound(Int p);

/// A homocyclic block (Z/p^n)^r splits iff n = 1 or r <= rank_bound(p).
Outcome classify_block(Int p, int n, int r);
BlockVerdict classify_block_verdict(Int p, int n, int r);

/// Blockwise decision. Splits when every block splits; DoesNotSplit when some
/// block fails and either p >= 5 or all exponent gaps exceed 1; otherwise
/// Unknown.
SplitVerdict classify(const PGroupSpec& spec);

/// a^{p^{n-1}} mod p^n: the multiplicative lift of a in F_p^* to the
/// (p-1)-torsion of (Z/p^n)^*.
Int teichmuller(Int p, int n, Int a);

/// Raises a section of GL_r(F_p) into GL_r(Z/p^k) to one into GL_r(Z/p^{k+1})
/// by searching images h + p^k X over the same generators. nullopt when no
/// extension of this particular section exists.
std::optional<SectionCertificate> lift_block_section(const SectionCertificate& lower,
                                                     const SearchOptions& options);

/// A verified section for the single block (Z/p^n)^r: the identity section
/// when n = 1, Teichmuller when r = 1, and otherwise a searched section for
/// exponent 2 raised one exponent at a time. Throws NotSplitBlock when the
/// block does not split and BudgetExceeded when the search gives up.
SectionCertificate block_section(Int p, int n, int r, const SearchOptions& options,
                                 CertificateCache* cache = nullptr);

/// Block-diagonal assembly of per-block sections; blocks[i] must be a section
/// for the i-th block of spec (MissingBlockSection otherwise). The result is
/// verified in the default mode for |Pi(G)|.
SectionCertificate assemble_section(const PGroupSpec& spec,
                                    const std::vector<std::optional<SectionCertificate>>& blocks,
                                    const VerifyOptions& verify = {});

/// classify, then block_section for every block, then assemble_section.
/// Throws NotSplitBlock when the classifier does not say Splits.
SectionCertificate build_section(const PGroupSpec& spec, const SearchOptions& options,
                                 CertificateCache* cache = nullptr);

}  // namespace abelsplit
