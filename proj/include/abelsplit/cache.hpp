#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "abelsplit/group.hpp"
#include "abelsplit/section.hpp"

namespace abelsplit {

/// Directory of section certificates: block_p{p}_n{n}_r{r}.json for single
/// blocks and spec_p{p}_{n}x{r}_....json for assembled sections. Entries are
/// re-verified in sampled mode on load and ignored when that fails, so
/// deleting or corrupting the cache only costs time.
class CertificateCache {
 public:
  explicit CertificateCache(std::filesystem::path dir, VerifyOptions reverify = {});

  const std::filesystem::path& dir() const { return dir_; }

  static std::string block_file_name(Int p, int n, int r);
  static std::string spec_file_name(const PGroupSpec& spec);

  std::optional<SectionCertificate> load_block(Int p, int n, int r) const;
  std::optional<SectionCertificate> load_spec(const PGroupSpec& spec) const;
  void store(const SectionCertificate& cert) const;

  struct Entry {
    std::filesystem::path file;
    std::string spec;    // empty when unreadable
    std::string origin;
    std::string mode;
  };
  std::vector<Entry> list() const;

  struct Check {
    std::filesystem::path file;
    bool ok = false;
    std::string message;
  };
  /// Loads every certificate and verifies it in its recorded mode.
  std::vector<Check> verify_all() const;

  /// Removes every certificate file; returns how many were removed.
  std::size_t clear() const;

 private:
  std::optional<SectionCertificate> load_file(const std::filesystem::path& file) const;
  std::vector<std::filesystem::path> files() const;

  std::filesystem::path dir_;
  VerifyOptions reverify_;
};

}  // namespace abelsplit
