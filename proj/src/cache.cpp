#include "abelsplit/cache.hpp"

#include <algorithm>
#include <fstream>

#include "abelsplit/error.hpp"
#include "abelsplit/json_io.hpp"

namespace abelsplit {

namespace fs = std::filesystem;

CertificateCache::CertificateCache(fs::path dir, VerifyOptions reverify)
    : dir_(std::move(dir)), reverify_(reverify) {}

std::string CertificateCache::block_file_name(Int p, int n, int r) {
  return "block_p" + std::to_string(p) + "_n" + std::to_string(n) + "_r" + std::to_string(r) +
         ".json";
}

std::string CertificateCache::spec_file_name(const PGroupSpec& spec) {
  std::string name = "spec_p" + std::to_string(spec.prime());
  for (const Block& b : spec.blocks()) {
    name += "_" + std::to_string(b.exponent) + "x" + std::to_string(b.rank);
  }
  return name + ".json";
}

std::optional<SectionCertificate> CertificateCache::load_file(const fs::path& file) const {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    SectionCertificate cert = certificate_from_json(Json::parse(in));
    verify_section(cert, VerificationMode::Sampled, reverify_);
    return cert;
  } catch (const Error&) {
    return std::nullopt;
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

std::optional<SectionCertificate> CertificateCache::load_block(Int p, int n, int r) const {
  auto cert = load_file(dir_ / block_file_name(p, n, r));
  if (cert && !(cert->spec == PGroupSpec(p, {Block{n, r}}))) return std::nullopt;
  return cert;
}

std::optional<SectionCertificate> CertificateCache::load_spec(const PGroupSpec& spec) const {
  auto cert = load_file(dir_ / spec_file_name(spec));
  if (cert && !(cert->spec == spec)) return std::nullopt;
  return cert;
}

void CertificateCache::store(const SectionCertificate& cert) const {
  fs::create_directories(dir_);
  const Block b = cert.spec.block(0);
  const fs::path file = dir_ / (cert.spec.block_count() == 1
                                    ? block_file_name(cert.spec.prime(), b.exponent, b.rank)
                                    : spec_file_name(cert.spec));
  // Write then rename so a concurrent reader never sees half a file.
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << certificate_to_json(cert).dump(1) << '\n';
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + tmp.string());
  }
  fs::rename(tmp, file);
}

std::vector<fs::path> CertificateCache::files() const {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir_)) return out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    const bool ours = name.starts_with("block_p") || name.starts_with("spec_p");
    if (entry.is_regular_file() && ours && entry.path().extension() == ".json") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CertificateCache::Entry> CertificateCache::list() const {
  std::vector<Entry> out;
  for (const fs::path& f : files()) {
    Entry e{f, "", "", ""};
    try {
      std::ifstream in(f);
      const Json j = Json::parse(in);
      e.spec = spec_from_json(j.at("spec")).to_string();
      e.origin = j.value("origin", "");
      e.mode = j.at("verification").at("mode").get<std::string>();
    } catch (const std::exception&) {
      e.spec.clear();
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CertificateCache::Check> CertificateCache::verify_all() const {
  std::vector<Check> out;
  for (const fs::path& f : files()) {
    Check c{f, false, ""};
    try {
      std::ifstream in(f);
      const SectionCertificate cert = certificate_from_json(Json::parse(in));
      const VerificationReport rep = verify_section(cert, cert.mode, reverify_);
      c.ok = true;
      c.message = to_string(rep.mode) + ", " + std::to_string(rep.pairs_checked) + " checks";
    } catch (const std::exception& e) {
      c.message = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t CertificateCache::clear() const {
  std::size_t n = 0;
  for (const fs::path& f : files()) n += fs::remove(f) ? 1 : 0;
  return n;
}

}  // namespace abelsplit
