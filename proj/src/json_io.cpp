#include "abelsplit/json_io.hpp"

#include "abelsplit/error.hpp"

namespace abelsplit {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

Int to_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_error(where + " must be an integer");
  return j.get<Int>();
}

int to_small_int(const Json& j, const std::string& where) {
  const Int v = to_int(j, where);
  if (v < -1000000 || v > 1000000) parse_error(where + " is out of range");
  return static_cast<int>(v);
}

Json matrix_rows(const ModMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Int> matrix_entries(const Json& rows, std::size_t nr, std::size_t nc,
                                const std::string& where) {
  if (!rows.is_array() || rows.size() != nr) {
    throw Error(ErrorCode::ShapeMismatch, where + " must have " + std::to_string(nr) + " rows");
  }
  std::vector<Int> out;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != nc) {
      throw Error(ErrorCode::ShapeMismatch,
                  where + " rows must have " + std::to_string(nc) + " entries");
    }
    for (const Json& v : row) out.push_back(to_int(v, where + " entry"));
  }
  return out;
}

}  // namespace

Json spec_to_json(const PGroupSpec& spec) {
  Json blocks = Json::array();
  for (const Block& b : spec.blocks()) blocks.push_back(Json{{"n", b.exponent}, {"r", b.rank}});
  return Json{{"p", spec.prime()}, {"blocks", std::move(blocks)}};
}

PGroupSpec spec_from_json(const Json& j) {
  const Int p = to_int(field(j, "p"), "p");
  const Json& bl = field(j, "blocks");
  if (!bl.is_array()) parse_error("'blocks' must be an array");
  std::vector<Block> blocks;
  for (const Json& b : bl) {
    blocks.push_back(Block{to_small_int(field(b, "n"), "n"), to_small_int(field(b, "r"), "r")});
  }
  return PGroupSpec(p, std::move(blocks));
}

Block parse_block_arg(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) parse_error("block '" + s + "' is not of the form n:r");
  try {
    std::size_t used = 0;
    const int n = std::stoi(s.substr(0, colon), &used);
    if (used != colon) parse_error("block '" + s + "' is not of the form n:r");
    const std::string rs = s.substr(colon + 1);
    const int r = std::stoi(rs, &used);
    if (used != rs.size()) parse_error("block '" + s + "' is not of the form n:r");
    return Block{n, r};
  } catch (const std::logic_error&) {
    parse_error("block '" + s + "' is not of the form n:r");
  }
}

Json endo_to_json(const BlockEndo& e) {
  const PGroupSpec& spec = e.spec();
  Json cells = Json::array();
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    Json row = Json::array();
    for (std::size_t k = 0; k < spec.block_count(); ++k) row.push_back(matrix_rows(e.cell(j, k)));
    cells.push_back(std::move(row));
  }
  return Json{{"cells", std::move(cells)}};
}

BlockEndo endo_from_json(const PGroupSpec& spec, const Json& j) {
  const Json& cells = field(j, "cells");
  const std::size_t nb = spec.block_count();
  if (!cells.is_array() || cells.size() != nb) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(nb) + " rows of cells");
  }
  BlockEndo e(spec);
  const Int p = spec.prime();
  for (std::size_t a = 0; a < nb; ++a) {
    if (!cells[a].is_array() || cells[a].size() != nb) {
      throw Error(ErrorCode::ShapeMismatch, "cell row " + std::to_string(a) + " must have " +
                                                std::to_string(nb) + " cells");
    }
    for (std::size_t b = 0; b < nb; ++b) {
      const std::string where = "cell (" + std::to_string(a) + "," + std::to_string(b) + ")";
      const auto nr = static_cast<std::size_t>(spec.block(a).rank);
      const auto nc = static_cast<std::size_t>(spec.block(b).rank);
      const std::vector<Int> vals = matrix_entries(cells[a][b], nr, nc, where);
      const Int mod = spec.modulus(a);
      const int gap = std::max(spec.block(a).exponent - spec.block(b).exponent, 0);
      const Int div = ipow(p, gap);
      ModMatrix m(nr, nc, mod);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] < 0 || vals[i] >= mod) {
          throw Error(ErrorCode::ConstraintViolation,
                      where + " entry " + std::to_string(vals[i]) + " is not canonical mod " +
                          std::to_string(mod));
        }
        if (vals[i] % div != 0) {
          throw Error(ErrorCode::ConstraintViolation,
                      where + " entry " + std::to_string(vals[i]) + " is not divisible by " +
                          std::to_string(div));
        }
        m.set(i / nc, i % nc, vals[i]);
      }
      e.set_cell(a, b, m);
    }
  }
  return e;
}

Json qelement_to_json(const QElement& q) {
  Json mats = Json::array();
  for (const ModMatrix& m : q.mats()) mats.push_back(matrix_rows(m));
  return Json{{"mats", std::move(mats)}};
}

QElement qelement_from_json(const PGroupSpec& spec, const Json& j) {
  const Json& mats = field(j, "mats");
  if (!mats.is_array() || mats.size() != spec.block_count()) {
    throw Error(ErrorCode::ShapeMismatch, "expected one matrix per block");
  }
  const Int p = spec.prime();
  std::vector<ModMatrix> out;
  for (std::size_t i = 0; i < spec.block_count(); ++i) {
    const auto r = static_cast<std::size_t>(spec.block(i).rank);
    std::vector<Int> vals = matrix_entries(mats[i], r, r, "matrix " + std::to_string(i));
    for (Int v : vals) {
      if (v < 0 || v >= p) {
        throw Error(ErrorCode::ConstraintViolation, "matrix " + std::to_string(i) + " entry " +
                                                        std::to_string(v) + " is not in F_p");
      }
    }
    out.emplace_back(r, r, p, std::move(vals));
  }
  return QElement(p, std::move(out));
}

Json certificate_to_json(const SectionCertificate& cert) {
  Json gens = Json::array();
  for (const QElement& g : cert.generators) gens.push_back(qelement_to_json(g));
  Json images = Json::array();
  for (const BlockEndo& h : cert.images) images.push_back(endo_to_json(h));
  return Json{{"spec", spec_to_json(cert.spec)},
              {"origin", cert.origin},
              {"seed", cert.seed},
              {"generators", std::move(gens)},
              {"images", std::move(images)},
              {"verification", Json{{"mode", to_string(cert.mode)}, {"pairs", cert.pairs}}}};
}

SectionCertificate certificate_from_json(const Json& j) {
  SectionCertificate cert{spec_from_json(field(j, "spec"))};
  const Json& gens = field(j, "generators");
  const Json& images = field(j, "images");
  if (!gens.is_array() || !images.is_array()) parse_error("generators and images must be arrays");
  for (const Json& g : gens) cert.generators.push_back(qelement_from_json(cert.spec, g));
  for (const Json& h : images) cert.images.push_back(endo_from_json(cert.spec, h));
  const Json& ver = field(j, "verification");
  const Json& mode = field(ver, "mode");
  if (!mode.is_string()) parse_error("verification mode must be a string");
  cert.mode = verification_mode_from_string(mode.get<std::string>());
  const Json& pairs = field(ver, "pairs");
  if (!pairs.is_number_unsigned()) parse_error("verification pairs must be a count");
  cert.pairs = pairs.get<std::uint64_t>();
  if (j.contains("seed") && j.at("seed").is_number_unsigned()) cert.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("origin") && j.at("origin").is_string()) cert.origin = j.at("origin").get<std::string>();
  return cert;
}

Json verdict_to_json(const SplitVerdict& v) {
  Json blocks = Json::array();
  for (const BlockVerdict& b : v.per_block) {
    blocks.push_back(Json{{"n", b.block.exponent},
                          {"r", b.block.rank},
                          {"outcome", to_string(b.outcome)},
                          {"rule", b.rule}});
  }
  return Json{{"outcome", to_string(v.outcome)},
              {"rule", v.rule},
              {"per_block", std::move(blocks)},
              {"gaps_ok", v.gaps_ok}};
}

Json report_to_json(const VerificationReport& r) {
  return Json{{"mode", to_string(r.mode)},
              {"group_order", r.group_order},
              {"pairs", r.pairs_checked},
              {"failures", r.failures}};
}

Json obstruction_to_json(const ObstructionReport& r) {
  Json hist = Json::object();
  for (const auto& [order, count] : r.orders_histogram) hist[std::to_string(order)] = count;
  Json out{{"spec", spec_to_json(r.spec)},
           {"block", r.block},
           {"coset_size", r.coset_size},
           {"orders_histogram", std::move(hist)},
           {"verdict", to_string(r.verdict)}};
  if (r.witness) out["witness"] = endo_to_json(*r.witness);
  return out;
}

Json search_result_to_json(const PGroupSpec& spec, const SearchResult& r) {
  Json out{{"spec", spec_to_json(spec)}, {"verdict", to_string(r.status)}};
  if (!r.proof.empty()) out["proof"] = r.proof;
  if (!r.detail.empty()) out["detail"] = r.detail;
  out["candidates"] = r.candidates;
  out["first_generator_classes"] = r.first_generator_classes;
  out["assignment_space"] = r.assignment_space;
  if (r.verification) out["verification"] = report_to_json(*r.verification);
  if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate);
  return out;
}

}  // namespace abelsplit
