#pragma once

#include <string>

#include <json.hpp>

#include "abelsplit/endo.hpp"
#include "abelsplit/group.hpp"
#include "abelsplit/oracle.hpp"
#include "abelsplit/section.hpp"
#include "abelsplit/splitting.hpp"

namespace abelsplit {

// Key order is kept as written so that output is byte-stable.
using Json = nlohmann::ordered_json;

/// {"p": 5, "blocks": [{"n": 2, "r": 2}, ...]}
Json spec_to_json(const PGroupSpec& spec);
PGroupSpec spec_from_json(const Json& j);

/// "n:r" as used by the -b flag.
Block parse_block_arg(const std::string& s);

/// {"cells": cells[j][k] = rows of the r_j x r_k cell}. Reading rejects
/// entries outside [0, p^{n_j}) and cells violating the Hom divisibility,
/// naming the offending cell.
Json endo_to_json(const BlockEndo& e);
BlockEndo endo_from_json(const PGroupSpec& spec, const Json& j);

/// {"mats": [rows of each r_i x r_i matrix over F_p]}
Json qelement_to_json(const QElement& q);
QElement qelement_from_json(const PGroupSpec& spec, const Json& j);

Json certificate_to_json(const SectionCertificate& cert);
SectionCertificate certificate_from_json(const Json& j);

Json verdict_to_json(const SplitVerdict& v);
Json report_to_json(const VerificationReport& r);
Json obstruction_to_json(const ObstructionReport& r);
Json search_result_to_json(const PGroupSpec& spec, const SearchResult& r);

}  // namespace abelsplit
