#include "abelsplit/cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "abelsplit/cache.hpp"
#include "abelsplit/error.hpp"
#include "abelsplit/json_io.hpp"
#include "abelsplit/oracle.hpp"
#include "abelsplit/splitting.hpp"

namespace abelsplit {
namespace {

struct SpecArgs {
  Int p = 0;
  std::vector<std::string> blocks;
  std::string spec_file;

  PGroupSpec resolve() const {
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) throw Error(ErrorCode::ParseError, "cannot read " + spec_file);
      try {
        return spec_from_json(Json::parse(in));
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, spec_file + ": " + e.what());
      }
    }
    std::vector<Block> bl;
    for (const std::string& b : blocks) bl.push_back(parse_block_arg(b));
    return PGroupSpec(p, std::move(bl));
  }
};

struct Common {
  Budgets budgets;
  std::uint64_t seed = SearchOptions{}.seed;
  std::string cache_dir;
  unsigned workers = 0;

  SearchOptions search() const {
    SearchOptions o;
    o.budgets = budgets;
    o.seed = seed;
    o.workers = workers;
    o.verify.closure_budget = budgets.closure;
    o.verify.seed = seed;
    return o;
  }

  std::unique_ptr<CertificateCache> cache() const {
    if (cache_dir.empty()) return nullptr;
    VerifyOptions v;
    v.seed = seed;
    v.samples = 1000;
    return std::make_unique<CertificateCache>(cache_dir, v);
  }
};

void add_spec_options(CLI::App* cmd, SpecArgs& s) {
  cmd->add_option("-p,--prime", s.p, "prime p");
  cmd->add_option("-b,--block", s.blocks, "block n:r, repeated in increasing n");
  cmd->add_option("--spec-file", s.spec_file, "spec JSON file instead of -p/-b");
}

void add_common_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget-elems", c.budgets.elements, "max group elements enumerated")
      ->envname("ABELSPLIT_BUDGET_ELEMS");
  cmd->add_option("--budget-delta", c.budgets.delta, "max |ker sigma| enumerated")
      ->envname("ABELSPLIT_BUDGET_DELTA");
  cmd->add_option("--budget-closure", c.budgets.closure, "max subgroup size built by closure")
      ->envname("ABELSPLIT_BUDGET_CLOSURE");
  cmd->add_option("--budget-assignments", c.budgets.assignments, "max lift assignments searched")
      ->envname("ABELSPLIT_BUDGET_ASSIGNMENTS");
  cmd->add_option("--budget-endos", c.budgets.endomorphisms, "max endomorphisms enumerated")
      ->envname("ABELSPLIT_BUDGET_ENDOS");
  cmd->add_option("--seed", c.seed, "random seed")->envname("ABELSPLIT_SEED");
  cmd->add_option("--cache-dir", c.cache_dir, "certificate cache directory")
      ->envname("ABELSPLIT_CACHE_DIR");
  cmd->add_option("--workers", c.workers, "worker threads (0 = all cores)")
      ->envname("ABELSPLIT_WORKERS");
}

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPrime:
    case ErrorCode::NonIncreasingExponents:
    case ErrorCode::ZeroRank:
    case ErrorCode::EmptyBlocks:
    case ErrorCode::ModulusTooLarge:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::SpecMismatch:
    case ErrorCode::ConstraintViolation:
    case ErrorCode::ParseError:
    case ErrorCode::RankTooSmall:
    case ErrorCode::PreconditionViolation:
    case ErrorCode::PreconditionGap:
    case ErrorCode::TrivialResult:
    case ErrorCode::SingleBlock:
      return true;
    default:
      return false;
  }
}

int exit_code_for(const Error& e) {
  if (is_input_error(e.code())) return kExitInvalid;
  switch (e.code()) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::Overflow:
      return kExitBudget;
    case ErrorCode::VerificationFailed:
      return kExitVerification;
    case ErrorCode::NotSplitBlock:
      return kExitNotSplit;
    default:
      return kExitInvalid;
  }
}

Json error_json(const Error& e) {
  return Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
}

// --- batch ---------------------------------------------------------------

struct Row {
  std::size_t line = 0;
  std::optional<PGroupSpec> spec;
  SplitVerdict verdict;
  std::string oracle;  // empty when not requested
  std::optional<bool> agreement;
  std::string error;
};

std::string oracle_outcome(const PGroupSpec& spec, SearchOptions options) {
  options.workers = 1;
  try {
    const SearchResult r = complement_lift_search(spec, options);
    switch (r.status) {
      case SearchStatus::Found: return to_string(Outcome::Splits);
      case SearchStatus::NotFoundExhausted: return to_string(Outcome::DoesNotSplit);
      case SearchStatus::BudgetExceeded: return "classifier-only";
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded && e.code() != ErrorCode::Overflow) throw;
  }
  return "classifier-only";
}

Row process_line(std::size_t line, const std::string& text, bool with_oracle,
                 const SearchOptions& options) {
  Row row;
  row.line = line;
  try {
    row.spec = spec_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    row.error = std::string("ParseError: ") + e.what();
    return row;
  } catch (const Error& e) {
    row.error = e.what();
    return row;
  }
  row.verdict = classify(*row.spec);
  if (with_oracle) {
    row.oracle = oracle_outcome(*row.spec, options);
    const bool decided = row.oracle != "classifier-only" && row.verdict.outcome != Outcome::Unknown;
    if (decided) row.agreement = row.oracle == to_string(row.verdict.outcome);
  }
  return row;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit_row(std::ostream& out, const Row& row, bool csv, bool with_oracle) {
  if (csv) {
    out << row.line << ',' << (row.spec ? csv_quote(row.spec->to_string()) : "") << ',';
    if (row.error.empty()) {
      out << to_string(row.verdict.outcome) << ',' << csv_quote(row.verdict.rule);
    } else {
      out << ',';
    }
    out << ',' << row.oracle << ',';
    if (row.agreement) out << (*row.agreement ? "true" : "false");
    out << ',' << (row.error.empty() ? "" : csv_quote(row.error)) << '\n';
    return;
  }
  Json j{{"line", row.line}};
  if (!row.error.empty()) {
    j["error"] = row.error;
  } else {
    j["spec"] = spec_to_json(*row.spec);
    j["outcome"] = to_string(row.verdict.outcome);
    j["rule"] = row.verdict.rule;
    if (with_oracle) {
      j["oracle"] = row.oracle;
      j["agreement"] = row.agreement ? Json(*row.agreement) : Json(nullptr);
    }
  }
  out << j.dump() << '\n';
}

int run_batch(const std::string& input, const std::string& format, bool with_oracle,
              bool keep_going, const Common& common, std::ostream& out, std::ostream& err) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (input != "-") {
    file.open(input);
    if (!file) {
      err << "cannot read " << input << '\n';
      return kExitInvalid;
    }
    in = &file;
  }
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string text;
  for (std::size_t n = 1; std::getline(*in, text); ++n) {
    if (text.find_first_not_of(" \t\r") != std::string::npos) lines.emplace_back(n, text);
  }

  const SearchOptions options = common.search();
  std::vector<Row> rows(lines.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < lines.size(); i = next.fetch_add(1)) {
      try {
        rows[i] = process_line(lines[i].first, lines[i].second, with_oracle, options);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned workers = common.workers ? common.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(lines.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  const bool csv = format == "csv";
  if (csv) out << "line,spec,outcome,rule,oracle,agreement,error\n";
  bool malformed = false;
  bool disagreement = false;
  for (const Row& row : rows) {
    if (!row.error.empty()) {
      err << "line " << row.line << ": " << row.error << '\n';
      malformed = true;
      if (!keep_going) return kExitInvalid;
    }
    if (row.agreement && !*row.agreement) {
      err << "line " << row.line << ": classifier says " << to_string(row.verdict.outcome)
          << ", oracle says " << row.oracle << '\n';
      disagreement = true;
    }
    emit_row(out, row, csv, with_oracle);
  }
  if (malformed) return kExitInvalid;
  return disagreement ? kExitDisagreement : kExitOk;
}

// --- oracle --------------------------------------------------------------

int run_oracle(const std::string& which, const PGroupSpec& spec, const Common& common,
               std::uint64_t samples, std::size_t block, bool prepass, std::ostream& out,
               std::ostream& err) {
  const Budgets& b = common.budgets;
  if (which == "bijective-equiv") {
    const EquivalenceReport r = bijectivity_cross_check(spec, samples, common.seed, b.elements);
    out << Json{{"spec", spec_to_json(spec)},
                {"checked", r.checked},
                {"automorphisms", r.automorphisms},
                {"disagreements", r.disagreements}}
               .dump(2)
        << '\n';
    return r.disagreements == 0 ? kExitOk : kExitDisagreement;
  }
  if (which == "delta-count") {
    const std::uint64_t formula = delta_order(spec);
    std::uint64_t enumerated = 0;
    for_each_delta(spec, b.delta, [&](const BlockEndo& e) { enumerated += in_delta(e) ? 1 : 0; });
    out << Json{{"spec", spec_to_json(spec)}, {"formula", formula}, {"enumerated", enumerated}}.dump(2)
        << '\n';
    return formula == enumerated ? kExitOk : kExitDisagreement;
  }
  if (which == "obstruction") {
    out << obstruction_to_json(order_p_coset_obstruction(spec, b.delta, block)).dump(2) << '\n';
    return kExitOk;
  }
  SearchOptions o = common.search();
  o.obstruction_prepass = prepass;
  o.progress = [&err](std::uint64_t done, std::uint64_t total) {
    err << "search: " << done << "/" << total << " assignments started\n";
  };
  const SearchResult r = complement_lift_search(spec, o);
  out << search_result_to_json(spec, r).dump(2) << '\n';
  return r.status == SearchStatus::BudgetExceeded ? kExitBudget : kExitOk;
}

// --- section -------------------------------------------------------------

int run_section(const PGroupSpec& spec, const Common& common, const std::string& mode,
                const std::string& out_file, std::ostream& out) {
  const SplitVerdict v = classify(spec);
  if (v.outcome != Outcome::Splits) {
    out << Json{{"spec", spec_to_json(spec)}, {"verdict", verdict_to_json(v)}}.dump(2) << '\n';
    return kExitNotSplit;
  }
  const auto cache = common.cache();
  const SearchOptions options = common.search();
  const SectionCertificate cert = build_section(spec, options, cache.get());
  const VerificationMode m =
      mode.empty() ? default_verification_mode(spec, options.verify) : verification_mode_from_string(mode);
  const VerificationReport rep = verify_section(cert, m, options.verify);

  Json j{{"spec", spec_to_json(spec)}, {"origin", cert.origin}, {"verification", report_to_json(rep)}};
  if (out_file.empty()) {
    j["certificate"] = certificate_to_json(cert);
  } else {
    std::ofstream f(out_file);
    f << certificate_to_json(cert).dump(1) << '\n';
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + out_file);
    j["certificate_file"] = out_file;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

// --- cache ---------------------------------------------------------------

int run_cache(const std::string& which, const Common& common, std::ostream& out) {
  const auto cache = common.cache();
  if (!cache) throw Error(ErrorCode::ParseError, "cache commands need --cache-dir");
  if (which == "list") {
    Json arr = Json::array();
    for (const auto& e : cache->list()) {
      arr.push_back(Json{{"file", e.file.filename().string()},
                         {"spec", e.spec},
                         {"origin", e.origin},
                         {"mode", e.mode}});
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
  }
  if (which == "verify") {
    Json arr = Json::array();
    bool ok = true;
    for (const auto& c : cache->verify_all()) {
      ok = ok && c.ok;
      arr.push_back(Json{{"file", c.file.filename().string()}, {"ok", c.ok}, {"message", c.message}});
    }
    out << arr.dump(2) << '\n';
    return ok ? kExitOk : kExitVerification;
  }
  out << Json{{"removed", cache->clear()}}.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Splitting of Aut(G) -> prod GL_{r_i}(F_p) for finite abelian p-groups"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SpecArgs spec_args;
  Common common;

  auto* classify_cmd = app.add_subcommand("classify", "decide splitting from the block criteria");
  add_spec_options(classify_cmd, spec_args);

  auto* section_cmd = app.add_subcommand("section", "build and verify a section certificate");
  std::string verify_mode;
  std::string out_file;
  add_spec_options(section_cmd, spec_args);
  add_common_options(section_cmd, common);
  section_cmd->add_option("--verify-mode", verify_mode, "full-table | generator-relations | sampled")
      ->check(CLI::IsMember({"full-table", "generator-relations", "sampled"}));
  section_cmd->add_option("--out", out_file, "write the certificate here");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force checks");
  oracle_cmd->require_subcommand(1);
  std::uint64_t samples = 10000;
  std::size_t block = 0;
  bool no_prepass = false;
  std::string oracle_which;
  for (const char* name : {"bijective-equiv", "delta-count", "obstruction", "complement-search"}) {
    auto* sub = oracle_cmd->add_subcommand(name);
    add_spec_options(sub, spec_args);
    add_common_options(sub, common);
    sub->callback([&oracle_which, name] { oracle_which = name; });
  }
  oracle_cmd->get_subcommand("bijective-equiv")->add_option("--samples", samples, "random endomorphisms");
  oracle_cmd->get_subcommand("obstruction")->add_option("--transvection-block", block, "block index of the transvection");
  oracle_cmd->get_subcommand("complement-search")
      ->add_flag("--no-prepass", no_prepass, "skip the order-p obstruction pre-pass");

  auto* batch_cmd = app.add_subcommand("batch", "classify one spec JSON per line");
  std::string input;
  std::string format = "json";
  bool with_oracle = false;
  bool keep_going = false;
  batch_cmd->add_option("input", input, "JSON-lines file, - for stdin")->required();
  batch_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  batch_cmd->add_flag("--with-oracle", with_oracle, "also run complement_lift_search");
  batch_cmd->add_flag("--continue", keep_going, "report malformed lines and keep going");
  add_common_options(batch_cmd, common);

  auto* cache_cmd = app.add_subcommand("cache", "manage the certificate cache");
  cache_cmd->require_subcommand(1);
  std::string cache_which;
  for (const char* name : {"list", "verify", "clear"}) {
    auto* sub = cache_cmd->add_subcommand(name);
    add_common_options(sub, common);
    sub->callback([&cache_which, name] { cache_which = name; });
  }

  std::vector<const char*> argv{"abelsplit"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (classify_cmd->parsed()) {
      const PGroupSpec spec = spec_args.resolve();
      Json j{{"spec", spec_to_json(spec)}};
      j.update(verdict_to_json(classify(spec)));
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (section_cmd->parsed()) {
      return run_section(spec_args.resolve(), common, verify_mode, out_file, out);
    }
    if (oracle_cmd->parsed()) {
      return run_oracle(oracle_which, spec_args.resolve(), common, samples, block, !no_prepass, out,
                        err);
    }
    if (batch_cmd->parsed()) {
      return run_batch(input, format, with_oracle, keep_going, common, out, err);
    }
    return run_cache(cache_which, common, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    out << error_json(e).dump(2) << '\n';
    return exit_code_for(e);
  }
}

}  // namespace abelsplit
