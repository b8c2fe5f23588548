// odang: knowledge-graph construction workbench for annotated abusive-language
// corpora. Subcommands: ingest, link, profile, query, export, stats.
//
// Exit codes: 0 success, 1 validation violations, 2 I/O or parse errors.
// All outputs are byte-deterministic given fixed inputs; machine-readable
// JSONL goes next to the human tables via --jsonl.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "odang/csv.hpp"
#include "odang/encode.hpp"
#include "odang/errors.hpp"
#include "odang/ingest.hpp"
#include "odang/lexprof.hpp"
#include "odang/linker.hpp"
#include "odang/linker_live.hpp"
#include "odang/model.hpp"
#include "odang/ntriples.hpp"
#include "odang/patterns.hpp"
#include "odang/store.hpp"
#include "odang/term.hpp"
#include "odang/vocab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kIoError = 2;

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw odang::Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw odang::Error("cannot write '" + path.string() + "'");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

void require_readable(const std::vector<fs::path>& paths) {
  for (const auto& p : paths) {
    if (!fs::exists(p)) {
      throw odang::Error("input path '" + p.string() + "' does not exist");
    }
  }
}

odang::TripleStore load_store(const fs::path& nt_path) {
  odang::TripleStore store;
  store.insert(odang::parse_ntriples(read_file(nt_path)));
  return store;
}

void write_jsonl(const fs::path& path, const std::vector<json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  write_file(path, out);
}

struct IngestOptions {
  std::string mapping, input, out, jsonl;
};

int cmd_ingest(const IngestOptions& opt) {
  require_readable({opt.mapping, opt.input});
  odang::MappingSpec spec = odang::parse_mapping(read_file(opt.mapping));
  odang::Table table = odang::parse_delimited(read_file(opt.input),
                                              odang::pick_delimiter(opt.input));
  odang::IngestResult result = odang::ingest_corpus(table, spec);

  odang::Encoder encoder;
  odang::TripleSet triples =
      odang::encode_corpus(encoder, result.messages, result.records);
  write_file(opt.out, odang::serialize_ntriples(triples));

  const auto& report = result.report;
  std::cerr << "rows read:        " << report.rows_read << "\n"
            << "messages emitted: " << report.messages_emitted << "\n"
            << "records emitted:  " << report.records_emitted << "\n"
            << "violations:       " << report.violations.size() << "\n";
  for (const auto& [row, reason] : report.violations) {
    std::cerr << "  row " << row << ": " << reason << "\n";
  }

  if (!opt.jsonl.empty()) {
    std::vector<json> records{
        {{"type", "summary"},
         {"rows_read", report.rows_read},
         {"messages_emitted", report.messages_emitted},
         {"records_emitted", report.records_emitted},
         {"violations", report.violations.size()}}};
    for (const auto& [row, reason] : report.violations) {
      records.push_back({{"type", "violation"}, {"row", row}, {"reason", reason}});
    }
    write_jsonl(opt.jsonl, records);
  }
  return report.violations.empty() ? kOk : kViolations;
}

struct LinkOptions {
  std::string store, fixtures, out, log, jsonl;
  double min_score = 0.0;
  std::size_t limit = 10;
  std::string mentions = "all";
  bool live = false;
  std::string profile_host = "api.twitter.com";
};

int cmd_link(const LinkOptions& opt) {
  require_readable({opt.store});
  odang::TripleStore store = load_store(opt.store);

  odang::LinkConfig config;
  config.min_score = opt.min_score;
  config.candidate_limit = opt.limit;
  config.mention_mode = opt.mentions == "leading" ? odang::MentionMode::Leading
                                                  : odang::MentionMode::All;

  odang::ExchangeLog log;
  odang::LinkResult result;
  if (opt.live) {
    const char* kg_key = std::getenv("ODANG_KG_API_KEY");
    const char* tw_token = std::getenv("ODANG_TWITTER_TOKEN");
    if (!kg_key || !tw_token) {
      throw odang::Error(
          "--live needs ODANG_KG_API_KEY and ODANG_TWITTER_TOKEN");
    }
    odang::LiveProfileClient profile(opt.profile_host, tw_token, &log);
    odang::LiveSearchClient search(kg_key, &log);
    odang::LiveFactsClient facts(&log);
    result = odang::link_corpus(store, {&profile, &search, &facts}, config,
                                &log);
  } else {
    if (opt.fixtures.empty()) {
      throw odang::Error("--fixtures is required unless --live is given");
    }
    require_readable({opt.fixtures});
    fs::path base = opt.fixtures;
    odang::FixtureProfileClient profile(base / "profile", &log);
    odang::FixtureSearchClient search(base / "search", &log);
    odang::FixtureFactsClient facts(base / "facts", &log);
    result = odang::link_corpus(store, {&profile, &search, &facts}, config,
                                &log);
  }

  write_file(opt.out, odang::serialize_ntriples(result.triples));
  if (!opt.log.empty()) write_file(opt.log, log.to_jsonl());

  const auto& report = result.report;
  std::cerr << "mentions seen:      " << report.mentions_seen << "\n"
            << "candidates fetched: " << report.candidates_fetched << "\n"
            << "linked:             " << report.linked << "\n"
            << "no exact match:     " << report.rejected_no_exact_match << "\n"
            << "low score:          " << report.rejected_low_score << "\n"
            << "client errors:      " << report.errors.size() << "\n";
  for (const auto& e : report.errors) std::cerr << "  " << e << "\n";

  if (!opt.jsonl.empty()) {
    std::vector<json> records{
        {{"type", "summary"},
         {"mentions_seen", report.mentions_seen},
         {"candidates_fetched", report.candidates_fetched},
         {"linked", report.linked},
         {"rejected_no_exact_match", report.rejected_no_exact_match},
         {"rejected_low_score", report.rejected_low_score},
         {"errors", report.errors.size()}}};
    for (const auto& l : report.links) {
      records.push_back({{"type", "link"},
                         {"message", l.message_ref},
                         {"surface", l.surface},
                         {"display_name", l.display_name},
                         {"external_id", l.external_id},
                         {"tied", l.tied}});
    }
    for (const auto& e : report.errors) {
      records.push_back({{"type", "error"}, {"message", e}});
    }
    write_jsonl(opt.jsonl, records);
  }
  return report.errors.empty() ? kOk : kViolations;
}

struct ProfileOptions {
  std::string lexicon, input, mapping, jsonl;
  std::string level = "conservative";
  std::string count = "occurrences";
  std::string by_scheme;
  std::string annotator = "gold_standard";
};

std::string value_to_string(const odang::AnnotationValue& v) {
  if (const auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
  return std::get<std::string>(v);
}

int cmd_profile(const ProfileOptions& opt) {
  require_readable({opt.lexicon, opt.input, opt.mapping});
  odang::MappingSpec spec = odang::parse_mapping(read_file(opt.mapping));
  odang::Table corpus = odang::parse_delimited(
      read_file(opt.input), odang::pick_delimiter(opt.input));
  odang::IngestResult ingested = odang::ingest_corpus(corpus, spec);

  odang::Table lexicon_table = odang::parse_delimited(
      read_file(opt.lexicon), odang::pick_delimiter(opt.lexicon));
  auto entries = odang::load_lexicon(
      lexicon_table, opt.level == "all" ? odang::LevelFilter::All
                                        : odang::LevelFilter::ConservativeOnly);
  odang::LexiconIndex index(std::move(entries));
  odang::CountMode mode = opt.count == "presence"
                              ? odang::CountMode::Presence
                              : odang::CountMode::Occurrences;

  std::vector<odang::ProfiledDoc> docs;
  for (const auto& m : ingested.messages) {
    docs.push_back({m.id, odang::tokenize(m.text)});
  }

  for (const auto& [row, reason] : ingested.report.violations) {
    std::cerr << "row " << row << ": " << reason << "\n";
  }

  struct Row {
    std::string cls;  // empty for the whole-dataset row
    odang::CategoryProfile profile;
  };
  std::vector<Row> rows;

  if (opt.by_scheme.empty()) {
    std::vector<odang::TokenizedDoc> plain;
    for (auto& d : docs) plain.push_back(d.tokens);
    rows.push_back({"", odang::dataset_profile(plain, index, mode)});
  } else {
    const odang::SchemeBinding* binding = nullptr;
    for (const auto& b : spec.bindings) {
      if (b.scheme.name == opt.by_scheme) binding = &b;
    }
    if (!binding) {
      throw odang::Error("mapping binds no scheme named '" + opt.by_scheme +
                         "'");
    }
    odang::AnnotatorId annotator =
        opt.annotator == "gold_standard"
            ? odang::AnnotatorId::gold_standard()
            : odang::AnnotatorId::individual(opt.annotator);
    std::set<odang::AnnotationValue> values;
    for (const auto& r : ingested.records) {
      if (r.scheme.name == opt.by_scheme && r.annotator == annotator) {
        values.insert(r.value);
      }
    }
    if (values.empty()) {
      throw odang::EmptyClassError("no '" + opt.by_scheme + "' records by " +
                                   annotator.node_local());
    }
    for (const auto& v : values) {
      rows.push_back({value_to_string(v),
                      odang::class_conditional_profile(
                          docs, ingested.records, binding->scheme, v, index,
                          annotator, mode)});
    }
  }

  // text table
  std::cout << "dataset";
  if (!opt.by_scheme.empty()) std::cout << "\tclass";
  std::cout << "\tdocs";
  for (odang::Category c : odang::all_categories()) {
    std::cout << '\t' << odang::category_code(c);
  }
  std::cout << '\n';
  for (const auto& row : rows) {
    std::cout << spec.corpus_id;
    if (!opt.by_scheme.empty()) std::cout << '\t' << row.cls;
    std::cout << '\t' << row.profile.documents;
    for (odang::Category c : odang::all_categories()) {
      std::cout << '\t' << row.profile.mean(c).to_decimal4();
    }
    std::cout << '\n';
  }

  if (!opt.jsonl.empty()) {
    std::vector<json> records;
    for (const auto& row : rows) {
      json means = json::object();
      for (odang::Category c : odang::all_categories()) {
        means[std::string(odang::category_code(c))] =
            row.profile.mean(c).to_decimal4();
      }
      json rec{{"type", "profile"},
               {"dataset", spec.corpus_id},
               {"documents", row.profile.documents},
               {"means", means}};
      if (!opt.by_scheme.empty()) {
        rec["scheme"] = opt.by_scheme;
        rec["class"] = row.cls;
      }
      records.push_back(std::move(rec));
    }
    write_jsonl(opt.jsonl, records);
  }
  return ingested.report.violations.empty() ? kOk : kViolations;
}

struct QueryOptions {
  std::string store, pattern, jsonl;
};

int cmd_query(const QueryOptions& opt) {
  require_readable({opt.store, opt.pattern});
  odang::TripleStore store = load_store(opt.store);
  odang::Pattern pattern = odang::parse_pattern(
      read_file(opt.pattern), odang::PrefixMap::with_defaults());
  odang::QueryResult result = store.query(pattern);

  for (std::size_t i = 0; i < result.vars.size(); ++i) {
    std::cout << (i ? "\t" : "") << '?' << result.vars[i];
  }
  std::cout << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::cout << (i ? "\t" : "") << odang::render_term(row[i]);
    }
    std::cout << '\n';
  }
  std::cerr << result.rows.size() << " binding(s)\n";

  if (!opt.jsonl.empty()) {
    std::vector<json> records;
    for (const auto& row : result.rows) {
      json rec = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        rec["?" + result.vars[i]] = odang::render_term(row[i]);
      }
      records.push_back(std::move(rec));
    }
    write_jsonl(opt.jsonl, records);
  }
  return kOk;
}

struct ExportOptions {
  std::string store, pattern, project, out;
};

int cmd_export(const ExportOptions& opt) {
  require_readable({opt.store, opt.pattern});
  odang::TripleStore store = load_store(opt.store);
  odang::Pattern pattern = odang::parse_pattern(
      read_file(opt.pattern), odang::PrefixMap::with_defaults());

  std::vector<std::string> projection;
  std::string token;
  for (char c : opt.project + " ") {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!token.empty()) {
        if (token[0] == '?') token.erase(0, 1);
        projection.push_back(token);
        token.clear();
      }
    } else {
      token += c;
    }
  }
  if (projection.empty()) throw odang::Error("--project names no variables");

  odang::TripleSet sub = store.export_subgraph(pattern, projection);
  write_file(opt.out, odang::serialize_ntriples(sub));
  std::cerr << sub.size() << " triple(s) exported\n";
  return kOk;
}

struct StatsOptions {
  std::string store, jsonl;
};

int cmd_stats(const StatsOptions& opt) {
  require_readable({opt.store});
  odang::TripleStore store = load_store(opt.store);
  odang::KgStats stats = odang::kg_stats(store, odang::OdangVocab());
  std::cout << stats.triples << ' ' << stats.messages << ' ' << stats.users
            << ' ' << stats.records << '\n';
  if (!opt.jsonl.empty()) {
    write_jsonl(opt.jsonl, {{{"triples", stats.triples},
                             {"messages", stats.messages},
                             {"users", stats.users},
                             {"records", stats.records}}});
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odang: linked-data workbench for annotated corpora"};
  app.require_subcommand(1);
  app.set_config("--config");

  IngestOptions ingest_opt;
  auto* ingest = app.add_subcommand(
      "ingest", "encode a tabular corpus into canonical N-Triples");
  ingest->add_option("--mapping", ingest_opt.mapping, "mapping JSON document")
      ->required();
  ingest->add_option("--input", ingest_opt.input, "corpus CSV/TSV")->required();
  ingest->add_option("--out", ingest_opt.out, "output .nt path")->required();
  ingest->add_option("--jsonl", ingest_opt.jsonl, "machine-readable report");

  LinkOptions link_opt;
  auto* link = app.add_subcommand(
      "link", "run the entity-linking pipeline over a store");
  link->add_option("--store", link_opt.store, "input .nt store")->required();
  link->add_option("--fixtures", link_opt.fixtures,
                   "recorded-fixture directory (profile/ search/ facts/)");
  link->add_option("--out", link_opt.out, "delta .nt path")->required();
  link->add_option("--min-score", link_opt.min_score,
                   "disambiguation score threshold");
  link->add_option("--limit", link_opt.limit, "candidate limit per mention");
  link->add_option("--mentions", link_opt.mentions, "leading|all")
      ->check(CLI::IsMember({"leading", "all"}));
  link->add_option("--log", link_opt.log, "exchange log JSONL path");
  link->add_option("--jsonl", link_opt.jsonl, "machine-readable report");
  link->add_flag("--live", link_opt.live,
                 "use live HTTP clients (requires credentials in env)");
  link->add_option("--profile-host", link_opt.profile_host,
                   "profile lookup host for --live");

  ProfileOptions profile_opt;
  auto* profile = app.add_subcommand(
      "profile", "lexicon-based offensive-language profile of a corpus");
  profile->add_option("--lexicon", profile_opt.lexicon, "lexicon CSV/TSV")
      ->required();
  profile->add_option("--input", profile_opt.input, "corpus CSV/TSV")
      ->required();
  profile->add_option("--mapping", profile_opt.mapping, "mapping JSON document")
      ->required();
  profile->add_option("--level", profile_opt.level, "conservative|all")
      ->check(CLI::IsMember({"conservative", "all"}));
  profile->add_option("--count", profile_opt.count, "occurrences|presence")
      ->check(CLI::IsMember({"occurrences", "presence"}));
  profile->add_option("--by-scheme", profile_opt.by_scheme,
                      "class-conditional profile per value of this scheme");
  profile->add_option("--annotator", profile_opt.annotator,
                      "class-assigning annotator (default gold_standard)");
  profile->add_option("--jsonl", profile_opt.jsonl, "machine-readable table");

  QueryOptions query_opt;
  auto* query = app.add_subcommand("query", "run a graph pattern query");
  query->add_option("--store", query_opt.store, "input .nt store")->required();
  query->add_option("--pattern", query_opt.pattern, "pattern file")->required();
  query->add_option("--jsonl", query_opt.jsonl, "machine-readable bindings");

  ExportOptions export_opt;
  auto* exp = app.add_subcommand("export", "export a subgraph by pattern");
  exp->add_option("--store", export_opt.store, "input .nt store")->required();
  exp->add_option("--pattern", export_opt.pattern, "pattern file")->required();
  exp->add_option("--project", export_opt.project,
                  "projected variables, e.g. \"?m ?x\"")
      ->required();
  exp->add_option("--out", export_opt.out, "output .nt path")->required();

  StatsOptions stats_opt;
  auto* stats = app.add_subcommand("stats", "store statistics");
  stats->add_option("--store", stats_opt.store, "input .nt store")->required();
  stats->add_option("--jsonl", stats_opt.jsonl, "machine-readable stats");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(ingest_opt);
    if (*link) return cmd_link(link_opt);
    if (*profile) return cmd_profile(profile_opt);
    if (*query) return cmd_query(query_opt);
    if (*exp) return cmd_export(export_opt);
    if (*stats) return cmd_stats(stats_opt);
  } catch (const odang::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}
