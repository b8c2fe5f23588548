#pragma once
// Entity-linking pipeline: mention extraction -> handle resolution ->
// candidate search -> exact-match disambiguation -> fact fetch ->
// encode_person.
//
// Clients are pluggable. The recorded-fixture implementations (one directory
// per client, one JSON document per request key) back every test; live HTTP
// clients live in linker_live.hpp and are never exercised in CI. Every
// client exchange is appended to an exchange log, which is what the
// no-fabrication audit replays.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "odang/encode.hpp"
#include "odang/errors.hpp"
#include "odang/model.hpp"
#include "odang/store.hpp"
#include "odang/unicode.hpp"

namespace odang {

enum class MentionPosition { LeadingHandle, Other };

struct Mention {
  std::string surface;  // includes the '@'
  std::string message_ref;
  MentionPosition position = MentionPosition::Other;

  auto operator<=>(const Mention&) const = default;
};

struct Candidate {
  std::string name;
  std::string external_id;
  double score = 0.0;

  auto operator<=>(const Candidate&) const = default;
};

struct LinkedMention {
  std::string message_ref;
  std::string surface;
  std::string display_name;
  std::string external_id;
  bool tied = false;
};

struct LinkReport {
  std::size_t mentions_seen = 0;
  std::size_t candidates_fetched = 0;
  std::size_t linked = 0;
  std::size_t rejected_no_exact_match = 0;
  std::size_t rejected_low_score = 0;
  std::vector<LinkedMention> links;
  std::vector<std::string> errors;  // per-mention client failures
};

// All '@'-prefixed tokens in order; the leading run is flagged.
inline std::vector<Mention> extract_mentions(std::string_view text,
                                             std::string_view message_ref) {
  std::vector<Mention> mentions;
  bool leading = true;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i == start) break;
    std::string_view token = text.substr(start, i - start);
    // trailing sentence punctuation is not part of the handle
    while (!token.empty()) {
      char c = token.back();
      if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
          c == '?' || c == ')' || c == ']' || c == '"' || c == '\'') {
        token.remove_suffix(1);
      } else {
        break;
      }
    }
    if (token.size() > 1 && token[0] == '@') {
      mentions.push_back({std::string(token), std::string(message_ref),
                          leading ? MentionPosition::LeadingHandle
                                  : MentionPosition::Other});
    } else {
      leading = false;
    }
  }
  return mentions;
}

// --- client interfaces -------------------------------------------------

class ProfileClient {
 public:
  virtual ~ProfileClient() = default;
  // Display name for a bare handle (no '@'); nullopt when unknown.
  virtual std::optional<std::string> display_name(const std::string& handle) = 0;
};

class SearchClient {
 public:
  virtual ~SearchClient() = default;
  virtual std::vector<Candidate> search(const std::string& name) = 0;
};

struct FetchedFacts {
  PersonFacts facts;
  std::vector<std::string> truncated_fields;  // multi-valued sources cut to 1
};

class FactsClient {
 public:
  virtual ~FactsClient() = default;
  virtual FetchedFacts facts(const std::string& external_id) = 0;
};

struct LinkClients {
  ProfileClient* profile = nullptr;
  SearchClient* search = nullptr;
  FactsClient* facts = nullptr;
};

// --- exchange log -------------------------------------------------------

class ExchangeLog {
 public:
  void record(std::string_view client, std::string_view key,
              std::string_view outcome, nlohmann::json response = {}) {
    nlohmann::json entry{{"client", std::string(client)},
                         {"key", std::string(key)},
                         {"outcome", std::string(outcome)}};
    if (!response.is_null()) entry["response"] = std::move(response);
    entries_.push_back(std::move(entry));
  }

  const std::vector<nlohmann::json>& entries() const { return entries_; }

  std::string to_jsonl() const {
    std::string out;
    for (const auto& e : entries_) {
      out += e.dump();
      out += '\n';
    }
    return out;
  }

  void append_to(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::app | std::ios::binary);
    f << to_jsonl();
  }

 private:
  std::vector<nlohmann::json> entries_;
};

// --- recorded-fixture clients -------------------------------------------

// Filenames encode the request key: [A-Za-z0-9._-] kept, everything else
// (including '/', '@', spaces, non-ASCII bytes) becomes %XX.
inline std::string fixture_key_encode(std::string_view key) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : key) {
    bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (keep) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

namespace detail {

inline std::optional<nlohmann::json> read_fixture(
    const std::filesystem::path& dir, std::string_view key,
    std::string_view client_name) {
  if (!std::filesystem::is_directory(dir)) {
    throw ClientUnavailableError("fixture directory '" + dir.string() +
                                 "' for " + std::string(client_name) +
                                 " client does not exist");
  }
  auto path = dir / (fixture_key_encode(key) + ".json");
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ClientUnavailableError("fixture '" + path.string() +
                                 "' is not valid JSON: " + e.what());
  }
}

}  // namespace detail

class FixtureProfileClient : public ProfileClient {
 public:
  FixtureProfileClient(std::filesystem::path dir, ExchangeLog* log = nullptr)
      : dir_(std::move(dir)), log_(log) {}

  std::optional<std::string> display_name(const std::string& handle) override {
    auto doc = detail::read_fixture(dir_, handle, "profile");
    if (!doc) {
      if (log_) log_->record("profile", handle, "miss");
      return std::nullopt;
    }
    auto name = doc->value("display_name", std::string());
    if (log_) log_->record("profile", handle, "hit", *doc);
    if (name.empty()) return std::nullopt;
    return name;
  }

 private:
  std::filesystem::path dir_;
  ExchangeLog* log_;
};

class FixtureSearchClient : public SearchClient {
 public:
  FixtureSearchClient(std::filesystem::path dir, ExchangeLog* log = nullptr)
      : dir_(std::move(dir)), log_(log) {}

  std::vector<Candidate> search(const std::string& name) override {
    auto doc = detail::read_fixture(dir_, name, "search");
    if (!doc) {
      if (log_) log_->record("search", name, "miss");
      return {};
    }
    std::vector<Candidate> out;
    for (const auto& jc : doc->value("candidates", nlohmann::json::array())) {
      out.push_back({jc.at("name").get<std::string>(),
                     jc.at("id").get<std::string>(),
                     jc.at("score").get<double>()});
    }
    if (log_) log_->record("search", name, "hit", *doc);
    return out;
  }

 private:
  std::filesystem::path dir_;
  ExchangeLog* log_;
};

class FixtureFactsClient : public FactsClient {
 public:
  explicit FixtureFactsClient(std::filesystem::path dir,
                              ExchangeLog* log = nullptr,
                              OdangVocab vocab = OdangVocab())
      : dir_(std::move(dir)), log_(log), vocab_(std::move(vocab)) {}

  FetchedFacts facts(const std::string& external_id) override {
    auto doc = detail::read_fixture(dir_, external_id, "facts");
    if (!doc) {
      if (log_) log_->record("facts", external_id, "miss");
      throw UnknownEntityError(external_id);
    }
    FetchedFacts out;
    auto first_of = [&](const char* field) -> std::optional<nlohmann::json> {
      if (!doc->contains(field)) return std::nullopt;
      const auto& v = doc->at(field);
      if (v.is_array()) {
        if (v.empty()) return std::nullopt;
        if (v.size() > 1) out.truncated_fields.push_back(field);
        return v[0];
      }
      return v;
    };
    if (auto v = first_of("gender")) out.facts.gender = v->get<std::string>();
    if (auto v = first_of("birth_year")) {
      out.facts.birth_year = v->get<std::int64_t>();
    }
    if (auto v = first_of("country_of_citizenship")) {
      out.facts.country_of_citizenship = vocab_.minted(v->get<std::string>());
    }
    if (auto v = first_of("place_of_birth")) {
      out.facts.place_of_birth = vocab_.minted(v->get<std::string>());
    }
    if (auto v = first_of("occupation")) {
      out.facts.occupation = vocab_.minted(v->get<std::string>());
    }
    if (auto v = first_of("political_party")) {
      out.facts.political_party = vocab_.minted(v->get<std::string>());
    }
    if (log_) log_->record("facts", external_id, "hit", *doc);
    return out;
  }

 private:
  std::filesystem::path dir_;
  ExchangeLog* log_;
  OdangVocab vocab_;
};

// --- pipeline stages ------------------------------------------------------

// Candidates sorted by descending score (stable, so source order breaks
// ties), truncated to the configured limit.
inline std::vector<Candidate> search_candidates(const std::string& name,
                                                SearchClient& client,
                                                std::size_t limit = 10) {
  std::vector<Candidate> out = client.search(name);
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.score > b.score;
                   });
  if (out.size() > limit) out.resize(limit);
  return out;
}

struct Disambiguation {
  enum class Outcome { Linked, NoExactMatch, LowScore };

  std::optional<std::string> external_id;
  Outcome outcome = Outcome::NoExactMatch;
  bool tied = false;  // several candidates matched name and top score
};

// Exact string matching after NFC normalization, case-sensitive; among exact
// matches the highest score wins, first in source order on ties.
inline Disambiguation disambiguate(const std::string& name,
                                   const std::vector<Candidate>& candidates,
                                   double min_score = 0.0) {
  Disambiguation d;
  std::string query = uni::nfc(name);
  const Candidate* best = nullptr;
  bool any_exact = false;
  std::size_t ties = 0;
  for (const auto& c : candidates) {
    if (uni::nfc(c.name) != query) continue;
    any_exact = true;
    if (c.score < min_score) continue;
    if (!best || c.score > best->score) {
      best = &c;
      ties = 1;
    } else if (c.score == best->score) {
      ++ties;
    }
  }
  if (best) {
    d.external_id = best->external_id;
    d.outcome = Disambiguation::Outcome::Linked;
    d.tied = ties > 1;
  } else {
    d.outcome = any_exact ? Disambiguation::Outcome::LowScore
                          : Disambiguation::Outcome::NoExactMatch;
  }
  return d;
}

inline PersonFacts fetch_person_facts(const std::string& external_id,
                                      FactsClient& client,
                                      ExchangeLog* log = nullptr) {
  if (external_id.empty()) throw UnknownEntityError("(empty id)");
  FetchedFacts fetched = client.facts(external_id);
  if (log) {
    for (const auto& field : fetched.truncated_fields) {
      log->record("facts", external_id, "truncated:" + field);
    }
  }
  return fetched.facts;
}

enum class MentionMode { Leading, All };

struct LinkConfig {
  double min_score = 0.0;
  std::size_t candidate_limit = 10;
  MentionMode mention_mode = MentionMode::All;
};

struct LinkResult {
  TripleSet triples;
  LinkReport report;
};

// Runs the whole pipeline over every message text in the store. Deterministic
// given fixed fixtures: messages arrive in store order (sorted ids), mentions
// in text order, and the output is a set.
inline LinkResult link_corpus(const TripleStore& store,
                              const LinkClients& clients,
                              const LinkConfig& config = {},
                              ExchangeLog* log = nullptr,
                              const Encoder& encoder = Encoder()) {
  LinkResult result;

  Pattern texts;
  texts.conjuncts.push_back(
      {Pattern::Slot::variable("m"),
       Pattern::Slot::term(Term(encoder.vocab().has_text())),
       Pattern::Slot::variable("t")});
  QueryResult rows = store.query(texts);
  int m_col = rows.vars[0] == "m" ? 0 : 1;
  int t_col = 1 - m_col;

  for (const auto& row : rows.rows) {
    const auto* m_iri = std::get_if<Iri>(&row[m_col]);
    const auto* text = std::get_if<Literal>(&row[t_col]);
    if (!m_iri || !text) continue;

    for (const Mention& mention :
         extract_mentions(text->lexical, m_iri->value)) {
      if (config.mention_mode == MentionMode::Leading &&
          mention.position != MentionPosition::LeadingHandle) {
        continue;
      }
      ++result.report.mentions_seen;
      try {
        std::string handle = mention.surface.substr(1);
        auto name = clients.profile->display_name(handle);
        if (!name) continue;  // unresolvable handle: neither linked nor rejected

        auto candidates =
            search_candidates(*name, *clients.search, config.candidate_limit);
        result.report.candidates_fetched += candidates.size();

        Disambiguation d = disambiguate(*name, candidates, config.min_score);
        switch (d.outcome) {
          case Disambiguation::Outcome::NoExactMatch:
            ++result.report.rejected_no_exact_match;
            continue;
          case Disambiguation::Outcome::LowScore:
            ++result.report.rejected_low_score;
            continue;
          case Disambiguation::Outcome::Linked:
            break;
        }

        PersonFacts facts =
            fetch_person_facts(*d.external_id, *clients.facts, log);
        Person person;
        person.id = mention.surface;
        person.handle = mention.surface;
        person.facts = facts;
        merge_into(result.triples, encoder.encode_person(person));
        ++result.report.linked;
        result.report.links.push_back({mention.message_ref, mention.surface,
                                       *name, *d.external_id, d.tied});
      } catch (const Error& e) {
        result.report.errors.push_back(mention.surface + ": " + e.what());
      }
    }
  }
  return result;
}

}  // namespace odang
