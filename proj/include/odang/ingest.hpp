#pragma once
// Tabular corpus ingestion driven by a declarative mapping document.
//
// Mapping documents are JSON (schema in docs/formats.md). Rows with
// violations are skipped whole and reported -- a row never emits a message
// without its records or vice versa. Missing cells are missing judgments,
// not errors (Table-1 style partial annotation layers).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "odang/csv.hpp"
#include "odang/encode.hpp"
#include "odang/errors.hpp"
#include "odang/model.hpp"
#include "odang/store.hpp"

namespace odang {

struct SchemeBinding {
  enum class Mode { Aggregated, PerAnnotator };

  struct Column {
    std::string column;
    AnnotatorId annotator;
  };

  AnnotationScheme scheme;
  Mode mode = Mode::Aggregated;
  std::vector<Column> columns;
};

struct MappingSpec {
  std::string corpus_id;
  Genre genre = Genre::Tweet;
  std::string id_column;
  std::string text_column;
  bool unannotated = false;
  std::vector<SchemeBinding> bindings;

  std::vector<std::string> bound_columns() const {
    std::vector<std::string> cols{id_column, text_column};
    for (const auto& b : bindings) {
      for (const auto& c : b.columns) cols.push_back(c.column);
    }
    return cols;
  }
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t messages_emitted = 0;
  std::size_t records_emitted = 0;
  std::vector<std::pair<std::size_t, std::string>> violations;  // (row, reason)
};

struct IngestResult {
  std::vector<Message> messages;
  std::vector<AnnotationRecord> records;
  IngestReport report;
};

namespace detail {

inline ValueDomain parse_domain(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j == "binary") return ValueDomain::binary();
    throw UnknownValueDomainError("unknown value domain '" +
                                  j.get<std::string>() + "'");
  }
  if (j.is_object()) {
    if (j.contains("categorical")) {
      auto labels = j.at("categorical").get<std::vector<std::string>>();
      return ValueDomain::categorical(std::move(labels));
    }
    if (j.contains("scale")) {
      const auto& s = j.at("scale");
      return ValueDomain::integer_scale(s.at("min").get<std::int64_t>(),
                                        s.at("max").get<std::int64_t>());
    }
  }
  throw UnknownValueDomainError("unrecognized value domain: " + j.dump());
}

}  // namespace detail

inline MappingSpec parse_mapping(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw MappingSyntaxError(e.byte, e.what());
  }

  MappingSpec spec;
  try {
    spec.corpus_id = j.at("corpus").get<std::string>();
    auto genre = genre_from_name(j.at("genre").get<std::string>());
    if (!genre) {
      throw MappingSyntaxError(0, "unknown genre '" +
                                      j.at("genre").get<std::string>() + "'");
    }
    spec.genre = *genre;
    spec.id_column = j.at("id_column").get<std::string>();
    spec.text_column = j.at("text_column").get<std::string>();
    spec.unannotated = j.value("unannotated", false);

    for (const auto& js : j.value("schemes", nlohmann::json::array())) {
      SchemeBinding b;
      b.scheme.name = js.at("name").get<std::string>();
      b.scheme.domain = detail::parse_domain(js.at("domain"));
      if (auto report = validate(b.scheme); !report.empty()) {
        throw MappingSyntaxError(0, "scheme '" + b.scheme.name +
                                        "': " + report.front().rule);
      }
      if (js.contains("column")) {
        b.mode = SchemeBinding::Mode::Aggregated;
        b.columns.push_back(
            {js.at("column").get<std::string>(), AnnotatorId::gold_standard()});
      } else if (js.contains("columns")) {
        b.mode = SchemeBinding::Mode::PerAnnotator;
        for (const auto& jc : js.at("columns")) {
          AnnotatorId annotator =
              AnnotatorId::individual(jc.at("annotator").get<std::string>());
          if (auto report = validate(annotator); !report.empty()) {
            throw MappingSyntaxError(0, "annotator '" + annotator.id +
                                            "': " + report.front().rule);
          }
          b.columns.push_back({jc.at("column").get<std::string>(), annotator});
        }
      } else {
        throw MappingSyntaxError(
            0, "scheme '" + b.scheme.name + "' needs 'column' or 'columns'");
      }
      spec.bindings.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw MappingSyntaxError(0, e.what());
  }

  if (spec.bindings.empty() && !spec.unannotated) {
    throw MappingSyntaxError(
        0, "mapping binds no schemes and is not marked unannotated");
  }

  std::set<std::string> seen;
  for (const auto& col : spec.bound_columns()) {
    if (!seen.insert(col).second) throw DuplicateColumnError(col);
  }
  return spec;
}

namespace detail {

inline std::optional<AnnotationValue> parse_cell_value(
    const std::string& cell, const ValueDomain& domain, std::string& error) {
  switch (domain.kind) {
    case ValueDomain::Kind::Binary:
      if (cell == "0") return AnnotationValue(std::int64_t{0});
      if (cell == "1") return AnnotationValue(std::int64_t{1});
      error = "binary value must be 0 or 1, got '" + cell + "'";
      return std::nullopt;
    case ValueDomain::Kind::IntegerScale: {
      if (!lexical_is_integer(cell)) {
        error = "scale value must be an integer, got '" + cell + "'";
        return std::nullopt;
      }
      std::int64_t v = 0;
      try {
        v = std::stoll(cell);
      } catch (const std::exception&) {
        error = "integer value '" + cell + "' out of range";
        return std::nullopt;
      }
      if (v < domain.min || v > domain.max) {
        error = "value " + cell + " outside scale [" +
                std::to_string(domain.min) + ", " + std::to_string(domain.max) +
                "]";
        return std::nullopt;
      }
      return AnnotationValue(v);
    }
    case ValueDomain::Kind::Categorical:
      for (const auto& label : domain.labels) {
        if (cell == label) return AnnotationValue(cell);
      }
      error = "label '" + cell + "' not in the categorical domain";
      return std::nullopt;
  }
  error = "unreachable";
  return std::nullopt;
}

}  // namespace detail

inline IngestResult ingest_corpus(const Table& table, const MappingSpec& spec) {
  // resolve all columns up front; a missing one aborts before any emission
  std::map<std::string, int> col;
  for (const auto& name : spec.bound_columns()) {
    int idx = table.column(name);
    if (idx < 0) throw ColumnMissingError(name);
    col[name] = idx;
  }

  IngestResult result;
  std::set<std::string> seen_ids;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::size_t row_no = r + 1;  // 1-based data record number
    ++result.report.rows_read;

    std::vector<std::string> reasons;
    if (row.size() != table.header.size()) {
      reasons.push_back("row has " + std::to_string(row.size()) +
                        " fields, header has " +
                        std::to_string(table.header.size()));
    }

    std::string id, text;
    std::vector<AnnotationRecord> row_records;
    if (reasons.empty()) {
      id = row[col[spec.id_column]];
      text = row[col[spec.text_column]];
      if (id.empty()) reasons.push_back("empty id");
      if (text.empty()) reasons.push_back("empty text");
      if (!id.empty() && !seen_ids.insert(id).second) {
        reasons.push_back("duplicate id '" + id + "'");
      }

      for (const auto& binding : spec.bindings) {
        for (const auto& bound : binding.columns) {
          const std::string& cell = row[col[bound.column]];
          if (cell.empty()) continue;  // missing judgment, not an error
          std::string error;
          auto value =
              detail::parse_cell_value(cell, binding.scheme.domain, error);
          if (!value) {
            reasons.push_back("column '" + bound.column + "': " + error);
            continue;
          }
          row_records.push_back(
              {id, binding.scheme, std::move(*value), bound.annotator});
        }
      }
    }

    if (!reasons.empty()) {
      for (auto& reason : reasons) {
        result.report.violations.emplace_back(row_no, std::move(reason));
      }
      continue;  // whole row skipped, never partially emitted
    }

    result.messages.push_back(
        Message{id, text, spec.genre, {spec.corpus_id}});
    for (auto& rec : row_records) result.records.push_back(std::move(rec));
    ++result.report.messages_emitted;
    result.report.records_emitted += row_records.size();
  }
  return result;
}

// One minimal Situation per message so its text reaches the graph
// (:hasText); the linker extracts mentions from there.
inline Situation situation_for(const Message& m) {
  Situation s;
  s.id = "situation_" + m.id;
  s.participants.push_back(
      {m, RoleKind::HateSpeechMessage, std::nullopt});
  return s;
}

// Full corpus encoding: message triples, per-record description nodes, and
// the per-message situations.
inline TripleSet encode_corpus(const Encoder& enc,
                               const std::vector<Message>& messages,
                               const std::vector<AnnotationRecord>& records,
                               bool with_situations = true) {
  std::map<std::string, std::vector<AnnotationRecord>> by_message;
  std::set<std::string> ids;
  for (const auto& m : messages) ids.insert(m.id);
  for (const auto& r : records) {
    if (!ids.count(r.message_ref)) {
      throw DanglingRecordError("record references unknown message '" +
                                r.message_ref + "'");
    }
    by_message[r.message_ref].push_back(r);
  }
  TripleSet out;
  for (const auto& m : messages) {
    auto it = by_message.find(m.id);
    static const std::vector<AnnotationRecord> kNone;
    const auto& recs = it == by_message.end() ? kNone : it->second;
    merge_into(out, enc.encode_message(m, recs));
    if (with_situations) {
      merge_into(out, enc.encode_situation(situation_for(m)));
    }
  }
  return out;
}

struct KgStats {
  std::size_t triples = 0;
  std::size_t messages = 0;
  std::size_t users = 0;
  std::size_t records = 0;

  bool operator==(const KgStats&) const = default;
};

// Counts are computed by pattern queries over typing triples, not by
// ingestion-side counters.
inline KgStats kg_stats(const TripleStore& store, const OdangVocab& vocab) {
  KgStats stats;
  stats.triples = store.size();

  auto count_typed = [&store](const Iri& cls) {
    Pattern p;
    p.conjuncts.push_back({Pattern::Slot::variable("x"),
                           Pattern::Slot::term(Term(vocab::rdf_type())),
                           Pattern::Slot::term(Term(cls))});
    return store.query(p).rows.size();
  };
  stats.messages = count_typed(vocab::frbr_Expression());
  stats.users = count_typed(vocab.person_class());

  Pattern p;
  p.conjuncts.push_back({Pattern::Slot::variable("m"),
                         Pattern::Slot::term(Term(vocab::dul_isDescribedBy())),
                         Pattern::Slot::variable("d")});
  auto result = store.query(p);
  std::set<Term> descriptions;
  int d_col = result.vars[0] == "d" ? 0 : 1;
  for (const auto& row : result.rows) descriptions.insert(row[d_col]);
  stats.records = descriptions.size();
  return stats;
}

}  // namespace odang
