#pragma once
// OntoLex-Lemon stereotype encoding: chunk (lexical entry) -> minimum phrase
// (lexical sense) -> concept cluster (lexical concept with target group),
// plus clustering-round validation and annotator demographics.
//
// Entry and sense nodes are skolem IRIs derived from content, so encoding is
// deterministic; concept labels are slugified into ster: local names
// ("sono pericolosi" -> ster:SonoPericolosi).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "odang/csv.hpp"
#include "odang/errors.hpp"
#include "odang/model.hpp"
#include "odang/term.hpp"
#include "odang/unicode.hpp"
#include "odang/vocab.hpp"

namespace odang {

struct Chunk {
  std::string text;          // substring of the message at [start, end)
  std::string message_ref;
  std::size_t span_start = 0;  // Unicode scalar offsets, not bytes
  std::size_t span_end = 0;
  AnnotatorId annotator;

  auto operator<=>(const Chunk&) const = default;
};

struct MinimumPhrase {
  std::string frame;  // S-V-O or S-NP form
  std::string chunk_ref;
  AnnotatorId annotator;

  auto operator<=>(const MinimumPhrase&) const = default;
};

enum class ClusterRound { Ten, Five };

inline std::size_t cluster_cap(ClusterRound r) {
  return r == ClusterRound::Ten ? 10 : 5;
}

struct StereotypeConcept {
  std::string label;
  ClusterRound round = ClusterRound::Five;
  AnnotatorId annotator;
  std::set<std::string> members;  // MinimumPhrase frames
  Iri target;                     // group IRI, e.g. ster:minorities

  auto operator<=>(const StereotypeConcept&) const = default;
};

struct StereotypeAnnotatorProfile {
  AnnotatorId id;
  std::optional<std::string> gender;
  std::optional<std::int64_t> age;
  std::optional<Iri> birth_country;

  auto operator<=>(const StereotypeAnnotatorProfile&) const = default;
};

enum class PrivacyFlag { Withhold, Release };

inline ValidationReport validate(const Chunk& c, std::string_view message_text) {
  ValidationReport r;
  if (c.text.empty()) r.push_back({"text", "chunk text must be non-empty"});
  std::size_t len = uni::scalar_length(message_text);
  if (!(c.span_start < c.span_end && c.span_end <= len)) {
    r.push_back({"span", "span must satisfy 0 <= start < end <= text length"});
    return r;
  }
  if (uni::slice_by_scalars(message_text, c.span_start, c.span_end) != c.text) {
    r.push_back({"span", "message text at span does not equal chunk text"});
  }
  return r;
}

inline ValidationReport validate(const StereotypeAnnotatorProfile& p) {
  ValidationReport r;
  if (p.age && (*p.age < 14 || *p.age > 100)) {
    r.push_back({"age", "age out of [14, 100]"});
  }
  for (auto& v : validate(p.id)) r.push_back({"id." + v.field, v.rule});
  return r;
}

// Cap and partition rules for one clustering round: every phrase of the
// annotator belongs to exactly one concept, and the concept count per
// annotator respects the round's cap (10, then 5).
inline ValidationReport validate_clustering(
    const std::vector<MinimumPhrase>& phrases,
    const std::vector<StereotypeConcept>& concepts, ClusterRound round,
    std::size_t cap_override = 0) {
  ValidationReport report;
  std::size_t cap = cap_override ? cap_override : cluster_cap(round);

  std::map<std::string, std::size_t> concepts_per_annotator;
  std::map<std::pair<std::string, std::string>, std::size_t> memberships;
  for (const auto& c : concepts) {
    if (c.round != round) continue;
    ++concepts_per_annotator[c.annotator.node_local()];
    for (const auto& frame : c.members) {
      ++memberships[{c.annotator.node_local(), frame}];
    }
  }
  for (const auto& [annotator, count] : concepts_per_annotator) {
    if (count > cap) {
      report.push_back({"concepts", annotator + " has " +
                                        std::to_string(count) +
                                        " clusters, cap is " +
                                        std::to_string(cap)});
    }
  }
  for (const auto& p : phrases) {
    std::size_t n = 0;
    if (auto it = memberships.find({p.annotator.node_local(), p.frame});
        it != memberships.end()) {
      n = it->second;
    }
    if (n == 0) {
      report.push_back(
          {"phrases", "phrase '" + p.frame + "' is in no cluster"});
    } else if (n > 1) {
      report.push_back(
          {"phrases", "phrase '" + p.frame + "' is in " + std::to_string(n) +
                          " clusters"});
    }
  }
  return report;
}

class StereotypeEncoder {
 public:
  explicit StereotypeEncoder(std::string ster_base = ns::kSter)
      : base_(std::move(ster_base)) {}

  Iri annotator_node(const AnnotatorId& a) const {
    return Iri(base_ + percent_escape(a.node_local()));
  }

  Iri concept_node(const StereotypeConcept& c) const {
    return Iri(base_ + uni::camel_slug(c.label));
  }

  Iri entry_node(const Chunk& chunk) const {
    return Iri(ns::kGenid + "entry_" + percent_escape(chunk.message_ref) +
               "_" + std::to_string(chunk.span_start) + "_" +
               std::to_string(chunk.span_end) + "_" +
               percent_escape(chunk.annotator.node_local()));
  }

  Iri sense_node(const Chunk& chunk, const MinimumPhrase& phrase) const {
    return Iri(ns::kGenid + "sense_" + percent_escape(chunk.message_ref) +
               "_" + std::to_string(chunk.span_start) + "_" +
               percent_escape(phrase.annotator.node_local()) + "_" +
               percent_escape(phrase.frame));
  }

  // The three-layer chain: entry --sense--> phrase --isLexicalizedSenseOf-->
  // concept; concept subClassOf Stereotype and LexicalConcept, with target
  // and both attribution triples, and dul:isPartOf to the source
  // manifestation (class per the paper's usage).
  TripleSet encode_stereotype(const Chunk& chunk, const MinimumPhrase& phrase,
                              const StereotypeConcept& concept) const {
    if (phrase.chunk_ref != chunk.text) {
      throw InconsistentRefsError("phrase references chunk '" +
                                  phrase.chunk_ref + "', got '" + chunk.text +
                                  "'");
    }
    if (phrase.annotator != chunk.annotator) {
      throw InconsistentRefsError(
          "phrase and chunk must come from the same annotator");
    }
    if (!concept.members.count(phrase.frame)) {
      throw InconsistentRefsError("concept '" + concept.label +
                                  "' does not contain phrase '" +
                                  phrase.frame + "'");
    }

    TripleSet out;
    Iri entry = entry_node(chunk);
    Iri sense = sense_node(chunk, phrase);
    Iri concept_iri = concept_node(concept);

    out.insert({Term(entry), vocab::rdf_type(),
                Term(vocab::ontolex_LexicalEntry())});
    out.insert({Term(entry), ster("chunk"), Term(Literal(chunk.text))});
    out.insert({Term(entry), vocab::dul_isPartOf(),
                Term(vocab::fabio_WebContent())});
    out.insert({Term(entry), vocab::prov_wasAttributedTo(),
                Term(annotator_node(phrase.annotator))});
    out.insert({Term(entry), vocab::ontolex_sense(), Term(sense)});

    out.insert({Term(sense), vocab::rdf_type(), Term(ster("Annotation"))});
    out.insert({Term(sense), vocab::rdf_type(),
                Term(vocab::ontolex_LexicalSense())});
    out.insert({Term(sense), ster("frame"), Term(Literal(phrase.frame))});
    out.insert({Term(sense), vocab::ontolex_isLexicalizedSenseOf(),
                Term(concept_iri)});

    out.insert({Term(concept_iri), vocab::rdfs_subClassOf(),
                Term(ster("Stereotype"))});
    out.insert({Term(concept_iri), vocab::rdfs_subClassOf(),
                Term(vocab::ontolex_LexicalConcept())});
    out.insert({Term(concept_iri), ster("hasTarget"), Term(concept.target)});
    out.insert({Term(concept_iri), vocab::prov_wasAttributedTo(),
                Term(annotator_node(concept.annotator))});
    return out;
  }

  // With privacy withheld (the default) only typing and role triples are
  // emitted; demographics need an explicit release.
  TripleSet encode_annotator_profile(
      const StereotypeAnnotatorProfile& p,
      PrivacyFlag privacy = PrivacyFlag::Withhold) const {
    TripleSet out;
    Iri node = annotator_node(p.id);
    out.insert({Term(node), vocab::rdf_type(), Term(ster("Annotator"))});
    out.insert({Term(node), vocab::dul_isRoleOf(),
                Term(vocab::prov_Person())});
    if (privacy == PrivacyFlag::Release) {
      if (p.gender) {
        out.insert({Term(node), ster("gender"), Term(Literal(*p.gender))});
      }
      if (p.age) {
        out.insert({Term(node), ster("age"), Term(Literal::integer(*p.age))});
      }
      if (p.birth_country) {
        out.insert({Term(node), ster("birthCountry"), Term(*p.birth_country)});
      }
    }
    return out;
  }

 private:
  Iri ster(std::string_view local) const {
    return Iri(base_ + std::string(local));
  }

  std::string base_;
};

// --- stereotype annotation file -------------------------------------------
// Tabular interface: message_id, span_start, span_end, chunk, frame,
// cluster10, cluster5, annotator, target.

struct StereotypeAnnotations {
  std::vector<Chunk> chunks;
  std::vector<MinimumPhrase> phrases;
  std::vector<StereotypeConcept> concepts;  // both rounds
};

inline StereotypeAnnotations load_stereotype_annotations(
    const Table& table, const std::string& ster_base = ns::kSter) {
  for (const char* name : {"message_id", "span_start", "span_end", "chunk",
                           "frame", "cluster10", "cluster5", "annotator",
                           "target"}) {
    if (table.column(name) < 0) throw ColumnMissingError(name);
  }
  auto col = [&table](const char* name) {
    return static_cast<std::size_t>(table.column(name));
  };

  StereotypeAnnotations out;
  // (annotator, round, label) -> concept under construction
  std::map<std::tuple<std::string, int, std::string>, StereotypeConcept>
      concepts;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size()) {
      throw Error("stereotype row " + std::to_string(r + 1) +
                  ": wrong field count");
    }
    if (!lexical_is_integer(row[col("span_start")]) ||
        !lexical_is_integer(row[col("span_end")])) {
      throw Error("stereotype row " + std::to_string(r + 1) +
                  ": spans must be integers");
    }
    AnnotatorId annotator = AnnotatorId::individual(row[col("annotator")]);

    Chunk chunk{row[col("chunk")], row[col("message_id")],
                static_cast<std::size_t>(std::stoll(row[col("span_start")])),
                static_cast<std::size_t>(std::stoll(row[col("span_end")])),
                annotator};
    MinimumPhrase phrase{row[col("frame")], chunk.text, annotator};
    out.chunks.push_back(chunk);
    out.phrases.push_back(phrase);

    // target groups stay opaque lowercase IRIs (ster:minorities)
    Iri target(ster_base + percent_escape(row[col("target")]));
    for (auto [round, column] :
         {std::pair{ClusterRound::Ten, col("cluster10")},
          std::pair{ClusterRound::Five, col("cluster5")}}) {
      auto key = std::make_tuple(annotator.node_local(),
                                 static_cast<int>(round), row[column]);
      auto& concept = concepts[key];
      concept.label = row[column];
      concept.round = round;
      concept.annotator = annotator;
      concept.target = target;
      concept.members.insert(phrase.frame);
    }
  }
  for (auto& [key, concept] : concepts) {
    out.concepts.push_back(std::move(concept));
  }
  return out;
}

}  // namespace odang
