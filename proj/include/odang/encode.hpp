#pragma once
// Canonical entity -> triple-set encoding.
//
// Everything here is deterministic: node identity is minted from entity
// content only, anonymous description nodes become skolem IRIs under the
// genid namespace, so equal inputs always yield equal triple sets.
//
// Per-annotator fidelity holds by construction: every AnnotationRecord gets
// its own description node; aggregation never happens inside encoding (the
// gold standard is just one more annotator identity).

#include <span>
#include <string>
#include <string_view>

#include "odang/errors.hpp"
#include "odang/model.hpp"
#include "odang/term.hpp"
#include "odang/unicode.hpp"
#include "odang/vocab.hpp"

namespace odang {

class Encoder {
 public:
  explicit Encoder(OdangVocab vocab = OdangVocab()) : v_(std::move(vocab)) {}

  const OdangVocab& vocab() const { return v_; }

  Iri message_node(std::string_view message_id) const {
    return v_.minted("msg_" + std::string(message_id));
  }
  Iri person_node(std::string_view person_id) const {
    return v_.minted(person_id);
  }
  Iri situation_node(std::string_view situation_id) const {
    return v_.minted(situation_id);
  }
  Iri corpus_node(std::string_view corpus_id) const {
    return v_.minted(corpus_id);
  }
  Iri annotator_node(const AnnotatorId& a) const {
    return v_.minted(a.node_local());
  }
  Iri scheme_class(const AnnotationScheme& s) const {
    return v_.term(uni::camel_slug(s.name));
  }
  Iri role_iri(RoleKind r) const { return v_.term(role_name(r)); }

  // Tweets and the other platform embodiments live in the odang namespace;
  // generic web content reuses fabio's class.
  Iri manifestation_class(Genre g) const {
    switch (g) {
      case Genre::Tweet: return v_.term("Tweet");
      case Genre::FacebookPost: return v_.term("FacebookPost");
      case Genre::NewsHeadline: return v_.term("NewsHeadline");
      case Genre::WebContent: return vocab::fabio_WebContent();
    }
    return v_.term("Tweet");
  }

  // Binary and scale values are integer literals; categorical values are
  // IRIs in the scheme's namespace.
  Term value_term(const AnnotationScheme& scheme,
                  const AnnotationValue& value) const {
    if (const auto* n = std::get_if<std::int64_t>(&value)) {
      return Literal::integer(*n);
    }
    const auto& label = std::get<std::string>(value);
    return v_.term(uni::camel_slug(scheme.name) + "_" + percent_escape(label));
  }

  Iri description_node(std::string_view message_id,
                       const AnnotationScheme& scheme,
                       const AnnotatorId& annotator) const {
    return Iri(ns::kGenid + "ann_" + percent_escape(message_id) + "_" +
               uni::camel_slug(scheme.name) + "_" +
               percent_escape(annotator.node_local()));
  }

  TripleSet encode_message(const Message& m,
                           std::span<const AnnotationRecord> records) const {
    for (const auto& rec : records) {
      if (rec.message_ref != m.id) {
        throw DanglingRecordError("record for '" + rec.message_ref +
                                  "' passed to message '" + m.id + "'");
      }
    }
    TripleSet out;
    Iri node = message_node(m.id);
    out.insert({Term(node), vocab::rdf_type(), Term(vocab::frbr_Expression())});
    out.insert({Term(node), vocab::frbr_embodiment(),
                Term(manifestation_class(m.genre))});
    for (const auto& corpus : m.corpus_ids) {
      out.insert({Term(node), vocab::dul_isPartOf(), Term(corpus_node(corpus))});
    }
    for (const auto& rec : records) {
      Iri desc = description_node(m.id, rec.scheme, rec.annotator);
      Iri cls = scheme_class(rec.scheme);
      out.insert({Term(node), vocab::dul_isDescribedBy(), Term(desc)});
      out.insert({Term(desc), vocab::rdf_type(), Term(cls)});
      out.insert({Term(cls), vocab::rdfs_subClassOf(),
                  Term(vocab::dul_Description())});
      out.insert({Term(desc), v_.has_value(), value_term(rec.scheme, rec.value)});
      out.insert({Term(desc), vocab::prov_wasAttributedTo(),
                  Term(annotator_node(rec.annotator))});
    }
    return out;
  }

  TripleSet encode_person(const Person& p) const {
    TripleSet out;
    Iri node = person_node(p.id);
    out.insert({Term(node), vocab::rdf_type(), Term(v_.person_class())});
    if (p.handle) {
      out.insert({Term(node), v_.handle(), Term(Literal(*p.handle))});
    }
    if (p.platform_id) {
      out.insert({Term(node), v_.has_id(), Term(Literal::integer(*p.platform_id))});
    }
    if (p.facts) {
      encode_facts(out, node, *p.facts, /*situation_style=*/false);
    }
    return out;
  }

  TripleSet encode_situation(const Situation& s) const {
    if (auto report = validate(s); !report.empty()) {
      throw InvalidSituationError("invalid situation '" + s.id + "': " +
                                  report.front().field + ": " +
                                  report.front().rule);
    }
    TripleSet out;
    Iri sit = situation_node(s.id);
    out.insert({Term(sit), vocab::rdf_type(), Term(v_.situation_class())});
    for (const auto& p : s.participants) {
      Iri node = participant_node(p);
      out.insert({Term(sit), v_.is_setting_for(), Term(node)});
      out.insert({Term(node), v_.has_role(), Term(role_iri(p.role))});
      if (p.is_message()) {
        const auto& m = std::get<Message>(p.entity);
        out.insert({Term(node), vocab::rdf_type(),
                    Term(manifestation_class(m.genre))});
        out.insert({Term(node), v_.has_text(), Term(Literal(m.text))});
      } else {
        const auto& person = std::get<Person>(p.entity);
        out.insert({Term(node), vocab::rdf_type(), Term(v_.person_class())});
        if (person.facts) {
          encode_facts(out, node, *person.facts, /*situation_style=*/true);
        }
      }
      if (p.target) {
        out.insert({Term(node), v_.has_target(),
                    Term(node_of(s, *p.target))});
      }
    }
    return out;
  }

 private:
  Iri participant_node(const Situation::Participant& p) const {
    return p.is_message() ? message_node(p.entity_id())
                          : person_node(p.entity_id());
  }

  Iri node_of(const Situation& s, const std::string& participant_id) const {
    for (const auto& p : s.participants) {
      if (p.entity_id() == participant_id) return participant_node(p);
    }
    // unreachable after validate()
    return person_node(participant_id);
  }

  // The paper's situation block writes :citizenship where its person block
  // writes :countryOfCitizenship; both usages are kept, keyed by context.
  void encode_facts(TripleSet& out, const Iri& node, const PersonFacts& f,
                    bool situation_style) const {
    if (f.gender) {
      out.insert({Term(node), v_.gender(), Term(v_.minted(*f.gender))});
    }
    if (f.birth_year) {
      out.insert({Term(node), v_.birth_year(),
                  Term(Literal::integer(*f.birth_year))});
    }
    if (f.country_of_citizenship) {
      out.insert({Term(node),
                  situation_style ? v_.citizenship()
                                  : v_.country_of_citizenship(),
                  Term(*f.country_of_citizenship)});
    }
    if (f.place_of_birth) {
      out.insert({Term(node), v_.place_of_birth(), Term(*f.place_of_birth)});
    }
    if (f.occupation) {
      out.insert({Term(node), v_.occupation(), Term(*f.occupation)});
    }
    if (f.political_party) {
      out.insert({Term(node), v_.political_party(), Term(*f.political_party)});
    }
  }

  OdangVocab v_;
};

}  // namespace odang
