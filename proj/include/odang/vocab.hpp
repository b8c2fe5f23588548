#pragma once
// Namespace management: prefix map, IRI minting, the vocabulary constants the
// encoders emit. The base namespace is configurable; the shipped defaults bind
// the prefixes the papers use (dul, prov, frbr, fabio, dc, ontolex, ster,
// rdf, rdfs, xsd, lexinfo) plus the empty prefix for the odang namespace
// itself.

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "odang/errors.hpp"
#include "odang/term.hpp"

namespace odang {

namespace ns {
inline const std::string kOdang = "https://w3id.org/odang#";
inline const std::string kSter = "https://w3id.org/ster#";
inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kProv = "http://www.w3.org/ns/prov#";
inline const std::string kDul =
    "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#";
inline const std::string kFrbr = "http://purl.org/spar/frbr/";
inline const std::string kFabio = "http://purl.org/spar/fabio/";
inline const std::string kDc = "http://purl.org/dc/elements/1.1/";
inline const std::string kOntolex = "http://www.w3.org/ns/lemon/ontolex#";
inline const std::string kLexinfo =
    "http://www.lexinfo.net/ontology/2.0/lexinfo#";
// Skolem identifiers for anonymous nodes, per RFC 7320 well-known path.
inline const std::string kGenid = "https://w3id.org/odang/.well-known/genid/";
}  // namespace ns

// Percent-escapes the characters an IRI fragment cannot carry. Non-ASCII
// bytes stay raw (IRIs, not URIs). Deterministic: '%' always escapes, so
// minting is injective on local names.
inline std::string percent_escape(std::string_view local) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  auto needs_escape = [](unsigned char c) {
    if (c <= 0x20 || c == 0x7F) return true;
    switch (c) {
      case '"': case '<': case '>': case '\\': case '^': case '`':
      case '{': case '|': case '}': case '#': case '%': case '[': case ']':
        return true;
      default:
        return false;
    }
  };
  std::string out;
  out.reserve(local.size());
  for (unsigned char c : local) {
    if (needs_escape(c)) {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

class PrefixMap {
 public:
  // The paper's prefix conventions; '' (the default prefix) and 'odang' both
  // name the base namespace.
  static PrefixMap with_defaults(const std::string& base = ns::kOdang) {
    PrefixMap m;
    m.bind("", base);
    m.bind("odang", base);
    m.bind("ster", ns::kSter);
    m.bind("rdf", ns::kRdf);
    m.bind("rdfs", ns::kRdfs);
    m.bind("xsd", ns::kXsd);
    m.bind("prov", ns::kProv);
    m.bind("dul", ns::kDul);
    m.bind("frbr", ns::kFrbr);
    m.bind("fabio", ns::kFabio);
    m.bind("dc", ns::kDc);
    m.bind("ontolex", ns::kOntolex);
    m.bind("lexinfo", ns::kLexinfo);
    return m;
  }

  void bind(const std::string& label, const std::string& namespace_iri) {
    bindings_[label] = namespace_iri;
  }

  bool has(const std::string& label) const {
    return bindings_.count(label) != 0;
  }

  const std::string& resolve(const std::string& label) const {
    auto it = bindings_.find(label);
    if (it == bindings_.end()) throw UnknownPrefixError(label);
    return it->second;
  }

  // Longest-namespace match wins so nested namespaces compress correctly.
  std::optional<std::pair<std::string, std::string>> compress(
      std::string_view iri) const {
    std::optional<std::pair<std::string, std::string>> best;
    for (const auto& [label, nspace] : bindings_) {
      if (nspace.empty() || iri.size() <= nspace.size()) continue;
      if (iri.substr(0, nspace.size()) != nspace) continue;
      if (!best || nspace.size() > resolve(best->first).size()) {
        best = {label, std::string(iri.substr(nspace.size()))};
      }
    }
    return best;
  }

  const std::map<std::string, std::string>& bindings() const {
    return bindings_;
  }

 private:
  std::map<std::string, std::string> bindings_;
};

// Deterministic IRI minting under a registered prefix.
inline Iri mint_iri(const PrefixMap& prefixes, const std::string& prefix,
                    std::string_view local_name) {
  if (local_name.empty()) throw EmptyLocalNameError();
  return Iri(prefixes.resolve(prefix) + percent_escape(local_name));
}

namespace vocab {

inline Iri rdf_type() { return Iri(ns::kRdf + "type"); }
inline Iri rdfs_subClassOf() { return Iri(ns::kRdfs + "subClassOf"); }
inline Iri rdfs_label() { return Iri(ns::kRdfs + "label"); }

inline Iri prov_wasAttributedTo() { return Iri(ns::kProv + "wasAttributedTo"); }
inline Iri prov_Person() { return Iri(ns::kProv + "Person"); }

inline Iri dul_isPartOf() { return Iri(ns::kDul + "isPartOf"); }
inline Iri dul_isDescribedBy() { return Iri(ns::kDul + "isDescribedBy"); }
inline Iri dul_Description() { return Iri(ns::kDul + "Description"); }
inline Iri dul_isRoleOf() { return Iri(ns::kDul + "isRoleOf"); }

inline Iri frbr_Expression() { return Iri(ns::kFrbr + "Expression"); }
inline Iri frbr_embodiment() { return Iri(ns::kFrbr + "embodiment"); }
inline Iri fabio_WebContent() { return Iri(ns::kFabio + "WebContent"); }

inline Iri ontolex_LexicalEntry() { return Iri(ns::kOntolex + "LexicalEntry"); }
inline Iri ontolex_LexicalSense() { return Iri(ns::kOntolex + "LexicalSense"); }
inline Iri ontolex_LexicalConcept() {
  return Iri(ns::kOntolex + "LexicalConcept");
}
inline Iri ontolex_sense() { return Iri(ns::kOntolex + "sense"); }
inline Iri ontolex_isLexicalizedSenseOf() {
  return Iri(ns::kOntolex + "isLexicalizedSenseOf");
}
inline Iri lexinfo_partOfSpeech() { return Iri(ns::kLexinfo + "partOfSpeech"); }

inline Iri ster(std::string_view local) {
  return Iri(ns::kSter + std::string(local));
}

}  // namespace vocab

// Terms of the odang namespace itself, relative to a configurable base.
class OdangVocab {
 public:
  explicit OdangVocab(std::string base = ns::kOdang) : base_(std::move(base)) {}

  const std::string& base() const { return base_; }

  Iri term(std::string_view local) const {
    return Iri(base_ + std::string(local));
  }
  Iri minted(std::string_view local) const {
    return Iri(base_ + percent_escape(local));
  }

  Iri situation_class() const { return term("Situation"); }
  Iri person_class() const { return term("Person"); }
  Iri is_setting_for() const { return term("isSettingFor"); }
  Iri has_role() const { return term("hasRole"); }
  Iri has_text() const { return term("hasText"); }
  Iri has_target() const { return term("hasTarget"); }
  Iri has_value() const { return term("hasValue"); }
  Iri has_id() const { return term("hasID"); }
  Iri handle() const { return term("handle"); }
  Iri gender() const { return term("gender"); }
  Iri birth_year() const { return term("birthYear"); }
  Iri citizenship() const { return term("citizenship"); }
  Iri country_of_citizenship() const { return term("countryOfCitizenship"); }
  Iri place_of_birth() const { return term("placeOfBirth"); }
  Iri occupation() const { return term("occupation"); }
  Iri political_party() const { return term("politicalParty"); }
  Iri is_described() const { return term("isDescribed"); }
  Iri lexical_entry_class() const { return term("LexicalEntry"); }
  Iri offensive_class() const { return term("Offensive"); }

 private:
  std::string base_;
};

}  // namespace odang
