#pragma once
// RDF term model: IRIs, blank nodes, literals, triples.
//
// Terms are immutable value types. A Triple's predicate is an Iri by
// construction; subjects are Iri or BlankNode (checked by validate(), not by
// the type, so parsers can report the violation instead of crashing).

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace odang {

struct Iri {
  std::string value;

  Iri() = default;
  explicit Iri(std::string v) : value(std::move(v)) {}

  auto operator<=>(const Iri&) const = default;
};

struct BlankNode {
  std::string label;  // without the "_:" sigil

  BlankNode() = default;
  explicit BlankNode(std::string l) : label(std::move(l)) {}

  auto operator<=>(const BlankNode&) const = default;
};

namespace xsd {
inline const std::string kString = "http://www.w3.org/2001/XMLSchema#string";
inline const std::string kInteger = "http://www.w3.org/2001/XMLSchema#integer";
}  // namespace xsd

inline const std::string kLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

struct Literal {
  std::string lexical;
  Iri datatype{Iri(xsd::kString)};
  std::string lang;  // non-empty only when datatype is rdf:langString

  Literal() = default;
  explicit Literal(std::string lex) : lexical(std::move(lex)) {}
  Literal(std::string lex, Iri dt)
      : lexical(std::move(lex)), datatype(std::move(dt)) {}

  static Literal integer(std::int64_t v) {
    return Literal(std::to_string(v), Iri(xsd::kInteger));
  }
  static Literal lang_tagged(std::string lex, std::string tag) {
    Literal l(std::move(lex), Iri(kLangString));
    l.lang = std::move(tag);
    return l;
  }

  bool is_integer() const { return datatype.value == xsd::kInteger; }

  auto operator<=>(const Literal&) const = default;
};

using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) {
  return std::holds_alternative<BlankNode>(t);
}
inline bool is_literal(const Term& t) {
  return std::holds_alternative<Literal>(t);
}

struct Triple {
  Term subject;
  Iri predicate;
  Term object;

  Triple() = default;
  Triple(Term s, Iri p, Term o)
      : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {}

  auto operator<=>(const Triple&) const = default;
};

// Set semantics everywhere: encoders and parsers return deduplicated sets.
using TripleSet = std::set<Triple>;

inline void merge_into(TripleSet& dst, const TripleSet& src) {
  dst.insert(src.begin(), src.end());
}

struct TermHash {
  std::size_t operator()(const Term& t) const {
    std::size_t seed = t.index();
    auto mix = [&seed](std::string_view s) {
      seed ^= std::hash<std::string_view>{}(s) + 0x9e3779b97f4a7c15ULL +
              (seed << 6) + (seed >> 2);
    };
    if (const auto* i = std::get_if<Iri>(&t)) {
      mix(i->value);
    } else if (const auto* b = std::get_if<BlankNode>(&t)) {
      mix(b->label);
    } else {
      const auto& l = std::get<Literal>(t);
      mix(l.lexical);
      mix(l.datatype.value);
      mix(l.lang);
    }
    return seed;
  }
};

}  // namespace odang
