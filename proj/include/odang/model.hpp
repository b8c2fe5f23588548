#pragma once
// Domain types of the semantic model plus validation.
//
// All types are immutable value objects; validate() never throws and returns
// a report of invariant violations (violations are data, not failures).

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "odang/term.hpp"

namespace odang {

struct Violation {
  std::string field;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

enum class Genre { Tweet, FacebookPost, NewsHeadline, WebContent };

inline std::string_view genre_name(Genre g) {
  switch (g) {
    case Genre::Tweet: return "tweet";
    case Genre::FacebookPost: return "facebook_post";
    case Genre::NewsHeadline: return "news_headline";
    case Genre::WebContent: return "web_content";
  }
  return "tweet";
}

inline std::optional<Genre> genre_from_name(std::string_view name) {
  if (name == "tweet") return Genre::Tweet;
  if (name == "facebook_post") return Genre::FacebookPost;
  if (name == "news_headline") return Genre::NewsHeadline;
  if (name == "web_content") return Genre::WebContent;
  return std::nullopt;
}

struct Message {
  std::string id;
  std::string text;  // stored verbatim, never normalized
  Genre genre = Genre::Tweet;
  std::set<std::string> corpus_ids;

  auto operator<=>(const Message&) const = default;
};

// Value domain of an annotation scheme: binary, categorical, or an integer
// scale (Table-1 style: "intensity (0-->4)", "stance (against/favor/none)").
struct ValueDomain {
  enum class Kind { Binary, Categorical, IntegerScale };

  Kind kind = Kind::Binary;
  std::vector<std::string> labels;  // Categorical only
  std::int64_t min = 0;             // IntegerScale only
  std::int64_t max = 0;

  static ValueDomain binary() { return {}; }
  static ValueDomain categorical(std::vector<std::string> ls) {
    ValueDomain d;
    d.kind = Kind::Categorical;
    d.labels = std::move(ls);
    return d;
  }
  static ValueDomain integer_scale(std::int64_t lo, std::int64_t hi) {
    ValueDomain d;
    d.kind = Kind::IntegerScale;
    d.min = lo;
    d.max = hi;
    return d;
  }

  auto operator<=>(const ValueDomain&) const = default;
};

struct AnnotationScheme {
  std::string name;  // e.g. "hate speech", "irony", "stance", "intensity"
  ValueDomain domain;

  auto operator<=>(const AnnotationScheme&) const = default;
};

struct AnnotatorId {
  enum class Kind { GoldStandard, Individual };

  Kind kind = Kind::GoldStandard;
  std::string id;  // anonymized, "annotator_<n>"; empty for gold standard

  static AnnotatorId gold_standard() { return {}; }
  static AnnotatorId individual(std::string anon_id) {
    return {Kind::Individual, std::move(anon_id)};
  }

  // Local name of the annotator node in the graph.
  std::string node_local() const {
    return kind == Kind::GoldStandard ? "gold_standard" : id;
  }

  auto operator<=>(const AnnotatorId&) const = default;
};

// A value is either an integer (binary / scale schemes) or a label.
using AnnotationValue = std::variant<std::int64_t, std::string>;

struct AnnotationRecord {
  std::string message_ref;
  AnnotationScheme scheme;
  AnnotationValue value;
  AnnotatorId annotator;

  auto operator<=>(const AnnotationRecord&) const = default;
};

struct PersonFacts {
  std::optional<std::string> gender;
  std::optional<std::int64_t> birth_year;
  std::optional<Iri> country_of_citizenship;
  std::optional<Iri> place_of_birth;
  std::optional<Iri> occupation;
  std::optional<Iri> political_party;

  bool all_absent() const {
    return !gender && !birth_year && !country_of_citizenship &&
           !place_of_birth && !occupation && !political_party;
  }

  auto operator<=>(const PersonFacts&) const = default;
};

struct Person {
  std::string id;
  std::optional<std::string> handle;        // platform handle, "@..."
  std::optional<std::int64_t> platform_id;  // numeric platform id (:hasID)
  std::optional<PersonFacts> facts;

  auto operator<=>(const Person&) const = default;
};

enum class RoleKind { Addresser, Addressee, Target, Annotator, HateSpeechMessage };

inline std::string_view role_name(RoleKind r) {
  switch (r) {
    case RoleKind::Addresser: return "Addresser";
    case RoleKind::Addressee: return "Addressee";
    case RoleKind::Target: return "Target";
    case RoleKind::Annotator: return "Annotator";
    case RoleKind::HateSpeechMessage: return "HateSpeechMessage";
  }
  return "Addresser";
}

struct Situation {
  struct Participant {
    std::variant<Message, Person> entity;
    RoleKind role = RoleKind::Addresser;
    // id of another participant this one targets (persons/messages only).
    std::optional<std::string> target;

    bool is_message() const {
      return std::holds_alternative<Message>(entity);
    }
    const std::string& entity_id() const {
      return is_message() ? std::get<Message>(entity).id
                          : std::get<Person>(entity).id;
    }

    auto operator<=>(const Participant&) const = default;
  };

  std::string id;
  std::vector<Participant> participants;

  auto operator<=>(const Situation&) const = default;
};

// --- validation -------------------------------------------------------------

inline bool lexical_is_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(),
                     [](unsigned char c) { return c >= '0' && c <= '9'; });
}

inline ValidationReport validate(const Iri& iri) {
  ValidationReport r;
  if (iri.value.empty()) {
    r.push_back({"value", "IRI must be non-empty"});
    return r;
  }
  bool has_scheme = iri.value.find("://") != std::string::npos;
  bool is_urn = iri.value.rfind("urn:", 0) == 0 && iri.value.size() > 4;
  if (!has_scheme && !is_urn) {
    r.push_back({"value", "IRI needs a scheme separator or urn form"});
  }
  for (unsigned char c : iri.value) {
    if (c <= 0x20 || c == 0x7F) {
      r.push_back({"value", "IRI contains whitespace or control character"});
      break;
    }
  }
  return r;
}

inline ValidationReport validate(const Literal& lit) {
  ValidationReport r;
  if (!lit.lang.empty() && lit.datatype.value != kLangString) {
    r.push_back({"lang", "language tag requires the language-string datatype"});
  }
  if (lit.datatype.value == kLangString && lit.lang.empty()) {
    r.push_back({"lang", "language-string literal is missing its tag"});
  }
  if (lit.is_integer() && !lexical_is_integer(lit.lexical)) {
    r.push_back({"lexical", "integer-typed literal does not parse as integer"});
  }
  return r;
}

inline ValidationReport validate(const Triple& t) {
  ValidationReport r;
  if (is_literal(t.subject)) {
    r.push_back({"subject", "subject must be an IRI or blank node"});
  }
  if (const auto* lit = std::get_if<Literal>(&t.object)) {
    for (auto& v : validate(*lit)) r.push_back({"object." + v.field, v.rule});
  }
  return r;
}

inline ValidationReport validate(const Message& m) {
  ValidationReport r;
  if (m.id.empty()) r.push_back({"id", "message id must be non-empty"});
  if (m.text.empty()) r.push_back({"text", "message text must be non-empty"});
  if (m.corpus_ids.empty()) {
    r.push_back({"corpusIds", "at least one corpus membership required"});
  }
  return r;
}

inline ValidationReport validate(const AnnotationScheme& s) {
  ValidationReport r;
  if (s.name.empty()) r.push_back({"name", "scheme name must be non-empty"});
  if (s.domain.kind == ValueDomain::Kind::Categorical) {
    if (s.domain.labels.empty()) {
      r.push_back({"valueDomain", "categorical label set must be non-empty"});
    }
    std::set<std::string> seen(s.domain.labels.begin(), s.domain.labels.end());
    if (seen.size() != s.domain.labels.size()) {
      r.push_back({"valueDomain", "categorical labels must be duplicate-free"});
    }
  } else if (s.domain.kind == ValueDomain::Kind::IntegerScale) {
    if (s.domain.min >= s.domain.max) {
      r.push_back({"valueDomain", "integer scale requires min < max"});
    }
  }
  return r;
}

inline ValidationReport validate(const AnnotatorId& a) {
  ValidationReport r;
  if (a.kind == AnnotatorId::Kind::Individual) {
    std::string_view id = a.id;
    bool ok = id.rfind("annotator_", 0) == 0 && id.size() > 10 &&
              std::all_of(id.begin() + 10, id.end(), [](unsigned char c) {
                return c >= '0' && c <= '9';
              });
    if (!ok) {
      r.push_back({"id", "individual annotator id must match annotator_<n>"});
    }
  }
  return r;
}

inline bool value_in_domain(const AnnotationValue& v, const ValueDomain& d) {
  switch (d.kind) {
    case ValueDomain::Kind::Binary: {
      const auto* n = std::get_if<std::int64_t>(&v);
      return n && (*n == 0 || *n == 1);
    }
    case ValueDomain::Kind::IntegerScale: {
      const auto* n = std::get_if<std::int64_t>(&v);
      return n && *n >= d.min && *n <= d.max;
    }
    case ValueDomain::Kind::Categorical: {
      const auto* s = std::get_if<std::string>(&v);
      return s && std::find(d.labels.begin(), d.labels.end(), *s) !=
                      d.labels.end();
    }
  }
  return false;
}

inline ValidationReport validate(const AnnotationRecord& rec) {
  ValidationReport r;
  if (rec.message_ref.empty()) {
    r.push_back({"messageRef", "record must reference a message"});
  }
  for (auto& v : validate(rec.scheme)) r.push_back({"scheme." + v.field, v.rule});
  for (auto& v : validate(rec.annotator)) {
    r.push_back({"annotator." + v.field, v.rule});
  }
  if (!value_in_domain(rec.value, rec.scheme.domain)) {
    r.push_back({"value", "value out of the scheme's domain"});
  }
  return r;
}

// Duplicate judgments: a second record with the same (message, scheme,
// annotator) is rejected here, not silently overwritten.
inline ValidationReport validate(std::span<const AnnotationRecord> records) {
  ValidationReport r;
  std::set<std::tuple<std::string, std::string, AnnotatorId>> seen;
  for (const auto& rec : records) {
    auto key = std::make_tuple(rec.message_ref, rec.scheme.name, rec.annotator);
    if (!seen.insert(key).second) {
      r.push_back({"records",
                   "duplicate judgment for (" + rec.message_ref + ", " +
                       rec.scheme.name + ", " + rec.annotator.node_local() +
                       ")"});
    }
  }
  return r;
}

inline int current_year() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  return tm.tm_year + 1900;
}

inline ValidationReport validate(const PersonFacts& f) {
  ValidationReport r;
  if (f.birth_year && (*f.birth_year < 1850 || *f.birth_year > current_year())) {
    r.push_back({"birthYear", "birth year out of [1850, current year]"});
  }
  for (auto [field, iri] :
       {std::pair{"countryOfCitizenship", &f.country_of_citizenship},
        std::pair{"placeOfBirth", &f.place_of_birth},
        std::pair{"occupation", &f.occupation},
        std::pair{"politicalParty", &f.political_party}}) {
    if (iri->has_value()) {
      for (auto& v : validate(iri->value())) {
        r.push_back({std::string(field) + "." + v.field, v.rule});
      }
    }
  }
  return r;
}

inline ValidationReport validate(const Person& p) {
  ValidationReport r;
  if (p.id.empty()) r.push_back({"id", "person id must be non-empty"});
  if (p.handle && (p.handle->empty() || (*p.handle)[0] != '@')) {
    r.push_back({"handle", "handle must begin with '@'"});
  }
  if (p.facts) {
    for (auto& v : validate(*p.facts)) r.push_back({"facts." + v.field, v.rule});
  }
  return r;
}

inline ValidationReport validate(const Situation& s) {
  ValidationReport r;
  if (s.id.empty()) r.push_back({"id", "situation id must be non-empty"});
  bool has_message = false;
  std::set<std::string> ids;
  for (const auto& p : s.participants) {
    ids.insert(p.entity_id());
    if (p.is_message()) {
      has_message = true;
      if (p.role != RoleKind::HateSpeechMessage) {
        r.push_back({"participants",
                     "message participants may only hold HateSpeechMessage"});
      }
      for (auto& v : validate(std::get<Message>(p.entity))) {
        r.push_back({"participants." + v.field, v.rule});
      }
    } else {
      if (p.role == RoleKind::HateSpeechMessage) {
        r.push_back({"participants",
                     "HateSpeechMessage attaches only to messages"});
      }
      for (auto& v : validate(std::get<Person>(p.entity))) {
        r.push_back({"participants." + v.field, v.rule});
      }
    }
  }
  if (!has_message) {
    r.push_back({"participants", "at least one message participant required"});
  }
  for (const auto& p : s.participants) {
    if (p.target && ids.count(*p.target) == 0) {
      r.push_back({"participants.target",
                   "target '" + *p.target +
                       "' is not a participant of the situation"});
    }
  }
  return r;
}

}  // namespace odang
