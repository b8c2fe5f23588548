#pragma once
// Turtle subset: @prefix directives, qnames, 'a', ';' and ',' lists,
// '[ ... ]' anonymous nodes, plain/typed/lang literals, bare integers, and
// '<...>' IRIs. Anonymous nodes are skolemized deterministically: the n-th
// '[' of a document becomes <.../.well-known/genid/b<n>>, counter reset per
// document, so parses are reproducible.
//
// serialize_turtle groups by subject with ';' lists and 'a', compresses
// qnames where a binding applies, and re-parses to the identical triple set.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odang/errors.hpp"
#include "odang/ntriples.hpp"
#include "odang/term.hpp"
#include "odang/vocab.hpp"

namespace odang {

namespace detail {

class TurtleParser {
 public:
  TurtleParser(std::string_view text, PrefixMap prefixes)
      : text_(text), prefixes_(std::move(prefixes)) {}

  TripleSet parse() {
    while (!at_end()) {
      if (peek() == '@') {
        parse_prefix_directive();
      } else {
        parse_statement();
      }
      skip_ws();
    }
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const std::string& reason) {
    throw ParseError(line_, col_, reason);
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek2() const {
    return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
  }

  char take() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    take();
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  void parse_prefix_directive() {
    for (char c : std::string_view("@prefix")) {
      if (take() != c) fail("expected @prefix directive");
    }
    skip_ws();
    std::string label;
    while (pos_ < text_.size() && text_[pos_] != ':') {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        fail("whitespace in prefix label");
      }
      label += take();
    }
    expect(':');
    skip_ws();
    if (peek() != '<') fail("@prefix needs an <IRI>");
    Iri ns = parse_iriref();
    prefixes_.bind(label, ns.value);
    expect('.');
  }

  void parse_statement() {
    skip_ws();
    Term subject;
    bool bracket_subject = false;
    if (peek() == '[') {
      subject = parse_bracket_node();
      bracket_subject = true;
    } else {
      subject = parse_subject_term();
    }
    skip_ws();
    if (bracket_subject && peek() == '.') {
      take();
      return;
    }
    parse_predicate_object_list(subject);
    expect('.');
  }

  Term parse_subject_term() {
    skip_ws();
    char c = peek();
    if (c == '<') return parse_iriref();
    if (c == '_' && peek2() == ':') return parse_blank_label();
    if (c == '"') fail("literal subject");
    return parse_qname();
  }

  void parse_predicate_object_list(const Term& subject) {
    while (true) {
      skip_ws();
      Iri predicate = parse_verb();
      while (true) {
        Term object = parse_object();
        out_.insert(Triple(subject, predicate, object));
        skip_ws();
        if (peek() == ',') {
          take();
          continue;
        }
        break;
      }
      skip_ws();
      if (peek() == ';') {
        take();
        skip_ws();
        // dangling ';' before '.' or ']' is legal Turtle
        if (peek() == '.' || peek() == ']') return;
        continue;
      }
      return;
    }
  }

  Iri parse_verb() {
    skip_ws();
    char c = peek();
    if (c == '<') return parse_iriref();
    // bare 'a' keyword
    if (c == 'a') {
      char next = peek2();
      if (next == ' ' || next == '\t' || next == '\n' || next == '\r' ||
          next == '<' || next == '"' || next == '[') {
        take();
        return vocab::rdf_type();
      }
    }
    Term t = parse_qname();
    return std::get<Iri>(t);
  }

  Term parse_object() {
    skip_ws();
    char c = peek();
    if (c == '<') return parse_iriref();
    if (c == '[') return parse_bracket_node();
    if (c == '"') return parse_literal();
    if (c == '_' && peek2() == ':') return parse_blank_label();
    if (c == '+' || c == '-' || (c >= '0' && c <= '9')) {
      return parse_integer_literal();
    }
    return parse_qname();
  }

  Term parse_bracket_node() {
    expect('[');
    Iri node(ns::kGenid + "b" + std::to_string(genid_counter_++));
    skip_ws();
    if (peek() != ']') {
      parse_predicate_object_list(node);
    }
    expect(']');
    return node;
  }

  Iri parse_iriref() {
    expect('<');
    std::string value;
    while (true) {
      char c = take();
      if (c == '>') break;
      if (static_cast<unsigned char>(c) <= 0x20) {
        fail("whitespace or control character inside IRI");
      }
      value += c;
    }
    if (value.empty()) fail("empty IRI");
    return Iri(std::move(value));
  }

  Term parse_blank_label() {
    take();  // '_'
    take();  // ':'
    std::string label;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '_' || c == '-' ||
                static_cast<unsigned char>(c) >= 0x80;
      if (!ok) break;
      label += take();
    }
    if (label.empty()) fail("empty blank node label");
    return BlankNode(std::move(label));
  }

  static bool qname_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '@' ||
           c == '%' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
  }

  Term parse_qname() {
    skip_ws();
    std::size_t err_line = line_, err_col = col_;
    std::string label;
    while (pos_ < text_.size() && text_[pos_] != ':') {
      char c = text_[pos_];
      if (!qname_char(c) || c == '@' || c == '.') break;
      label += take();
    }
    if (peek() != ':') fail("expected qname");
    take();
    std::string local;
    while (pos_ < text_.size() && qname_char(text_[pos_])) {
      local += take();
    }
    // a trailing '.' run belongs to the statement, not the local name
    std::size_t keep = local.size();
    while (keep > 0 && local[keep - 1] == '.') --keep;
    for (std::size_t i = local.size(); i > keep; --i) unread_dot();
    local.resize(keep);
    if (!prefixes_.has(label)) {
      throw UnknownPrefixInDocumentError(err_line, err_col, label);
    }
    return Iri(prefixes_.resolve(label) + local);
  }

  // only ever called for '.' just consumed on the current line
  void unread_dot() {
    --pos_;
    --col_;
  }

  Term parse_literal() {
    expect('"');
    std::string lexical;
    while (true) {
      char c = take();
      if (c == '"') break;
      if (c == '\\') {
        lexical += decode_escape();
      } else {
        lexical += c;
      }
    }
    skip_ws();
    if (peek() == '@') {
      take();
      std::string tag;
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
            (c >= '0' && c <= '9') || c == '-') {
          tag += take();
        } else {
          break;
        }
      }
      if (tag.empty()) fail("empty language tag");
      return Literal::lang_tagged(std::move(lexical), std::move(tag));
    }
    if (peek() == '^') {
      take();
      if (peek() != '^') fail("expected '^^'");
      take();
      skip_ws();
      Iri dt = peek() == '<' ? parse_iriref() : std::get<Iri>(parse_qname());
      return Literal(std::move(lexical), std::move(dt));
    }
    return Literal(std::move(lexical));
  }

  Term parse_integer_literal() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += take();
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      lex += take();
    }
    if (lex.empty() || lex == "+" || lex == "-") fail("malformed integer");
    return Literal(std::move(lex), Iri(xsd::kInteger));
  }

  std::string decode_escape() {
    char c = take();
    switch (c) {
      case 't': return "\t";
      case 'b': return "\b";
      case 'n': return "\n";
      case 'r': return "\r";
      case 'f': return "\f";
      case '"': return "\"";
      case '\'': return "'";
      case '\\': return "\\";
      case 'u': return decode_hex(4);
      case 'U': return decode_hex(8);
      default: fail(std::string("bad escape '\\") + c + "'");
    }
  }

  std::string decode_hex(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      char c = take();
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("bad hex digit in escape");
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail("escape is not a Unicode scalar value");
    }
    std::string out;
    append_codepoint_utf8(out, cp);
    return out;
  }

  std::string_view text_;
  PrefixMap prefixes_;
  TripleSet out_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::size_t genid_counter_ = 0;
};

inline bool valid_qname_local(std::string_view local) {
  if (local.empty()) return true;
  if (local.front() == '.' || local.back() == '.') return false;
  for (std::size_t i = 0; i < local.size(); ++i) {
    char c = local[i];
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
        (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '@' ||
        c == '.' || static_cast<unsigned char>(c) >= 0x80) {
      continue;
    }
    if (c == '%' && i + 2 < local.size() &&
        std::isxdigit(static_cast<unsigned char>(local[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(local[i + 2]))) {
      i += 2;
      continue;
    }
    return false;
  }
  return true;
}

}  // namespace detail

inline TripleSet parse_turtle_subset(std::string_view text,
                                     const PrefixMap& prefixes) {
  return detail::TurtleParser(text, prefixes).parse();
}

namespace detail {

class TurtleWriter {
 public:
  TurtleWriter(const TripleSet& triples, const PrefixMap& prefixes)
      : triples_(triples), prefixes_(prefixes) {}

  std::string write() {
    // render body first to learn which prefixes are actually used
    std::string body = render_body();
    std::string out;
    for (const auto& label : used_labels_sorted()) {
      out += "@prefix " + label + ": <" + prefixes_.resolve(label) + "> .\n";
    }
    if (!out.empty() && !body.empty()) out += "\n";
    out += body;
    return out;
  }

 private:
  std::vector<std::string> used_labels_sorted() const {
    std::vector<std::string> labels(used_.begin(), used_.end());
    std::sort(labels.begin(), labels.end());
    return labels;
  }

  std::string render_body() {
    // group by subject, deterministically ordered by canonical rendering
    std::map<std::string, std::pair<Term, std::vector<const Triple*>>> groups;
    for (const auto& t : triples_) {
      groups[render_term(t.subject)].second.push_back(&t);
      groups[render_term(t.subject)].first = t.subject;
    }
    std::string out;
    for (auto& [key, group] : groups) {
      auto& [subject, rows] = group;
      // predicates: rdf:type first (rendered 'a'), the rest sorted
      std::map<std::string, std::vector<const Triple*>> by_pred;
      for (const Triple* t : rows) {
        std::string pk = t->predicate.value == ns::kRdf + "type"
                             ? std::string()
                             : render_term(Term(t->predicate));
        by_pred[pk].push_back(t);
      }
      out += turtle_term(subject);
      bool first_pred = true;
      for (auto& [pk, ts] : by_pred) {
        out += first_pred ? " " : " ;\n    ";
        first_pred = false;
        out += pk.empty() ? "a" : turtle_term(Term(ts.front()->predicate));
        std::map<std::string, const Triple*> objects;
        for (const Triple* t : ts) objects[render_term(t->object)] = t;
        bool first_obj = true;
        for (auto& [ok, t] : objects) {
          out += first_obj ? " " : ", ";
          first_obj = false;
          out += turtle_term(t->object);
        }
      }
      out += " .\n";
    }
    return out;
  }

  std::string turtle_term(const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) {
      if (auto q = prefixes_.compress(iri->value);
          q && valid_qname_local(q->second)) {
        used_.insert(q->first);
        return q->first + ":" + q->second;
      }
      return "<" + iri->value + ">";
    }
    if (const auto* b = std::get_if<BlankNode>(&t)) {
      return "_:" + b->label;
    }
    const auto& lit = std::get<Literal>(t);
    if (lit.is_integer() && lexical_is_canonical_integer(lit.lexical)) {
      return lit.lexical;
    }
    std::string out = "\"";
    escape_literal_into(out, lit.lexical);
    out += '"';
    if (!lit.lang.empty()) {
      out += "@" + lit.lang;
    } else if (lit.datatype.value != xsd::kString) {
      out += "^^" + turtle_term(Term(lit.datatype));
    }
    return out;
  }

  static bool lexical_is_canonical_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    if (s[i] == '0' && s.size() > i + 1) return false;  // no leading zeros
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  }

  const TripleSet& triples_;
  const PrefixMap& prefixes_;
  std::set<std::string> used_;
};

}  // namespace detail

inline std::string serialize_turtle(const TripleSet& triples,
                                    const PrefixMap& prefixes) {
  return detail::TurtleWriter(triples, prefixes).write();
}

}  // namespace odang
