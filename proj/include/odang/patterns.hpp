#pragma once
// Text format for basic graph patterns, one conjunct per line:
//
//   ?m :hasRole :HateSpeechMessage
//   ?m :hasTarget <https://w3id.org/odang#@ckyenge>
//   FILTER ?y >= 1980
//
// Terms: ?var, <iri>, qname, "literal"(@lang|^^dt)?, bare integer.
// '@prefix label: <iri> .' lines add bindings; '#' starts a comment.
// Numeric comparators (<, <=, >, >=) require integer constants.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "odang/errors.hpp"
#include "odang/store.hpp"
#include "odang/term.hpp"
#include "odang/vocab.hpp"

namespace odang {

namespace detail {

class PatternLineParser {
 public:
  PatternLineParser(std::string_view line, std::size_t line_no,
                    const PrefixMap& prefixes)
      : line_(line), line_no_(line_no), prefixes_(prefixes) {}

  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(line_no_, pos_ + 1, reason);
  }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= line_.size() || line_[pos_] == '#';
  }

  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

  std::string parse_var() {
    ++pos_;  // '?'
    std::string name;
    while (pos_ < line_.size()) {
      char c = line_[pos_];
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
          (c >= '0' && c <= '9') || c == '_') {
        name += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (name.empty()) fail("empty variable name");
    return name;
  }

  Pattern::Slot parse_slot() {
    skip_ws();
    if (peek() == '?') return Pattern::Slot::variable(parse_var());
    return Pattern::Slot::term(parse_term());
  }

  Term parse_term() {
    skip_ws();
    char c = peek();
    if (c == '<') return parse_iriref();
    if (c == '"') return parse_literal();
    if (c == '+' || c == '-' || (c >= '0' && c <= '9')) return parse_integer();
    return parse_qname();
  }

  Pattern::Cmp parse_cmp() {
    skip_ws();
    char c = peek();
    if (c == '=') {
      ++pos_;
      return Pattern::Cmp::Eq;
    }
    if (c == '!' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '=') {
      pos_ += 2;
      return Pattern::Cmp::Ne;
    }
    if (c == '<') {
      ++pos_;
      if (peek() == '=') {
        ++pos_;
        return Pattern::Cmp::Le;
      }
      return Pattern::Cmp::Lt;
    }
    if (c == '>') {
      ++pos_;
      if (peek() == '=') {
        ++pos_;
        return Pattern::Cmp::Ge;
      }
      return Pattern::Cmp::Gt;
    }
    fail("expected comparator (=, !=, <, <=, >, >=)");
  }

  bool consume_keyword(std::string_view kw) {
    skip_ws();
    if (line_.substr(pos_, kw.size()) != kw) return false;
    pos_ += kw.size();
    return true;
  }

 private:
  Iri parse_iriref() {
    ++pos_;  // '<'
    std::string value;
    while (pos_ < line_.size() && line_[pos_] != '>') {
      char c = line_[pos_++];
      if (static_cast<unsigned char>(c) <= 0x20) {
        fail("whitespace inside IRI");
      }
      value += c;
    }
    if (pos_ >= line_.size()) fail("unterminated IRI");
    ++pos_;  // '>'
    if (value.empty()) fail("empty IRI");
    return Iri(std::move(value));
  }

  Term parse_literal() {
    ++pos_;  // '"'
    std::string lexical;
    while (true) {
      if (pos_ >= line_.size()) fail("unterminated literal");
      char c = line_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= line_.size()) fail("dangling escape");
        char e = line_[pos_++];
        switch (e) {
          case 't': lexical += '\t'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case '"': lexical += '"'; break;
          case '\\': lexical += '\\'; break;
          default: fail(std::string("bad escape '\\") + e + "'");
        }
      } else {
        lexical += c;
      }
    }
    if (peek() == '@') {
      ++pos_;
      std::string tag;
      while (pos_ < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
              line_[pos_] == '-')) {
        tag += line_[pos_++];
      }
      if (tag.empty()) fail("empty language tag");
      return Literal::lang_tagged(std::move(lexical), std::move(tag));
    }
    if (peek() == '^') {
      ++pos_;
      if (peek() != '^') fail("expected '^^'");
      ++pos_;
      Term dt = peek() == '<' ? Term(parse_iriref()) : parse_qname();
      return Literal(std::move(lexical), std::get<Iri>(dt));
    }
    return Literal(std::move(lexical));
  }

  Term parse_integer() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += line_[pos_++];
    while (pos_ < line_.size() && line_[pos_] >= '0' && line_[pos_] <= '9') {
      lex += line_[pos_++];
    }
    if (lex.empty() || lex == "+" || lex == "-") fail("malformed integer");
    return Literal(std::move(lex), Iri(xsd::kInteger));
  }

  static bool qname_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '@' ||
           c == '%' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
  }

  Term parse_qname() {
    std::string label;
    while (pos_ < line_.size() && line_[pos_] != ':') {
      char c = line_[pos_];
      if (!qname_char(c) || c == '@' || c == '.') break;
      label += c;
      ++pos_;
    }
    if (peek() != ':') fail("expected a term");
    ++pos_;
    std::string local;
    while (pos_ < line_.size() && qname_char(line_[pos_])) {
      local += line_[pos_++];
    }
    if (!prefixes_.has(label)) {
      throw UnknownPrefixInDocumentError(line_no_, pos_, label);
    }
    return Iri(prefixes_.resolve(label) + local);
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
  const PrefixMap& prefixes_;
};

}  // namespace detail

inline Pattern parse_pattern(std::string_view text, PrefixMap prefixes) {
  Pattern pat;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t eol = text.find('\n', start);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, eol - start);
    start = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    detail::PatternLineParser p(line, line_no, prefixes);
    if (p.at_end()) continue;

    if (p.consume_keyword("@prefix")) {
      auto colon = line.find(':');
      auto lt = line.find('<');
      auto gt = line.find('>');
      if (colon == std::string_view::npos || lt == std::string_view::npos ||
          gt == std::string_view::npos || gt < lt) {
        throw ParseError(line_no, 1, "malformed @prefix directive");
      }
      std::string plabel(line.substr(7, colon - 7));
      while (!plabel.empty() && (plabel.front() == ' ' || plabel.front() == '\t')) {
        plabel.erase(plabel.begin());
      }
      while (!plabel.empty() && (plabel.back() == ' ' || plabel.back() == '\t')) {
        plabel.pop_back();
      }
      prefixes.bind(plabel, std::string(line.substr(lt + 1, gt - lt - 1)));
      continue;
    }

    if (p.consume_keyword("FILTER")) {
      Pattern::Filter f;
      p.skip_ws();
      if (p.peek() != '?') p.fail("FILTER needs a ?variable");
      f.var = p.parse_var();
      f.cmp = p.parse_cmp();
      f.constant = p.parse_term();
      if (!p.at_end()) p.fail("trailing content after filter");
      if (is_numeric_cmp(f.cmp)) {
        const auto* lit = std::get_if<Literal>(&f.constant);
        if (!lit || !lit->is_integer()) {
          p.fail("numeric comparators require an integer constant");
        }
      }
      pat.filters.push_back(std::move(f));
      continue;
    }

    Pattern::Conjunct c;
    c.subject = p.parse_slot();
    c.predicate = p.parse_slot();
    c.object = p.parse_slot();
    if (!p.at_end()) p.fail("trailing content after conjunct");
    if (!c.predicate.is_var() && !is_iri(*c.predicate.constant)) {
      p.fail("predicate position must be an IRI or variable");
    }
    pat.conjuncts.push_back(std::move(c));
  }
  return pat;
}

}  // namespace odang
