#pragma once
// Canonical N-Triples: one triple per line terminated " .\n", lines sorted
// byte-wise, literal escapes per the canonical form (only ", \, LF, CR are
// ECHAR-escaped; everything else is raw UTF-8). Output is byte-deterministic:
// serialize(S) == serialize(shuffle(S)).

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odang/errors.hpp"
#include "odang/term.hpp"

namespace odang {

namespace detail {

inline void append_codepoint_utf8(std::string& out, std::uint32_t cp) {
  if (cp <= 0x7F) {
    out += static_cast<char>(cp);
  } else if (cp <= 0x7FF) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp <= 0xFFFF) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline void escape_literal_into(std::string& out, std::string_view lexical) {
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
}

}  // namespace detail

inline void render_term(std::string& out, const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) {
    out += '<';
    out += iri->value;
    out += '>';
  } else if (const auto* b = std::get_if<BlankNode>(&t)) {
    out += "_:";
    out += b->label;
  } else {
    const auto& lit = std::get<Literal>(t);
    out += '"';
    detail::escape_literal_into(out, lit.lexical);
    out += '"';
    if (!lit.lang.empty()) {
      out += '@';
      out += lit.lang;
    } else if (lit.datatype.value != xsd::kString) {
      out += "^^<";
      out += lit.datatype.value;
      out += '>';
    }
  }
}

inline std::string render_term(const Term& t) {
  std::string out;
  render_term(out, t);
  return out;
}

inline std::string render_ntriple_line(const Triple& t) {
  std::string line;
  render_term(line, t.subject);
  line += ' ';
  line += '<';
  line += t.predicate.value;
  line += '>';
  line += ' ';
  render_term(line, t.object);
  line += " .\n";
  return line;
}

inline std::string serialize_ntriples(const TripleSet& triples) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const auto& t : triples) lines.push_back(render_ntriple_line(t));
  std::sort(lines.begin(), lines.end());
  std::string out;
  std::size_t total = 0;
  for (const auto& l : lines) total += l.size();
  out.reserve(total);
  for (const auto& l : lines) out += l;
  return out;
}

namespace detail {

class NtLineParser {
 public:
  NtLineParser(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

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
    return pos_ >= line_.size();
  }

  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

  char take() {
    if (pos_ >= line_.size()) fail("unexpected end of line");
    return line_[pos_++];
  }

  void expect(char c) {
    if (take() != c) fail(std::string("expected '") + c + "'");
  }

  Iri parse_iri() {
    expect('<');
    std::string value;
    while (true) {
      char c = take();
      if (c == '>') break;
      if (c == '\\') {
        value += decode_uchar();
      } else if (static_cast<unsigned char>(c) <= 0x20) {
        fail("whitespace or control character inside IRI");
      } else {
        value += c;
      }
    }
    if (value.empty()) fail("empty IRI");
    return Iri(std::move(value));
  }

  BlankNode parse_blank() {
    expect('_');
    expect(':');
    std::string label;
    while (pos_ < line_.size()) {
      char c = line_[pos_];
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '_' || c == '-' ||
                static_cast<unsigned char>(c) >= 0x80;
      if (!ok) break;
      label += c;
      ++pos_;
    }
    if (label.empty()) fail("empty blank node label");
    return BlankNode(std::move(label));
  }

  Literal parse_literal() {
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
    if (peek() == '@') {
      ++pos_;
      std::string tag;
      while (pos_ < line_.size()) {
        char c = line_[pos_];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
            (c >= '0' && c <= '9') || c == '-') {
          tag += c;
          ++pos_;
        } else {
          break;
        }
      }
      if (tag.empty()) fail("empty language tag");
      return Literal::lang_tagged(std::move(lexical), std::move(tag));
    }
    if (peek() == '^') {
      ++pos_;
      expect('^');
      Iri dt = parse_iri();
      return Literal(std::move(lexical), std::move(dt));
    }
    return Literal(std::move(lexical));
  }

  Term parse_term() {
    skip_ws();
    switch (peek()) {
      case '<': return parse_iri();
      case '_': return parse_blank();
      case '"': return parse_literal();
      default: fail("expected IRI, blank node, or literal");
    }
  }

 private:
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

  // IRIs only allow \u / \U escapes.
  std::string decode_uchar() {
    char c = take();
    if (c == 'u') return decode_hex(4);
    if (c == 'U') return decode_hex(8);
    fail("IRIs allow only \\u/\\U escapes");
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

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Duplicate lines collapse (set semantics). Empty input yields the empty set.
inline TripleSet parse_ntriples(std::string_view text) {
  TripleSet out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    if (start == text.size()) break;
    std::size_t eol = text.find('\n', start);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, eol - start);
    start = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    detail::NtLineParser p(line, line_no);
    if (p.at_end()) continue;
    if (p.peek() == '#') continue;

    Term subject = p.parse_term();
    if (is_literal(subject)) p.fail("literal subject");
    p.skip_ws();
    if (p.peek() != '<') p.fail("predicate must be an IRI");
    Iri predicate = p.parse_iri();
    Term object = p.parse_term();
    p.skip_ws();
    p.expect('.');
    if (!p.at_end() && p.peek() != '#') p.fail("trailing content after '.'");

    out.insert(Triple(std::move(subject), std::move(predicate),
                      std::move(object)));
  }
  return out;
}

}  // namespace odang
