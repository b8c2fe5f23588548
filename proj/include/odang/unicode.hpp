#pragma once
// Thin ICU wrappers: UTF-8 <-> code points, NFC normalization, simple
// lowercasing, character classes. Code-point vectors stand in for "Unicode
// scalar value" indexing wherever the spec measures offsets.

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace odang::uni {

inline std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  icu::UnicodeString us = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  for (int32_t i = 0; i < us.length();) {
    UChar32 c = us.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  icu::UnicodeString us(static_cast<UChar32>(cp));
  us.toUTF8String(out);
}

inline std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t c : cps) append_utf8(out, c);
  return out;
}

inline std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(s);
  icu::UnicodeString us = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString normalized = norm->normalize(us, status);
  if (U_FAILURE(status)) return std::string(s);
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

// Simple per-code-point lowercase (locale independent, deterministic).
inline std::string lower(std::string_view s) {
  std::string out;
  for (char32_t c : decode_utf8(s)) {
    append_utf8(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
  }
  return out;
}

inline std::string upper_first(std::string_view s) {
  auto cps = decode_utf8(s);
  if (!cps.empty()) {
    cps[0] = static_cast<char32_t>(u_toupper(static_cast<UChar32>(cps[0])));
  }
  return encode_utf8(cps);
}

inline bool is_letter(char32_t c) {
  return u_isalpha(static_cast<UChar32>(c)) != 0;
}
inline bool is_digit(char32_t c) {
  return u_isdigit(static_cast<UChar32>(c)) != 0;
}

// Substring by scalar-value offsets [start, end).
inline std::string slice_by_scalars(std::string_view text, std::size_t start,
                                    std::size_t end) {
  auto cps = decode_utf8(text);
  if (start > cps.size() || end > cps.size() || start > end) return {};
  std::string out;
  for (std::size_t i = start; i < end; ++i) append_utf8(out, cps[i]);
  return out;
}

inline std::size_t scalar_length(std::string_view text) {
  return decode_utf8(text).size();
}

// "sono pericolosi" -> "SonoPericolosi". Used for concept labels and scheme
// names that become IRI local names.
inline std::string camel_slug(std::string_view s) {
  std::string out;
  bool word_start = true;
  for (char32_t c : decode_utf8(s)) {
    if (!is_letter(c) && !is_digit(c)) {
      word_start = true;
      continue;
    }
    if (word_start) {
      append_utf8(out, static_cast<char32_t>(u_toupper(static_cast<UChar32>(c))));
      word_start = false;
    } else {
      append_utf8(out, c);
    }
  }
  return out;
}

}  // namespace odang::uni
