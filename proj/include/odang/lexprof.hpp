#pragma once
// HurtLex-style lexicon loading, OntoLex encoding of entries, and
// per-category corpus profiling.
//
// Counting contract: greedy longest-match per token position; a matched
// occurrence increments every category of every entry whose lemma equals the
// matched n-gram; positions consumed by a multi-word match are not
// rematched. Means are exact rationals (int64 sums over document counts)
// reported to 4 decimals, so parallel or re-ordered evaluation cannot change
// a digit.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "odang/csv.hpp"
#include "odang/errors.hpp"
#include "odang/model.hpp"
#include "odang/term.hpp"
#include "odang/unicode.hpp"
#include "odang/vocab.hpp"

namespace odang {

// The 17 offense categories.
enum class Category {
  PS, RCI, PA, DDP, DDF, DMC, IS, OR_, AN, ASM_, ASF, PR, OM, QAS, CDS, RE, SVP
};

inline constexpr std::size_t kCategoryCount = 17;

inline constexpr std::array<Category, kCategoryCount> all_categories() {
  return {Category::PS,  Category::RCI, Category::PA,  Category::DDP,
          Category::DDF, Category::DMC, Category::IS,  Category::OR_,
          Category::AN,  Category::ASM_, Category::ASF, Category::PR,
          Category::OM,  Category::QAS, Category::CDS, Category::RE,
          Category::SVP};
}

inline std::string_view category_code(Category c) {
  switch (c) {
    case Category::PS: return "PS";
    case Category::RCI: return "RCI";
    case Category::PA: return "PA";
    case Category::DDP: return "DDP";
    case Category::DDF: return "DDF";
    case Category::DMC: return "DMC";
    case Category::IS: return "IS";
    case Category::OR_: return "OR";
    case Category::AN: return "AN";
    case Category::ASM_: return "ASM";
    case Category::ASF: return "ASF";
    case Category::PR: return "PR";
    case Category::OM: return "OM";
    case Category::QAS: return "QAS";
    case Category::CDS: return "CDS";
    case Category::RE: return "RE";
    case Category::SVP: return "SVP";
  }
  return "PS";
}

inline std::optional<Category> category_from_code(std::string_view code) {
  for (Category c : all_categories()) {
    if (category_code(c) == code) return c;
  }
  return std::nullopt;
}

// Human-readable category names. DMC follows the lexicon encoding's own
// label ("moral defects") rather than the category table's longer phrasing.
inline std::string_view category_label(Category c) {
  switch (c) {
    case Category::PS: return "ethnic slurs";
    case Category::RCI: return "location and demonyms";
    case Category::PA: return "profession and occupation";
    case Category::DDP: return "physical disabilities and diversity";
    case Category::DDF: return "cognitive disabilities and diversity";
    case Category::DMC: return "moral defects";
    case Category::IS: return "words related to social and economic advantages";
    case Category::OR_: return "words related to plants";
    case Category::AN: return "words related to animals";
    case Category::ASM_: return "words related to male genitalia";
    case Category::ASF: return "words related to female genitalia";
    case Category::PR: return "words related to prostitution";
    case Category::OM: return "words related to homosexuality";
    case Category::QAS:
      return "descriptive words with potential negative connotations";
    case Category::CDS: return "derogatory words";
    case Category::RE:
      return "felonies and words related to crime and immoral behavior";
    case Category::SVP:
      return "words related to the seven deadly sins of the christian tradition";
  }
  return "";
}

enum class LexiconLevel { Conservative, Inclusive };
enum class LevelFilter { ConservativeOnly, All };
enum class CountMode { Occurrences, Presence };

struct LexiconEntry {
  std::string id;
  std::string lemma;  // lowercase-normalized at load
  std::string pos;
  Category category = Category::PS;
  LexiconLevel level = LexiconLevel::Conservative;

  auto operator<=>(const LexiconEntry&) const = default;
};

// Unicode-aware tokenization: lowercased letter/digit runs; leading '@'/'#'
// stripped; URL-shaped chunks dropped; punctuation never survives.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i == start) break;
    std::string_view chunk = text.substr(start, i - start);
    if (chunk.rfind("http://", 0) == 0 || chunk.rfind("https://", 0) == 0 ||
        chunk.rfind("www.", 0) == 0) {
      continue;
    }
    while (!chunk.empty() && (chunk.front() == '@' || chunk.front() == '#')) {
      chunk.remove_prefix(1);
    }
    std::string run;
    for (char32_t cp : uni::decode_utf8(chunk)) {
      if (uni::is_letter(cp) || uni::is_digit(cp)) {
        uni::append_utf8(run, static_cast<char32_t>(
                                  u_tolower(static_cast<UChar32>(cp))));
      } else if (!run.empty()) {
        tokens.push_back(std::move(run));
        run.clear();
      }
    }
    if (!run.empty()) tokens.push_back(std::move(run));
  }
  return tokens;
}

// Expected columns: id, pos, category, level, lemma.
inline std::vector<LexiconEntry> load_lexicon(const Table& table,
                                              LevelFilter filter) {
  for (const char* name : {"id", "pos", "category", "level", "lemma"}) {
    if (table.column(name) < 0) throw ColumnMissingError(name);
  }
  int id_col = table.column("id"), pos_col = table.column("pos"),
      cat_col = table.column("category"), level_col = table.column("level"),
      lemma_col = table.column("lemma");

  std::vector<LexiconEntry> entries;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::size_t row_no = r + 1;
    if (row.size() != table.header.size()) {
      throw Error("lexicon row " + std::to_string(row_no) +
                  ": wrong field count");
    }
    auto category = category_from_code(row[cat_col]);
    if (!category) throw UnknownCategoryError(row_no, row[cat_col]);
    if (row[lemma_col].empty()) throw EmptyLemmaError(row_no);

    LexiconLevel level;
    if (row[level_col] == "conservative") {
      level = LexiconLevel::Conservative;
    } else if (row[level_col] == "inclusive") {
      level = LexiconLevel::Inclusive;
    } else {
      throw Error("lexicon row " + std::to_string(row_no) +
                  ": unknown level '" + row[level_col] + "'");
    }
    if (filter == LevelFilter::ConservativeOnly &&
        level != LexiconLevel::Conservative) {
      continue;
    }
    entries.push_back({row[id_col], uni::lower(row[lemma_col]), row[pos_col],
                       *category, level});
  }
  return entries;
}

inline TripleSet encode_lexicon_entry(const LexiconEntry& e,
                                      const OdangVocab& v = OdangVocab()) {
  TripleSet out;
  Iri node = v.minted(e.id);
  Iri category_node = v.minted(uni::lower(category_code(e.category)));
  out.insert({Term(node), vocab::rdf_type(), Term(v.lexical_entry_class())});
  out.insert({Term(node), vocab::rdfs_label(), Term(Literal(e.lemma))});
  out.insert({Term(node), vocab::lexinfo_partOfSpeech(),
              Term(v.term(uni::camel_slug(e.pos)))});
  out.insert({Term(node), v.is_described(), Term(category_node)});
  out.insert({Term(category_node), vocab::rdf_type(), Term(v.offensive_class())});
  out.insert({Term(category_node), vocab::rdfs_label(),
              Term(Literal(std::string(category_label(e.category))))});
  return out;
}

using CategoryCounts = std::array<std::int64_t, kCategoryCount>;

class LexiconIndex {
 public:
  explicit LexiconIndex(std::vector<LexiconEntry> entries)
      : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      auto tokens = tokenize(entries_[i].lemma);
      if (tokens.empty()) continue;  // nothing matchable
      if (tokens.size() == 1) {
        unigrams_[tokens[0]].push_back(i);
      } else {
        std::size_t len = tokens.size();
        ngrams_[tokens[0]].push_back({std::move(tokens), i});
        if (len > max_ngram_) max_ngram_ = len;
      }
    }
  }

  const std::vector<LexiconEntry>& entries() const { return entries_; }

  // Longest n-gram starting at `pos`; fills `matched` with the indexes of
  // every entry whose lemma equals it. Returns the match length (0 = none).
  std::size_t longest_match(const std::vector<std::string>& tokens,
                            std::size_t pos,
                            std::vector<std::size_t>& matched) const {
    matched.clear();
    std::size_t best_len = 0;
    if (auto it = ngrams_.find(tokens[pos]); it != ngrams_.end()) {
      for (const auto& ng : it->second) {
        std::size_t len = ng.tokens.size();
        if (len < best_len || pos + len > tokens.size()) continue;
        bool equal = true;
        for (std::size_t k = 1; k < len && equal; ++k) {
          equal = ng.tokens[k] == tokens[pos + k];
        }
        if (!equal) continue;
        if (len > best_len) {
          best_len = len;
          matched.clear();
        }
        matched.push_back(ng.entry);
      }
    }
    if (best_len == 0) {
      if (auto it = unigrams_.find(tokens[pos]); it != unigrams_.end()) {
        best_len = 1;
        matched = it->second;
      }
    }
    return best_len;
  }

 private:
  struct Ngram {
    std::vector<std::string> tokens;
    std::size_t entry;
  };

  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> unigrams_;
  std::unordered_map<std::string, std::vector<Ngram>> ngrams_;
  std::size_t max_ngram_ = 1;
};

inline CategoryCounts category_counts(const std::vector<std::string>& tokens,
                                      const LexiconIndex& index) {
  CategoryCounts counts{};
  std::vector<std::size_t> matched;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t len = index.longest_match(tokens, i, matched);
    if (len == 0) {
      ++i;
      continue;
    }
    for (std::size_t entry : matched) {
      counts[static_cast<std::size_t>(
          index.entries()[entry].category)] += 1;
    }
    i += len;
  }
  return counts;
}

// Exact rational, normalized; enough arithmetic for means and comparisons.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d) {
    std::int64_t g = std::gcd(n, d);
    if (g == 0) return {0, 1};
    n /= g;
    d /= g;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return {n, d};
  }

  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const {
    // den > 0 by construction; fixture-scale values cannot overflow
    return num * o.den < o.num * den;
  }
  bool operator>(const Rational& o) const { return o < *this; }

  double to_double() const { return static_cast<double>(num) / den; }

  // Fixed 4 decimals, half-up rounding, computed in integers.
  std::string to_decimal4() const {
    std::int64_t n = num < 0 ? -num : num;
    std::int64_t scaled = n * 10000;
    std::int64_t q = scaled / den;
    std::int64_t rem = scaled % den;
    if (2 * rem >= den) ++q;
    std::string digits = std::to_string(q % 10000);
    while (digits.size() < 4) digits.insert(digits.begin(), '0');
    return (num < 0 ? "-" : "") + std::to_string(q / 10000) + "." + digits;
  }
};

struct CategoryProfile {
  std::array<Rational, kCategoryCount> per_category{};
  std::size_t documents = 0;

  const Rational& mean(Category c) const {
    return per_category[static_cast<std::size_t>(c)];
  }

  bool operator==(const CategoryProfile&) const = default;
};

using TokenizedDoc = std::vector<std::string>;

inline CategoryProfile profile_documents(
    const std::vector<TokenizedDoc>& documents, const LexiconIndex& index,
    CountMode mode = CountMode::Occurrences) {
  if (documents.empty()) throw EmptyDatasetError();
  std::array<std::int64_t, kCategoryCount> sums{};
  for (const auto& doc : documents) {
    CategoryCounts counts = category_counts(doc, index);
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      sums[c] += mode == CountMode::Presence ? (counts[c] > 0 ? 1 : 0)
                                             : counts[c];
    }
  }
  CategoryProfile profile;
  profile.documents = documents.size();
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    profile.per_category[c] = Rational::of(
        sums[c], static_cast<std::int64_t>(documents.size()));
  }
  return profile;
}

inline CategoryProfile dataset_profile(
    const std::vector<TokenizedDoc>& documents, const LexiconIndex& index,
    CountMode mode = CountMode::Occurrences) {
  return profile_documents(documents, index, mode);
}

struct ProfiledDoc {
  std::string message_id;
  TokenizedDoc tokens;
};

// dataset_profile restricted to documents whose class annotation (by
// `class_annotator`, default the gold standard) equals `value`.
inline CategoryProfile class_conditional_profile(
    const std::vector<ProfiledDoc>& documents,
    const std::vector<AnnotationRecord>& records,
    const AnnotationScheme& scheme, const AnnotationValue& value,
    const LexiconIndex& index,
    const AnnotatorId& class_annotator = AnnotatorId::gold_standard(),
    CountMode mode = CountMode::Occurrences) {
  std::map<std::string, const AnnotationRecord*> class_of;
  for (const auto& r : records) {
    if (r.scheme.name == scheme.name && r.annotator == class_annotator) {
      class_of[r.message_ref] = &r;
    }
  }
  std::vector<TokenizedDoc> selected;
  for (const auto& doc : documents) {
    auto it = class_of.find(doc.message_id);
    if (it == class_of.end()) {
      throw Error("document '" + doc.message_id + "' has no '" + scheme.name +
                  "' record by " + class_annotator.node_local());
    }
    if (it->second->value == value) selected.push_back(doc.tokens);
  }
  if (selected.empty()) {
    throw EmptyClassError("no document matches the requested class value");
  }
  return profile_documents(selected, index, mode);
}

}  // namespace odang
