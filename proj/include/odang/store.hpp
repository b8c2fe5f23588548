#pragma once
// Indexed in-memory triple store with a basic-graph-pattern engine.
//
// Terms are interned into dense ids; three orderings (SPO, POS, OSP) over the
// same deduplicated id-triples back the lookups. Join strategy: conjuncts are
// picked greedily by ascending candidate-range size under the current
// binding, then an index-backed nested-loop join; filters fire as soon as
// their variable binds. Readers share a lock; a writer excludes them, so
// queries always observe a consistent snapshot.

#include <array>
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "odang/errors.hpp"
#include "odang/term.hpp"
#include "odang/vocab.hpp"

namespace odang {

struct Pattern {
  struct Slot {
    std::optional<Term> constant;  // unset => variable
    std::string var;

    static Slot variable(std::string name) { return {std::nullopt, std::move(name)}; }
    static Slot term(Term t) { return {std::move(t), {}}; }
    bool is_var() const { return !constant.has_value(); }
  };

  struct Conjunct {
    Slot subject, predicate, object;
  };

  enum class Cmp { Eq, Ne, Lt, Le, Gt, Ge };

  struct Filter {
    std::string var;
    Cmp cmp = Cmp::Eq;
    Term constant;
  };

  std::vector<Conjunct> conjuncts;
  std::vector<Filter> filters;

  std::vector<std::string> variables() const {
    std::set<std::string> vars;
    for (const auto& c : conjuncts) {
      for (const Slot* s : {&c.subject, &c.predicate, &c.object}) {
        if (s->is_var()) vars.insert(s->var);
      }
    }
    return {vars.begin(), vars.end()};
  }
};

inline bool is_numeric_cmp(Pattern::Cmp c) {
  return c == Pattern::Cmp::Lt || c == Pattern::Cmp::Le ||
         c == Pattern::Cmp::Gt || c == Pattern::Cmp::Ge;
}

struct QueryResult {
  std::vector<std::string> vars;          // sorted by name
  std::vector<std::vector<Term>> rows;    // sorted by interned ids

  bool operator==(const QueryResult&) const = default;
};

class TripleStore {
 public:
  using TermId = std::uint32_t;
  using IdTriple = std::array<TermId, 3>;  // always (s, p, o)

  TripleStore() = default;

  // Set semantics; returns the number of newly added triples. All three
  // indexes are updated under the writer lock, atomically w.r.t. queries.
  std::size_t insert(std::span<const Triple> triples) {
    std::unique_lock lock(mutex_);
    std::vector<IdTriple> fresh;
    fresh.reserve(triples.size());
    for (const auto& t : triples) {
      IdTriple id{intern(t.subject), intern(Term(t.predicate)),
                  intern(t.object)};
      if (members_.insert(id).second) fresh.push_back(id);
    }
    if (fresh.empty()) return 0;
    append_sorted(spo_, fresh, kSpo);
    append_sorted(pos_, fresh, kPos);
    append_sorted(osp_, fresh, kOsp);
    return fresh.size();
  }

  std::size_t insert(const TripleSet& triples) {
    std::vector<Triple> v(triples.begin(), triples.end());
    return insert(std::span<const Triple>(v));
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return spo_.size();
  }

  TripleSet all() const {
    std::shared_lock lock(mutex_);
    TripleSet out;
    for (const auto& t : spo_) out.insert(materialize(t));
    return out;
  }

  QueryResult query(const Pattern& pattern) const {
    std::shared_lock lock(mutex_);
    return query_locked(pattern);
  }

  // All triples incident (as subject or object) to any term bound to a
  // projected variable in any solution.
  TripleSet export_subgraph(const Pattern& pattern,
                            const std::vector<std::string>& projection) const {
    std::shared_lock lock(mutex_);
    auto vars = pattern.variables();
    for (const auto& v : projection) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw Error("projection variable '" + v + "' not in pattern");
      }
    }
    QueryResult result = query_locked(pattern);
    std::set<TermId> anchors;
    for (std::size_t vi = 0; vi < result.vars.size(); ++vi) {
      if (std::find(projection.begin(), projection.end(), result.vars[vi]) ==
          projection.end()) {
        continue;
      }
      for (const auto& row : result.rows) {
        if (auto it = ids_.find(row[vi]); it != ids_.end()) {
          anchors.insert(it->second);
        }
      }
    }
    TripleSet out;
    for (const auto& t : spo_) {
      if (anchors.count(t[0]) || anchors.count(t[2])) {
        out.insert(materialize(t));
      }
    }
    return out;
  }

 private:
  struct IdTripleHash {
    std::size_t operator()(const IdTriple& t) const {
      std::uint64_t h = t[0];
      h = h * 0x100000001B3ULL ^ t[1];
      h = h * 0x100000001B3ULL ^ t[2];
      return static_cast<std::size_t>(h);
    }
  };

  // position permutations defining the three orders
  static constexpr std::array<int, 3> kSpo{0, 1, 2};
  static constexpr std::array<int, 3> kPos{1, 2, 0};
  static constexpr std::array<int, 3> kOsp{2, 0, 1};

  static bool less_in(const IdTriple& a, const IdTriple& b,
                      const std::array<int, 3>& order) {
    for (int p : order) {
      if (a[p] != b[p]) return a[p] < b[p];
    }
    return false;
  }

  static void append_sorted(std::vector<IdTriple>& index,
                            std::vector<IdTriple> fresh,
                            const std::array<int, 3>& order) {
    auto cmp = [&order](const IdTriple& a, const IdTriple& b) {
      return less_in(a, b, order);
    };
    std::sort(fresh.begin(), fresh.end(), cmp);
    std::size_t old_size = index.size();
    index.insert(index.end(), fresh.begin(), fresh.end());
    std::inplace_merge(index.begin(), index.begin() + old_size, index.end(),
                       cmp);
  }

  TermId intern(const Term& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back(t);
    ids_.emplace(t, id);
    return id;
  }

  std::optional<TermId> lookup(const Term& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  Triple materialize(const IdTriple& t) const {
    return Triple(terms_[t[0]], std::get<Iri>(terms_[t[1]]), terms_[t[2]]);
  }

  // --- query evaluation ------------------------------------------------

  static constexpr TermId kFree = 0xFFFFFFFFu;

  struct ResolvedConjunct {
    // per position: a constant id, or kFree with a variable slot
    std::array<TermId, 3> constant{kFree, kFree, kFree};
    std::array<int, 3> var_slot{-1, -1, -1};
    bool impossible = false;  // constant term not in the dictionary
  };

  struct Range {
    const std::vector<IdTriple>* index = nullptr;
    std::size_t lo = 0, hi = 0;
    std::size_t size() const { return hi - lo; }
  };

  Range candidates(const ResolvedConjunct& c,
                   const std::vector<TermId>& binding) const {
    std::array<TermId, 3> bound{kFree, kFree, kFree};
    for (int p = 0; p < 3; ++p) {
      if (c.constant[p] != kFree) {
        bound[p] = c.constant[p];
      } else if (binding[c.var_slot[p]] != kFree) {
        bound[p] = binding[c.var_slot[p]];
      }
    }
    bool s = bound[0] != kFree, p = bound[1] != kFree, o = bound[2] != kFree;
    if (s) {
      if (p) return prefix_range(spo_, kSpo, {bound[0], bound[1]}, 2);
      if (o) return prefix_range(osp_, kOsp, {bound[2], bound[0]}, 2);
      return prefix_range(spo_, kSpo, {bound[0], 0}, 1);
    }
    if (p) {
      if (o) return prefix_range(pos_, kPos, {bound[1], bound[2]}, 2);
      return prefix_range(pos_, kPos, {bound[1], 0}, 1);
    }
    if (o) return prefix_range(osp_, kOsp, {bound[2], 0}, 1);
    return Range{&spo_, 0, spo_.size()};
  }

  Range prefix_range(const std::vector<IdTriple>& index,
                     const std::array<int, 3>& order,
                     std::array<TermId, 2> prefix, int prefix_len) const {
    auto key_less = [&order, prefix_len](const IdTriple& t,
                                         const std::array<TermId, 2>& key) {
      for (int i = 0; i < prefix_len; ++i) {
        TermId v = t[order[i]];
        if (v != key[i]) return v < key[i];
      }
      return false;
    };
    auto key_greater = [&order, prefix_len](const std::array<TermId, 2>& key,
                                            const IdTriple& t) {
      for (int i = 0; i < prefix_len; ++i) {
        TermId v = t[order[i]];
        if (v != key[i]) return key[i] < v;
      }
      return false;
    };
    auto lo = std::lower_bound(index.begin(), index.end(), prefix, key_less);
    auto hi = std::upper_bound(lo, index.end(), prefix, key_greater);
    return Range{&index, static_cast<std::size_t>(lo - index.begin()),
                 static_cast<std::size_t>(hi - index.begin())};
  }

  bool filter_passes(const Pattern::Filter& f, const Term& bound) const {
    if (f.cmp == Pattern::Cmp::Eq) return bound == f.constant;
    if (f.cmp == Pattern::Cmp::Ne) return bound != f.constant;
    const auto* lit = std::get_if<Literal>(&bound);
    const auto* rhs = std::get_if<Literal>(&f.constant);
    if (!lit || !rhs || !lit->is_integer() || !rhs->is_integer()) return false;
    std::int64_t a = 0, b = 0;
    try {
      a = std::stoll(lit->lexical);
      b = std::stoll(rhs->lexical);
    } catch (const std::exception&) {
      return false;  // out-of-range integer literal
    }
    switch (f.cmp) {
      case Pattern::Cmp::Lt: return a < b;
      case Pattern::Cmp::Le: return a <= b;
      case Pattern::Cmp::Gt: return a > b;
      case Pattern::Cmp::Ge: return a >= b;
      default: return false;
    }
  }

  QueryResult query_locked(const Pattern& pattern) const {
    std::vector<std::string> vars = pattern.variables();
    std::map<std::string, int> slot_of;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      slot_of[vars[i]] = static_cast<int>(i);
    }
    for (const auto& f : pattern.filters) {
      if (!slot_of.count(f.var)) throw UnboundFilterVariableError(f.var);
    }

    QueryResult result;
    result.vars = vars;
    if (pattern.conjuncts.empty()) return result;

    // group filters by slot for eager evaluation
    std::vector<std::vector<const Pattern::Filter*>> filters_by_slot(
        vars.size());
    for (const auto& f : pattern.filters) {
      filters_by_slot[slot_of[f.var]].push_back(&f);
    }

    std::vector<ResolvedConjunct> resolved;
    for (const auto& c : pattern.conjuncts) {
      ResolvedConjunct rc;
      const Pattern::Slot* slots[3] = {&c.subject, &c.predicate, &c.object};
      for (int p = 0; p < 3; ++p) {
        if (slots[p]->is_var()) {
          rc.var_slot[p] = slot_of[slots[p]->var];
        } else if (auto id = lookup(*slots[p]->constant)) {
          rc.constant[p] = *id;
        } else {
          rc.impossible = true;
        }
      }
      if (rc.impossible) return result;  // some constant is absent: no match
      resolved.push_back(rc);
    }

    std::vector<TermId> binding(vars.size(), kFree);
    std::vector<bool> done(resolved.size(), false);
    std::set<std::vector<TermId>> solutions;
    join(resolved, filters_by_slot, done, binding, solutions);

    for (const auto& sol : solutions) {
      std::vector<Term> row;
      row.reserve(sol.size());
      for (TermId id : sol) row.push_back(terms_[id]);
      result.rows.push_back(std::move(row));
    }
    return result;
  }

  void join(const std::vector<ResolvedConjunct>& conjuncts,
            const std::vector<std::vector<const Pattern::Filter*>>& filters,
            std::vector<bool>& done, std::vector<TermId>& binding,
            std::set<std::vector<TermId>>& solutions) const {
    // pick the cheapest remaining conjunct under the current binding
    int best = -1;
    Range best_range;
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
      if (done[i]) continue;
      Range r = candidates(conjuncts[i], binding);
      if (best < 0 || r.size() < best_range.size()) {
        best = static_cast<int>(i);
        best_range = r;
      }
    }
    if (best < 0) {
      solutions.insert(binding);
      return;
    }

    const ResolvedConjunct& c = conjuncts[best];
    done[best] = true;
    for (std::size_t i = best_range.lo; i < best_range.hi; ++i) {
      const IdTriple& t = (*best_range.index)[i];
      std::vector<int> newly_bound;
      bool ok = true;
      for (int p = 0; p < 3 && ok; ++p) {
        if (c.constant[p] != kFree) {
          ok = t[p] == c.constant[p];
        } else {
          int slot = c.var_slot[p];
          if (binding[slot] == kFree) {
            binding[slot] = t[p];
            newly_bound.push_back(slot);
            for (const auto* f : filters[slot]) {
              if (!filter_passes(*f, terms_[t[p]])) {
                ok = false;
                break;
              }
            }
          } else {
            ok = binding[slot] == t[p];
          }
        }
      }
      if (ok) join(conjuncts, filters, done, binding, solutions);
      for (int slot : newly_bound) binding[slot] = kFree;
    }
    done[best] = false;
  }

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::unordered_set<IdTriple, IdTripleHash> members_;
  std::vector<IdTriple> spo_, pos_, osp_;
  mutable std::shared_mutex mutex_;
};

}  // namespace odang
