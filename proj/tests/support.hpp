#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kernseq/automata.hpp"
#include "kernseq/error.hpp"
#include "kernseq/oracle.hpp"
#include "kernseq/relation.hpp"
#include "kernseq/textio.hpp"

namespace kernseq::test {

inline std::string data_path(std::string_view name) { return std::string(KERNSEQ_DATA_DIR) + "/" + std::string(name); }

inline TransducerFile load(std::string_view name) { return read_transducer_file(data_path(name)); }

inline LetterTransducer fixture(std::string_view name) { return require_relation(load(name), name); }

/// Letters of `text`, one character each.
inline Word word(const Alphabet& a, std::string_view text) {
  Word w;
  for (char c : text) w.push_back(*a.find(std::string(1, c)));
  return w;
}

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(oracle_seed() * 1000003u + salt); }

/// Membership by enumerating runs depth-first, without subsets.
inline bool accepts_by_runs(const Nfa& a, const Word& w) {
  struct Item {
    State q;
    std::size_t i;
  };
  std::vector<Item> stack;
  for (State q : a.initials()) stack.push_back({q, 0});
  std::set<std::pair<State, std::size_t>> seen;
  while (!stack.empty()) {
    auto [q, i] = stack.back();
    stack.pop_back();
    if (!seen.insert({q, i}).second) continue;
    if (i == w.size()) {
      if (a.is_final(q)) return true;
      continue;
    }
    for (const Edge& e : a.successors(q, w[i])) stack.push_back({e.target, i + 1});
  }
  return false;
}

/// Words of length <= bound on which the two automata disagree, or none.
inline std::optional<Word> language_difference(const Nfa& a, const Nfa& b, std::size_t bound) {
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Word& w : all_words(a.alphabet().size(), n))
      if (accepts_by_runs(a, w) != accepts_by_runs(b, w)) return w;
  return std::nullopt;
}

/// A shortest accepted word, by breadth-first search on states.
inline std::optional<Word> shortest_word(const Nfa& a) {
  std::vector<std::optional<Word>> best(a.num_states());
  std::vector<State> queue;
  for (State q : a.initials())
    if (!best[q]) {
      best[q] = Word{};
      queue.push_back(q);
    }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const State q = queue[i];
    if (a.is_final(q)) return best[q];
    for (const Edge& e : a.edges(q))
      if (!best[e.target]) {
        best[e.target] = *best[q];
        best[e.target]->push_back(e.letter);
        queue.push_back(e.target);
      }
  }
  return std::nullopt;
}

/// Pairs of words per length, as sets of codes.
using PairSet = std::set<std::pair<std::uint64_t, std::uint64_t>>;

inline PairSet as_set(const EnumeratedRelation& r) { return PairSet(r.pairs.begin(), r.pairs.end()); }

/// Relational join {(u, w) : (u, v) in first, (v, w) in second}.
inline PairSet join(const PairSet& first, const PairSet& second) {
  std::multimap<std::uint64_t, std::uint64_t> by_source(second.begin(), second.end());
  PairSet out;
  for (const auto& [u, v] : first) {
    auto [lo, hi] = by_source.equal_range(v);
    for (auto it = lo; it != hi; ++it) out.emplace(u, it->second);
  }
  return out;
}

/// Least fixpoint of Q = Q + Q o P starting from P, by repeated joins.
inline PairSet join_fixpoint(const PairSet& p) {
  PairSet q = p;
  while (true) {
    PairSet next = q;
    for (const auto& pair : join(q, p)) next.insert(pair);
    if (next == q) return q;
    q = std::move(next);
  }
}

/// Random instance `i` of the mixed suite used by the property tests.
inline RandomOptions suite_options(std::mt19937_64& rng, std::size_t i) {
  static constexpr RandomFamily families[] = {RandomFamily::StateClasses, RandomFamily::ClassTrace,
                                              RandomFamily::GluedIdentity};
  RandomOptions o;
  o.family = families[i % 3];
  o.letters = 2;
  o.states = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
  o.classes = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  return o;
}

inline LetterTransducer suite_instance(std::size_t i, std::uint64_t salt = 0) {
  auto rng = rng_for(salt * 7919 + i);
  const RandomOptions o = suite_options(rng, i);
  return random_equivalence(rng, o);
}

}  // namespace kernseq::test
