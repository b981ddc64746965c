#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kernseq/alphabet.hpp"

namespace kernseq {

using State = std::uint32_t;

struct Edge {
  Letter letter;
  State target;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Nondeterministic finite automaton without epsilon transitions. State
/// identifiers are the contiguous integers 0..num_states()-1. Outgoing edges
/// of a state are kept sorted by (letter, target) and free of duplicates.
class Nfa {
 public:
  Nfa() = default;
  explicit Nfa(Alphabet alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return out_.size(); }
  std::size_t num_transitions() const noexcept;

  State add_state(bool final = false);
  void add_transition(State source, Letter letter, State target);
  void add_initial(State state);
  void set_final(State state, bool final = true);

  std::span<const Edge> edges(State state) const;
  /// Edges of `state` reading `letter`.
  std::span<const Edge> successors(State state, Letter letter) const;

  const std::vector<State>& initials() const noexcept { return initials_; }
  bool is_initial(State state) const;
  bool is_final(State state) const { return final_.at(state); }

  /// At most one initial state and no two transitions share (source, letter).
  bool is_deterministic() const;
  /// Exactly one initial state and a transition for every (state, letter).
  bool is_complete() const;

  bool accepts(const Word& word) const;

  /// Provenance text (e.g. the subset a determinized state stands for); only
  /// used for debugging output and ignored by equality.
  void set_note(State state, std::string note);
  const std::string& note(State state) const;

  /// Structural equality: same alphabet, states, transitions, initials, finals.
  friend bool operator==(const Nfa& lhs, const Nfa& rhs);

 private:
  void check_state(State state) const;

  Alphabet alphabet_;
  std::vector<std::vector<Edge>> out_;
  std::vector<State> initials_;
  std::vector<bool> final_;
  std::vector<std::string> notes_;
};

/// Table view of a complete deterministic Nfa.
class DenseDfa {
 public:
  explicit DenseDfa(const Nfa& dfa);

  std::size_t num_states() const noexcept { return final_.size(); }
  std::size_t num_letters() const noexcept { return letters_; }
  State initial() const noexcept { return initial_; }
  State next(State state, Letter letter) const { return table_[state * letters_ + letter]; }
  bool is_final(State state) const { return final_[state]; }

 private:
  std::size_t letters_ = 0;
  State initial_ = 0;
  std::vector<State> table_;
  std::vector<bool> final_;
};

/// Subset construction. The result is deterministic and complete; the empty
/// subset plays the role of the sink. States are numbered in discovery order.
Nfa determinize(const Nfa& a);

/// Restriction to states that are both accessible and co-accessible.
Nfa trim(const Nfa& a);

/// Moore partition refinement of a complete deterministic automaton; the
/// result is complete, numbered in breadth-first order from the initial state.
Nfa minimize(const Nfa& dfa);

/// determinize followed by minimize.
Nfa canonical_dfa(const Nfa& a);

Nfa intersect(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
/// Requires a complete deterministic input.
Nfa complement(const Nfa& dfa);
Nfa difference(const Nfa& a, const Nfa& b);

bool is_empty(const Nfa& a);
/// L(a) is a subset of L(b).
bool includes(const Nfa& a, const Nfa& b);
bool language_equal(const Nfa& a, const Nfa& b);

}  // namespace kernseq
