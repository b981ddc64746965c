#include "kernseq/relation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "kernseq/error.hpp"

namespace kernseq {

std::size_t DiagonalSet::count() const { return static_cast<std::size_t>(std::count(member.begin(), member.end(), true)); }

RelationValidation validate_relation(const LetterTransducer& r) {
  RelationValidation v;
  v.is_letter_to_letter = r.input_alphabet() == r.output_alphabet();
  if (!v.is_letter_to_letter) return v;
  v.is_reflexive = includes(identity_relation(r.input_alphabet()).automaton(), r.automaton());
  v.is_symmetric = includes(inverse(r).automaton(), r.automaton());
  v.is_transitive = includes(compose(r, r).automaton(), r.automaton());
  return v;
}

void require_equivalence(const LetterTransducer& r) {
  const auto v = validate_relation(r);
  if (v.is_equivalence()) return;
  std::string what = "relation is not an equivalence:";
  if (!v.is_letter_to_letter) what += " input and output alphabets differ;";
  if (v.is_letter_to_letter && !v.is_reflexive) what += " not reflexive;";
  if (v.is_letter_to_letter && !v.is_symmetric) what += " not symmetric;";
  if (v.is_letter_to_letter && !v.is_transitive) what += " not transitive;";
  throw Error(ErrorCode::NotEquivalence, what);
}

LetterTransducer compose(const LetterTransducer& second, const LetterTransducer& first) {
  if (!(first.output_alphabet() == second.input_alphabet()))
    throw Error(ErrorCode::AlphabetMismatch, "composition: middle alphabets differ");
  const Nfa& fa = first.automaton();
  const Nfa& sa = second.automaton();
  const std::size_t middle = first.output_alphabet().size();

  LetterTransducer out(first.input_alphabet(), second.output_alphabet());
  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> work;
  auto intern = [&](State p, State q) {
    auto [it, inserted] = ids.emplace(std::make_pair(p, q), 0);
    if (inserted) {
      it->second = out.add_state(fa.is_final(p) && sa.is_final(q));
      work.emplace_back(p, q);
    }
    return it->second;
  };
  for (State i : fa.initials())
    for (State j : sa.initials()) out.add_initial(intern(i, j));

  // Edges of `second` grouped by their input (middle) letter.
  std::vector<std::vector<std::vector<Edge>>> by_middle(sa.num_states(), std::vector<std::vector<Edge>>(middle));
  for (State q = 0; q < sa.num_states(); ++q)
    for (const Edge& e : sa.edges(q)) by_middle[q][second.input_of(e.letter)].push_back(e);

  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    const State source = ids.at({p, q});
    for (const Edge& e : fa.edges(p)) {
      const Letter a = first.input_of(e.letter);
      const Letter b = first.output_of(e.letter);
      for (const Edge& f : by_middle[q][b])
        out.add_transition(source, a, second.output_of(f.letter), intern(e.target, f.target));
    }
  }
  return out;
}

LetterTransducer inverse(const LetterTransducer& r) {
  const Nfa& a = r.automaton();
  LetterTransducer out(r.output_alphabet(), r.input_alphabet());
  for (State q = 0; q < a.num_states(); ++q) out.add_state(a.is_final(q));
  for (State q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges(q)) out.add_transition(q, r.output_of(e.letter), r.input_of(e.letter), e.target);
  for (State i : a.initials()) out.add_initial(i);
  return out;
}

LetterTransducer canonical(const LetterTransducer& r) { return r.with_automaton(canonical_dfa(r.automaton())); }

DiagonalSet diagonal_states(const LetterTransducer& pair_dfa) {
  const Nfa& a = pair_dfa.automaton();
  if (!a.is_complete())
    throw Error(ErrorCode::PreconditionViolated, "diagonal states need a complete pair-deterministic transducer");
  if (!(pair_dfa.input_alphabet() == pair_dfa.output_alphabet()))
    throw Error(ErrorCode::AlphabetMismatch, "diagonal states need a relation over a single alphabet");
  // A state is off-diagonal iff a non-final state is reachable from it along
  // letters (x, x).
  std::vector<std::vector<State>> preds(a.num_states());
  for (State p = 0; p < a.num_states(); ++p)
    for (const Edge& e : a.edges(p))
      if (pair_dfa.input_of(e.letter) == pair_dfa.output_of(e.letter)) preds[e.target].push_back(p);
  std::vector<bool> off(a.num_states(), false);
  std::vector<State> stack;
  for (State q = 0; q < a.num_states(); ++q)
    if (!a.is_final(q)) {
      off[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : preds[q])
      if (!off[p]) {
        off[p] = true;
        stack.push_back(p);
      }
  }
  DiagonalSet d;
  d.member.resize(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) d.member[q] = !off[q];
  return d;
}

SyntacticCongruence syntactic_congruence(const LetterTransducer& r) {
  require_equivalence(r);
  return detail::syntactic_congruence_unchecked(r);
}

LetterTransducer prefix_closure(const LetterTransducer& r) {
  const Nfa& a = r.automaton();
  std::vector<std::vector<State>> preds(a.num_states());
  for (State p = 0; p < a.num_states(); ++p)
    for (const Edge& e : a.edges(p)) preds[e.target].push_back(p);
  Nfa closed = a;
  std::vector<State> stack;
  for (State q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) stack.push_back(q);
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : preds[q])
      if (!closed.is_final(p)) {
        closed.set_final(p);
        stack.push_back(p);
      }
  }
  return r.with_automaton(std::move(closed));
}

bool is_prefix_closed(const LetterTransducer& r) {
  require_equivalence(r);
  return detail::is_prefix_closed_unchecked(r);
}

ClosureResult transitive_closure(const LetterTransducer& p, const ClosureOptions& options) {
  if (options.cap == 0) throw Error(ErrorCode::InvalidInput, "closure cap must be at least 1");
  auto normalize = [&](const LetterTransducer& t) {
    return options.minimize ? canonical(t) : t.with_automaton(trim(determinize(t.automaton())));
  };
  LetterTransducer current = normalize(p);
  for (std::size_t i = 1; i <= options.cap; ++i) {
    LetterTransducer next = normalize(p.with_automaton(unite(current.automaton(), compose(current, p).automaton())));
    if (language_equal(next.automaton(), current.automaton())) return {std::move(current), i, true};
    if (i == options.cap) break;
    current = std::move(next);
  }
  return {std::move(current), options.cap, false};
}

LetterTransducer min_lex_uniformizer(const LetterTransducer& s) {
  require_equivalence(s);
  return detail::min_lex_uniformizer_unchecked(s);
}

namespace detail {

bool is_prefix_closed_unchecked(const LetterTransducer& r) {
  const Nfa t = trim(determinize(r.automaton()));
  for (State q = 0; q < t.num_states(); ++q)
    if (!t.is_final(q)) return false;
  return true;
}

SyntacticCongruence syntactic_congruence_unchecked(const LetterTransducer& r) {
  LetterTransducer dfa = canonical(r);
  DiagonalSet d = diagonal_states(dfa);
  Nfa restricted = dfa.automaton();
  for (State q = 0; q < restricted.num_states(); ++q) restricted.set_final(q, d.contains(q));
  return {dfa.with_automaton(std::move(restricted)), std::move(d)};
}

LetterTransducer min_lex_uniformizer_unchecked(const LetterTransducer& s) {
  const LetterTransducer dfa = canonical(s);
  const DenseDfa d(dfa.automaton());
  const std::size_t k = s.input_alphabet().size();

  // Bad: pairs (u, v) in S for which some (u, v') in S has v' < v. The
  // automaton reads (u, v), follows S on (u, v) and guesses v' letter by
  // letter; the mode records whether v' is already strictly smaller.
  enum Mode : std::uint8_t { kEqual = 0, kSmaller = 1 };
  LetterTransducer bad(s.input_alphabet(), s.input_alphabet());
  std::map<std::tuple<State, State, Mode>, State> ids;
  std::deque<std::tuple<State, State, Mode>> work;
  auto intern = [&](State p, State p2, Mode mode) {
    auto key = std::make_tuple(p, p2, mode);
    auto [it, inserted] = ids.emplace(key, 0);
    if (inserted) {
      it->second = bad.add_state(mode == kSmaller && d.is_final(p) && d.is_final(p2));
      work.push_back(key);
    }
    return it->second;
  };
  bad.add_initial(intern(d.initial(), d.initial(), kEqual));
  while (!work.empty()) {
    auto [p, p2, mode] = work.front();
    work.pop_front();
    const State source = ids.at({p, p2, mode});
    for (Letter a = 0; a < k; ++a)
      for (Letter b = 0; b < k; ++b) {
        const State q = d.next(p, dfa.pair(a, b));
        for (Letter c = 0; c < k; ++c) {
          Mode next_mode = mode;
          if (mode == kEqual) {
            if (c > b) continue;
            next_mode = c < b ? kSmaller : kEqual;
          }
          bad.add_transition(source, a, b, intern(q, d.next(p2, dfa.pair(a, c)), next_mode));
        }
      }
  }
  Nfa graph = intersect(dfa.automaton(), complement(determinize(bad.automaton())));
  return s.with_automaton(canonical_dfa(graph));
}

}  // namespace detail

}  // namespace kernseq
