#include "kernseq/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <utility>

#include "kernseq/error.hpp"

namespace kernseq {

namespace {

void require_same_alphabet(const Nfa& a, const Nfa& b) {
  if (!(a.alphabet() == b.alphabet()))
    throw Error(ErrorCode::AlphabetMismatch, "automata are over different alphabets");
}

std::string subset_note(const std::vector<State>& subset) {
  std::string note = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) note += ',';
    note += std::to_string(subset[i]);
  }
  return note + "}";
}

// States reachable backwards from `seeds` (inclusive).
std::vector<bool> backward_closure(const Nfa& a, const std::vector<bool>& seeds) {
  std::vector<std::vector<State>> preds(a.num_states());
  for (State p = 0; p < a.num_states(); ++p)
    for (const Edge& e : a.edges(p)) preds[e.target].push_back(p);
  std::vector<bool> seen = seeds;
  std::vector<State> stack;
  for (State q = 0; q < a.num_states(); ++q)
    if (seen[q]) stack.push_back(q);
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : preds[q])
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
  }
  return seen;
}

std::vector<bool> forward_closure(const Nfa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State i : a.initials())
    if (!seen[i]) {
      seen[i] = true;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    State p = stack.back();
    stack.pop_back();
    for (const Edge& e : a.edges(p))
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
  }
  return seen;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nfa

Nfa::Nfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

std::size_t Nfa::num_transitions() const noexcept {
  std::size_t n = 0;
  for (const auto& edges : out_) n += edges.size();
  return n;
}

void Nfa::check_state(State state) const {
  if (state >= out_.size()) throw Error(ErrorCode::Undeclared, "undeclared state " + std::to_string(state));
}

State Nfa::add_state(bool final) {
  out_.emplace_back();
  final_.push_back(final);
  notes_.emplace_back();
  return static_cast<State>(out_.size() - 1);
}

void Nfa::add_transition(State source, Letter letter, State target) {
  check_state(source);
  check_state(target);
  if (letter >= alphabet_.size())
    throw Error(ErrorCode::Undeclared, "letter " + std::to_string(letter) + " not in alphabet");
  auto& edges = out_[source];
  Edge edge{letter, target};
  auto it = std::lower_bound(edges.begin(), edges.end(), edge);
  if (it == edges.end() || *it != edge) edges.insert(it, edge);
}

void Nfa::add_initial(State state) {
  check_state(state);
  auto it = std::lower_bound(initials_.begin(), initials_.end(), state);
  if (it == initials_.end() || *it != state) initials_.insert(it, state);
}

void Nfa::set_final(State state, bool final) {
  check_state(state);
  final_[state] = final;
}

std::span<const Edge> Nfa::edges(State state) const {
  check_state(state);
  return out_[state];
}

std::span<const Edge> Nfa::successors(State state, Letter letter) const {
  const auto& edges = out_.at(state);
  auto lo = std::lower_bound(edges.begin(), edges.end(), Edge{letter, 0});
  auto hi = lo;
  while (hi != edges.end() && hi->letter == letter) ++hi;
  return {lo, hi};
}

bool Nfa::is_initial(State state) const {
  return std::binary_search(initials_.begin(), initials_.end(), state);
}

bool Nfa::is_deterministic() const {
  if (initials_.size() > 1) return false;
  for (const auto& edges : out_)
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i].letter == edges[i - 1].letter) return false;
  return true;
}

bool Nfa::is_complete() const {
  if (initials_.size() != 1 || !is_deterministic()) return false;
  for (const auto& edges : out_)
    if (edges.size() != alphabet_.size()) return false;
  return true;
}

bool Nfa::accepts(const Word& word) const {
  std::vector<State> current = initials_;
  for (Letter letter : word) {
    std::vector<State> next;
    for (State p : current)
      for (const Edge& e : successors(p, letter)) next.push_back(e.target);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](State q) { return final_[q]; });
}

void Nfa::set_note(State state, std::string note) {
  check_state(state);
  notes_[state] = std::move(note);
}

const std::string& Nfa::note(State state) const {
  check_state(state);
  return notes_[state];
}

bool operator==(const Nfa& lhs, const Nfa& rhs) {
  return lhs.alphabet_ == rhs.alphabet_ && lhs.out_ == rhs.out_ && lhs.initials_ == rhs.initials_ &&
         lhs.final_ == rhs.final_;
}

// ---------------------------------------------------------------------------
// DenseDfa

DenseDfa::DenseDfa(const Nfa& dfa) : letters_(dfa.alphabet().size()) {
  if (!dfa.is_complete())
    throw Error(ErrorCode::PreconditionViolated, "dense view requires a complete deterministic automaton");
  initial_ = dfa.initials().front();
  table_.resize(dfa.num_states() * letters_);
  final_.resize(dfa.num_states());
  for (State p = 0; p < dfa.num_states(); ++p) {
    final_[p] = dfa.is_final(p);
    for (const Edge& e : dfa.edges(p)) table_[p * letters_ + e.letter] = e.target;
  }
}

// ---------------------------------------------------------------------------
// Constructions

Nfa determinize(const Nfa& a) {
  const std::size_t k = a.alphabet().size();
  Nfa out(a.alphabet());
  std::map<std::vector<State>, State> ids;
  std::deque<std::vector<State>> work;

  auto intern = [&](std::vector<State> subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    bool final = std::any_of(subset.begin(), subset.end(), [&](State q) { return a.is_final(q); });
    State id = out.add_state(final);
    out.set_note(id, subset_note(subset));
    ids.emplace(subset, id);
    work.push_back(std::move(subset));
    return id;
  };

  out.add_initial(intern(a.initials()));
  std::vector<std::vector<State>> buckets(k);
  while (!work.empty()) {
    std::vector<State> subset = std::move(work.front());
    work.pop_front();
    State source = ids.at(subset);
    for (auto& bucket : buckets) bucket.clear();
    for (State p : subset)
      for (const Edge& e : a.edges(p)) buckets[e.letter].push_back(e.target);
    for (Letter letter = 0; letter < k; ++letter) {
      auto& bucket = buckets[letter];
      std::sort(bucket.begin(), bucket.end());
      bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
      State target = intern(bucket);
      out.add_transition(source, letter, target);
    }
  }
  return out;
}

Nfa trim(const Nfa& a) {
  std::vector<bool> finals(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) finals[q] = a.is_final(q);
  const auto accessible = forward_closure(a);
  const auto coaccessible = backward_closure(a, finals);

  constexpr State kDropped = ~State{0};
  std::vector<State> remap(a.num_states(), kDropped);
  Nfa out(a.alphabet());
  for (State q = 0; q < a.num_states(); ++q)
    if (accessible[q] && coaccessible[q]) {
      remap[q] = out.add_state(a.is_final(q));
      out.set_note(remap[q], a.note(q));
    }
  for (State q = 0; q < a.num_states(); ++q) {
    if (remap[q] == kDropped) continue;
    for (const Edge& e : a.edges(q))
      if (remap[e.target] != kDropped) out.add_transition(remap[q], e.letter, remap[e.target]);
  }
  for (State i : a.initials())
    if (remap[i] != kDropped) out.add_initial(remap[i]);
  return out;
}

Nfa minimize(const Nfa& dfa) {
  const DenseDfa d(dfa);
  const std::size_t n = d.num_states();
  const std::size_t k = d.num_letters();

  std::vector<std::uint32_t> block(n);
  for (State q = 0; q < n; ++q) block[q] = d.is_final(q) ? 1 : 0;
  std::size_t num_blocks = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> signatures;
    std::vector<std::uint32_t> refined(n);
    std::vector<std::uint32_t> signature(k + 1);
    for (State q = 0; q < n; ++q) {
      signature[0] = block[q];
      for (Letter a = 0; a < k; ++a) signature[a + 1] = block[d.next(q, a)];
      auto [it, inserted] = signatures.emplace(signature, static_cast<std::uint32_t>(signatures.size()));
      refined[q] = it->second;
    }
    block = std::move(refined);
    if (signatures.size() == num_blocks) break;
    num_blocks = signatures.size();
  }

  // Renumber blocks breadth-first from the initial block; unreachable blocks
  // cannot occur after determinize but are dropped anyway.
  std::vector<State> representative(num_blocks, ~State{0});
  for (State q = n; q-- > 0;) representative[block[q]] = q;
  constexpr State kUnset = ~State{0};
  std::vector<State> number(num_blocks, kUnset);
  std::vector<std::uint32_t> order;
  std::deque<std::uint32_t> queue{block[d.initial()]};
  number[block[d.initial()]] = 0;
  order.push_back(block[d.initial()]);
  while (!queue.empty()) {
    std::uint32_t b = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < k; ++a) {
      std::uint32_t t = block[d.next(representative[b], a)];
      if (number[t] == kUnset) {
        number[t] = static_cast<State>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  Nfa out(dfa.alphabet());
  for (std::uint32_t b : order) out.add_state(d.is_final(representative[b]));
  for (std::uint32_t b : order)
    for (Letter a = 0; a < k; ++a)
      out.add_transition(number[b], a, number[block[d.next(representative[b], a)]]);
  out.add_initial(0);
  return out;
}

Nfa canonical_dfa(const Nfa& a) { return minimize(determinize(a)); }

Nfa intersect(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  Nfa out(a.alphabet());
  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> work;
  auto intern = [&](State p, State q) {
    auto [it, inserted] = ids.emplace(std::make_pair(p, q), 0);
    if (inserted) {
      it->second = out.add_state(a.is_final(p) && b.is_final(q));
      out.set_note(it->second, "(" + std::to_string(p) + "," + std::to_string(q) + ")");
      work.emplace_back(p, q);
    }
    return it->second;
  };
  for (State i : a.initials())
    for (State j : b.initials()) out.add_initial(intern(i, j));
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    State source = ids.at({p, q});
    for (const Edge& e : a.edges(p))
      for (const Edge& f : b.successors(q, e.letter)) out.add_transition(source, e.letter, intern(e.target, f.target));
  }
  return out;
}

Nfa unite(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  Nfa out(a.alphabet());
  for (State q = 0; q < a.num_states(); ++q) out.add_state(a.is_final(q));
  const State offset = static_cast<State>(a.num_states());
  for (State q = 0; q < b.num_states(); ++q) out.add_state(b.is_final(q));
  for (State q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges(q)) out.add_transition(q, e.letter, e.target);
  for (State q = 0; q < b.num_states(); ++q)
    for (const Edge& e : b.edges(q)) out.add_transition(q + offset, e.letter, e.target + offset);
  for (State i : a.initials()) out.add_initial(i);
  for (State i : b.initials()) out.add_initial(i + offset);
  return out;
}

Nfa complement(const Nfa& dfa) {
  if (!dfa.is_complete())
    throw Error(ErrorCode::PreconditionViolated, "complement requires a complete deterministic automaton");
  Nfa out = dfa;
  for (State q = 0; q < out.num_states(); ++q) out.set_final(q, !dfa.is_final(q));
  return out;
}

Nfa difference(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  return intersect(a, complement(determinize(b)));
}

bool is_empty(const Nfa& a) {
  const auto reach = forward_closure(a);
  for (State q = 0; q < a.num_states(); ++q)
    if (reach[q] && a.is_final(q)) return false;
  return true;
}

bool includes(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  const DenseDfa db(determinize(b));
  std::vector<bool> seen(a.num_states() * db.num_states(), false);
  std::vector<std::pair<State, State>> stack;
  auto visit = [&](State p, State q) {
    std::size_t key = static_cast<std::size_t>(p) * db.num_states() + q;
    if (seen[key]) return;
    seen[key] = true;
    stack.emplace_back(p, q);
  };
  for (State i : a.initials()) visit(i, db.initial());
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    if (a.is_final(p) && !db.is_final(q)) return false;
    for (const Edge& e : a.edges(p)) visit(e.target, db.next(q, e.letter));
  }
  return true;
}

bool language_equal(const Nfa& a, const Nfa& b) { return includes(a, b) && includes(b, a); }

}  // namespace kernseq
