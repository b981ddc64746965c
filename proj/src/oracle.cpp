#include "kernseq/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "kernseq/error.hpp"

namespace kernseq {

namespace {

using StateSet = std::vector<State>;

StateSet post(const Nfa& a, const StateSet& from, Letter letter, const std::vector<bool>* keep = nullptr) {
  StateSet to;
  for (State p : from)
    for (const Edge& e : a.successors(p, letter))
      if (!keep || (*keep)[e.target]) to.push_back(e.target);
  std::sort(to.begin(), to.end());
  to.erase(std::unique(to.begin(), to.end()), to.end());
  return to;
}

bool any_final(const Nfa& a, const StateSet& set) {
  return std::any_of(set.begin(), set.end(), [&](State q) { return a.is_final(q); });
}

std::vector<std::vector<State>> predecessors(const Nfa& a, std::vector<std::vector<Letter>>* letters = nullptr) {
  std::vector<std::vector<State>> preds(a.num_states());
  if (letters) letters->assign(a.num_states(), {});
  for (State p = 0; p < a.num_states(); ++p)
    for (const Edge& e : a.edges(p)) {
      preds[e.target].push_back(p);
      if (letters) (*letters)[e.target].push_back(e.letter);
    }
  return preds;
}

// Entry i: states from which the input suffix u[i..] can be read (with some
// output) to a final state.
std::vector<std::vector<bool>> backward_along_input(const LetterTransducer& r, const Word& u) {
  const Nfa& a = r.automaton();
  std::vector<std::vector<Letter>> letters;
  const auto preds = predecessors(a, &letters);
  std::vector<std::vector<bool>> b(u.size() + 1, std::vector<bool>(a.num_states(), false));
  for (State q = 0; q < a.num_states(); ++q) b[u.size()][q] = a.is_final(q);
  for (std::size_t i = u.size(); i-- > 0;)
    for (State q = 0; q < a.num_states(); ++q) {
      if (!b[i + 1][q]) continue;
      for (std::size_t k = 0; k < preds[q].size(); ++k)
        if (r.input_of(letters[q][k]) == u[i]) b[i][preds[q][k]] = true;
    }
  return b;
}

StateSet initial_set(const Nfa& a, const std::vector<bool>& keep) {
  StateSet s;
  for (State i : a.initials())
    if (keep[i]) s.push_back(i);
  return s;
}

void check_bound(std::size_t bound) {
  if (bound > kMaxOracleBound)
    throw Error(ErrorCode::BoundTooLarge,
                "bound " + std::to_string(bound) + " exceeds " + std::to_string(kMaxOracleBound));
}

using Key = std::function<std::optional<Word>(const Word&)>;

// Compares the partitions induced by two key functions on words of the same
// length; a word with no key is related to nothing.
std::optional<KernelMismatch> compare_partitions(const Key& first, const Key& second, std::size_t letters,
                                                 std::size_t bound) {
  for (std::size_t n = 0; n <= bound; ++n) {
    std::map<Word, std::pair<Word, Word>> by_first;   // key -> (other key, witness)
    std::map<Word, std::pair<Word, Word>> by_second;
    for (const Word& u : all_words(letters, n)) {
      const auto k1 = first(u);
      const auto k2 = second(u);
      if (!k1 || !k2) {
        if (k1 || k2) return KernelMismatch{u, u, k1.has_value()};
        continue;
      }
      auto [i1, new1] = by_first.emplace(*k1, std::make_pair(*k2, u));
      if (!new1 && i1->second.first != *k2) return KernelMismatch{i1->second.second, u, true};
      auto [i2, new2] = by_second.emplace(*k2, std::make_pair(*k1, u));
      if (!new2 && i2->second.first != *k1) return KernelMismatch{i2->second.second, u, false};
    }
  }
  return std::nullopt;
}

Alphabet make_alphabet(std::size_t size) { return letters_alphabet(size); }

}  // namespace

WordCodec::WordCodec(std::size_t letters, std::size_t bound) : letters_(letters) {
  if (letters == 0) throw Error(ErrorCode::InvalidInput, "empty alphabet");
  // Largest code of length `bound` is sum_{i=1..bound} letters^i.
  long double total = 0, power = 1;
  for (std::size_t i = 0; i < bound; ++i) {
    power *= static_cast<long double>(letters);
    total += power;
  }
  if (total >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
    throw Error(ErrorCode::BoundTooLarge, "words of length " + std::to_string(bound) + " do not fit a code");
}

std::uint64_t WordCodec::encode(const Word& word) const {
  std::uint64_t code = 0;
  for (Letter a : word) code = code * letters_ + a + 1;
  return code;
}

Word WordCodec::decode(std::uint64_t code) const {
  Word word;
  while (code > 0) {
    const std::uint64_t digit = (code - 1) % letters_;
    word.push_back(static_cast<Letter>(digit));
    code = (code - 1) / letters_;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

bool EnumeratedRelation::contains(std::uint64_t u, std::uint64_t v) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(u, v));
}

std::vector<Word> all_words(std::size_t letters, std::size_t length) {
  std::vector<Word> words;
  Word w(length, 0);
  if (letters == 0) return length == 0 ? std::vector<Word>{w} : words;
  while (true) {
    words.push_back(w);
    std::size_t i = length;
    while (i > 0 && w[i - 1] + 1 == letters) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return words;
}

EnumeratedRelation enumerate_relation(const LetterTransducer& r, std::size_t bound) {
  check_bound(bound);
  const Nfa& a = r.automaton();
  const WordCodec in(r.input_alphabet().size(), bound);
  const WordCodec out(r.output_alphabet().size(), bound);

  // within[k]: states with an accepting path of length <= k.
  const auto preds = predecessors(a);
  std::vector<std::vector<bool>> within(bound + 1, std::vector<bool>(a.num_states(), false));
  for (State q = 0; q < a.num_states(); ++q) within[0][q] = a.is_final(q);
  for (std::size_t k = 1; k <= bound; ++k) {
    within[k] = within[k - 1];
    for (State q = 0; q < a.num_states(); ++q)
      if (within[k - 1][q])
        for (State p : preds[q]) within[k][p] = true;
  }

  EnumeratedRelation result;
  result.bound = bound;
  struct Frame {
    StateSet set;
    Word u, v;
  };
  std::vector<Frame> stack{{initial_set(a, within[bound]), {}, {}}};
  const std::size_t pairs = a.alphabet().size();
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.set.empty()) continue;
    if (any_final(a, f.set)) result.pairs.emplace_back(in.encode(f.u), out.encode(f.v));
    const std::size_t depth = f.u.size();
    if (depth == bound) continue;
    for (Letter x = 0; x < pairs; ++x) {
      StateSet next = post(a, f.set, x, &within[bound - depth - 1]);
      if (next.empty()) continue;
      Frame g{std::move(next), f.u, f.v};
      g.u.push_back(r.input_of(x));
      g.v.push_back(r.output_of(x));
      stack.push_back(std::move(g));
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()), result.pairs.end());
  return result;
}

bool accepts_backward(const LetterTransducer& r, const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  const Nfa& a = r.automaton();
  for (Letter x : u)
    if (x >= r.input_alphabet().size()) return false;
  for (Letter y : v)
    if (y >= r.output_alphabet().size()) return false;
  std::vector<std::vector<Letter>> letters;
  const auto preds = predecessors(a, &letters);
  std::vector<bool> current(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) current[q] = a.is_final(q);
  for (std::size_t i = u.size(); i-- > 0;) {
    const Letter x = r.pair(u[i], v[i]);
    std::vector<bool> next(a.num_states(), false);
    for (State q = 0; q < a.num_states(); ++q) {
      if (!current[q]) continue;
      for (std::size_t k = 0; k < preds[q].size(); ++k)
        if (letters[q][k] == x) next[preds[q][k]] = true;
    }
    current = std::move(next);
  }
  for (State i : a.initials())
    if (current[i]) return true;
  return false;
}

std::optional<Word> least_related(const LetterTransducer& r, const Word& u) {
  const Nfa& a = r.automaton();
  const auto b = backward_along_input(r, u);
  StateSet set = initial_set(a, b[0]);
  if (set.empty()) return std::nullopt;
  Word v;
  for (std::size_t i = 0; i < u.size(); ++i) {
    bool moved = false;
    for (Letter y = 0; y < r.output_alphabet().size() && !moved; ++y) {
      StateSet next = post(a, set, r.pair(u[i], y), &b[i + 1]);
      if (next.empty()) continue;
      set = std::move(next);
      v.push_back(y);
      moved = true;
    }
    if (!moved) return std::nullopt;
  }
  return v;
}

std::vector<std::size_t> brute_index_profile(const LetterTransducer& s, const LetterTransducer& r,
                                             std::size_t bound) {
  check_bound(bound);
  std::vector<std::size_t> profile;
  for (std::size_t n = 0; n <= bound; ++n) {
    std::map<Word, std::set<Word>> classes;
    for (const Word& u : all_words(r.input_alphabet().size(), n)) {
      auto rr = least_related(r, u);
      auto ss = least_related(s, u);
      if (rr && ss) classes[*rr].insert(*ss);
    }
    std::size_t best = 0;
    for (const auto& [rep, inner] : classes) best = std::max(best, inner.size());
    profile.push_back(best);
  }
  return profile;
}

std::size_t brute_index(const LetterTransducer& s, const LetterTransducer& r, std::size_t bound) {
  const auto p = brute_index_profile(s, r, bound);
  return *std::max_element(p.begin(), p.end());
}

std::vector<std::uint64_t> brute_valuedness_profile(const LetterTransducer& t, std::size_t bound) {
  check_bound(bound);
  const Nfa& a = t.automaton();
  std::vector<std::uint64_t> profile;
  for (std::size_t n = 0; n <= bound; ++n) {
    std::uint64_t best = 0;
    for (const Word& u : all_words(t.input_alphabet().size(), n)) {
      const auto b = backward_along_input(t, u);
      // Outputs read so far, grouped by the set of states they lead to.
      std::map<StateSet, std::uint64_t> layer;
      StateSet start = initial_set(a, b[0]);
      if (start.empty()) continue;
      layer[start] = 1;
      for (std::size_t i = 0; i < n; ++i) {
        std::map<StateSet, std::uint64_t> next;
        for (const auto& [set, count] : layer)
          for (Letter y = 0; y < t.output_alphabet().size(); ++y) {
            StateSet to = post(a, set, t.pair(u[i], y), &b[i + 1]);
            if (!to.empty()) next[std::move(to)] += count;
          }
        layer = std::move(next);
      }
      std::uint64_t total = 0;
      for (const auto& [set, count] : layer)
        if (any_final(a, set)) total += count;
      best = std::max(best, total);
    }
    profile.push_back(best);
  }
  return profile;
}

std::uint64_t brute_valuedness(const LetterTransducer& t, std::size_t bound) {
  const auto p = brute_valuedness_profile(t, bound);
  return *std::max_element(p.begin(), p.end());
}

WordFunction as_function(const SequentialTransducer& m) {
  return [&m](const Word& u) { return m.run(u); };
}

WordFunction as_function(const SubsequentialTransducer& m) {
  return [&m](const Word& u) { return m.run(u); };
}

EnumeratedRelation brute_kernel(const WordFunction& f, std::size_t letters, std::size_t bound) {
  check_bound(bound);
  const WordCodec codec(letters, bound);
  EnumeratedRelation result;
  result.bound = bound;
  for (std::size_t n = 0; n <= bound; ++n) {
    std::map<Word, std::vector<std::uint64_t>> groups;
    for (const Word& u : all_words(letters, n))
      if (auto out = f(u)) groups[*out].push_back(codec.encode(u));
    for (const auto& [out, codes] : groups)
      for (std::uint64_t x : codes)
        for (std::uint64_t y : codes) result.pairs.emplace_back(x, y);
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

std::optional<KernelMismatch> compare_kernel(const LetterTransducer& r, const WordFunction& f, std::size_t bound) {
  check_bound(bound);
  return compare_partitions([&r](const Word& u) { return least_related(r, u); }, f, r.input_alphabet().size(),
                            bound);
}

std::optional<KernelMismatch> compare_kernels(const WordFunction& f, const WordFunction& g, std::size_t letters,
                                              std::size_t bound) {
  check_bound(bound);
  return compare_partitions(f, g, letters, bound);
}

std::size_t default_bound(const LetterTransducer& r) {
  const std::size_t states = trim(determinize(r.automaton())).num_states();
  return std::min(kMaxOracleBound, std::max<std::size_t>(6, states));
}

std::size_t word_budget_bound(std::size_t letters, std::size_t cap, std::size_t budget) {
  std::size_t bound = 0;
  std::size_t total = 1, power = 1;
  while (bound < cap) {
    power *= letters;
    if (total + power > budget) break;
    total += power;
    ++bound;
  }
  return bound;
}

std::uint64_t oracle_seed(std::uint64_t fallback) {
  const char* text = std::getenv("KERNSEQ_ORACLE_SEED");
  if (!text) return fallback;
  std::uint64_t seed = 0;
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, seed);
  if (ec != std::errc() || ptr != end) return fallback;
  return seed;
}

Alphabet letters_alphabet(std::size_t size) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i)
    names.push_back(size <= 26 ? std::string(1, static_cast<char>('a' + i)) : "l" + std::to_string(i));
  return Alphabet(std::move(names));
}

LetterTransducer random_equivalence(std::mt19937_64& rng, const RandomOptions& options) {
  if (options.letters == 0 || options.states == 0 || options.classes == 0)
    throw Error(ErrorCode::InvalidInput, "random relation needs letters, states and classes");
  const Alphabet alphabet = make_alphabet(options.letters);
  const std::size_t k = options.letters, n = options.states;
  std::uniform_int_distribution<std::size_t> pick_state(0, n - 1), pick_class(0, options.classes - 1);
  std::vector<State> delta(n * k);
  for (auto& q : delta) q = static_cast<State>(pick_state(rng));
  std::vector<std::size_t> cls(n);
  for (auto& c : cls) c = pick_class(rng);
  std::vector<bool> glue(n, false);
  if (options.family == RandomFamily::GluedIdentity) {
    std::bernoulli_distribution coin(0.5);
    for (std::size_t q = 0; q < n; ++q) glue[q] = coin(rng);
    glue[pick_state(rng)] = true;
  }

  LetterTransducer r(alphabet, alphabet);
  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> work;
  auto accepting = [&](State p, State q) {
    if (cls[p] != cls[q]) return false;
    return options.family != RandomFamily::GluedIdentity || (glue[p] && glue[q]);
  };
  auto intern = [&](State p, State q) {
    auto [it, inserted] = ids.emplace(std::make_pair(p, q), 0);
    if (inserted) {
      it->second = r.add_state(accepting(p, q));
      work.emplace_back(p, q);
    }
    return it->second;
  };
  r.add_initial(intern(0, 0));
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    const State source = ids.at({p, q});
    for (Letter a = 0; a < k; ++a)
      for (Letter b = 0; b < k; ++b) {
        const State p2 = delta[p * k + a], q2 = delta[q * k + b];
        if (options.family == RandomFamily::ClassTrace && cls[p2] != cls[q2]) continue;
        r.add_transition(source, a, b, intern(p2, q2));
      }
  }
  if (options.family == RandomFamily::GluedIdentity) {
    const State id = r.add_state(true);
    r.add_initial(id);
    for (Letter a = 0; a < k; ++a) r.add_transition(id, a, a, id);
  }
  return r;
}

LetterTransducer random_transducer(std::mt19937_64& rng, const Alphabet& input, const Alphabet& output,
                                   std::size_t states, double density) {
  LetterTransducer t(input, output);
  const Nfa nfa = random_nfa(rng, Alphabet::product(input, output), states, density);
  return t.with_automaton(nfa);
}

Nfa random_nfa(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t states, double density) {
  Nfa a(alphabet);
  std::bernoulli_distribution coin(0.5), edge(density);
  for (std::size_t q = 0; q < states; ++q) a.add_state(coin(rng));
  if (states == 0) return a;
  a.add_initial(0);
  if (states > 1 && coin(rng)) a.add_initial(static_cast<State>(states - 1));
  for (State p = 0; p < states; ++p)
    for (Letter x = 0; x < alphabet.size(); ++x)
      for (State q = 0; q < states; ++q)
        if (edge(rng)) a.add_transition(p, x, q);
  return a;
}

}  // namespace kernseq
