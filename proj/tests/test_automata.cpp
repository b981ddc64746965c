#include "doctest.h"
#include "support.hpp"

using namespace kernseq;
using namespace kernseq::test;

namespace {

Alphabet ab() { return Alphabet({"a", "b"}); }

// Words over {a, b} whose last letter is a: 0 -a-> 1, 1 -b-> 0.
Nfa ends_in_a() {
  Nfa n(ab());
  n.add_state(false);
  n.add_state(true);
  n.add_initial(0);
  n.add_transition(0, 0, 1);
  n.add_transition(0, 1, 0);
  n.add_transition(1, 0, 1);
  n.add_transition(1, 1, 0);
  return n;
}

}  // namespace

TEST_CASE("determinize keeps a complete deterministic automaton") {
  const Nfa d = determinize(ends_in_a());
  CHECK(d.is_complete());
  CHECK(d.is_deterministic());
  CHECK(d.num_states() == 2);
  CHECK(language_equal(d, ends_in_a()));
}

TEST_CASE("determinize of an automaton without initial states is one sink") {
  Nfa n(ab());
  n.add_state(true);
  const Nfa d = determinize(n);
  REQUIRE(d.num_states() == 1);
  CHECK(!d.is_final(0));
  CHECK(d.is_complete());
  CHECK(is_empty(d));
}

TEST_CASE("determinize and trim agree with run enumeration on random automata") {
  auto rng = rng_for(11);
  for (int i = 0; i < 40; ++i) {
    const Nfa n = random_nfa(rng, ab(), 4, 0.3);
    const Nfa d = determinize(n);
    CHECK(d.is_complete());
    CHECK(!language_difference(n, d, 8));
    const Nfa n5 = random_nfa(rng, ab(), 5, 0.25);
    CHECK(!language_difference(n5, trim(n5), 8));
    CHECK(!language_difference(n5, minimize(determinize(n5)), 8));
  }
}

TEST_CASE("trim removes unreachable and useless states") {
  Nfa n(ab());
  n.add_state(true);
  n.add_state(true);  // unreachable
  n.add_state(false);  // reachable, cannot accept
  n.add_initial(0);
  n.add_transition(0, 0, 0);
  n.add_transition(0, 1, 2);
  const Nfa t = trim(n);
  CHECK(t.num_states() == 1);
  CHECK(language_equal(t, n));

  Nfa empty(ab());
  empty.add_state(false);
  empty.add_initial(0);
  CHECK(trim(empty).num_states() == 0);
}

TEST_CASE("boolean operations") {
  const Nfa l = ends_in_a();
  const Nfa c = complement(determinize(l));
  CHECK(is_empty(intersect(l, c)));
  CHECK(language_equal(complement(complement(determinize(l))), l));

  Nfa empty(ab());
  CHECK(language_equal(unite(l, empty), l));
  Nfa partial(ab());
  partial.add_state(true);
  partial.add_initial(0);
  CHECK_THROWS_AS(complement(partial), Error);

  auto rng = rng_for(12);
  for (int i = 0; i < 30; ++i) {
    const Nfa a = random_nfa(rng, ab(), 3, 0.35);
    const Nfa b = random_nfa(rng, ab(), 3, 0.35);
    const Nfa d = difference(a, b);
    const Nfa u = unite(a, b);
    const Nfa x = intersect(a, b);
    for (std::size_t n = 0; n <= 7; ++n)
      for (const Word& w : all_words(2, n)) {
        const bool in_a = accepts_by_runs(a, w), in_b = accepts_by_runs(b, w);
        CHECK(accepts_by_runs(d, w) == (in_a && !in_b));
        CHECK(accepts_by_runs(u, w) == (in_a || in_b));
        CHECK(accepts_by_runs(x, w) == (in_a && in_b));
      }
  }
}

TEST_CASE("operations on different alphabets are refused") {
  Nfa a(ab());
  Nfa b(Alphabet({"a", "c"}));
  try {
    intersect(a, b);
    FAIL("expected ALPHABET_MISMATCH");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphabetMismatch);
  }
  CHECK_THROWS_AS(includes(a, b), Error);
}

TEST_CASE("includes is a partial order up to language equality") {
  const Nfa l = ends_in_a();
  Nfa empty(ab());
  CHECK(includes(l, l));
  CHECK(includes(empty, l));
  CHECK(!includes(l, empty));

  auto rng = rng_for(13);
  std::vector<Nfa> pool;
  for (int i = 0; i < 12; ++i) pool.push_back(random_nfa(rng, ab(), 3, 0.4));
  for (const Nfa& a : pool)
    for (const Nfa& b : pool) {
      // Inclusion holds on every word up to 10; a failure comes with a
      // word of a \ b, confirmed by run enumeration.
      if (includes(a, b)) {
        CHECK(!language_difference(intersect(a, b), a, 10));
      } else {
        auto w = shortest_word(difference(a, b));
        REQUIRE(w);
        CHECK(accepts_by_runs(a, *w));
        CHECK(!accepts_by_runs(b, *w));
      }
      if (includes(a, b) && includes(b, a)) CHECK(language_equal(a, b));
      for (const Nfa& c : pool)
        if (includes(a, b) && includes(b, c)) CHECK(includes(a, c));
    }
}

TEST_CASE("canonical automata of equal languages are identical") {
  auto rng = rng_for(14);
  for (int i = 0; i < 30; ++i) {
    const Nfa a = random_nfa(rng, ab(), 4, 0.3);
    const Nfa twice = unite(a, a);
    CHECK(canonical_dfa(a) == canonical_dfa(twice));
  }
}
