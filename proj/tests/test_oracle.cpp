#include <algorithm>
#include <cstdlib>

#include "doctest.h"
#include "kernseq/synthesis.hpp"
#include "support.hpp"

using namespace kernseq;
using namespace kernseq::test;

namespace {

// One state, loops a|a and a|b: the input a^n has 2^n images.
LetterTransducer doubling() {
  const Alphabet a({"a", "b"});
  LetterTransducer t(a, a);
  t.add_state(true);
  t.add_initial(0);
  t.add_transition(0, 0, 0, 0);
  t.add_transition(0, 0, 1, 0);
  return t;
}

}  // namespace

TEST_CASE("word codec") {
  const WordCodec codec(3, 5);
  std::uint64_t expected = 0;
  for (std::size_t n = 0; n <= 5; ++n)
    for (const Word& w : all_words(3, n)) {
      CHECK(codec.encode(w) == expected);
      CHECK(codec.decode(expected) == w);
      ++expected;
    }
  CHECK_THROWS_AS(WordCodec(1000, 10), Error);
  CHECK_NOTHROW(WordCodec(9, kMaxOracleBound));
}

TEST_CASE("all_words") {
  CHECK(all_words(2, 0) == std::vector<Word>{Word{}});
  CHECK(all_words(3, 2).size() == 9);
  const auto w = all_words(2, 3);
  CHECK(std::is_sorted(w.begin(), w.end()));
  CHECK(w.front() == Word{0, 0, 0});
  CHECK(w.back() == Word{1, 1, 1});
}

TEST_CASE("enumeration of small fixtures") {
  const auto id = enumerate_relation(fixture("id.t"), 2);
  CHECK(id.size() == 7);
  for (const auto& [u, v] : id.pairs) CHECK(u == v);

  // Parity of a's: 1 empty pair, a~a and b~b, then {aa, bb} and {ab, ba}.
  const auto r3 = fixture("parity.t");
  const auto e3 = enumerate_relation(r3, 2);
  CHECK(e3.size() == 11);
  const WordCodec codec(2, 2);
  const Alphabet& a = r3.input_alphabet();
  CHECK(e3.contains(codec.encode(word(a, "ab")), codec.encode(word(a, "ba"))));
  CHECK(e3.contains(codec.encode(word(a, "aa")), codec.encode(word(a, "bb"))));
  CHECK(!e3.contains(codec.encode(word(a, "a")), codec.encode(word(a, "b"))));

  CHECK(enumerate_relation(fixture("allsame.t"), 3).size() == 1 + 4 + 16 + 64);
  CHECK_THROWS_AS(enumerate_relation(r3, kMaxOracleBound + 1), Error);
}

TEST_CASE("enumeration agrees with backward membership") {
  auto rng = rng_for(31);
  const Alphabet a({"a", "b"});
  for (int i = 0; i < 30; ++i) {
    const auto t = random_transducer(rng, a, a, 3, 0.3);
    const auto e = enumerate_relation(t, 4);
    const WordCodec codec(2, 4);
    for (std::size_t n = 0; n <= 4; ++n)
      for (const Word& u : all_words(2, n)) {
        std::optional<Word> least;
        for (const Word& v : all_words(2, n)) {
          const bool in = accepts_backward(t, u, v);
          CHECK(in == e.contains(codec.encode(u), codec.encode(v)));
          if (in && !least) least = v;
        }
        CHECK(least_related(t, u) == least);
      }
  }
}

TEST_CASE("brute index") {
  const auto id = fixture("id.t");
  CHECK(brute_index(id, id, 6) == 1);
  const auto all = fixture("allsame.t");
  CHECK(brute_index(all, all, 6) == 1);
  CHECK(brute_index_profile(id, all, 4) == std::vector<std::size_t>{1, 2, 4, 8, 16});

  // S_R is the identity, and a c-free word of length n has 2^n R-related words.
  const auto r4 = fixture("cfree.t");
  const auto s4 = syntactic_congruence(r4).relation;
  CHECK(brute_index(s4, r4, 2) == 4);
  CHECK(brute_index(s4, r4, 3) == 8);
  CHECK(brute_index(s4, r4, 8) > brute_index(s4, r4, 4));

  const auto flip = fixture("flip.t");
  const auto sf = syntactic_congruence(flip).relation;
  CHECK(brute_index(sf, flip, 8) == brute_index(sf, flip, 4));

  for (std::size_t i = 0; i < 10; ++i) {
    const auto r = suite_instance(i, 32);
    CHECK(brute_index(r, r, 5) == 1);
  }
}

TEST_CASE("brute valuedness") {
  const auto t = doubling();
  for (std::size_t n = 0; n <= 8; ++n) CHECK(brute_valuedness(t, n) == (std::uint64_t{1} << n));
  CHECK(brute_valuedness(fixture("id.t"), 8) == 1);
  CHECK(brute_valuedness_profile(fixture("allsame.t"), 3) == std::vector<std::uint64_t>{1, 2, 4, 8});

  const Alphabet a({"a", "b"});
  LetterTransducer empty(a, a);
  CHECK(brute_valuedness(empty, 4) == 0);
}

TEST_CASE("valuedness by enumeration agrees with the pair count") {
  auto rng = rng_for(33);
  const Alphabet a({"a", "b"});
  for (int i = 0; i < 20; ++i) {
    const auto t = random_transducer(rng, a, a, 3, 0.35);
    const auto e = enumerate_relation(t, 5);
    const auto profile = brute_valuedness_profile(t, 5);
    const WordCodec codec(2, 5);
    for (std::size_t n = 0; n <= 5; ++n) {
      std::uint64_t best = 0;
      for (const Word& u : all_words(2, n)) {
        const auto c = codec.encode(u);
        const auto lo = std::lower_bound(e.pairs.begin(), e.pairs.end(), std::make_pair(c, std::uint64_t{0}));
        std::uint64_t count = 0;
        for (auto it = lo; it != e.pairs.end() && it->first == c; ++it) ++count;
        best = std::max(best, count);
      }
      CHECK(profile[n] == best);
    }
  }
}

TEST_CASE("brute kernel") {
  const auto flip = fixture("flip.t");
  const auto m = synthesize_mealy(flip);
  CHECK(brute_kernel(as_function(m), 2, 8) == enumerate_relation(flip, 8));

  const auto id = fixture("id.t");
  const auto all = fixture("allsame.t");
  const WordFunction identity = [](const Word& u) { return std::optional<Word>(u); };
  const WordFunction length = [](const Word& u) { return std::optional<Word>(Word(u.size(), 0)); };
  CHECK(!compare_kernel(id, identity, 6));
  CHECK(!compare_kernel(all, length, 6));
  const auto mismatch = compare_kernel(all, identity, 6);
  REQUIRE(mismatch);
  CHECK(mismatch->first_relates);
  CHECK(mismatch->u.size() == mismatch->v.size());
  CHECK(mismatch->u != mismatch->v);
  const auto other = compare_kernels(identity, length, 2, 6);
  REQUIRE(other);
  CHECK(!other->first_relates);
}

TEST_CASE("bounds") {
  CHECK(default_bound(fixture("id.t")) == 6);
  CHECK(default_bound(fixture("chain.t")) <= kMaxOracleBound);
  CHECK(word_budget_bound(2, 8) == 8);
  CHECK(word_budget_bound(9, 8, 1 << 17) == 5);
  CHECK(word_budget_bound(1, 8) == 8);
}

TEST_CASE("oracle seed") {
  const char* saved = std::getenv("KERNSEQ_ORACLE_SEED");
  const std::string previous = saved ? saved : "";
  setenv("KERNSEQ_ORACLE_SEED", "123", 1);
  CHECK(oracle_seed() == 123);
  setenv("KERNSEQ_ORACLE_SEED", "12x", 1);
  CHECK(oracle_seed(7) == 7);
  unsetenv("KERNSEQ_ORACLE_SEED");
  CHECK(oracle_seed(9) == 9);
  if (saved) setenv("KERNSEQ_ORACLE_SEED", previous.c_str(), 1);
}

TEST_CASE("random families are equivalences") {
  auto rng = rng_for(34);
  for (RandomFamily family : {RandomFamily::StateClasses, RandomFamily::ClassTrace, RandomFamily::GluedIdentity})
    for (int i = 0; i < 15; ++i) {
      RandomOptions o;
      o.family = family;
      o.letters = 2 + i % 2;
      o.states = 2 + i % 3;
      o.classes = 1 + i % 3;
      const auto r = random_equivalence(rng, o);
      CHECK(validate_relation(r).is_equivalence());
      CHECK(r.input_alphabet().size() == o.letters);
      if (family == RandomFamily::ClassTrace) CHECK(is_prefix_closed(r));
      // Agreement of the structural check with enumeration.
      const auto e = enumerate_relation(r, 3);
      for (const auto& [u, v] : e.pairs) CHECK(e.contains(v, u));
    }
}
