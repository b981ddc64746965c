#include "doctest.h"
#include "support.hpp"

using namespace kernseq;
using namespace kernseq::test;

namespace {

bool related(const LetterTransducer& r, const Word& u, const Word& v) { return accepts_backward(r, u, v); }

// uSv iff uw R vw for every suffix w of length <= bound.
bool syntactically_related(const LetterTransducer& r, const Word& u, const Word& v, std::size_t bound) {
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Word& w : all_words(r.input_alphabet().size(), n)) {
      Word uw = u, vw = v;
      uw.insert(uw.end(), w.begin(), w.end());
      vw.insert(vw.end(), w.begin(), w.end());
      if (!related(r, uw, vw)) return false;
    }
  return true;
}

// Some suffixes of equal length <= bound make u and v related.
bool future_related(const LetterTransducer& r, const Word& u, const Word& v, std::size_t bound) {
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Word& x : all_words(r.input_alphabet().size(), n))
      for (const Word& y : all_words(r.input_alphabet().size(), n)) {
        Word ux = u, vy = v;
        ux.insert(ux.end(), x.begin(), x.end());
        vy.insert(vy.end(), y.begin(), y.end());
        if (related(r, ux, vy)) return true;
      }
  return false;
}

LetterTransducer single_pair() {
  const Alphabet a({"a", "b"});
  LetterTransducer r(a, a);
  r.add_state(false);
  r.add_state(true);
  r.add_initial(0);
  r.add_transition(0, 0, 1, 1);
  return r;
}

}  // namespace

TEST_CASE("validation of fixtures") {
  const auto id = validate_relation(fixture("id.t"));
  CHECK(id.is_equivalence());
  CHECK(validate_relation(fixture("twisted.t")).is_equivalence());
  CHECK(validate_relation(fixture("parity.t")).is_equivalence());
  CHECK(validate_relation(fixture("cfree.t")).is_equivalence());

  const auto one = validate_relation(single_pair());
  CHECK(one.is_letter_to_letter);
  CHECK(!one.is_reflexive);
  CHECK(!one.is_symmetric);
  CHECK_THROWS_AS(require_equivalence(single_pair()), Error);

  const Alphabet a({"a", "b"});
  LetterTransducer empty(a, a);
  CHECK(!validate_relation(empty).is_reflexive);

  LetterTransducer mixed(a, Alphabet({"x"}));
  CHECK(!validate_relation(mixed).is_letter_to_letter);
}

TEST_CASE("composition") {
  const auto r = fixture("parity.t");
  const auto id = fixture("id.t");
  CHECK(language_equal(compose(r, id).automaton(), r.automaton()));
  CHECK(language_equal(compose(id, r).automaton(), r.automaton()));
  const auto rr = compose(r, r);
  CHECK(language_equal(rr.automaton(), r.automaton()));
  CHECK(enumerate_relation(rr, 8) == enumerate_relation(r, 8));

  // Against the oracle join on enumerated pairs.
  auto rng = rng_for(21);
  const Alphabet a({"a", "b"});
  for (int i = 0; i < 25; ++i) {
    const auto first = random_transducer(rng, a, a, 3, 0.2);
    const auto second = random_transducer(rng, a, a, 3, 0.2);
    const auto composed = compose(second, first);
    CHECK(as_set(enumerate_relation(composed, 6)) ==
          join(as_set(enumerate_relation(first, 6)), as_set(enumerate_relation(second, 6))));
  }

  const Alphabet other({"x", "y"});
  CHECK_THROWS_AS(compose(LetterTransducer(other, other), r), Error);
}

TEST_CASE("inverse") {
  const auto id = fixture("id.t");
  CHECK(language_equal(inverse(id).automaton(), id.automaton()));
  const auto r = fixture("twisted.t");
  CHECK(inverse(inverse(r)) == r);
  const auto inv = enumerate_relation(inverse(r), 7);
  const auto fwd = enumerate_relation(r, 7);
  PairSet swapped;
  for (const auto& [u, v] : fwd.pairs) swapped.emplace(v, u);
  CHECK(as_set(inv) == swapped);
}

TEST_CASE("syntactic congruence") {
  const auto id = fixture("id.t");
  CHECK(language_equal(syntactic_congruence(id).relation.automaton(), id.automaton()));

  // Two different words are never syntactically equivalent in cfree.t.
  const auto r4 = fixture("cfree.t");
  const auto s4 = syntactic_congruence(r4).relation;
  CHECK(enumerate_relation(s4, 8) == enumerate_relation(identity_relation(r4.input_alphabet()), 8));
}

TEST_CASE("syntactic congruence against the definition on random relations") {
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 40 && checked < 12; ++i) {
    const auto r = suite_instance(i, 22);
    const auto sc = syntactic_congruence(r);
    CHECK(includes(sc.relation.automaton(), r.automaton()));
    // Suffixes up to the number of states of the pair-DFA suffice.
    const std::size_t bound = canonical(r).automaton().num_states();
    if (bound > 7) continue;
    ++checked;
    for (std::size_t n = 0; n <= 4; ++n) {
      const auto words = all_words(2, n);
      for (const Word& u : words)
        for (const Word& v : words) {
          const bool s = related(sc.relation, u, v);
          CHECK(s == syntactically_related(r, u, v, bound));
          if (s)
            for (Letter x = 0; x < 2; ++x) {
              Word ux = u, vx = v;
              ux.push_back(x);
              vx.push_back(x);
              CHECK(related(sc.relation, ux, vx));
            }
        }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("prefix closure") {
  const auto id = fixture("id.t");
  CHECK(language_equal(prefix_closure(id).automaton(), id.automaton()));

  const auto r = fixture("parity.t");
  const auto p = prefix_closure(r);
  const Alphabet& a = r.input_alphabet();
  CHECK(related(p, word(a, "a"), word(a, "b")));
  CHECK(!related(r, word(a, "a"), word(a, "b")));
  CHECK(future_related(r, word(a, "a"), word(a, "b"), 4));
  CHECK(prefix_closure(p) == p);
  CHECK(includes(r.automaton(), p.automaton()));

  // Against the definition with suffixes bounded by the pair-DFA size.
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 30 && checked < 10; ++i) {
    const auto q = suite_instance(i, 23);
    const auto pq = prefix_closure(q);
    const std::size_t bound = trim(determinize(q.automaton())).num_states();
    if (bound > 5) continue;
    ++checked;
    for (std::size_t n = 0; n <= 3; ++n)
      for (const Word& u : all_words(2, n))
        for (const Word& v : all_words(2, n)) CHECK(related(pq, u, v) == future_related(q, u, v, bound));
  }
  CHECK(checked > 0);
}

TEST_CASE("prefix closure is monotone") {
  for (std::size_t i = 0; i < 10; ++i) {
    const auto r = suite_instance(i, 24);
    const auto bigger = r.with_automaton(unite(r.automaton(), suite_instance(i + 1, 24).automaton()));
    CHECK(includes(prefix_closure(r).automaton(), prefix_closure(bigger).automaton()));
  }
}

TEST_CASE("prefix-closedness") {
  CHECK(!is_prefix_closed(fixture("twisted.t")));
  CHECK(!is_prefix_closed(fixture("parity.t")));
  CHECK(is_prefix_closed(fixture("id.t")));
  CHECK(is_prefix_closed(fixture("flip.t")));
  for (std::size_t i = 0; i < 30; ++i) {
    const auto r = suite_instance(i, 25);
    CHECK(is_prefix_closed(r) == language_equal(r.automaton(), prefix_closure(r).automaton()));
  }
  CHECK_THROWS_AS(is_prefix_closed(single_pair()), Error);
}

TEST_CASE("transitive closure") {
  const auto id = fixture("id.t");
  const auto c = transitive_closure(id);
  CHECK(c.converged);
  CHECK(c.exponent == 1);

  const auto p3 = prefix_closure(fixture("parity.t"));
  const auto c3 = transitive_closure(p3, {10});
  REQUIRE(c3.converged);
  CHECK(includes(compose(c3.closure, c3.closure).automaton(), c3.closure.automaton()));
  CHECK(as_set(enumerate_relation(c3.closure, 6)) == join_fixpoint(as_set(enumerate_relation(p3, 6))));

  const auto chain = fixture("chain.t");
  const auto capped = transitive_closure(prefix_closure(chain), {1});
  CHECK(!capped.converged);
  CHECK(capped.exponent == 1);
  CHECK(language_equal(capped.closure.automaton(), prefix_closure(chain).automaton()));
  const auto full = transitive_closure(prefix_closure(chain), {16});
  CHECK(full.converged);
  CHECK(full.exponent == 4);

  CHECK_THROWS_AS(transitive_closure(id, {0}), Error);

  const auto unminimized = transitive_closure(prefix_closure(chain), {16, false});
  CHECK(unminimized.exponent == full.exponent);
  CHECK(language_equal(unminimized.closure.automaton(), full.closure.automaton()));
}

TEST_CASE("min-lex uniformizer") {
  const auto id = fixture("id.t");
  CHECK(language_equal(min_lex_uniformizer(id).automaton(), id.automaton()));

  const auto all = fixture("allsame.t");
  const auto f = min_lex_uniformizer(all);
  for (std::size_t n = 0; n <= 6; ++n)
    for (const Word& u : all_words(2, n)) CHECK(least_related(f, u) == Word(n, 0));

  const auto r2 = fixture("twisted.t");
  const auto f2 = min_lex_uniformizer(r2);
  for (std::size_t n = 0; n <= 6; ++n)
    for (const Word& u : all_words(2, n)) {
      const auto image = least_related(f2, u);
      CHECK(image == least_related(r2, u));
    }
  CHECK(brute_valuedness(f2, 7) == 1);
  CHECK(!compare_kernel(r2, [&](const Word& u) { return least_related(f2, u); }, 6));

  for (std::size_t i = 0; i < 12; ++i) {
    const auto r = suite_instance(i, 26);
    const auto g = min_lex_uniformizer(r);
    CHECK(brute_valuedness(g, 7) == 1);
    CHECK(!compare_kernel(r, [&](const Word& u) { return least_related(g, u); }, 6));
  }
}

TEST_CASE("the canonical function drawn for the twisted relation has the right kernel on its domain") {
  const auto r = fixture("twisted.t");
  const auto f = fixture("twisted_canonical.t");
  CHECK(brute_valuedness(f, 7) <= 1);
  std::size_t in_domain = 0;
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto words = all_words(2, n);
    for (const Word& u : words) {
      const auto fu = least_related(f, u);
      if (!fu) continue;
      ++in_domain;
      for (const Word& v : words) {
        const auto fv = least_related(f, v);
        if (fv) CHECK((fu == fv) == related(r, u, v));
      }
    }
  }
  CHECK(in_domain > 0);
  // "ba" ends in a non-final state of the drawn machine.
  CHECK(!least_related(f, word(f.input_alphabet(), "ba")));
}
