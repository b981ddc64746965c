#include <filesystem>

#include "doctest.h"
#include "support.hpp"

using namespace kernseq;
using namespace kernseq::test;

namespace {

struct Failure {
  ErrorCode code;
  std::size_t line;
  std::size_t column;
};

Failure parse_failure(std::string_view text) {
  try {
    parse_transducer(text);
  } catch (const ParseError& e) {
    return {e.code(), e.line(), e.column()};
  }
  FAIL("expected a parse error");
  return {ErrorCode::Internal, 0, 0};
}

constexpr std::string_view kHeader =
    "kind sequential\n"
    "inputs a b\n"
    "outputs x y\n"
    "states p q\n"
    "initial p\n"
    "finals q\n";

SequentialTransducer random_sequential(std::mt19937_64& rng, std::size_t states) {
  SequentialTransducer m(Alphabet({"a", "b"}), Alphabet({"x", "y", "z"}));
  std::bernoulli_distribution coin(0.7);
  std::uniform_int_distribution<std::size_t> pick(0, states - 1), length(0, 3);
  std::uniform_int_distribution<Letter> out(0, 2);
  for (std::size_t q = 0; q < states; ++q) m.add_state(coin(rng));
  m.set_initial(static_cast<State>(pick(rng)));
  for (State q = 0; q < states; ++q)
    for (Letter a = 0; a < 2; ++a)
      if (coin(rng)) {
        Word w(length(rng));
        for (Letter& x : w) x = out(rng);
        m.set_transition(q, a, w, static_cast<State>(pick(rng)));
      }
  return m;
}

}  // namespace

TEST_CASE("fixtures parse") {
  const auto f2 = load("twisted.t");
  REQUIRE(f2.relation());
  CHECK(f2.state_names == std::vector<std::string>{"p", "q"});
  CHECK(f2.relation()->automaton().num_states() == 2);
  CHECK(kind_name(f2.machine) == "letter-transducer");

  const auto chain = load("chain.t");
  CHECK(chain.relation()->automaton().initials().size() == 2);

  const auto seq = load("parity_seq.t");
  REQUIRE(std::holds_alternative<SequentialTransducer>(seq.machine));
  const auto& m = std::get<SequentialTransducer>(seq.machine);
  CHECK(kind_name(seq.machine) == "sequential");
  CHECK(m.transition(1, 0)->output.size() == 3);
  CHECK(!seq.relation());
  CHECK_THROWS_AS(require_relation(seq, "FILE"), Error);
}

TEST_CASE("comments, blank lines and the empty word") {
  const auto file = parse_transducer(std::string(kHeader) +
                                     "\n"
                                     "# a comment line\n"
                                     "p a / - -> q   # trailing comment\n"
                                     "p b / x y x -> p\n");
  const auto& m = std::get<SequentialTransducer>(file.machine);
  CHECK(m.transition(0, 0)->output.empty());
  CHECK(m.transition(0, 1)->output == Word{0, 1, 0});
  CHECK(m.run(Word{1, 0}) == Word{0, 1, 0});
  CHECK(!m.run(Word{1}));
}

TEST_CASE("letter transducers may have any number of initial states") {
  const auto none = parse_transducer("kind letter-transducer\ninputs a\noutputs a\nstates q\ninitials\nfinals q\n");
  CHECK(none.relation()->automaton().initials().empty());
  const auto f = parse_failure("kind sequential\ninputs a\noutputs a\nstates q\ninitials q\n");
  CHECK(f.code == ErrorCode::Parse);
  CHECK(f.line == 5);
}

TEST_CASE("error positions") {
  auto f = parse_failure(std::string(kHeader) + "p a / x -> q\np a / y -> p\n");
  CHECK(f.code == ErrorCode::Nondeterministic);
  CHECK(f.line == 8);
  CHECK(f.column == 3);

  f = parse_failure(std::string(kHeader) + "p a / x -> r\n");
  CHECK(f.code == ErrorCode::Undeclared);
  CHECK(f.line == 7);
  CHECK(f.column == 12);

  f = parse_failure(std::string(kHeader) + "p c / x -> q\n");
  CHECK(f.code == ErrorCode::Undeclared);
  CHECK(f.column == 3);

  f = parse_failure(std::string(kHeader) + "p a / x q\n");
  CHECK(f.code == ErrorCode::Parse);
  CHECK(f.line == 7);
  CHECK(f.column == 1);

  f = parse_failure("inputs a\n");
  CHECK(f.code == ErrorCode::Parse);
  CHECK(f.line == 1);

  f = parse_failure("kind automaton\n");
  CHECK(f.code == ErrorCode::Parse);
  CHECK(f.column == 6);

  f = parse_failure("kind sequential\ninputs a a\n");
  CHECK(f.code == ErrorCode::Parse);
  CHECK(f.line == 2);
  CHECK(f.column == 10);

  f = parse_failure("kind sequential\ninputs a\noutputs x\nstates p\n");
  CHECK(f.code == ErrorCode::Parse);
  CHECK(f.line == 5);
}

TEST_CASE("letter transducers need one output letter") {
  const std::string header = "kind letter-transducer\ninputs a b\noutputs a b\nstates q\ninitial q\nfinals q\n";
  auto f = parse_failure(header + "q a / a b -> q\n");
  CHECK(f.code == ErrorCode::NotLetterToLetter);
  CHECK(f.line == 7);
  CHECK(f.column == 7);
  f = parse_failure(header + "q a / - -> q\n");
  CHECK(f.code == ErrorCode::NotLetterToLetter);
  // Nondeterminism is allowed in letter transducers.
  CHECK_NOTHROW(parse_transducer(header + "q a / a -> q\nq a / b -> q\n"));
}

TEST_CASE("final outputs") {
  const std::string header =
      "kind subsequential\ninputs a\noutputs a t\nstates p q\ninitial p\nfinals p\np a / a -> q\n";
  const auto ok = parse_transducer(header + "finalout p t\n");
  const auto& s = std::get<SubsequentialTransducer>(ok.machine);
  CHECK(s.final_output(0) == Letter{1});
  CHECK(!s.final_output(1));
  CHECK(s.run(Word{}) == Word{1});

  auto f = parse_failure(header);
  CHECK(f.code == ErrorCode::InvalidInput);
  f = parse_failure(header + "finalout p t\nfinalout q a\n");
  CHECK(f.code == ErrorCode::InvalidInput);
  CHECK(f.line == 9);
  CHECK(f.column == 10);
  f = parse_failure(header + "finalout p t\nfinalout p a\n");
  CHECK(f.code == ErrorCode::Parse);
  f = parse_failure(std::string(kHeader) + "finalout q x\n");
  CHECK(f.code == ErrorCode::Parse);
}

TEST_CASE("print and parse round-trip") {
  auto rng = rng_for(61);
  const Alphabet a({"a", "b"});
  for (int i = 0; i < 100; ++i) {
    switch (i % 3) {
      case 0: {
        const Machine m = random_transducer(rng, a, a, 1 + i % 4, 0.3);
        const auto back = parse_transducer(print_transducer(m));
        CHECK(std::get<LetterTransducer>(back.machine) == std::get<LetterTransducer>(m));
        CHECK(print_transducer(back) == print_transducer(m));
        break;
      }
      case 1: {
        const Machine m = random_sequential(rng, 1 + i % 4);
        const auto back = parse_transducer(print_transducer(m));
        CHECK(std::get<SequentialTransducer>(back.machine) == std::get<SequentialTransducer>(m));
        break;
      }
      default: {
        RandomOptions o;
        o.family = static_cast<RandomFamily>(i % 3);
        const Machine m = random_equivalence(rng, o);
        const auto back = parse_transducer(print_transducer(m));
        CHECK(std::get<LetterTransducer>(back.machine) == std::get<LetterTransducer>(m));
      }
    }
  }
  for (const char* name : {"twisted.t", "parity_seq.t", "chain.t", "twisted_canonical.t"}) {
    const auto file = load(name);
    const auto back = parse_transducer(print_transducer(file));
    CHECK(back.machine == file.machine);
    CHECK(back.state_names == file.state_names);
  }
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "kernseq_textio_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "id.t";
  write_text_file(path, print_transducer(load("id.t")));
  CHECK(read_transducer_file(path).machine == load("id.t").machine);
  std::filesystem::remove_all(dir);
  try {
    read_transducer_file(dir / "missing.t");
    FAIL("expected INVALID_INPUT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}
