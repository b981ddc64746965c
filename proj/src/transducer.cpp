#include "kernseq/transducer.hpp"

#include "kernseq/error.hpp"

namespace kernseq {

LetterTransducer::LetterTransducer(Alphabet input, Alphabet output)
    : input_(std::move(input)), output_(std::move(output)), nfa_(Alphabet::product(input_, output_)) {}

LetterTransducer::LetterTransducer(Alphabet input, Alphabet output, Nfa underlying)
    : input_(std::move(input)), output_(std::move(output)), nfa_(std::move(underlying)) {
  if (nfa_.alphabet().size() != input_.size() * output_.size() ||
      !(nfa_.alphabet() == Alphabet::product(input_, output_)))
    throw Error(ErrorCode::AlphabetMismatch, "underlying automaton is not over the pair alphabet");
}

void LetterTransducer::add_transition(State source, Letter in, Letter out, State target) {
  if (in >= input_.size() || out >= output_.size())
    throw Error(ErrorCode::Undeclared, "transition letter outside the declared alphabets");
  nfa_.add_transition(source, pair(in, out), target);
}

bool LetterTransducer::accepts(const Word& in, const Word& out) const {
  if (in.size() != out.size()) return false;
  Word pairs(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] >= input_.size() || out[i] >= output_.size()) return false;
    pairs[i] = pair(in[i], out[i]);
  }
  return nfa_.accepts(pairs);
}

LetterTransducer LetterTransducer::with_automaton(Nfa underlying) const {
  LetterTransducer t = *this;
  if (!(underlying.alphabet() == nfa_.alphabet()))
    throw Error(ErrorCode::AlphabetMismatch, "replacement automaton is over another alphabet");
  t.nfa_ = std::move(underlying);
  return t;
}

LetterTransducer identity_relation(const Alphabet& alphabet) {
  LetterTransducer id(alphabet, alphabet);
  State q = id.add_state(true);
  id.add_initial(q);
  for (Letter a = 0; a < alphabet.size(); ++a) id.add_transition(q, a, a, q);
  return id;
}

LetterTransducer same_length_relation(const Alphabet& alphabet) {
  LetterTransducer all(alphabet, alphabet);
  State q = all.add_state(true);
  all.add_initial(q);
  for (Letter a = 0; a < alphabet.size(); ++a)
    for (Letter b = 0; b < alphabet.size(); ++b) all.add_transition(q, a, b, q);
  return all;
}

}  // namespace kernseq
