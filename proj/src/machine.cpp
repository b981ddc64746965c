#include "kernseq/machine.hpp"

#include "kernseq/error.hpp"

namespace kernseq {

SequentialTransducer::SequentialTransducer(Alphabet input, Alphabet output)
    : input_(std::move(input)), output_(std::move(output)) {}

void SequentialTransducer::check_state(State state) const {
  if (state >= num_states()) throw Error(ErrorCode::Undeclared, "undeclared state " + std::to_string(state));
}

State SequentialTransducer::add_state(bool final) {
  final_.push_back(final);
  notes_.emplace_back();
  table_.resize(final_.size() * input_.size());
  return static_cast<State>(final_.size() - 1);
}

void SequentialTransducer::set_transition(State source, Letter in, Word output, State target) {
  check_state(source);
  check_state(target);
  if (in >= input_.size()) throw Error(ErrorCode::Undeclared, "input letter outside the alphabet");
  for (Letter b : output)
    if (b >= output_.size()) throw Error(ErrorCode::Undeclared, "output letter outside the alphabet");
  auto& slot = table_[source * input_.size() + in];
  if (slot)
    throw Error(ErrorCode::Nondeterministic,
                "state " + std::to_string(source) + " already reads '" + input_.name(in) + "'");
  slot = SequentialEdge{std::move(output), target};
}

const std::optional<SequentialEdge>& SequentialTransducer::transition(State source, Letter in) const {
  check_state(source);
  if (in >= input_.size()) throw Error(ErrorCode::Undeclared, "input letter outside the alphabet");
  return table_[source * input_.size() + in];
}

void SequentialTransducer::set_initial(State state) {
  check_state(state);
  initial_ = state;
}

void SequentialTransducer::set_final(State state, bool final) {
  check_state(state);
  final_[state] = final;
}

bool SequentialTransducer::is_total() const {
  for (const auto& slot : table_)
    if (!slot) return false;
  for (bool f : final_)
    if (!f) return false;
  return true;
}

bool SequentialTransducer::is_letter_to_letter() const {
  for (const auto& slot : table_)
    if (slot && slot->output.size() != 1) return false;
  return true;
}

std::optional<State> SequentialTransducer::reach(const Word& word) const {
  if (num_states() == 0) return std::nullopt;
  State q = initial_;
  for (Letter a : word) {
    if (a >= input_.size()) return std::nullopt;
    const auto& slot = table_[q * input_.size() + a];
    if (!slot) return std::nullopt;
    q = slot->target;
  }
  return q;
}

std::optional<Word> SequentialTransducer::run(const Word& word) const {
  if (num_states() == 0) return std::nullopt;
  Word out;
  State q = initial_;
  for (Letter a : word) {
    if (a >= input_.size()) return std::nullopt;
    const auto& slot = table_[q * input_.size() + a];
    if (!slot) return std::nullopt;
    out.insert(out.end(), slot->output.begin(), slot->output.end());
    q = slot->target;
  }
  if (!final_[q]) return std::nullopt;
  return out;
}

void SequentialTransducer::set_note(State state, std::string note) {
  check_state(state);
  notes_[state] = std::move(note);
}

const std::string& SequentialTransducer::note(State state) const {
  check_state(state);
  return notes_[state];
}

bool operator==(const SequentialTransducer& lhs, const SequentialTransducer& rhs) {
  return lhs.input_ == rhs.input_ && lhs.output_ == rhs.output_ && lhs.initial_ == rhs.initial_ &&
         lhs.final_ == rhs.final_ && lhs.table_ == rhs.table_;
}

SubsequentialTransducer::SubsequentialTransducer(SequentialTransducer base)
    : base_(std::move(base)), final_output_(base_.num_states()) {}

void SubsequentialTransducer::set_final_output(State state, Letter letter) {
  if (state >= base_.num_states()) throw Error(ErrorCode::Undeclared, "undeclared state " + std::to_string(state));
  if (letter >= base_.output_alphabet().size()) throw Error(ErrorCode::Undeclared, "final output outside the alphabet");
  if (final_output_.size() < base_.num_states()) final_output_.resize(base_.num_states());
  final_output_[state] = letter;
}

std::optional<Letter> SubsequentialTransducer::final_output(State state) const {
  if (state >= final_output_.size()) return std::nullopt;
  return final_output_[state];
}

void SubsequentialTransducer::validate() const {
  if (!base_.is_letter_to_letter())
    throw Error(ErrorCode::InvalidInput, "subsequential transducer must be letter-to-letter");
  for (State q = 0; q < base_.num_states(); ++q) {
    const bool has = final_output(q).has_value();
    if (has != base_.is_final(q))
      throw Error(ErrorCode::InvalidInput,
                  "final output must be defined exactly on final states (state " + std::to_string(q) + ")");
  }
}

std::optional<Word> SubsequentialTransducer::run(const Word& word) const {
  auto q = base_.reach(word);
  if (!q) return std::nullopt;
  auto out = base_.run(word);
  auto t = final_output(*q);
  if (!out || !t) return std::nullopt;
  out->push_back(*t);
  return out;
}

}  // namespace kernseq
