#include "kernseq/textio.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "kernseq/error.hpp"

namespace kernseq {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return tokens;
}

bool reserved(std::string_view name) { return name == "/" || name == "->" || name == "-"; }

enum class Kind { Letter, Sequential, Subsequential };

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TransducerFile run() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_;
      auto tokens = tokenize(text_.substr(start, end - start));
      if (!tokens.empty()) handle(tokens);
      start = end + 1;
    }
    return finish();
  }

 private:
  [[noreturn]] void fail(ErrorCode code, std::size_t column, const std::string& message) const {
    throw ParseError(code, line_, column, message);
  }

  void handle(const std::vector<Token>& t) {
    const std::string& head = t[0].text;
    if (!kind_) {
      if (head != "kind") fail(ErrorCode::Parse, t[0].column, "expected 'kind' first");
      if (t.size() != 2) fail(ErrorCode::Parse, t[0].column, "'kind' takes one argument");
      if (t[1].text == "letter-transducer") kind_ = Kind::Letter;
      else if (t[1].text == "sequential") kind_ = Kind::Sequential;
      else if (t[1].text == "subsequential") kind_ = Kind::Subsequential;
      else fail(ErrorCode::Parse, t[1].column, "unknown kind '" + t[1].text + "'");
      return;
    }
    if (head == "kind") fail(ErrorCode::Parse, t[0].column, "duplicate 'kind'");
    if (head == "inputs") return declare_letters(t, inputs_, "inputs");
    if (head == "outputs") return declare_letters(t, outputs_, "outputs");
    if (head == "states") return declare_states(t);
    if (head == "initial" || head == "initials") return declare_initials(t);
    if (head == "finals") return declare_finals(t);
    if (head == "finalout") return declare_final_output(t);
    transition(t);
  }

  void declare_letters(const std::vector<Token>& t, std::optional<Alphabet>& target, const char* what) {
    if (target) fail(ErrorCode::Parse, t[0].column, std::string("duplicate '") + what + "'");
    if (t.size() < 2) fail(ErrorCode::Parse, t[0].column, std::string("'") + what + "' needs at least one letter");
    std::vector<std::string> names;
    std::map<std::string, bool> seen;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (reserved(t[i].text)) fail(ErrorCode::Parse, t[i].column, "reserved token '" + t[i].text + "' as letter");
      if (seen[t[i].text]) fail(ErrorCode::Parse, t[i].column, "duplicate letter '" + t[i].text + "'");
      seen[t[i].text] = true;
      names.push_back(t[i].text);
    }
    target = Alphabet(std::move(names));
  }

  void declare_states(const std::vector<Token>& t) {
    if (!names_.empty()) fail(ErrorCode::Parse, t[0].column, "duplicate 'states'");
    if (t.size() < 2) fail(ErrorCode::Parse, t[0].column, "'states' needs at least one state");
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (reserved(t[i].text)) fail(ErrorCode::Parse, t[i].column, "reserved token '" + t[i].text + "' as state");
      if (!ids_.emplace(t[i].text, static_cast<State>(names_.size())).second)
        fail(ErrorCode::Parse, t[i].column, "duplicate state '" + t[i].text + "'");
      names_.push_back(t[i].text);
    }
    finals_.assign(names_.size(), false);
    final_outputs_.assign(names_.size(), std::nullopt);
  }

  State state(const Token& token) const {
    if (names_.empty()) fail(ErrorCode::Parse, token.column, "'states' must come before its use");
    auto it = ids_.find(token.text);
    if (it == ids_.end()) fail(ErrorCode::Undeclared, token.column, "undeclared state '" + token.text + "'");
    return it->second;
  }

  Letter letter(const std::optional<Alphabet>& alphabet, const Token& token, const char* what) const {
    if (!alphabet) fail(ErrorCode::Parse, token.column, std::string("'") + what + "' must come before its use");
    auto l = alphabet->find(token.text);
    if (!l) fail(ErrorCode::Undeclared, token.column, std::string("undeclared ") + what + " letter '" + token.text + "'");
    return *l;
  }

  void declare_initials(const std::vector<Token>& t) {
    if (initials_) fail(ErrorCode::Parse, t[0].column, "duplicate initial state declaration");
    const bool plural = t[0].text == "initials";
    if (plural && kind_ != Kind::Letter)
      fail(ErrorCode::Parse, t[0].column, "'initials' is only allowed for letter transducers");
    if (!plural && t.size() != 2) fail(ErrorCode::Parse, t[0].column, "'initial' takes exactly one state");
    initials_.emplace();
    for (std::size_t i = 1; i < t.size(); ++i) initials_->push_back(state(t[i]));
  }

  void declare_finals(const std::vector<Token>& t) {
    if (finals_declared_) fail(ErrorCode::Parse, t[0].column, "duplicate 'finals'");
    finals_declared_ = true;
    for (std::size_t i = 1; i < t.size(); ++i) finals_[state(t[i])] = true;
  }

  void declare_final_output(const std::vector<Token>& t) {
    if (kind_ != Kind::Subsequential)
      fail(ErrorCode::Parse, t[0].column, "'finalout' is only allowed for subsequential transducers");
    if (t.size() != 3) fail(ErrorCode::Parse, t[0].column, "'finalout' takes a state and a letter");
    const State q = state(t[1]);
    if (final_outputs_[q]) fail(ErrorCode::Parse, t[1].column, "duplicate final output for '" + t[1].text + "'");
    final_outputs_[q] = letter(outputs_, t[2], "output");
    final_output_columns_[q] = {line_, t[1].column};
  }

  void transition(const std::vector<Token>& t) {
    // <src> <in> / <out...> -> <dst>
    if (t.size() < 6 || t[2].text != "/" || t[t.size() - 2].text != "->")
      fail(ErrorCode::Parse, t[0].column, "expected '<src> <in> / <out-word> -> <dst>'");
    const State src = state(t[0]);
    const Letter in = letter(inputs_, t[1], "input");
    Word out;
    const std::size_t first = 3, last = t.size() - 2;
    const bool empty = last - first == 1 && t[first].text == "-";
    for (std::size_t i = first; i < last && !empty; ++i) {
      if (reserved(t[i].text)) fail(ErrorCode::Parse, t[i].column, "unexpected '" + t[i].text + "' in output word");
      out.push_back(letter(outputs_, t[i], "output"));
    }
    const State dst = state(t.back());
    if (kind_ == Kind::Letter) {
      if (out.size() != 1)
        fail(ErrorCode::NotLetterToLetter, t[first].column, "letter transducer transitions need one output letter");
    } else {
      const auto key = std::make_pair(src, in);
      if (seen_.count(key))
        fail(ErrorCode::Nondeterministic, t[1].column,
             "state '" + t[0].text + "' already reads '" + t[1].text + "'");
      seen_.insert(key);
      if (kind_ == Kind::Subsequential && out.size() != 1)
        fail(ErrorCode::NotLetterToLetter, t[first].column,
             "subsequential transitions need one output letter");
    }
    transitions_.push_back({src, in, std::move(out), dst});
  }

  TransducerFile finish() {
    if (!kind_) fail(ErrorCode::Parse, 1, "missing 'kind'");
    if (!inputs_) fail(ErrorCode::Parse, 1, "missing 'inputs'");
    if (!outputs_) fail(ErrorCode::Parse, 1, "missing 'outputs'");
    if (names_.empty()) fail(ErrorCode::Parse, 1, "missing 'states'");
    if (!initials_) fail(ErrorCode::Parse, 1, "missing 'initial'");

    TransducerFile file;
    file.state_names = names_;
    if (*kind_ == Kind::Letter) {
      LetterTransducer r(*inputs_, *outputs_);
      for (std::size_t q = 0; q < names_.size(); ++q) r.add_state(finals_[q]);
      for (const auto& tr : transitions_) r.add_transition(tr.src, tr.in, tr.out.front(), tr.dst);
      for (State i : *initials_) r.add_initial(i);
      file.machine = std::move(r);
      return file;
    }
    SequentialTransducer m(*inputs_, *outputs_);
    for (std::size_t q = 0; q < names_.size(); ++q) m.add_state(finals_[q]);
    for (auto& tr : transitions_) m.set_transition(tr.src, tr.in, std::move(tr.out), tr.dst);
    m.set_initial(initials_->front());
    if (*kind_ == Kind::Sequential) {
      file.machine = std::move(m);
      return file;
    }
    SubsequentialTransducer s(std::move(m));
    for (State q = 0; q < names_.size(); ++q) {
      const bool has = final_outputs_[q].has_value();
      if (has != finals_[q]) {
        auto it = final_output_columns_.find(q);
        const auto [l, c] = it == final_output_columns_.end() ? std::make_pair(line_, std::size_t{1}) : it->second;
        throw ParseError(ErrorCode::InvalidInput, l, c,
                         has ? "final output on non-final state '" + names_[q] + "'"
                             : "final state '" + names_[q] + "' has no final output");
      }
      if (has) s.set_final_output(q, *final_outputs_[q]);
    }
    file.machine = std::move(s);
    return file;
  }

  struct PendingTransition {
    State src;
    Letter in;
    Word out;
    State dst;
  };

  std::string_view text_;
  std::size_t line_ = 0;
  std::optional<Kind> kind_;
  std::optional<Alphabet> inputs_, outputs_;
  std::vector<std::string> names_;
  std::map<std::string, State> ids_;
  std::optional<std::vector<State>> initials_;
  bool finals_declared_ = false;
  std::vector<bool> finals_;
  std::vector<std::optional<Letter>> final_outputs_;
  std::map<State, std::pair<std::size_t, std::size_t>> final_output_columns_;
  std::set<std::pair<State, Letter>> seen_;
  std::vector<PendingTransition> transitions_;
};

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += ' ' + n;
  return s;
}

std::vector<std::string> default_names(std::size_t n, const std::vector<std::string>& given) {
  if (given.size() == n) return given;
  std::vector<std::string> names;
  for (std::size_t q = 0; q < n; ++q) names.push_back(std::to_string(q));
  return names;
}

std::string print_letter(const LetterTransducer& r, const std::vector<std::string>& given) {
  const Nfa& a = r.automaton();
  const auto names = default_names(a.num_states(), given);
  std::ostringstream out;
  out << "kind letter-transducer\n";
  out << "inputs" << join(r.input_alphabet().names()) << '\n';
  out << "outputs" << join(r.output_alphabet().names()) << '\n';
  if (a.num_states() == 0) throw Error(ErrorCode::InvalidInput, "cannot print a transducer without states");
  out << "states" << join(names) << '\n';
  if (a.initials().size() == 1) {
    out << "initial " << names[a.initials().front()] << '\n';
  } else {
    out << "initials";
    for (State i : a.initials()) out << ' ' << names[i];
    out << '\n';
  }
  out << "finals";
  for (State q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) out << ' ' << names[q];
  out << '\n';
  for (State q = 0; q < a.num_states(); ++q) {
    if (!a.note(q).empty()) out << "# " << names[q] << ": " << a.note(q) << '\n';
    for (const Edge& e : a.edges(q))
      out << names[q] << ' ' << r.input_alphabet().name(r.input_of(e.letter)) << " / "
          << r.output_alphabet().name(r.output_of(e.letter)) << " -> " << names[e.target] << '\n';
  }
  return out.str();
}

std::string print_sequential(const SequentialTransducer& m, const SubsequentialTransducer* sub,
                             const std::vector<std::string>& given) {
  if (m.num_states() == 0) throw Error(ErrorCode::InvalidInput, "cannot print a machine without states");
  const auto names = default_names(m.num_states(), given);
  std::ostringstream out;
  out << "kind " << (sub ? "subsequential" : "sequential") << '\n';
  out << "inputs" << join(m.input_alphabet().names()) << '\n';
  out << "outputs" << join(m.output_alphabet().names()) << '\n';
  out << "states" << join(names) << '\n';
  out << "initial " << names[m.initial()] << '\n';
  out << "finals";
  for (State q = 0; q < m.num_states(); ++q)
    if (m.is_final(q)) out << ' ' << names[q];
  out << '\n';
  for (State q = 0; q < m.num_states(); ++q) {
    if (!m.note(q).empty()) out << "# " << names[q] << ": " << m.note(q) << '\n';
    for (Letter a = 0; a < m.input_alphabet().size(); ++a) {
      const auto& e = m.transition(q, a);
      if (!e) continue;
      out << names[q] << ' ' << m.input_alphabet().name(a) << " /";
      if (e->output.empty()) out << " -";
      for (Letter b : e->output) out << ' ' << m.output_alphabet().name(b);
      out << " -> " << names[e->target] << '\n';
    }
  }
  if (sub)
    for (State q = 0; q < m.num_states(); ++q)
      if (auto t = sub->final_output(q)) out << "finalout " << names[q] << ' ' << m.output_alphabet().name(*t) << '\n';
  return out.str();
}

}  // namespace

std::string_view kind_name(const Machine& machine) {
  switch (machine.index()) {
    case 0: return "letter-transducer";
    case 1: return "sequential";
    default: return "subsequential";
  }
}

TransducerFile parse_transducer(std::string_view text) {
  try {
    return Parser(text).run();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.code(), 0, 0, e.what());
  }
}

TransducerFile read_transducer_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_transducer(buffer.str());
}

std::string print_transducer(const Machine& machine, const std::vector<std::string>& state_names) {
  if (auto r = std::get_if<LetterTransducer>(&machine)) return print_letter(*r, state_names);
  if (auto m = std::get_if<SequentialTransducer>(&machine)) return print_sequential(*m, nullptr, state_names);
  const auto& s = std::get<SubsequentialTransducer>(machine);
  return print_sequential(s.base(), &s, state_names);
}

std::string print_transducer(const TransducerFile& file) { return print_transducer(file.machine, file.state_names); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
}

const LetterTransducer& require_relation(const TransducerFile& file, std::string_view what) {
  if (auto r = file.relation()) return *r;
  throw Error(ErrorCode::InvalidInput,
              std::string(what) + " must be a letter-transducer, not " + std::string(kind_name(file.machine)));
}

}  // namespace kernseq
