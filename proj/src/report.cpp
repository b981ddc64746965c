#include "kernseq/report.hpp"

#include <sstream>

#include "kernseq/synthesis.hpp"

namespace kernseq {

namespace {

void require_same_alphabet(const LetterTransducer& r, const Alphabet& input) {
  if (!(r.input_alphabet() == input))
    throw Error(ErrorCode::AlphabetMismatch, "machine input alphabet differs from the relation's alphabet");
}

nlohmann::json machine_summary(const SequentialTransducer& m) {
  return {{"states", m.num_states()}, {"output_letters", m.output_alphabet().size()},
          {"letter_to_letter", m.is_letter_to_letter()}};
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  out << prefix << ": ";
  if (j.is_string()) {
    out << j.get<std::string>();
  } else if (j.is_array()) {
    bool first = true;
    for (const auto& x : j) {
      if (!first) out << ", ";
      first = false;
      out << (x.is_string() ? x.get<std::string>() : x.dump());
    }
  } else if (j.is_null()) {
    out << "-";
  } else {
    out << j.dump();
  }
  out << '\n';
}

}  // namespace

VerifyReport verify_kernel(const LetterTransducer& r, const Machine& machine, std::optional<std::size_t> max_len) {
  require_equivalence(r);
  VerifyReport report;
  const std::size_t k = r.input_alphabet().size();
  report.bound = max_len ? *max_len : std::min(default_bound(r), word_budget_bound(k, kMaxOracleBound, 1 << 20));

  WordFunction f;
  if (std::holds_alternative<LetterTransducer>(machine))
    throw Error(ErrorCode::InvalidInput, "the machine must be sequential or subsequential");
  if (auto m = std::get_if<SequentialTransducer>(&machine)) {
    require_same_alphabet(r, m->input_alphabet());
    f = as_function(*m);
    if (m->is_letter_to_letter()) {
      report.exact = true;
      report.equal = language_equal(kernel_transducer(*m).automaton(), r.automaton());
    }
  } else {
    const auto& s = std::get<SubsequentialTransducer>(machine);
    require_same_alphabet(r, s.base().input_alphabet());
    s.validate();
    f = as_function(s);
    report.exact = true;
    report.equal = language_equal(kernel_transducer(s).automaton(), r.automaton());
  }
  if (!report.exact || !report.equal) {
    report.mismatch = compare_kernel(r, f, report.bound);
    if (!report.exact) report.equal = !report.mismatch;
  }
  return report;
}

nlohmann::json to_json(const RelationValidation& v) {
  return {{"letter_to_letter", v.is_letter_to_letter}, {"reflexive", v.is_reflexive},
          {"symmetric", v.is_symmetric},             {"transitive", v.is_transitive},
          {"equivalence", v.is_equivalence()}};
}

nlohmann::json to_json(const ClosureResult& c, bool supplied) {
  nlohmann::json j = {{"converged", c.converged}, {"supplied", supplied}, {"states", c.closure.automaton().num_states()}};
  j["exponent"] = supplied ? nlohmann::json(nullptr) : nlohmann::json(c.exponent);
  return j;
}

nlohmann::json to_json(const AnalysisReport& a) {
  nlohmann::json j;
  j["validation"] = to_json(a.validation);
  j["length_preserving"] = a.length_preserving;
  j["prefix_closed"] = a.prefix_closed ? nlohmann::json(*a.prefix_closed) : nlohmann::json(nullptr);
  j["index_wrt_r"] = a.index_wrt_r ? nlohmann::json(to_string(*a.index_wrt_r)) : nlohmann::json(nullptr);
  j["closure"] = a.closure ? to_json(*a.closure, a.closure_supplied) : nlohmann::json(nullptr);
  j["index_wrt_pplus"] = a.index_wrt_pplus ? nlohmann::json(to_string(*a.index_wrt_pplus)) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Verdict& v, std::string_view problem) {
  nlohmann::json j;
  j["problem"] = problem;
  j["outcome"] = to_string(v.outcome);
  j["reason"] = to_string(v.reason);
  j["witness"] = v.witness ? machine_summary(*v.witness) : nlohmann::json(nullptr);
  if (problem == "lp") {
    j["subsequential"] = v.subsequential ? machine_summary(v.subsequential->base()) : nlohmann::json(nullptr);
    j["closure"] = v.closure ? to_json(*v.closure, v.closure->exponent == 0) : nlohmann::json(nullptr);
    j["bounded_check_length"] = v.bounded_check_length;
  }
  return j;
}

nlohmann::json to_json(const VerifyReport& v, const Alphabet& alphabet) {
  nlohmann::json j = {{"equal", v.equal}, {"method", v.exact ? "exact" : "bounded"}, {"bound", v.bound}};
  if (v.mismatch)
    j["counterexample"] = {{"u", alphabet.format(v.mismatch->u)},
                           {"v", alphabet.format(v.mismatch->v)},
                           {"related", v.mismatch->first_relates}};
  else
    j["counterexample"] = nullptr;
  return j;
}

nlohmann::json error_json(ErrorCode code, std::string_view message) {
  return {{"error", to_string(code)}, {"message", message}};
}

nlohmann::json envelope(std::string_view command, nlohmann::json body) {
  body["schema"] = kReportSchema;
  body["command"] = command;
  return body;
}

std::string render_text(const nlohmann::json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

int exit_code(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::Yes: return kExitYes;
    case Outcome::No: return kExitNo;
    case Outcome::Unknown: return kExitUnknown;
  }
  return kExitInternal;
}

int exit_code(const RelationValidation& v) { return v.is_equivalence() ? kExitYes : kExitNo; }

int exit_code(const AnalysisReport& a) {
  if (!a.validation.is_equivalence()) return kExitNo;
  if (a.closure && !a.closure->converged) return kExitUnknown;
  return kExitYes;
}

int exit_code(const ClosureResult& c) { return c.converged ? kExitYes : kExitUnknown; }

int exit_code(const VerifyReport& v) { return v.equal ? kExitYes : kExitNo; }

int exit_code(ErrorCode code) {
  return code == ErrorCode::Internal || code == ErrorCode::DimensionCap ? kExitInternal : kExitInput;
}

}  // namespace kernseq
