#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "kernseq/decision.hpp"
#include "kernseq/oracle.hpp"
#include "kernseq/report.hpp"
#include "kernseq/synthesis.hpp"
#include "kernseq/textio.hpp"

using namespace kernseq;

namespace {

struct Options {
  bool json = false;
  std::string file;
  std::string second;
  std::string pplus;
  std::string output;
  std::size_t cap = 16;
  std::optional<std::size_t> max_len;
  bool eliminate = false;
  std::uint64_t seed = 0;
  std::string family = "classes";
  std::size_t letters = 2, states = 3, classes = 2;
};

int emit(const Options& o, std::string_view command, const nlohmann::json& body, int code) {
  const auto report = envelope(command, body);
  if (o.json)
    std::cout << report.dump(2) << '\n';
  else
    std::cout << render_text(report);
  return code;
}

std::optional<LetterTransducer> read_pplus(const Options& o) {
  if (o.pplus.empty()) return std::nullopt;
  return require_relation(read_transducer_file(o.pplus), "--pplus");
}

int cmd_validate(const Options& o) {
  const auto r = require_relation(read_transducer_file(o.file), "FILE");
  const auto v = validate_relation(r);
  return emit(o, "validate", to_json(v), exit_code(v));
}

int cmd_analyze(const Options& o) {
  const auto r = require_relation(read_transducer_file(o.file), "FILE");
  const auto a = analyze(r, read_pplus(o), o.cap);
  return emit(o, "analyze", to_json(a), exit_code(a));
}

int cmd_decide(const Options& o, std::string_view problem) {
  const auto r = require_relation(read_transducer_file(o.file), "FILE");
  const Verdict v = problem == "ll" ? decide_kerseq_ll(r) : decide_kerseq_lp(r, read_pplus(o), o.cap);
  nlohmann::json body = to_json(v, problem);
  if (v.outcome == Outcome::Yes && !o.output.empty()) {
    if (problem == "lp" && !o.eliminate)
      write_text_file(o.output, print_transducer(Machine(*v.subsequential)));
    else
      write_text_file(o.output, print_transducer(Machine(*v.witness)));
    body["witness_file"] = o.output;
  }
  return emit(o, problem == "ll" ? "decide ll" : "decide lp", body, exit_code(v));
}

int cmd_closure(const Options& o) {
  const auto r = require_relation(read_transducer_file(o.file), "FILE");
  require_equivalence(r);
  const auto c = transitive_closure(prefix_closure(r), ClosureOptions{o.cap, true});
  nlohmann::json body = to_json(c, false);
  if (c.converged && !o.output.empty()) {
    write_text_file(o.output, print_transducer(Machine(c.closure)));
    body["closure_file"] = o.output;
  }
  return emit(o, "closure", body, exit_code(c));
}

int cmd_verify(const Options& o) {
  const auto r = require_relation(read_transducer_file(o.file), "RELATION");
  const auto m = read_transducer_file(o.second);
  const auto v = verify_kernel(r, m.machine, o.max_len);
  return emit(o, "verify", to_json(v, r.input_alphabet()), exit_code(v));
}

int cmd_random(const Options& o) {
  RandomOptions ro;
  if (o.family == "classes") ro.family = RandomFamily::StateClasses;
  else if (o.family == "trace") ro.family = RandomFamily::ClassTrace;
  else if (o.family == "glued") ro.family = RandomFamily::GluedIdentity;
  else throw Error(ErrorCode::InvalidInput, "unknown family '" + o.family + "'");
  ro.letters = o.letters;
  ro.states = o.states;
  ro.classes = o.classes;
  std::mt19937_64 rng(o.seed);
  const std::string text = print_transducer(Machine(random_equivalence(rng, ro)));
  if (o.output.empty())
    std::cout << text;
  else
    write_text_file(o.output, text);
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivalence relations as kernels of sequential functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  o.seed = oracle_seed();
  app.add_flag("--json", o.json, "Print the report as JSON");

  auto* validate = app.add_subcommand("validate", "Check that FILE is an equivalence relation");
  validate->add_option("FILE", o.file)->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Prefix-closedness, index and closure report");
  analyze_cmd->add_option("FILE", o.file)->required();
  analyze_cmd->add_option("--pplus", o.pplus, "Closure witness instead of iterating");
  analyze_cmd->add_option("--closure-cap", o.cap, "Closure iteration cap")->check(CLI::PositiveNumber);

  auto* decide = app.add_subcommand("decide", "Decide membership in KerSeq^ll or KerSeq^lp");
  decide->require_subcommand(1);
  auto* ll = decide->add_subcommand("ll", "Kernel of a Mealy machine");
  ll->add_option("FILE", o.file)->required();
  ll->add_option("-o", o.output, "Write the witness here");
  auto* lp = decide->add_subcommand("lp", "Kernel of a sequential function, length-preserving kernel");
  lp->add_option("FILE", o.file)->required();
  lp->add_option("--pplus", o.pplus, "Closure witness instead of iterating");
  lp->add_option("--closure-cap", o.cap, "Closure iteration cap")->check(CLI::PositiveNumber);
  lp->add_option("-o", o.output, "Write the witness here");
  lp->add_flag("--eliminate-final-output", o.eliminate, "Write the sequential machine instead of the subsequential one");

  auto* closure = app.add_subcommand("closure", "Transitive closure of the prefix closure");
  closure->add_option("FILE", o.file)->required();
  closure->add_option("--cap", o.cap, "Iteration cap")->check(CLI::PositiveNumber);
  closure->add_option("-o", o.output, "Write the closure here");

  auto* verify = app.add_subcommand("verify", "Compare RELATION with the kernel of MACHINE");
  verify->add_option("RELATION", o.file)->required();
  verify->add_option("MACHINE", o.second)->required();
  verify->add_option("--max-len", o.max_len, "Enumeration bound");

  auto* random = app.add_subcommand("random", "Print a random equivalence relation");
  random->add_option("--seed", o.seed, "Generator seed (default: KERNSEQ_ORACLE_SEED)");
  random->add_option("--family", o.family, "classes, trace or glued");
  random->add_option("--letters", o.letters)->check(CLI::PositiveNumber);
  random->add_option("--states", o.states)->check(CLI::PositiveNumber);
  random->add_option("--classes", o.classes)->check(CLI::PositiveNumber);
  random->add_option("-o", o.output, "Write the relation here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitYes : kExitInput;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*analyze_cmd) return cmd_analyze(o);
    if (*ll) return cmd_decide(o, "ll");
    if (*lp) return cmd_decide(o, "lp");
    if (*closure) return cmd_closure(o);
    if (*verify) return cmd_verify(o);
    if (*random) return cmd_random(o);
  } catch (const Error& e) {
    if (o.json)
      std::cout << envelope("error", error_json(e.code(), e.what())).dump(2) << '\n';
    std::cerr << "kernseq: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "kernseq: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
