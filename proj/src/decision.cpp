#include "kernseq/decision.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <tuple>

#include "kernseq/error.hpp"
#include "kernseq/oracle.hpp"
#include "kernseq/synthesis.hpp"

namespace kernseq {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Yes: return "YES";
    case Outcome::No: return "NO";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string_view to_string(Reason reason) {
  switch (reason) {
    case Reason::None: return "NONE";
    case Reason::NotLengthPreserving: return "NOT_LENGTH_PRESERVING";
    case Reason::NotPrefixClosed: return "NOT_PREFIX_CLOSED";
    case Reason::InfiniteIndex: return "INFINITE_INDEX";
    case Reason::ClosureCapExhausted: return "CLOSURE_CAP_EXHAUSTED";
  }
  return "?";
}

std::string_view to_string(IndexFiniteness index) {
  return index == IndexFiniteness::Finite ? "FINITE" : "INFINITE";
}

namespace {

struct InputEdge {
  Letter input;
  Letter pair;
  State target;
};

// Input projection of a trimmed pair-deterministic automaton: accepting runs
// on an input word correspond one-to-one to its outputs.
using InputGraph = std::vector<std::vector<InputEdge>>;

InputGraph project_input(const LetterTransducer& t, const Nfa& a) {
  InputGraph g(a.num_states());
  for (State p = 0; p < a.num_states(); ++p) {
    for (const Edge& e : a.edges(p)) g[p].push_back({t.input_of(e.letter), e.letter, e.target});
    std::sort(g[p].begin(), g[p].end(),
              [](const InputEdge& x, const InputEdge& y) { return std::tie(x.input, x.pair) < std::tie(y.input, y.pair); });
  }
  return g;
}

// Iterative Tarjan over an implicit graph with nodes 0..n-1.
template <class Successors>
std::vector<std::size_t> strongly_connected_components(std::size_t n, Successors successors) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), component(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;
  struct Frame {
    std::size_t node;
    std::vector<std::size_t> next;
    std::size_t pos;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> frames;
    auto open = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      frames.push_back({v, successors(v), 0});
    };
    open(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.pos < f.next.size()) {
        const std::size_t w = f.next[f.pos++];
        if (index[w] == kUnset) {
          open(w);
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components;
        } while (w != v);
        ++components;
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
    }
  }
  return component;
}

// Two distinct cycles on the same input word through one state: a cycle of
// the squared graph through a diagonal node that leaves the diagonal or takes
// two different edges.
bool has_split_cycle(const InputGraph& g) {
  const std::size_t n = g.size();
  auto node = [n](State p, State q) { return static_cast<std::size_t>(p) * n + q; };
  auto successors = [&](std::size_t v) {
    std::vector<std::size_t> next;
    const State p = static_cast<State>(v / n), q = static_cast<State>(v % n);
    for (const InputEdge& e : g[p])
      for (const InputEdge& f : g[q])
        if (e.input == f.input) next.push_back(node(e.target, f.target));
    return next;
  };
  const auto scc = strongly_connected_components(n * n, successors);
  std::vector<bool> has_diagonal(n * n, false);
  for (State p = 0; p < n; ++p) has_diagonal[scc[node(p, p)]] = true;
  for (State p = 0; p < n; ++p)
    for (State q = 0; q < n; ++q) {
      const std::size_t c = scc[node(p, q)];
      if (!has_diagonal[c]) continue;
      if (p != q) return true;
      for (const InputEdge& e : g[p])
        for (const InputEdge& f : g[p])
          if (e.input == f.input && e.pair != f.pair && scc[node(e.target, f.target)] == c) return true;
    }
  return false;
}

// States p != q and a word v with p -v-> p, p -v-> q and q -v-> q.
bool has_diverging_pair(const InputGraph& g) {
  const std::size_t n = g.size();
  const auto scc = strongly_connected_components(n, [&](std::size_t v) {
    std::vector<std::size_t> next;
    for (const InputEdge& e : g[v]) next.push_back(e.target);
    return next;
  });
  std::vector<bool> cyclic(n, false);
  for (State p = 0; p < n; ++p)
    for (const InputEdge& e : g[p])
      if (scc[e.target] == scc[p]) cyclic[p] = true;

  // Forward reachability between states.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (State p = 0; p < n; ++p) {
    std::vector<State> stack{p};
    reach[p][p] = true;
    while (!stack.empty()) {
      State x = stack.back();
      stack.pop_back();
      for (const InputEdge& e : g[x])
        if (!reach[p][e.target]) {
          reach[p][e.target] = true;
          stack.push_back(e.target);
        }
    }
  }

  for (State p = 0; p < n; ++p) {
    if (!cyclic[p]) continue;
    for (State q = 0; q < n; ++q) {
      if (q == p || !cyclic[q] || !reach[p][q]) continue;
      // Search the triple graph from (p, p, q) for (p, q, q); the first
      // component stays in p's component, the third in q's.
      auto key = [n](State x, State y, State z) { return (static_cast<std::size_t>(x) * n + y) * n + z; };
      std::vector<bool> visited(n * n * n, false);
      std::deque<std::array<State, 3>> work{{p, p, q}};
      visited[key(p, p, q)] = true;
      while (!work.empty()) {
        const auto [x, y, z] = work.front();
        work.pop_front();
        for (const InputEdge& e : g[x]) {
          if (scc[e.target] != scc[p]) continue;
          for (const InputEdge& f : g[y]) {
            if (f.input != e.input || !reach[f.target][q]) continue;
            for (const InputEdge& h : g[z]) {
              if (h.input != e.input || scc[h.target] != scc[q]) continue;
              if (e.target == p && f.target == q && h.target == q) return true;
              const std::size_t k = key(e.target, f.target, h.target);
              if (!visited[k]) {
                visited[k] = true;
                work.push_back({e.target, f.target, h.target});
              }
            }
          }
        }
      }
    }
  }
  return false;
}

void require_single_alphabet(const LetterTransducer& r, const char* what) {
  if (!(r.input_alphabet() == r.output_alphabet()))
    throw Error(ErrorCode::AlphabetMismatch, std::string(what) + ": input and output alphabets differ");
}

// Exact kernel check of a synthesized witness; a failure is a bug.
template <class Machine>
void require_kernel(const Machine& m, const LetterTransducer& r) {
  if (!language_equal(kernel_transducer(m).automaton(), r.automaton()))
    throw Error(ErrorCode::Internal, "synthesized witness has the wrong kernel");
}

std::optional<ClosureResult> closure_for(const LetterTransducer& r, const std::optional<LetterTransducer>& supplied,
                                         std::size_t cap) {
  if (supplied) {
    validate_closure_witness(r, *supplied);
    return ClosureResult{canonical(*supplied), 0, true};
  }
  return transitive_closure(prefix_closure(r), ClosureOptions{cap, true});
}

}  // namespace

bool is_finitely_valued(const LetterTransducer& t) {
  const Nfa a = trim(determinize(t.automaton()));
  const InputGraph g = project_input(t, a);
  return !has_split_cycle(g) && !has_diverging_pair(g);
}

bool index_is_finite(const LetterTransducer& s, const LetterTransducer& r) {
  require_single_alphabet(s, "index");
  if (!(s.input_alphabet() == r.input_alphabet()) || !(r.input_alphabet() == r.output_alphabet()))
    throw Error(ErrorCode::AlphabetMismatch, "index: relations over different alphabets");
  if (!includes(s.automaton(), r.automaton())) throw Error(ErrorCode::NotFiner, "index: s is not included in r");
  const LetterTransducer f = detail::min_lex_uniformizer_unchecked(s);
  return is_finitely_valued(compose(f, r));
}

void validate_closure_witness(const LetterTransducer& r, const LetterTransducer& closure) {
  if (!(r.input_alphabet() == closure.input_alphabet()) || !(r.output_alphabet() == closure.output_alphabet()))
    throw Error(ErrorCode::BadClosureWitness, "closure witness is over different alphabets");
  const LetterTransducer p = prefix_closure(r);
  if (!includes(p.automaton(), closure.automaton()))
    throw Error(ErrorCode::BadClosureWitness, "closure witness does not contain the prefix closure");
  if (!includes(compose(closure, closure).automaton(), closure.automaton()))
    throw Error(ErrorCode::BadClosureWitness, "closure witness is not transitive");
  if (!language_equal(closure.automaton(), unite(closure.automaton(), compose(closure, p).automaton())))
    throw Error(ErrorCode::BadClosureWitness, "closure witness is not a fixpoint");
}

Verdict decide_kerseq_ll(const LetterTransducer& r) {
  Verdict v;
  if (!validate_relation(r).is_letter_to_letter) {
    v.outcome = Outcome::No;
    v.reason = Reason::NotLengthPreserving;
    return v;
  }
  require_equivalence(r);
  v.outcome = Outcome::No;
  if (!detail::is_prefix_closed_unchecked(r)) {
    v.reason = Reason::NotPrefixClosed;
    return v;
  }
  const auto sc = detail::syntactic_congruence_unchecked(r);
  if (!index_is_finite(sc.relation, r)) {
    v.reason = Reason::InfiniteIndex;
    return v;
  }
  SequentialTransducer witness = synthesize_mealy(r, {.check_preconditions = false});
  require_kernel(witness, r);
  v.outcome = Outcome::Yes;
  v.witness = std::move(witness);
  return v;
}

Verdict decide_kerseq_lp(const LetterTransducer& r, const std::optional<LetterTransducer>& closure,
                         std::size_t closure_cap) {
  Verdict v;
  if (!validate_relation(r).is_letter_to_letter) {
    v.outcome = Outcome::No;
    v.reason = Reason::NotLengthPreserving;
    return v;
  }
  require_equivalence(r);
  const auto sc = detail::syntactic_congruence_unchecked(r);
  // Finite index in R is necessary and needs no closure.
  if (!index_is_finite(sc.relation, r)) {
    v.outcome = Outcome::No;
    v.reason = Reason::InfiniteIndex;
    return v;
  }
  v.closure = closure_for(r, closure, closure_cap);
  if (!v.closure->converged) {
    v.outcome = Outcome::Unknown;
    v.reason = Reason::ClosureCapExhausted;
    return v;
  }
  const LetterTransducer& pplus = v.closure->closure;
  if (!index_is_finite(sc.relation, pplus)) {
    v.outcome = Outcome::No;
    v.reason = Reason::InfiniteIndex;
    return v;
  }
  SubsequentialTransducer machine = synthesize_subsequential(r, pplus, {.check_preconditions = false});
  require_kernel(machine, r);
  SequentialTransducer witness = eliminate_final_output(machine);
  const std::size_t bound = word_budget_bound(r.input_alphabet().size(), 8);
  if (auto mismatch = compare_kernels(as_function(witness), as_function(machine), r.input_alphabet().size(), bound))
    throw Error(ErrorCode::Internal, "final-output elimination changed the kernel on " +
                                         r.input_alphabet().format(mismatch->u) + " / " +
                                         r.input_alphabet().format(mismatch->v));
  v.outcome = Outcome::Yes;
  v.subsequential = std::move(machine);
  v.witness = std::move(witness);
  v.bounded_check_length = bound;
  return v;
}

AnalysisReport analyze(const LetterTransducer& r, const std::optional<LetterTransducer>& closure,
                       std::size_t closure_cap) {
  AnalysisReport report;
  report.validation = validate_relation(r);
  report.length_preserving = report.validation.is_letter_to_letter;
  report.closure_supplied = closure.has_value();
  if (!report.validation.is_equivalence()) return report;
  report.prefix_closed = detail::is_prefix_closed_unchecked(r);
  const auto sc = detail::syntactic_congruence_unchecked(r);
  report.index_wrt_r = index_is_finite(sc.relation, r) ? IndexFiniteness::Finite : IndexFiniteness::Infinite;
  report.closure = closure_for(r, closure, closure_cap);
  if (report.closure->converged)
    report.index_wrt_pplus =
        index_is_finite(sc.relation, report.closure->closure) ? IndexFiniteness::Finite : IndexFiniteness::Infinite;
  return report;
}

}  // namespace kernseq
