#include "kernseq/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "kernseq/decision.hpp"
#include "kernseq/error.hpp"

namespace kernseq {

namespace {

std::string describe(const MatrixState& m, std::size_t row) {
  std::string s = "M=[";
  for (std::size_t i = 0; i < m.dimension; ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < m.dimension; ++j) {
      if (j) s += ',';
      s += std::to_string(m.at(i, j));
    }
  }
  return s + "] i=" + std::to_string(row + 1);
}

GoverningAutomaton mealy_governing(const LetterTransducer& r) {
  const LetterTransducer dfa = canonical(r);
  const DiagonalSet d = diagonal_states(dfa);
  GoverningAutomaton g{DenseDfa(dfa.automaton()), r.input_alphabet().size(), {}, {}};
  g.related.resize(g.dfa.num_states());
  g.diagonal = d.member;
  for (State q = 0; q < g.dfa.num_states(); ++q) g.related[q] = g.dfa.is_final(q);
  return g;
}

// Product of the relation and its closure witness. `accepting` receives the
// relation component's finality, used for final outputs.
GoverningAutomaton product_governing(const LetterTransducer& r, const LetterTransducer& pplus,
                                     std::vector<bool>& accepting) {
  const LetterTransducer rd = canonical(r);
  const LetterTransducer pd = canonical(pplus);
  const DiagonalSet d = diagonal_states(rd);
  const DenseDfa dr(rd.automaton());
  const DenseDfa dp(pd.automaton());
  const std::size_t pairs = dr.num_letters();

  Nfa product(rd.automaton().alphabet());
  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> work;
  std::vector<bool> related, diagonal;
  accepting.clear();
  auto intern = [&](State p, State q) {
    auto [it, inserted] = ids.emplace(std::make_pair(p, q), 0);
    if (inserted) {
      it->second = product.add_state(dp.is_final(q));
      product.set_note(it->second, "(" + std::to_string(p) + "," + std::to_string(q) + ")");
      related.push_back(dp.is_final(q));
      diagonal.push_back(d.contains(p));
      accepting.push_back(dr.is_final(p));
      work.emplace_back(p, q);
    }
    return it->second;
  };
  product.add_initial(intern(dr.initial(), dp.initial()));
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    const State source = ids.at({p, q});
    for (Letter x = 0; x < pairs; ++x) product.add_transition(source, x, intern(dr.next(p, x), dp.next(q, x)));
  }
  GoverningAutomaton g{DenseDfa(product), r.input_alphabet().size(), std::move(related), std::move(diagonal)};
  return g;
}

void check_matrix_invariant(const GoverningAutomaton& g, const MatrixState& m) {
  for (std::size_t i = 0; i < m.dimension; ++i)
    for (std::size_t j = 0; j < m.dimension; ++j) {
      if (!g.related[m.at(i, j)])
        throw Error(ErrorCode::Internal, "matrix entry outside the related states: " + describe(m, i));
      if (i == j && !g.diagonal[m.at(i, i)])
        throw Error(ErrorCode::Internal, "matrix diagonal entry is not diagonal: " + describe(m, i));
    }
}

struct Transition {
  State source;
  Letter in;
  std::size_t out;  // pair index (m, a) -> m * |A| + a
  State target;
};

// Worklist shared by both synthesizers.
struct MatrixWorklist {
  const GoverningAutomaton& g;
  std::size_t dimension_cap;

  std::map<MatrixState, std::size_t> matrix_ids;
  std::vector<MatrixState> matrices;
  std::map<std::pair<std::size_t, std::size_t>, State> state_ids;
  std::vector<MatrixStateInfo> states;
  std::vector<Transition> transitions;
  std::size_t max_dimension = 1;

  std::size_t intern_matrix(MatrixState m) {
    auto it = matrix_ids.find(m);
    if (it != matrix_ids.end()) return it->second;
    if (m.dimension > dimension_cap)
      throw Error(ErrorCode::DimensionCap,
                  "matrix dimension " + std::to_string(m.dimension) + " exceeds cap " + std::to_string(dimension_cap));
    check_matrix_invariant(g, m);
    max_dimension = std::max(max_dimension, m.dimension);
    const std::size_t id = matrices.size();
    matrix_ids.emplace(m, id);
    matrices.push_back(std::move(m));
    return id;
  }

  State intern_state(std::size_t matrix, std::size_t row, std::deque<State>& work) {
    auto [it, inserted] = state_ids.emplace(std::make_pair(matrix, row), 0);
    if (inserted) {
      it->second = static_cast<State>(states.size());
      states.push_back({matrices[matrix], row});
      work.push_back(it->second);
    }
    return it->second;
  }

  void run() {
    const std::size_t k = g.letters;
    std::deque<State> work;
    intern_state(intern_matrix(MatrixState{1, {g.dfa.initial()}}), 0, work);
    // Successor matrix per (matrix, related-class), computed once.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> successor_ids;
    std::map<std::size_t, SuccessorPartition> partitions;
    while (!work.empty()) {
      const State source = work.front();
      work.pop_front();
      const std::size_t row = states[source].row;
      const std::size_t matrix_id = matrix_ids.at(states[source].matrix);
      auto pit = partitions.find(matrix_id);
      if (pit == partitions.end())
        pit = partitions.emplace(matrix_id, partition_successors(g, matrices[matrix_id])).first;
      const SuccessorPartition& partition = pit->second;
      for (Letter a = 0; a < k; ++a) {
        const std::size_t pair_index = row * k + a;
        const std::size_t cls = partition.related_class[pair_index];
        auto sit = successor_ids.find({matrix_id, cls});
        if (sit == successor_ids.end()) {
          MatrixState next = successor_matrix(g, matrices[matrix_id], partition, cls);
          sit = successor_ids.emplace(std::make_pair(matrix_id, cls), intern_matrix(std::move(next))).first;
        }
        const auto reps = partition.representatives(cls);
        const std::size_t syn = partition.syntactic_class[pair_index];
        const auto pos = std::find(reps.begin(), reps.end(), syn);
        if (pos == reps.end()) throw Error(ErrorCode::Internal, "successor row not found among representatives");
        const State target =
            intern_state(sit->second, static_cast<std::size_t>(pos - reps.begin()), work);
        transitions.push_back({source, a, partition.output(cls), target});
      }
    }
  }
};

std::vector<std::string> pair_output_names(std::size_t max_dimension, const Alphabet& a) {
  std::vector<std::string> names;
  for (std::size_t m = 0; m < max_dimension; ++m)
    for (const auto& letter : a.names()) names.push_back(output_letter_name(m + 1, letter));
  return names;
}

}  // namespace

std::vector<std::size_t> SuccessorPartition::representatives(std::size_t cls) const {
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < related_class.size(); ++x)
    if (related_class[x] == cls && syntactic_class[x] == x) reps.push_back(x);
  return reps;
}

SuccessorPartition partition_successors(const GoverningAutomaton& g, const MatrixState& m) {
  const std::size_t k = g.letters;
  const std::size_t n = m.dimension * k;
  SuccessorPartition p;
  p.dimension = m.dimension;
  p.letters = k;
  std::vector<State> q(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      q[x * n + y] = g.step(m.at(x / k, y / k), static_cast<Letter>(x % k), static_cast<Letter>(y % k));

  auto classes = [&](const std::vector<bool>& member, const char* what) {
    std::vector<std::size_t> cls(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (member[q[x * n + y]]) {
          cls[x] = y;
          break;
        }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (member[q[x * n + y]] != (cls[x] == cls[y] && cls[x] != n))
          throw Error(ErrorCode::Internal, std::string(what) + " successor relation is not an equivalence");
    return cls;
  };
  p.related_class = classes(g.related, "related");
  p.syntactic_class = classes(g.diagonal, "syntactic");
  for (std::size_t x = 0; x < n; ++x)
    if (p.related_class[p.syntactic_class[x]] != p.related_class[x])
      throw Error(ErrorCode::Internal, "syntactic successor classes do not refine related classes");
  return p;
}

MatrixState successor_matrix(const GoverningAutomaton& g, const MatrixState& m, const SuccessorPartition& partition,
                             std::size_t cls) {
  const auto reps = partition.representatives(cls);
  const std::size_t k = g.letters;
  MatrixState next{reps.size(), std::vector<State>(reps.size() * reps.size())};
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      next.entries[i * reps.size() + j] = g.step(m.at(reps[i] / k, reps[j] / k), static_cast<Letter>(reps[i] % k),
                                                 static_cast<Letter>(reps[j] % k));
  return next;
}

std::string output_letter_name(std::size_t index, const std::string& letter) {
  return "o" + std::to_string(index) + "_" + letter;
}

std::string final_letter_name(std::size_t cls) { return "t" + std::to_string(cls); }

SynthesisTrace<SequentialTransducer> synthesize_mealy_traced(const LetterTransducer& r,
                                                             const SynthesisOptions& options) {
  if (options.check_preconditions) {
    require_equivalence(r);
    if (!detail::is_prefix_closed_unchecked(r))
      throw Error(ErrorCode::PreconditionViolated, "relation is not prefix-closed");
    const auto sc = detail::syntactic_congruence_unchecked(r);
    if (!index_is_finite(sc.relation, r))
      throw Error(ErrorCode::PreconditionViolated, "syntactic congruence has infinite index");
  }
  GoverningAutomaton g = mealy_governing(r);
  MatrixWorklist w{g, options.dimension_cap, {}, {}, {}, {}, {}};
  w.run();

  const Alphabet& a = r.input_alphabet();
  SequentialTransducer machine(a, Alphabet(pair_output_names(w.max_dimension, a)));
  for (std::size_t s = 0; s < w.states.size(); ++s) {
    State id = machine.add_state(true);
    machine.set_note(id, describe(w.states[s].matrix, w.states[s].row));
  }
  machine.set_initial(0);
  for (const auto& t : w.transitions) machine.set_transition(t.source, t.in, {static_cast<Letter>(t.out)}, t.target);
  return {std::move(machine), std::move(w.states), std::move(g)};
}

SequentialTransducer synthesize_mealy(const LetterTransducer& r, const SynthesisOptions& options) {
  return synthesize_mealy_traced(r, options).machine;
}

SynthesisTrace<SubsequentialTransducer> synthesize_subsequential_traced(const LetterTransducer& r,
                                                                        const LetterTransducer& pplus,
                                                                        const SynthesisOptions& options) {
  if (options.check_preconditions) {
    require_equivalence(r);
    validate_closure_witness(r, pplus);
    const auto sc = detail::syntactic_congruence_unchecked(r);
    if (!index_is_finite(sc.relation, pplus))
      throw Error(ErrorCode::PreconditionViolated, "syntactic congruence has infinite index in the closure");
  }
  std::vector<bool> accepting;
  GoverningAutomaton g = product_governing(r, pplus, accepting);
  MatrixWorklist w{g, options.dimension_cap, {}, {}, {}, {}, {}};
  w.run();

  const Alphabet& a = r.input_alphabet();
  auto names = pair_output_names(w.max_dimension, a);
  const std::size_t final_base = names.size();
  for (std::size_t j = 1; j <= w.max_dimension; ++j) names.push_back(final_letter_name(j));

  SequentialTransducer base(a, Alphabet(std::move(names)));
  for (std::size_t s = 0; s < w.states.size(); ++s) {
    State id = base.add_state(true);
    base.set_note(id, describe(w.states[s].matrix, w.states[s].row));
  }
  base.set_initial(0);
  for (const auto& t : w.transitions) base.set_transition(t.source, t.in, {static_cast<Letter>(t.out)}, t.target);

  SubsequentialTransducer machine(std::move(base));
  for (std::size_t s = 0; s < w.states.size(); ++s) {
    const MatrixState& m = w.states[s].matrix;
    const std::size_t row = w.states[s].row;
    std::size_t j = 0;
    while (j < m.dimension && !accepting[m.at(row, j)]) ++j;
    if (j == m.dimension) throw Error(ErrorCode::Internal, "no accepting entry in row " + describe(m, row));
    machine.set_final_output(static_cast<State>(s), static_cast<Letter>(final_base + j));
  }
  return {std::move(machine), std::move(w.states), std::move(g)};
}

SubsequentialTransducer synthesize_subsequential(const LetterTransducer& r, const LetterTransducer& pplus,
                                                 const SynthesisOptions& options) {
  return synthesize_subsequential_traced(r, pplus, options).machine;
}

SequentialTransducer eliminate_final_output(const SubsequentialTransducer& m) {
  m.validate();
  const SequentialTransducer& base = m.base();
  const std::size_t num_states = base.num_states();
  const Alphabet& out = base.output_alphabet();
  if (num_states == 0) return SequentialTransducer(base.input_alphabet(), out);

  // Classes of equal final output, numbered 1..n; the initial state's class
  // is n and non-final states share it.
  std::set<Letter> values;
  for (State q = 0; q < num_states; ++q)
    if (auto t = m.final_output(q)) values.insert(*t);
  const std::size_t n = std::max<std::size_t>(values.size(), 1);
  const std::optional<Letter> initial_value = m.final_output(base.initial());
  std::map<Letter, std::size_t> number;
  std::size_t next = 1;
  for (Letter v : values) number[v] = (initial_value && v == *initial_value) ? n : next++;
  auto class_of = [&](State q) -> std::size_t {
    auto t = m.final_output(q);
    return t ? number.at(*t) : n;
  };

  // One class: every output is c^0 b^1, the second component is unused.
  if (n == 1) return base;

  SequentialTransducer result(base.input_alphabet(), out);
  std::map<std::pair<State, Letter>, State> ids;
  std::deque<std::pair<State, Letter>> work;
  auto intern = [&](State q, Letter c) {
    auto [it, inserted] = ids.emplace(std::make_pair(q, c), 0);
    if (inserted) {
      it->second = result.add_state(base.is_final(q));
      result.set_note(it->second, "(" + std::to_string(q) + "," + out.name(c) + ")");
      work.emplace_back(q, c);
    }
    return it->second;
  };
  result.set_initial(intern(base.initial(), 0));
  while (!work.empty()) {
    auto [p, c] = work.front();
    work.pop_front();
    const State source = ids.at({p, c});
    const std::size_t i = class_of(p);
    for (Letter a = 0; a < base.input_alphabet().size(); ++a) {
      const auto& edge = base.transition(p, a);
      if (!edge) continue;
      const Letter b = edge->output.front();
      const std::size_t j = class_of(edge->target);
      Word output(n - i, c);
      output.insert(output.end(), j, b);
      result.set_transition(source, a, std::move(output), intern(edge->target, b));
    }
  }
  return result;
}

namespace {

template <class FinalOk>
LetterTransducer self_product(const SequentialTransducer& f, FinalOk final_ok) {
  if (!f.is_letter_to_letter())
    throw Error(ErrorCode::NotLetterToLetter, "kernel transducer needs a letter-to-letter machine");
  const Alphabet& a = f.input_alphabet();
  LetterTransducer kernel(a, a);
  if (f.num_states() == 0) return kernel;
  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> work;
  auto intern = [&](State p, State q) {
    auto [it, inserted] = ids.emplace(std::make_pair(p, q), 0);
    if (inserted) {
      it->second = kernel.add_state(f.is_final(p) && f.is_final(q) && final_ok(p, q));
      work.emplace_back(p, q);
    }
    return it->second;
  };
  kernel.add_initial(intern(f.initial(), f.initial()));
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    const State source = ids.at({p, q});
    for (Letter x = 0; x < a.size(); ++x) {
      const auto& e1 = f.transition(p, x);
      if (!e1) continue;
      for (Letter y = 0; y < a.size(); ++y) {
        const auto& e2 = f.transition(q, y);
        if (e2 && e1->output == e2->output) kernel.add_transition(source, x, y, intern(e1->target, e2->target));
      }
    }
  }
  return kernel;
}

}  // namespace

LetterTransducer kernel_transducer(const SequentialTransducer& f) {
  return self_product(f, [](State, State) { return true; });
}

LetterTransducer kernel_transducer(const SubsequentialTransducer& f) {
  f.validate();
  return self_product(f.base(), [&](State p, State q) { return f.final_output(p) == f.final_output(q); });
}

}  // namespace kernseq
