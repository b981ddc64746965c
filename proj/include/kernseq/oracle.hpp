#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "kernseq/machine.hpp"
#include "kernseq/transducer.hpp"

// Brute-force semantics by enumeration. Nothing here uses the determinization
// or product constructions of the rest of the library: runs are simulated
// directly on the given automaton.

namespace kernseq {

/// Largest word length the enumerations accept.
inline constexpr std::size_t kMaxOracleBound = 10;

/// Words packed into integers by bijective base-k numerals, so that numeric
/// order is shortlex order and codes of different lengths never collide.
class WordCodec {
 public:
  /// Throws BOUND_TOO_LARGE if words of length `bound` do not fit.
  WordCodec(std::size_t letters, std::size_t bound);

  std::uint64_t encode(const Word& word) const;
  Word decode(std::uint64_t code) const;
  std::size_t letters() const noexcept { return letters_; }

 private:
  std::size_t letters_;
};

/// All same-length pairs of a relation with words of length <= bound.
struct EnumeratedRelation {
  std::size_t bound = 0;
  /// Sorted, duplicate-free pairs of codes (input codec, output codec).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;

  bool contains(std::uint64_t u, std::uint64_t v) const;
  std::size_t size() const noexcept { return pairs.size(); }

  friend bool operator==(const EnumeratedRelation&, const EnumeratedRelation&) = default;
};

/// Words of exactly `length` over letters 0..letters-1 in lexicographic order.
std::vector<Word> all_words(std::size_t letters, std::size_t length);

/// Forward enumeration of every accepted pair. Throws BOUND_TOO_LARGE above
/// kMaxOracleBound.
EnumeratedRelation enumerate_relation(const LetterTransducer& r, std::size_t bound);

/// Membership by a backward run from the final states.
bool accepts_backward(const LetterTransducer& r, const Word& u, const Word& v);

/// Lexicographically least v with (u, v) in r.
std::optional<Word> least_related(const LetterTransducer& r, const Word& u);

/// Entry n is the largest number of pairwise s-inequivalent words in the
/// r-class of a word of length n (n = 0..bound). Both relations must be
/// equivalences with s included in r.
std::vector<std::size_t> brute_index_profile(const LetterTransducer& s, const LetterTransducer& r,
                                             std::size_t bound);
std::size_t brute_index(const LetterTransducer& s, const LetterTransducer& r, std::size_t bound);

/// Entry n is max |t(u)| over inputs u of length n.
std::vector<std::uint64_t> brute_valuedness_profile(const LetterTransducer& t, std::size_t bound);
std::uint64_t brute_valuedness(const LetterTransducer& t, std::size_t bound);

/// A partial word function; nullopt where undefined.
using WordFunction = std::function<std::optional<Word>(const Word&)>;

WordFunction as_function(const SequentialTransducer& m);
WordFunction as_function(const SubsequentialTransducer& m);

/// {(u, v) : |u| = |v| <= bound, f(u) and f(v) defined and equal}.
EnumeratedRelation brute_kernel(const WordFunction& f, std::size_t letters, std::size_t bound);

/// A pair on which two equivalences (or kernels) disagree.
struct KernelMismatch {
  Word u;
  Word v;
  /// Whether the first side relates u and v.
  bool first_relates = false;
};

/// Compares the equivalence r with ker(f) on words of length <= bound.
std::optional<KernelMismatch> compare_kernel(const LetterTransducer& r, const WordFunction& f, std::size_t bound);
/// Compares ker(f) with ker(g) on words over `letters` of length <= bound.
std::optional<KernelMismatch> compare_kernels(const WordFunction& f, const WordFunction& g, std::size_t letters,
                                              std::size_t bound);

/// max(6, states of the trimmed pair-DFA of r), at most kMaxOracleBound.
std::size_t default_bound(const LetterTransducer& r);

/// Longest bound <= cap whose words over `letters` number at most `budget`.
std::size_t word_budget_bound(std::size_t letters, std::size_t cap, std::size_t budget = std::size_t{1} << 17);

/// KERNSEQ_ORACLE_SEED if set and numeric, otherwise `fallback`.
std::uint64_t oracle_seed(std::uint64_t fallback = 20240601);

enum class RandomFamily {
  /// u ~ v iff |u| = |v| and a random DFA ends in states of the same class.
  StateClasses,
  /// u ~ v iff |u| = |v| and the runs visit the same classes step by step;
  /// prefix-closed.
  ClassTrace,
  /// Identity, plus same-length pairs ending in the same class of a random
  /// set of glue states; usually of infinite syntactic index.
  GluedIdentity,
};

struct RandomOptions {
  RandomFamily family = RandomFamily::StateClasses;
  std::size_t letters = 2;
  std::size_t states = 3;
  std::size_t classes = 2;
};

/// A random equivalence relation, valid by construction.
LetterTransducer random_equivalence(std::mt19937_64& rng, const RandomOptions& options);

/// A random letter-to-letter transducer (not necessarily an equivalence).
LetterTransducer random_transducer(std::mt19937_64& rng, const Alphabet& input, const Alphabet& output,
                                   std::size_t states, double density);

/// A random Nfa with one or two initial states.
Nfa random_nfa(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t states, double density);

/// Alphabet "a", "b", ... of the given size.
Alphabet letters_alphabet(std::size_t size);

}  // namespace kernseq
