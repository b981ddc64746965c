#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kernseq {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// A nonempty finite set of named letters. Letters are the indices
/// 0..size()-1 and their numeric order is the total order used for every
/// lexicographic comparison (declaration order). Copies share storage.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return data_ ? data_->names.size() : 0; }
  bool empty() const noexcept { return size() == 0; }

  const std::string& name(Letter letter) const;
  const std::vector<std::string>& names() const;
  std::optional<Letter> find(std::string_view name) const;

  /// The pair alphabet first x second; pair (a, b) has index a * |second| + b.
  static Alphabet product(const Alphabet& first, const Alphabet& second);

  /// Letters separated by single spaces, "" for the empty word.
  std::string format(const Word& word) const;

  friend bool operator==(const Alphabet& lhs, const Alphabet& rhs);

 private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, Letter> index;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace kernseq
