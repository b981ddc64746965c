#include "kernseq/alphabet.hpp"

#include "kernseq/error.hpp"

namespace kernseq {

Alphabet::Alphabet(std::vector<std::string> names) {
  if (names.empty()) throw Error(ErrorCode::InvalidInput, "alphabet must be nonempty");
  auto data = std::make_shared<Data>();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw Error(ErrorCode::InvalidInput, "empty letter name");
    if (!data->index.emplace(names[i], static_cast<Letter>(i)).second)
      throw Error(ErrorCode::InvalidInput, "duplicate letter '" + names[i] + "'");
  }
  data->names = std::move(names);
  data_ = std::move(data);
}

const std::string& Alphabet::name(Letter letter) const {
  if (letter >= size()) throw Error(ErrorCode::Undeclared, "letter index out of range");
  return data_->names[letter];
}

const std::vector<std::string>& Alphabet::names() const {
  static const std::vector<std::string> kNone;
  return data_ ? data_->names : kNone;
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  if (!data_) return std::nullopt;
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Alphabet Alphabet::product(const Alphabet& first, const Alphabet& second) {
  std::vector<std::string> names;
  names.reserve(first.size() * second.size());
  for (const auto& a : first.names())
    for (const auto& b : second.names()) names.push_back(a + "|" + b);
  return Alphabet(std::move(names));
}

std::string Alphabet::format(const Word& word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += name(word[i]);
  }
  return out;
}

bool operator==(const Alphabet& lhs, const Alphabet& rhs) {
  if (lhs.data_ == rhs.data_) return true;
  return lhs.names() == rhs.names();
}

}  // namespace kernseq
