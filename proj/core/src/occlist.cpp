#include "treemine/occlist.hpp"

#include <algorithm>
#include <string>

namespace treemine {

OccurrenceBitmap OccurrenceBitmap::full(LabelId label, std::size_t size) {
  OccurrenceBitmap b(label, size);
  std::fill(b.words_.begin(), b.words_.end(), ~std::uint64_t{0});
  if (size % 64 != 0 && !b.words_.empty()) b.words_.back() = (std::uint64_t{1} << (size % 64)) - 1;
  return b;
}

std::size_t OccurrenceBitmap::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool OccurrenceBitmap::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool OccurrenceBitmap::subset_of(const OccurrenceBitmap& other) const {
  require_compatible(other);
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

void OccurrenceBitmap::require_compatible(const OccurrenceBitmap& other) const {
  if (label_ != other.label_)
    throw std::invalid_argument("bitmap label mismatch: " + std::to_string(label_) + " vs " +
                                std::to_string(other.label_));
  if (size_ != other.size_) throw std::invalid_argument("bitmap length mismatch");
}

OccurrenceBitmap& OccurrenceBitmap::operator&=(const OccurrenceBitmap& other) {
  require_compatible(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

OccurrenceBitmap& OccurrenceBitmap::operator|=(const OccurrenceBitmap& other) {
  require_compatible(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

std::vector<std::size_t> OccurrenceBitmap::positions() const {
  std::vector<std::size_t> out;
  for_each_set([&](std::size_t i) { out.push_back(i); });
  return out;
}

OccurrenceBitmap bitmap_and(const OccurrenceBitmap& a, const OccurrenceBitmap& b) {
  OccurrenceBitmap r = a;
  r &= b;
  return r;
}

OccurrenceBitmap bitmap_or(const OccurrenceBitmap& a, const OccurrenceBitmap& b) {
  OccurrenceBitmap r = a;
  r |= b;
  return r;
}

std::vector<NodeId> materialize(const OccurrenceBitmap& bits, const DataTree& tree) {
  auto list = tree.inverted_list(bits.label());
  if (list.size() != bits.size()) throw std::invalid_argument("bitmap does not match its inverted list");
  std::vector<NodeId> out;
  out.reserve(bits.count());
  bits.for_each_set([&](std::size_t i) { out.push_back(list[i]); });
  return out;
}

}  // namespace treemine
