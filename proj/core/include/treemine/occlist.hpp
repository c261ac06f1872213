#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "treemine/tree_store.hpp"

namespace treemine {

// Bits index positions inside the inverted list of one label.
class OccurrenceBitmap {
 public:
  OccurrenceBitmap() = default;
  OccurrenceBitmap(LabelId label, std::size_t size)
      : label_(label), size_(size), words_((size + 63) / 64, 0) {}

  static OccurrenceBitmap full(LabelId label, std::size_t size);

  LabelId label() const noexcept { return label_; }
  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  // True when every bit of this is also set in other.
  bool subset_of(const OccurrenceBitmap& other) const;

  OccurrenceBitmap& operator&=(const OccurrenceBitmap& other);
  OccurrenceBitmap& operator|=(const OccurrenceBitmap& other);

  bool operator==(const OccurrenceBitmap& other) const {
    return label_ == other.label_ && size_ == other.size_ && words_ == other.words_;
  }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> positions() const;
  std::size_t memory_bytes() const noexcept { return words_.size() * sizeof(std::uint64_t); }

 private:
  void require_compatible(const OccurrenceBitmap& other) const;

  LabelId label_ = kVirtualRootLabel;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

OccurrenceBitmap bitmap_and(const OccurrenceBitmap& a, const OccurrenceBitmap& b);
OccurrenceBitmap bitmap_or(const OccurrenceBitmap& a, const OccurrenceBitmap& b);
inline OccurrenceBitmap operator&(const OccurrenceBitmap& a, const OccurrenceBitmap& b) { return bitmap_and(a, b); }
inline OccurrenceBitmap operator|(const OccurrenceBitmap& a, const OccurrenceBitmap& b) { return bitmap_or(a, b); }

// Data nodes at the set positions, in begin order.
std::vector<NodeId> materialize(const OccurrenceBitmap& bits, const DataTree& tree);

}  // namespace treemine
