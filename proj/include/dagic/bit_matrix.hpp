#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dagic {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Read-only view of one fixed-width bitset row.
class BitRow {
 public:
  BitRow() = default;
  BitRow(std::span<const Word> words, std::size_t bits) : words_(words), bits_(bits) {}

  std::size_t size() const noexcept { return bits_; }
  std::span<const Word> words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept {
    assert(i < bits_);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  /// Calls fn(index) for every set bit in increasing index order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto offset = static_cast<std::size_t>(std::countr_zero(bits));
        fn(w * kWordBits + offset);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  std::span<const Word> words_;
  std::size_t bits_ = 0;
};

/// Dense square-ish bit matrix: `rows` rows of `bits` bits each, stored
/// contiguously so that row unions are word-parallel ORs.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t bits)
      : rows_(rows), bits_(bits), stride_(words_for(bits)), data_(rows * stride_, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t bits() const noexcept { return bits_; }
  std::size_t stride() const noexcept { return stride_; }

  BitRow row(std::size_t r) const noexcept {
    assert(r < rows_);
    return {std::span<const Word>(data_.data() + r * stride_, stride_), bits_};
  }

  std::span<Word> mutable_row(std::size_t r) noexcept {
    assert(r < rows_);
    return {data_.data() + r * stride_, stride_};
  }

  void set(std::size_t r, std::size_t i) noexcept {
    assert(r < rows_ && i < bits_);
    data_[r * stride_ + i / kWordBits] |= Word{1} << (i % kWordBits);
  }

  bool test(std::size_t r, std::size_t i) const noexcept { return row(r).test(i); }

  /// row(dst) |= row(src)
  void or_row(std::size_t dst, std::size_t src) noexcept {
    Word* d = data_.data() + dst * stride_;
    const Word* s = data_.data() + src * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] |= s[w];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t bits_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

inline std::size_t popcount_union(BitRow a, BitRow b) noexcept {
  assert(a.words().size() == b.words().size());
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w)
    n += static_cast<std::size_t>(std::popcount(a.words()[w] | b.words()[w]));
  return n;
}

inline std::size_t popcount_intersection(BitRow a, BitRow b) noexcept {
  assert(a.words().size() == b.words().size());
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w)
    n += static_cast<std::size_t>(std::popcount(a.words()[w] & b.words()[w]));
  return n;
}

}  // namespace dagic
