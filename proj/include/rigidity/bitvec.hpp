#ifndef RIGIDITY_BITVEC_HPP
#define RIGIDITY_BITVEC_HPP

#include <cstdint>
#include <vector>

namespace rigidity {

// Fixed-width bit vector backed by 64-bit words, LSB-first within each word.
// Bit i lives in word i/64 at position i%64.  Unused tail bits are kept zero,
// so whole-word equality and value comparison are valid.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::uint64_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::uint64_t size() const { return nbits_; }

  bool test(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::uint64_t i, bool v = true) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
  }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  // Value order, treating the vector as an unsigned integer (bit 0 least
  // significant).  Both operands must have the same size.
  static int compare(const BitVec& a, const BitVec& b) {
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i] ? -1 : 1;
    }
    return 0;
  }

  bool operator==(const BitVec&) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  // Zeroes any bits at positions >= size() that a whole-word write may have set.
  void mask_tail() {
    if (nbits_ & 63) words_.back() &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
  }

private:
  std::uint64_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rigidity

#endif
