#include "basisorder/bitset.hpp"

#include <algorithm>

namespace basisorder {

void Bitset::or_shifted(const Bitset& src, std::size_t shift) {
  if (shift >= nbits_) return;
  const std::size_t word_shift = shift / kWordBits;
  const unsigned bit_shift = static_cast<unsigned>(shift % kWordBits);
  const std::size_t n = words_.size();
  const std::size_t m = src.words_.size();
  const std::size_t limit = std::min(n, m + word_shift + 1);
  if (bit_shift == 0) {
    for (std::size_t d = word_shift; d < limit; ++d) {
      std::size_t s = d - word_shift;
      if (s < m) words_[d] |= src.words_[s];
    }
  } else {
    const unsigned back = static_cast<unsigned>(kWordBits) - bit_shift;
    for (std::size_t d = word_shift; d < limit; ++d) {
      std::size_t s = d - word_shift;
      std::uint64_t lo = s < m ? src.words_[s] << bit_shift : 0;
      std::uint64_t hi = (s >= 1 && s - 1 < m) ? src.words_[s - 1] >> back : 0;
      words_[d] |= lo | hi;
    }
  }
  clear_tail();
}

std::size_t Bitset::find_next(std::size_t from) const {
  if (from >= nbits_) return nbits_;
  std::size_t w = from / kWordBits;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) {
      std::size_t i = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
      return std::min(i, nbits_);
    }
    if (++w == words_.size()) return nbits_;
    bits = words_[w];
  }
}

void Bitset::clear_tail() {
  if (nbits_ % kWordBits != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (nbits_ % kWordBits)) - 1;
}

}  // namespace basisorder
