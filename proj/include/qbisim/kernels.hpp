#pragma once

// Word-parallel bitset kernels. Every kernel has a scalar reference
// implementation; AVX2 (x86-64) and NEON (aarch64) variants are selected at
// runtime and must agree bit-for-bit with the scalar versions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbisim {

namespace kernels {

using Word = std::uint64_t;

struct Table {
  const char* name;
  // dst |= src
  void (*or_into)(Word* dst, const Word* src, std::size_t n);
  // dst &= src
  void (*and_into)(Word* dst, const Word* src, std::size_t n);
  // dst &= ~src
  void (*andnot_into)(Word* dst, const Word* src, std::size_t n);
  // (a & ~b) == 0
  bool (*is_subset)(const Word* a, const Word* b, std::size_t n);
  // (a & b) != 0
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  bool (*any)(const Word* a, std::size_t n);
  bool (*equal)(const Word* a, const Word* b, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
};

const Table& scalar();
// nullptr when the variant is not compiled in or the CPU lacks support.
const Table* avx2();
const Table* neon();

// Currently selected table. Defaults to the best supported variant unless
// the QBISIM_KERNELS environment variable names another one.
const Table& active();

// Selects "scalar", "avx2", "neon" or "auto". Returns false if unavailable.
bool select(std::string_view name);

std::vector<std::string> available();

// Copies `len` bits from src starting at src_off into dst starting at
// dst_off, OR-ing them in. Scalar only: offsets are arbitrary.
void or_bit_range(Word* dst, std::size_t dst_off, const Word* src, std::size_t src_off,
                  std::size_t len);

}  // namespace kernels

/// Dynamic bitset with word storage. Bits past size() are always zero.
class Bits {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bits() = default;
  explicit Bits(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  static Bits from_u64(std::size_t nbits, std::uint64_t value);

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= kernels::Word{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(kernels::Word{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  void clear();
  void fill();

  bool any() const;
  bool none() const { return !any(); }
  std::size_t count() const;
  bool is_subset_of(const Bits& other) const;
  bool intersects(const Bits& other) const;

  Bits& operator|=(const Bits& other);
  Bits& operator&=(const Bits& other);
  Bits& and_not(const Bits& other);
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  bool operator==(const Bits& other) const;
  bool operator<(const Bits& other) const;

  std::size_t find_first() const { return find_next(0); }
  // First set bit at position >= from.
  std::size_t find_next(std::size_t from) const;
  std::size_t find_last() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      kernels::Word word = words_[w];
      while (word != 0) {
        const auto bit = static_cast<std::size_t>(__builtin_ctzll(word));
        f(w * 64 + bit);
        word &= word - 1;
      }
    }
  }

  std::vector<std::size_t> positions() const;

  // OR `len` bits of src (from src_off) into this (at dst_off).
  void or_range(std::size_t dst_off, const Bits& src, std::size_t src_off, std::size_t len);

  std::uint64_t to_u64() const;
  std::size_t hash() const;

  std::span<const kernels::Word> words() const { return words_; }
  std::span<kernels::Word> words() { return words_; }

 private:
  std::size_t nbits_ = 0;
  std::vector<kernels::Word> words_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace qbisim
