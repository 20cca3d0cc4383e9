#include <atomic>
#include <cstdlib>
#include <functional>

#include "kernels_impl.hpp"

namespace qbisim {

namespace kernels {

const Table& scalar() { return detail::kScalarTable; }

const Table* avx2() {
#if defined(QBISIM_HAVE_AVX2_KERNELS)
  static const bool supported = detail::cpu_supports_avx2();
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const Table* neon() {
#if defined(QBISIM_HAVE_NEON_KERNELS)
  return &detail::kNeonTable;
#else
  return nullptr;
#endif
}

namespace {

const Table* best() {
  if (const Table* t = avx2()) return t;
  if (const Table* t = neon()) return t;
  return &scalar();
}

const Table* by_name(std::string_view name) {
  if (name == "scalar") return &scalar();
  if (name == "avx2") return avx2();
  if (name == "neon") return neon();
  if (name == "auto") return best();
  return nullptr;
}

const Table* initial() {
  if (const char* env = std::getenv("QBISIM_KERNELS")) {
    if (const Table* t = by_name(env)) return t;
  }
  return best();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial()};
  return table;
}

}  // namespace

const Table& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const Table* t = by_name(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

std::vector<std::string> available() {
  std::vector<std::string> out{"scalar"};
  if (avx2() != nullptr) out.emplace_back("avx2");
  if (neon() != nullptr) out.emplace_back("neon");
  return out;
}

void or_bit_range(Word* dst, std::size_t dst_off, const Word* src, std::size_t src_off,
                  std::size_t len) {
  while (len > 0) {
    const std::size_t sw = src_off >> 6;
    const std::size_t sb = src_off & 63;
    Word chunk = src[sw] >> sb;
    std::size_t take = 64 - sb;
    if (take < 64 && take < len) {
      chunk |= src[sw + 1] << take;
      take = 64;
    }
    if (take > len) take = len;
    if (take < 64) chunk &= (Word{1} << take) - 1;

    const std::size_t dw = dst_off >> 6;
    const std::size_t db = dst_off & 63;
    dst[dw] |= chunk << db;
    if (db != 0 && db + take > 64) dst[dw + 1] |= chunk >> (64 - db);

    dst_off += take;
    src_off += take;
    len -= take;
  }
}

}  // namespace kernels

Bits Bits::from_u64(std::size_t nbits, std::uint64_t value) {
  Bits b(nbits);
  if (nbits == 0) return b;
  if (nbits < 64) value &= (std::uint64_t{1} << nbits) - 1;
  b.words_[0] = value;
  return b;
}

void Bits::clear() {
  for (auto& w : words_) w = 0;
}

void Bits::fill() {
  for (auto& w : words_) w = ~kernels::Word{0};
  if (const std::size_t tail = nbits_ & 63; tail != 0) {
    words_.back() &= (kernels::Word{1} << tail) - 1;
  }
}

bool Bits::any() const { return kernels::active().any(words_.data(), words_.size()); }

std::size_t Bits::count() const { return kernels::active().popcount(words_.data(), words_.size()); }

bool Bits::is_subset_of(const Bits& other) const {
  return kernels::active().is_subset(words_.data(), other.words_.data(), words_.size());
}

bool Bits::intersects(const Bits& other) const {
  return kernels::active().intersects(words_.data(), other.words_.data(), words_.size());
}

Bits& Bits::operator|=(const Bits& other) {
  kernels::active().or_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

Bits& Bits::operator&=(const Bits& other) {
  kernels::active().and_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

Bits& Bits::and_not(const Bits& other) {
  kernels::active().andnot_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

bool Bits::operator==(const Bits& other) const {
  return nbits_ == other.nbits_ &&
         kernels::active().equal(words_.data(), other.words_.data(), words_.size());
}

bool Bits::operator<(const Bits& other) const {
  if (nbits_ != other.nbits_) return nbits_ < other.nbits_;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
  }
  return false;
}

std::size_t Bits::find_next(std::size_t from) const {
  if (from >= nbits_) return npos;
  std::size_t w = from >> 6;
  kernels::Word word = words_[w] & (~kernels::Word{0} << (from & 63));
  while (true) {
    if (word != 0) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(word));
    if (++w >= words_.size()) return npos;
    word = words_[w];
  }
}

std::size_t Bits::find_last() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) return w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(words_[w]));
  }
  return npos;
}

std::vector<std::size_t> Bits::positions() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

void Bits::or_range(std::size_t dst_off, const Bits& src, std::size_t src_off, std::size_t len) {
  kernels::or_bit_range(words_.data(), dst_off, src.words_.data(), src_off, len);
}

std::uint64_t Bits::to_u64() const { return words_.empty() ? 0 : words_[0]; }

std::size_t Bits::hash() const {
  std::size_t h = std::hash<std::size_t>{}(nbits_);
  for (auto w : words_) h ^= std::hash<kernels::Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace qbisim
