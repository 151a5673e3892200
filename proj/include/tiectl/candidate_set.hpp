#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace tiectl {

using CandidateId = int;

/// Upper bound on candidates per election; sets are stored as one 64-bit word.
inline constexpr int kMaxCandidates = 64;

/// A set of candidate ids packed into a bitmask.
class CandidateSet {
 public:
  constexpr CandidateSet() = default;
  constexpr explicit CandidateSet(std::uint64_t bits) : bits_(bits) {}
  CandidateSet(std::initializer_list<CandidateId> ids) {
    for (CandidateId c : ids) insert(c);
  }

  static constexpr CandidateSet first(int m) {
    return CandidateSet(m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1));
  }
  static CandidateSet of(const std::vector<CandidateId>& ids) {
    CandidateSet s;
    for (CandidateId c : ids) s.insert(c);
    return s;
  }

  constexpr bool contains(CandidateId c) const { return (bits_ >> c) & 1U; }
  constexpr void insert(CandidateId c) { bits_ |= std::uint64_t{1} << c; }
  constexpr void erase(CandidateId c) { bits_ &= ~(std::uint64_t{1} << c); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  /// Smallest member; undefined on an empty set.
  constexpr CandidateId front() const { return std::countr_zero(bits_); }

  std::vector<CandidateId> members() const {
    std::vector<CandidateId> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

  friend constexpr CandidateSet operator|(CandidateSet a, CandidateSet b) {
    return CandidateSet(a.bits_ | b.bits_);
  }
  friend constexpr CandidateSet operator&(CandidateSet a, CandidateSet b) {
    return CandidateSet(a.bits_ & b.bits_);
  }
  friend constexpr CandidateSet operator-(CandidateSet a, CandidateSet b) {
    return CandidateSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(CandidateSet, CandidateSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace tiectl
