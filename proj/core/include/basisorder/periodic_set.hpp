#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "basisorder/bitset.hpp"
#include "basisorder/rational.hpp"

namespace basisorder {

/// A nonempty finite subset of N, stored sorted and duplicate-free.
class FiniteSet {
 public:
  /// Sorts and deduplicates; throws InvalidArgument when `elements` is empty.
  explicit FiniteSet(std::vector<std::uint64_t> elements);
  FiniteSet(std::initializer_list<std::uint64_t> elements)
      : FiniteSet(std::vector<std::uint64_t>(elements)) {}

  std::span<const std::uint64_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::uint64_t min() const { return elements_.front(); }
  std::uint64_t max() const { return elements_.back(); }
  bool contains(std::uint64_t x) const;

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<std::uint64_t> elements_;
};

/// S = finite_part ∪ { x >= threshold : x mod modulus ∈ residues }.
///
/// Values built through the public constructor are validated but not
/// normalized; every operation in this header returns canonical values.
/// In canonical form the modulus is the minimal period of the tail and the
/// threshold is the least one consistent with it, so structural equality of
/// canonical values coincides with equality of the denoted subsets.
class EventuallyPeriodicSet {
 public:
  /// The empty set.
  EventuallyPeriodicSet();

  /// Sorts and deduplicates both sequences. Throws InvalidArgument if
  /// modulus == 0, a residue is >= modulus, or a finite element is >= threshold.
  EventuallyPeriodicSet(std::vector<std::uint64_t> finite_part, std::uint64_t threshold,
                        std::uint64_t modulus, std::vector<std::uint64_t> residues);

  /// { x >= 0 : x mod modulus ∈ residues }, canonical.
  static EventuallyPeriodicSet periodic(std::uint64_t modulus, std::vector<std::uint64_t> residues);
  static EventuallyPeriodicSet from_finite(const FiniteSet& x);
  static EventuallyPeriodicSet naturals();

  std::span<const std::uint64_t> finite_part() const { return finite_; }
  std::uint64_t threshold() const { return threshold_; }
  std::uint64_t modulus() const { return modulus_; }
  std::span<const std::uint64_t> residues() const { return residues_; }

  bool is_canonical() const { return canonical_; }
  bool is_empty() const { return finite_.empty() && residues_.empty(); }
  bool is_finite() const { return residues_.empty(); }

  bool contains(std::uint64_t x) const {
    if (x < threshold_) return contains_finite(x);
    return mask_[x % modulus_] != 0;
  }

  /// Smallest element; nullopt for the empty set.
  std::optional<std::uint64_t> min_element() const;

  friend bool operator==(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
    return a.threshold_ == b.threshold_ && a.modulus_ == b.modulus_ && a.finite_ == b.finite_ &&
           a.residues_ == b.residues_;
  }

  friend std::ostream& operator<<(std::ostream& os, const EventuallyPeriodicSet& s);

 private:
  friend EventuallyPeriodicSet normalize(const EventuallyPeriodicSet& s);

  bool contains_finite(std::uint64_t x) const;
  void rebuild_mask();

  std::vector<std::uint64_t> finite_;
  std::uint64_t threshold_ = 0;
  std::uint64_t modulus_ = 1;
  std::vector<std::uint64_t> residues_;
  std::vector<char> mask_;
  bool canonical_ = false;
};

EventuallyPeriodicSet normalize(const EventuallyPeriodicSet& s);

inline bool contains(const EventuallyPeriodicSet& s, std::uint64_t x) { return s.contains(x); }

/// {a + b : a ∈ s1, b ∈ s2}. Throws EmptyOperand if either operand is empty.
EventuallyPeriodicSet sumset(const EventuallyPeriodicSet& s1, const EventuallyPeriodicSet& s2);

/// Sums of exactly h elements of s, repetition allowed. h >= 1.
EventuallyPeriodicSet h_fold(const EventuallyPeriodicSet& s, std::uint64_t h);

bool is_cofinite(const EventuallyPeriodicSet& s);

/// True iff the symmetric difference is finite.
bool equal_up_to_finite(const EventuallyPeriodicSet& s1, const EventuallyPeriodicSet& s2);

/// S^(m): all x >= 0 congruent mod m to some element of s.
EventuallyPeriodicSet saturate(const EventuallyPeriodicSet& s, std::uint64_t m);

/// Least m <= cap with s ∼ s^(m), by linear scan over m.
std::optional<std::uint64_t> kneser_period(const EventuallyPeriodicSet& s, std::uint64_t cap);

/// Lower asymptotic density; |residues| / modulus of the canonical tail.
Density lower_density(const EventuallyPeriodicSet& s);

/// s \ x; throws NotASubset if some element of x is missing from s.
EventuallyPeriodicSet remove_finite(const EventuallyPeriodicSet& s, const FiniteSet& x);

/// s ∪ x.
EventuallyPeriodicSet insert_finite(const EventuallyPeriodicSet& s, const FiniteSet& x);

/// Sorted elements of s that are <= bound.
std::vector<std::uint64_t> prefix(const EventuallyPeriodicSet& s, std::uint64_t bound);

/// Bit x set iff x ∈ s, for x < nbits.
Bitset prefix_bitset(const EventuallyPeriodicSet& s, std::size_t nbits);

}  // namespace basisorder
