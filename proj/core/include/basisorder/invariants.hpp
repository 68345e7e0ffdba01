#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "basisorder/periodic_set.hpp"
#include "basisorder/rational.hpp"

namespace basisorder {

/// gcd of all pairwise differences. Throws TooFewElements on sets of size <= 1.
std::uint64_t delta(const FiniteSet& s);
std::uint64_t delta(const EventuallyPeriodicSet& s);

/// max(X) - min(X).
std::uint64_t diam(const FiniteSet& x);

/// diam(X) / delta(X) as an exact rational.
Rational d_of(const FiniteSet& x);

struct EtaResult {
  std::uint64_t value;
  std::pair<std::uint64_t, std::uint64_t> witness;  // a < b, b - a == value
};

/// Least |a - b| >= diam(X) over distinct a, b in A \ X.
EtaResult eta(const EventuallyPeriodicSet& a, const FiniteSet& x);

struct MuResult {
  std::uint64_t value;
  std::uint64_t witness;  // y in A \ X with diam(X ∪ {y}) == value
};

/// Least diam(X ∪ {y}) over y in A \ X.
MuResult mu(const EventuallyPeriodicSet& a, const FiniteSet& x);

/// All per-pair invariants. delta and d are absent when |X| == 1.
struct InstanceInvariants {
  std::optional<std::uint64_t> delta_x;
  std::uint64_t diam_x = 0;
  std::optional<Rational> d_x;
  EtaResult eta;
  MuResult mu;
};

InstanceInvariants compute_invariants(const EventuallyPeriodicSet& a, const FiniteSet& x);

}  // namespace basisorder
