#pragma once

#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "basisorder/periodic_set.hpp"

namespace basisorder {

/// A nonempty subset of Z/nZ.
class CyclicSubset {
 public:
  /// Elements are reduced mod n, sorted and deduplicated. Throws
  /// InvalidArgument if n == 0 or the element list is empty.
  CyclicSubset(std::uint64_t modulus, std::vector<std::uint64_t> elements);

  std::uint64_t modulus() const { return modulus_; }
  std::span<const std::uint64_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> elements_;
};

struct OrderResult {
  std::uint64_t order;
  /// Every x >= this value lies in order·A.
  std::uint64_t cofinite_witness_threshold;
};

inline constexpr std::uint64_t kDefaultOrderCap = 4096;

/// G(A): least h <= h_cap with hA cofinite. Each h is tested on its own, since
/// hA need not grow with h when 0 ∉ A.
///
/// Throws NotABasis when A is finite or delta(A) > 1, OrderCapExceeded when no
/// h <= h_cap works, and Cancelled if `stop` is triggered between iterations.
OrderResult order(const EventuallyPeriodicSet& a, std::uint64_t h_cap = kDefaultOrderCap,
                  std::stop_token stop = {});

/// rho(C): least h with hC = Z/nZ. The default cap is n, which covers every
/// basis since |hC| grows strictly until it saturates.
///
/// Throws NotACyclicBasis once |hC| stops growing short of n and
/// OrderCapExceeded if the cap is reached first.
std::uint64_t cyclic_order(const CyclicSubset& c, std::optional<std::uint64_t> h_cap = std::nullopt);

enum class BasisVerdict { kBasis, kNotBasis, kUnknown };

struct BasisCheck {
  BasisVerdict verdict;
  std::optional<OrderResult> order;  // set for kBasis
  std::string certificate;           // reason for kNotBasis / kUnknown
};

BasisCheck is_asymptotic_basis(const EventuallyPeriodicSet& a,
                               std::uint64_t h_cap = kDefaultOrderCap);

/// delta(A \ X) == 1; the removal criterion for finite subsets of a basis.
bool removable(const EventuallyPeriodicSet& a, const FiniteSet& x);

/// A certificate string when A is provably not a basis of N, else nullopt.
std::optional<std::string> non_basis_certificate(const EventuallyPeriodicSet& a);

}  // namespace basisorder
