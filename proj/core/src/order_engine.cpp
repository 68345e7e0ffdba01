#include "basisorder/order_engine.hpp"

#include <algorithm>

#include "basisorder/error.hpp"
#include "basisorder/invariants.hpp"

namespace basisorder {

CyclicSubset::CyclicSubset(std::uint64_t modulus, std::vector<std::uint64_t> elements)
    : modulus_(modulus), elements_(std::move(elements)) {
  if (modulus_ == 0) throw InvalidArgument("cyclic modulus must be positive");
  if (elements_.empty()) throw InvalidArgument("cyclic subset must be nonempty");
  for (auto& e : elements_) e %= modulus_;
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

std::optional<std::string> non_basis_certificate(const EventuallyPeriodicSet& a) {
  const EventuallyPeriodicSet c = normalize(a);
  if (c.is_finite()) return std::string("finite set");
  const std::uint64_t g = delta(c);
  if (g > 1) return "delta certificate: delta(A) = " + std::to_string(g);
  return std::nullopt;
}

OrderResult order(const EventuallyPeriodicSet& a, std::uint64_t h_cap, std::stop_token stop) {
  if (a.is_empty()) throw EmptyOperand();
  const EventuallyPeriodicSet base = normalize(a);
  if (auto cert = non_basis_certificate(base)) throw NotABasis(*cert);
  EventuallyPeriodicSet current = base;
  for (std::uint64_t h = 1; h <= h_cap; ++h) {
    if (stop.stop_requested()) throw Cancelled();
    if (is_cofinite(current)) return OrderResult{h, current.threshold()};
    if (h < h_cap) current = sumset(current, base);
  }
  throw OrderCapExceeded(h_cap);
}

std::uint64_t cyclic_order(const CyclicSubset& c, std::optional<std::uint64_t> h_cap) {
  const std::uint64_t n = c.modulus();
  const std::uint64_t cap = h_cap.value_or(n);
  std::vector<char> state(n, 0);
  for (auto e : c.elements()) state[e] = 1;
  std::size_t size = c.size();
  std::vector<char> next(n);
  for (std::uint64_t h = 1;; ++h) {
    if (size == n) return h;
    if (h >= cap) throw OrderCapExceeded(cap);
    std::fill(next.begin(), next.end(), 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      if (!state[x]) continue;
      for (auto e : c.elements()) {
        std::uint64_t y = x + e;
        if (y >= n) y -= n;
        next[y] = 1;
      }
    }
    const auto next_size = static_cast<std::size_t>(std::count(next.begin(), next.end(), 1));
    // (h+1)C contains a translate of hC; equal sizes mean the translated
    // sequence has stopped growing for good.
    if (next_size == size) throw NotACyclicBasis(n);
    state.swap(next);
    size = next_size;
  }
}

BasisCheck is_asymptotic_basis(const EventuallyPeriodicSet& a, std::uint64_t h_cap) {
  if (a.is_empty()) return {BasisVerdict::kNotBasis, std::nullopt, "empty set"};
  if (auto cert = non_basis_certificate(a)) return {BasisVerdict::kNotBasis, std::nullopt, *cert};
  try {
    return {BasisVerdict::kBasis, order(a, h_cap), {}};
  } catch (const OrderCapExceeded& e) {
    return {BasisVerdict::kUnknown, std::nullopt, e.what()};
  }
}

bool removable(const EventuallyPeriodicSet& a, const FiniteSet& x) {
  return delta(remove_finite(a, x)) == 1;
}

}  // namespace basisorder
